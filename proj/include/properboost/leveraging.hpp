#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "properboost/dataset.hpp"
#include "properboost/errors.hpp"
#include "properboost/hypothesis.hpp"
#include "properboost/losses.hpp"

namespace properboost {

struct LeveragingTolerances {
    double tol_alpha = 1e-12;
    double tol_resid = 1e-10;
    double max_alpha = 1e6;
};

struct LeveragingSolve {
    double alpha = 0.0;
    double residual = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    int iterations = 0;
};

// F(alpha) = sum_region m_i w(y_i, H_i + alpha h_i) y*_i h_i; non-increasing in alpha.
inline double leveraging_residual(const ProperLoss& loss, const Dataset& d,
                                  std::span<const double> scores, const Region& region,
                                  std::span<const double> h, double alpha) {
    double f = 0.0;
    for (std::size_t k = 0; k < region.size(); ++k) {
        const std::size_t i = region[k];
        if (h[k] == 0.0) continue;
        const double w = weight(loss, d[i].y, scores[i] + alpha * h[k]);
        f += static_cast<double>(d[i].multiplicity) * w * d[i].y_star() * h[k];
    }
    return f;
}

// Root of F by bracketing and bisection. h holds h(x_i) for each region member.
// Bounded links can make F vanish on a half-line; the root nearest 0 is taken.
// Throws DegenerateLeveraging when h (or -h) separates the region's labels and
// the link is unbounded, so no finite root exists.
inline LeveragingSolve solve_alpha(const ProperLoss& loss, const Dataset& d,
                                   std::span<const double> scores, const Region& region,
                                   std::span<const double> h,
                                   const LeveragingTolerances& tol = {}) {
    bool any = false, all_pos = true, all_neg = true;
    for (std::size_t k = 0; k < region.size(); ++k) {
        if (h[k] == 0.0) continue;
        any = true;
        const double s = d[region[k]].y_star() * h[k];
        all_pos = all_pos && s > 0.0;
        all_neg = all_neg && s < 0.0;
    }
    if (!any) throw std::invalid_argument("hypothesis vanishes on its region");
    if (!loss.bounded_link() && (all_pos || all_neg))
        throw DegenerateLeveraging("hypothesis classifies its region perfectly", all_pos ? 1 : -1);

    auto F = [&](double a) { return leveraging_residual(loss, d, scores, region, h, a); };

    LeveragingSolve out;
    const double f0 = F(0.0);
    if (f0 == 0.0) {
        out.residual = 0.0;
        return out;
    }
    double lo = -1.0, hi = 1.0;
    if (f0 > 0.0) {
        lo = 0.0;
        while (F(hi) > 0.0) {
            lo = hi;
            hi *= 2.0;
            if (hi > tol.max_alpha)
                throw NumericError("leveraging bracket exceeded |alpha| = " +
                                   std::to_string(tol.max_alpha));
        }
    } else {
        hi = 0.0;
        while (F(lo) < 0.0) {
            hi = lo;
            lo *= 2.0;
            if (-lo > tol.max_alpha)
                throw NumericError("leveraging bracket exceeded |alpha| = " +
                                   std::to_string(tol.max_alpha));
        }
    }
    out.lo = lo;
    out.hi = hi;

    // f0 > 0: keep F(lo) > 0 >= F(hi). f0 < 0: keep F(lo) >= 0 > F(hi).
    const bool rising = f0 > 0.0;
    double flo = F(lo), fhi = F(hi);
    for (;;) {
        const bool narrow = hi - lo <= tol.tol_alpha * std::max(1.0, std::abs(lo));
        if (narrow && std::min(std::abs(flo), std::abs(fhi)) <= tol.tol_resid) break;
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fm = F(mid);
        ++out.iterations;
        if (rising ? fm > 0.0 : fm >= 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
            fhi = fm;
        }
    }
    if (std::abs(flo) < std::abs(fhi) || (!rising && flo == 0.0)) {
        out.alpha = lo;
        out.residual = flo;
    } else {
        out.alpha = hi;
        out.residual = fhi;
    }
    if (std::abs(out.residual) > tol.tol_resid)
        throw NumericError("leveraging residual " + std::to_string(out.residual) +
                           " above tolerance");
    return out;
}

} // namespace properboost
