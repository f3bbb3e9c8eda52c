#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

#include "properboost/errors.hpp"

namespace properboost {

using Count = std::int64_t;

enum class LossKind { matusita, log, square, asym1 };

inline constexpr std::array<LossKind, 4> kAllLosses = {
    LossKind::matusita, LossKind::log, LossKind::square, LossKind::asym1};

inline std::string_view loss_name(LossKind k) {
    switch (k) {
    case LossKind::matusita: return "matusita";
    case LossKind::log: return "log";
    case LossKind::square: return "square";
    case LossKind::asym1: return "asym1";
    }
    return "?";
}

inline LossKind parse_loss_kind(std::string_view name) {
    for (LossKind k : kAllLosses)
        if (loss_name(k) == name) return k;
    throw ConfigError("unknown loss '" + std::string(name) +
                      "' (expected matusita|log|square|asym1)");
}

// ============================================================================
// Asymmetric loss constants
// ============================================================================

struct LossConstantsAsym1 {
    double a_const;
    double b_const;
    double c_const;
};

// Computed from the closed forms on first use.
inline const LossConstantsAsym1& asym1_constants() {
    static const LossConstantsAsym1 k{
        std::log(4.0) - 4.0 * std::atan(2.0) + std::atan(0.5),
        std::numbers::pi / 2.0 + std::log(4.0),
        2.0 * std::numbers::pi - std::log(4.0)};
    return k;
}

// ============================================================================
// ProperLoss
// ============================================================================

class ProperLoss {
public:
    explicit ProperLoss(LossKind kind) : kind_(kind) {}

    LossKind kind() const noexcept { return kind_; }
    std::string_view name() const noexcept { return loss_name(kind_); }

    // l_1(u): loss of guess u when the label is 1. +inf where it diverges.
    double partial_pos(double u) const {
        check_unit(u);
        switch (kind_) {
        case LossKind::matusita:
            return u <= 0.0 ? inf() : 0.5 * std::sqrt((1.0 - u) / u);
        case LossKind::log:
            return u <= 0.0 ? inf() : -std::log(u);
        case LossKind::square:
            return (1.0 - u) * (1.0 - u);
        case LossKind::asym1:
            return std::log(asym_q(u)) + std::atan(0.5) - std::atan((5.0 * u - 4.0) / 2.0);
        }
        return 0.0;
    }

    // l_{-1}(u): loss of guess u when the label is 0.
    double partial_neg(double u) const {
        check_unit(u);
        switch (kind_) {
        case LossKind::matusita:
            return u >= 1.0 ? inf() : 0.5 * std::sqrt(u / (1.0 - u));
        case LossKind::log:
            return u >= 1.0 ? inf() : -std::log1p(-u);
        case LossKind::square:
            return u * u;
        case LossKind::asym1:
            return std::log(asym_q(u) / 4.0) + 4.0 * std::atan(2.0) -
                   4.0 * std::atan((4.0 - 5.0 * u) / 2.0);
        }
        return 0.0;
    }

    double bayes_risk(double u) const {
        check_unit(u);
        switch (kind_) {
        case LossKind::matusita:
            return std::sqrt(u * (1.0 - u));
        case LossKind::log: {
            double r = 0.0;
            if (u > 0.0) r -= u * std::log(u);
            if (u < 1.0) r -= (1.0 - u) * std::log1p(-u);
            return r;
        }
        case LossKind::square:
            return u * (1.0 - u);
        case LossKind::asym1: {
            const auto& k = asym1_constants();
            return std::log(asym_q(u)) + k.a_const * u + 4.0 * std::atan(2.0) - std::log(4.0) +
                   (4.0 - 5.0 * u) * std::atan((5.0 * u - 4.0) / 2.0);
        }
        }
        return 0.0;
    }

    // (-L')^{-1}: score -> posterior estimate.
    double inv_link(double z) const {
        switch (kind_) {
        case LossKind::matusita:
            return 0.5 * (1.0 + z / std::hypot(1.0, z));
        case LossKind::log:
            return sigmoid(z);
        case LossKind::square:
            return std::clamp((1.0 + z) / 2.0, 0.0, 1.0);
        case LossKind::asym1: {
            const auto& k = asym1_constants();
            if (z < -k.b_const) return 0.0;
            if (z > k.c_const) return 1.0;
            return std::clamp(0.4 * (2.0 - std::tan(-(z + k.a_const) / 5.0)), 0.0, 1.0);
        }
        }
        return 0.5;
    }

    // 1 - inv_link(z), without cancellation for the symmetric losses.
    double inv_link_complement(double z) const {
        if (symmetric()) return inv_link(-z);
        return 1.0 - inv_link(z);
    }

    // -L'(u). Infinite at the endpoints for log and Matusita.
    double fwd_link(double u) const {
        check_unit(u);
        switch (kind_) {
        case LossKind::matusita:
            if (u <= 0.0) return -inf();
            if (u >= 1.0) return inf();
            return (2.0 * u - 1.0) / (2.0 * std::sqrt(u * (1.0 - u)));
        case LossKind::log:
            if (u <= 0.0) return -inf();
            if (u >= 1.0) return inf();
            return std::log(u) - std::log1p(-u);
        case LossKind::square:
            return 2.0 * u - 1.0;
        case LossKind::asym1:
            return -asym1_constants().a_const - 5.0 * std::atan((4.0 - 5.0 * u) / 2.0);
        }
        return 0.0;
    }

    // Phi(z) = sup_u { L(u) - z u }.
    double surrogate(double z) const {
        switch (kind_) {
        case LossKind::matusita:
            if (z > 0.0) return 0.5 / (z + std::hypot(1.0, z));
            return 0.5 * (-z + std::hypot(1.0, z));
        case LossKind::log:
            if (z >= 0.0) return std::log1p(std::exp(-z));
            return -z + std::log1p(std::exp(z));
        case LossKind::square:
            if (z < -1.0) return -z;
            if (z > 1.0) return 0.0;
            return (1.0 - z) * (1.0 - z) / 4.0;
        case LossKind::asym1: {
            const auto& k = asym1_constants();
            if (z < -k.c_const) return -z;
            if (z > k.b_const) return 0.0;
            const double a = k.a_const;
            return 2.0 * std::log(std::cos((a - k.b_const) / 5.0) / std::cos((a - z) / 5.0)) +
                   4.0 * (k.b_const - z) / 5.0;
        }
        }
        return 0.0;
    }

    double surrogate_derivative(double z) const { return -inv_link(-z); }

    // Lower bound on inf (l_{-1}' - l_1').
    double kappa() const noexcept {
        switch (kind_) {
        case LossKind::matusita: return 2.0;
        case LossKind::log: return 4.0;
        case LossKind::square: return 2.0;
        case LossKind::asym1: return 2.5;
        }
        return 0.0;
    }

    double floor_c() const noexcept { return 0.0; }

    bool symmetric() const noexcept { return kind_ != LossKind::asym1; }

    // True when inv_link reaches 0 and 1 at finite scores.
    bool bounded_link() const noexcept {
        return kind_ == LossKind::square || kind_ == LossKind::asym1;
    }

private:
    static double inf() { return std::numeric_limits<double>::infinity(); }

    static void check_unit(double u) {
        if (!(u >= 0.0 && u <= 1.0))
            throw std::domain_error("posterior guess outside [0,1]");
    }

    static double sigmoid(double z) {
        if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
        const double e = std::exp(z);
        return e / (1.0 + e);
    }

    static double asym_q(double u) { return 5.0 * u * u - 8.0 * u + 4.0; }

    LossKind kind_;
};

inline ProperLoss make_loss(std::string_view name) { return ProperLoss(parse_loss_kind(name)); }

// ============================================================================
// Free functions
// ============================================================================

inline double weight(const ProperLoss& loss, int label, double score) {
    return label == 1 ? loss.inv_link_complement(score) : loss.inv_link(score);
}

// v l_1(u) + (1-v) l_{-1}(u); a zero coefficient drops its (possibly infinite) term.
inline double pointwise_risk(const ProperLoss& loss, double u, double v) {
    if (!(v >= 0.0 && v <= 1.0)) throw std::domain_error("truth outside [0,1]");
    double r = 0.0;
    if (v > 0.0) r += v * loss.partial_pos(u);
    if (v < 1.0) r += (1.0 - v) * loss.partial_neg(u);
    return r;
}

struct ScoredExample {
    double score;
    int label;
    Count multiplicity = 1;
};

// Mean of Phi(-H) - y H, multiplicity-weighted.
inline double population_surrogate(const ProperLoss& loss, std::span<const ScoredExample> xs) {
    double total = 0.0;
    Count m = 0;
    for (const auto& e : xs) {
        const double term = loss.surrogate(-e.score) - (e.label == 1 ? e.score : 0.0);
        total += static_cast<double>(e.multiplicity) * term;
        m += e.multiplicity;
    }
    if (m <= 0) throw std::domain_error("population surrogate of an empty sample");
    return total / static_cast<double>(m);
}

// ============================================================================
// Surrogate shape check
// ============================================================================

struct Lemma1Report {
    bool convex = false;
    bool non_increasing = false;
    bool negative_slope_at_zero = false;
    bool limit_ok = false;
    double min_second_difference = 0.0;
    double max_first_difference = 0.0;
    double slope_at_zero = 0.0;
    double limit_gap = 0.0;

    bool all_pass() const { return convex && non_increasing && negative_slope_at_zero && limit_ok; }
};

inline Lemma1Report check_lemma1_properties(const ProperLoss& loss, std::size_t grid_size) {
    if (grid_size < 100) throw std::invalid_argument("grid_size must be at least 100");
    constexpr double lo = -20.0, hi = 20.0;
    const double step = (hi - lo) / static_cast<double>(grid_size - 1);
    auto at = [&](std::size_t i) { return loss.surrogate(lo + step * static_cast<double>(i)); };

    Lemma1Report r;
    r.min_second_difference = std::numeric_limits<double>::infinity();
    r.max_first_difference = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < grid_size; ++i) {
        r.max_first_difference = std::max(r.max_first_difference, at(i + 1) - at(i));
        if (i + 2 < grid_size)
            r.min_second_difference =
                std::min(r.min_second_difference, at(i) - 2.0 * at(i + 1) + at(i + 2));
    }
    constexpr double h = 1e-6;
    r.slope_at_zero = (loss.surrogate(h) - loss.surrogate(-h)) / (2.0 * h);
    r.limit_gap = std::abs(loss.surrogate(1e6) - loss.bayes_risk(0.0));

    r.convex = r.min_second_difference >= -1e-7;
    r.non_increasing = r.max_first_difference <= 1e-12;
    r.negative_slope_at_zero = r.slope_at_zero < 0.0;
    r.limit_ok = r.limit_gap <= 1e-6;
    return r;
}

} // namespace properboost
