#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "properboost/hypothesis.hpp"

namespace properboost {

inline constexpr double kDefaultGammaWl = 1e-3;

struct EdgeReport {
    WeakHypothesis hypothesis;
    double edge = 0.0;
    double abs_edge = 0.0;
};

namespace detail {

inline double weight_mass(const Dataset& d, std::span<const double> w, const Region& region) {
    double s = 0.0;
    for (std::size_t i : region) s += static_cast<double>(d[i].multiplicity) * w[i];
    return s;
}

inline double signed_mass(const Dataset& d, std::span<const double> w, const Region& region,
                          const WeakHypothesis& h) {
    double s = 0.0;
    for (std::size_t i : region)
        s += static_cast<double>(d[i].multiplicity) * w[i] * d[i].y_star() * h(d[i].x);
    return s;
}

// A candidate replaces the incumbent only when clearly better, so that
// enumeration order decides near-ties.
inline bool beats(double candidate, double incumbent) {
    return candidate > incumbent + 1e-12 * std::max(1.0, incumbent);
}

} // namespace detail

// sum w y* h / (sum w * max|h|) over the region, multiplicity-weighted.
inline double normalized_edge(const Dataset& d, std::span<const double> weights,
                              const Region& region, const WeakHypothesis& h) {
    const double mass = detail::weight_mass(d, weights, region);
    if (!(mass > 0.0)) throw std::domain_error("region carries no weight");
    const double mx = max_abs_over(h, d, region);
    if (!(mx > 0.0)) throw std::invalid_argument("hypothesis vanishes on its region");
    return detail::signed_mass(d, weights, region, h) / (mass * mx);
}

// Coordinate directions h(x) = x_j over the whole sample.
inline std::optional<EdgeReport> best_axis_hypothesis(const Dataset& d,
                                                      std::span<const double> weights,
                                                      double gamma_wl) {
    const Region all = whole_region(d);
    if (!(detail::weight_mass(d, weights, all) > 0.0)) return std::nullopt;
    std::optional<EdgeReport> best;
    for (int axis = 0; axis < 2; ++axis) {
        const WeakHypothesis h = normalized_on(WeakHypothesis::axis_direction(axis), d, all);
        if (!(h.max_abs > 0.0)) continue;
        const double e = normalized_edge(d, weights, all, h);
        if (!best || detail::beats(std::abs(e), best->abs_edge)) best = EdgeReport{h, e, std::abs(e)};
    }
    if (!best || best->abs_edge < gamma_wl) return std::nullopt;
    return best;
}

// Thresholds: midpoints between consecutive distinct values on an axis.
inline std::vector<double> split_thresholds(const Dataset& d, const Region& region, int axis) {
    std::vector<double> v;
    v.reserve(region.size());
    for (std::size_t i : region) v.push_back(d[i].x[axis]);
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    std::vector<double> t;
    for (std::size_t k = 0; k + 1 < v.size(); ++k) t.push_back(0.5 * (v[k] + v[k + 1]));
    return t;
}

using SplitFilter = std::function<bool(int axis, double threshold)>;

// Half-splits 1[x_j >= a] c, edge normalized over the whole region.
inline std::optional<EdgeReport> best_stump_half(const Dataset& d, std::span<const double> weights,
                                                 const Region& region, double gamma_wl,
                                                 const SplitFilter& accept = {}) {
    if (region.empty()) throw std::invalid_argument("empty region");
    const double mass = detail::weight_mass(d, weights, region);
    if (!(mass > 0.0)) return std::nullopt;
    std::optional<EdgeReport> best;
    for (int axis = 0; axis < 2; ++axis) {
        for (double a : split_thresholds(d, region, axis)) {
            if (accept && !accept(axis, a)) continue;
            for (double c : {1.0, -1.0}) {
                const auto h = WeakHypothesis::stump_half(axis, a, true, c);
                const double e = detail::signed_mass(d, weights, region, h) / mass;
                if (!best || detail::beats(std::abs(e), best->abs_edge))
                    best = EdgeReport{h, e, std::abs(e)};
            }
        }
    }
    if (!best || best->abs_edge < gamma_wl) return std::nullopt;
    return best;
}

// Leaf-level search: the constant h = 1 first, then every half-split.
inline std::optional<EdgeReport> best_leaf_hypothesis(const Dataset& d,
                                                      std::span<const double> weights,
                                                      const Region& region, double gamma_wl,
                                                      const SplitFilter& accept = {}) {
    if (region.empty()) throw std::invalid_argument("empty region");
    if (!(detail::weight_mass(d, weights, region) > 0.0)) return std::nullopt;
    const auto k = WeakHypothesis::constant(1.0);
    const double ek = normalized_edge(d, weights, region, k);
    std::optional<EdgeReport> best = EdgeReport{k, ek, std::abs(ek)};
    if (auto s = best_stump_half(d, weights, region, 0.0, accept))
        if (detail::beats(s->abs_edge, best->abs_edge)) best = s;
    if (best->abs_edge < gamma_wl) return std::nullopt;
    return best;
}

// ============================================================================
// Region choice
// ============================================================================

// J(W) = Card(W) (E_W[w])^2 = (sum w)^2 / Card(W), multiplicity-weighted.
inline double region_j(const Dataset& d, std::span<const double> weights, const Region& region) {
    Count card = 0;
    for (std::size_t i : region) card += d[i].multiplicity;
    if (card == 0) return 0.0;
    const double s = detail::weight_mass(d, weights, region);
    return s * s / static_cast<double>(card);
}

inline std::size_t choose_region_by_J(const Dataset& d, std::span<const double> weights,
                                      const std::vector<Region>& partition) {
    if (partition.empty()) throw std::domain_error("empty partition");
    std::size_t best = 0;
    double best_j = region_j(d, weights, partition[0]);
    for (std::size_t k = 1; k < partition.size(); ++k) {
        const double j = region_j(d, weights, partition[k]);
        if (detail::beats(j, best_j)) {
            best = k;
            best_j = j;
        }
    }
    return best;
}

} // namespace properboost
