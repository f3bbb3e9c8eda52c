#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "properboost/dataset.hpp"

namespace properboost {

// Indices into a Dataset.
using Region = std::vector<std::size_t>;

inline Region whole_region(const Dataset& d) {
    Region r(d.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = i;
    return r;
}

enum class HypothesisKind { axis_direction, stump_half, constant_at_region };

struct WeakHypothesis {
    HypothesisKind kind = HypothesisKind::constant_at_region;
    int axis = 0;
    double threshold = 0.0;
    bool upper = true;   // stump_half fires on x_j >= threshold, else on x_j < threshold
    double value = 1.0;  // c for a stump half, the constant otherwise
    double max_abs = 1.0;

    static WeakHypothesis axis_direction(int axis) {
        WeakHypothesis h;
        h.kind = HypothesisKind::axis_direction;
        h.axis = axis;
        return h;
    }

    static WeakHypothesis stump_half(int axis, double threshold, bool upper, double c) {
        WeakHypothesis h;
        h.kind = HypothesisKind::stump_half;
        h.axis = axis;
        h.threshold = threshold;
        h.upper = upper;
        h.value = c;
        h.max_abs = std::abs(c);
        return h;
    }

    static WeakHypothesis constant(double c = 1.0) {
        WeakHypothesis h;
        h.value = c;
        h.max_abs = std::abs(c);
        return h;
    }

    bool fires(const Point& x) const {
        if (kind != HypothesisKind::stump_half) return true;
        return upper ? x[axis] >= threshold : x[axis] < threshold;
    }

    double operator()(const Point& x) const {
        switch (kind) {
        case HypothesisKind::axis_direction: return x[axis];
        case HypothesisKind::stump_half: return fires(x) ? value : 0.0;
        case HypothesisKind::constant_at_region: return value;
        }
        return 0.0;
    }

    bool operator==(const WeakHypothesis&) const = default;
};

inline double max_abs_over(const WeakHypothesis& h, const Dataset& d, const Region& region) {
    double m = 0.0;
    for (std::size_t i : region) m = std::max(m, std::abs(h(d[i].x)));
    return m;
}

// Caches max |h| over the region.
inline WeakHypothesis normalized_on(WeakHypothesis h, const Dataset& d, const Region& region) {
    h.max_abs = max_abs_over(h, d, region);
    return h;
}

// 1[x_j >= a] c  <->  1[x_j < a] (-c).
inline WeakHypothesis companion_hypothesis(const WeakHypothesis& h) {
    if (h.kind != HypothesisKind::stump_half)
        throw std::invalid_argument("companion of a non-stump hypothesis");
    WeakHypothesis c = h;
    c.upper = !h.upper;
    c.value = -h.value;
    return c;
}

} // namespace properboost
