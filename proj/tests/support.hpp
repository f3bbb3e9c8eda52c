#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "properboost/properboost.hpp"

namespace pbtest {

using namespace properboost;

// inv_link(0) for asym1, 40-digit evaluation of (2/5)(2 - tan(-A/5)).
inline constexpr double kPStar = 0.57323737234659690847;

inline constexpr double kAsymA = -2.5786529010556653;
inline constexpr double kAsymB = 2.9570906879147872;
inline constexpr double kAsymC = 4.8968909460596959;

// Leveraging root for square loss on S_noisy with h = x1 at H = 0.
inline double lemma_g_alpha1(double n, double g) {
    return (n - 1) * (1 + 3 * g) / ((n + 1) * (1 + 3 * g * g));
}

inline double lemma_g_edge1(double n, double g) { return (1 + 3 * g) / 4 * (n - 1) / (n + 1); }

// Second-iteration edge (h = x2) after leveraging alpha1 on x1.
inline double lemma_g_edge2(double n, double g) {
    const double k2 = lemma_g_alpha1(n, g);
    return 3 * ((n - 1) - (n + 1) * g * k2) /
           (10 * (2 * (n + 1) - (n - 1) * (1 + 3 * g) * k2 / 2));
}

// Random multiset in [-1,1]^2 with labels and small multiplicities.
inline Dataset random_dataset(std::mt19937_64& rng, int n, int distinct_coords = 0) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_int_distribution<int> lab(0, 1), mult(1, 3), grid(0, std::max(1, distinct_coords) - 1);
    std::vector<Example> xs;
    for (int i = 0; i < n; ++i) {
        Point p = distinct_coords > 0
                      ? Point{grid(rng) / double(distinct_coords), grid(rng) / double(distinct_coords)}
                      : Point{u(rng), u(rng)};
        xs.push_back({p, lab(rng), mult(rng)});
    }
    return Dataset(std::move(xs));
}

inline std::vector<double> uniform_grid(double lo, double hi, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
    return v;
}

} // namespace pbtest
