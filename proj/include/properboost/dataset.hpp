#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "properboost/errors.hpp"
#include "properboost/losses.hpp"

namespace properboost {

using Point = std::array<double, 2>;

struct Example {
    Point x{};
    int y = 1;  // {0,1}
    Count multiplicity = 1;

    int y_star() const { return 2 * y - 1; }
    bool operator==(const Example&) const = default;
};

// A multiset of examples; multiplicities are kept as counts.
class Dataset {
public:
    Dataset() = default;
    explicit Dataset(std::vector<Example> xs) : xs_(std::move(xs)) {
        for (const auto& e : xs_)
            if (e.multiplicity < 1) throw ConfigError("example multiplicity must be >= 1");
            else if (e.y != 0 && e.y != 1) throw ConfigError("labels must be 0 or 1");
    }

    std::size_t size() const { return xs_.size(); }
    bool empty() const { return xs_.empty(); }
    const Example& operator[](std::size_t i) const { return xs_[i]; }
    auto begin() const { return xs_.begin(); }
    auto end() const { return xs_.end(); }
    const std::vector<Example>& examples() const { return xs_; }

    Count total_multiplicity() const {
        Count m = 0;
        for (const auto& e : xs_) m += e.multiplicity;
        return m;
    }

    Count positive_multiplicity() const {
        Count m = 0;
        for (const auto& e : xs_)
            if (e.y == 1) m += e.multiplicity;
        return m;
    }

private:
    std::vector<Example> xs_;
};

// ============================================================================
// Long-Servedio construction
// ============================================================================

struct LsDatasetSpec {
    double gamma = 0.1;
    double big_k = 5.0;
    Count n_copies = 3;
    double theta = 0.0;

    void validate() const {
        if (!(gamma > 0.0) || !std::isfinite(gamma)) throw ConfigError("gamma must be > 0");
        if (!std::isfinite(big_k)) throw ConfigError("K must be finite");
        if (n_copies < 2) throw ConfigError("N must be >= 2 (noise rate below 1/2)");
        if (!(theta >= 0.0 && theta < 2.0 * std::numbers::pi))
            throw ConfigError("theta must lie in [0, 2pi)");
    }

    double eta() const { return 1.0 / static_cast<double>(n_copies + 1); }
};

// eta -> N = round(1/eta) - 1.
inline Count copies_from_eta(double eta) {
    if (!(eta > 0.0 && eta < 0.5)) throw ConfigError("eta must lie in (0, 1/2)");
    return static_cast<Count>(std::llround(1.0 / eta)) - 1;
}

inline Point rotate(const Point& p, double theta) {
    if (theta == 0.0) return p;
    const double c = std::cos(theta), s = std::sin(theta);
    return {c * p[0] - s * p[1], s * p[0] + c * p[1]};
}

// (1,0) x1, (g,-g) x2 (the penalizers), (g,Kg) x1; all positive.
inline Dataset make_clean(const LsDatasetSpec& spec) {
    spec.validate();
    const double g = spec.gamma;
    std::vector<Example> xs = {
        {rotate({1.0, 0.0}, spec.theta), 1, 1},
        {rotate({g, -g}, spec.theta), 1, 2},
        {rotate({g, spec.big_k * g}, spec.theta), 1, 1},
    };
    return Dataset(std::move(xs));
}

// N copies of the clean sample plus one label-flipped copy.
inline Dataset make_noisy(const LsDatasetSpec& spec) {
    const Dataset clean = make_clean(spec);
    std::vector<Example> xs;
    for (const auto& e : clean) xs.push_back({e.x, 1, e.multiplicity * spec.n_copies});
    for (const auto& e : clean) xs.push_back({e.x, 0, e.multiplicity});
    return Dataset(std::move(xs));
}

inline double bayes_posterior(const LsDatasetSpec& spec) {
    return 1.0 - 1.0 / static_cast<double>(spec.n_copies + 1);
}

} // namespace properboost
