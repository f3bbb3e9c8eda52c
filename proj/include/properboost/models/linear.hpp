#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "properboost/models/plm.hpp"
#include "properboost/weak_learners.hpp"

namespace properboost {

// Linear separator H(x) = <theta, x>, grown one coordinate direction at a time.
class LinearModel {
public:
    struct Move {
        std::vector<Leg> legs;
    };

    struct Step {
        double alpha;
        WeakHypothesis hypothesis;
    };

    std::optional<Move> propose(const Dataset& d, std::span<const double> w,
                                double gamma_wl) const {
        auto best = best_axis_hypothesis(d, w, gamma_wl);
        if (!best) return std::nullopt;
        return Move{{make_leg(d, best->hypothesis, whole_region(d))}};
    }

    void commit(const Dataset&, const Move& mv, std::size_t leg, double alpha) {
        const auto& h = mv.legs[leg].hypothesis;
        theta_[h.axis] += alpha;
        steps_.push_back({alpha, h});
    }

    double score(const Point& x) const { return theta_[0] * x[0] + theta_[1] * x[1]; }

    const std::array<double, 2>& theta() const { return theta_; }
    const std::vector<Step>& steps() const { return steps_; }

private:
    std::array<double, 2> theta_{0.0, 0.0};
    std::vector<Step> steps_;
};

} // namespace properboost
