#pragma once

#include <optional>
#include <span>
#include <vector>

#include "properboost/models/plm.hpp"
#include "properboost/weak_learners.hpp"

namespace properboost {

// Alternating decision tree: prediction nodes carry a value and may host up
// to `outdegree` stumps; each stump opens two child prediction nodes.
// An observation collects the values of every prediction node it reaches.
class AlternatingTree {
public:
    struct PredictionNode {
        std::vector<SplitCondition> path;  // conjunction from the root
        Region members;
        double value = 0.0;
        int stumps = 0;
    };

    struct Move {
        std::vector<Leg> legs;
        int node = 0;
        bool split = false;
    };

    AlternatingTree(const Dataset& d, int outdegree) : outdegree_(outdegree) {
        if (outdegree < 1) throw ConfigError("ADT outdegree must be >= 1");
        nodes_.push_back(PredictionNode{{}, whole_region(d), 0.0, 0});
    }

    std::optional<Move> propose(const Dataset& d, std::span<const double> w, double gamma_wl) const {
        std::vector<int> open;
        std::vector<Region> regions;
        for (int i = 0; i < static_cast<int>(nodes_.size()); ++i)
            if (nodes_[i].stumps < outdegree_) {
                open.push_back(i);
                regions.push_back(nodes_[i].members);
            }
        const int node = open[choose_region_by_J(d, w, regions)];
        const Region& r = nodes_[node].members;
        auto best = best_leaf_hypothesis(d, w, r, gamma_wl);
        if (!best) return std::nullopt;
        Move mv;
        mv.node = node;
        mv.split = best->hypothesis.kind == HypothesisKind::stump_half;
        mv.legs.push_back(make_leg(d, best->hypothesis, r));
        if (mv.split) mv.legs.push_back(make_leg(d, companion_hypothesis(best->hypothesis), r));
        return mv;
    }

    void commit(const Dataset& d, const Move& mv, std::size_t leg, double alpha) {
        const WeakHypothesis& h = mv.legs[leg].hypothesis;
        if (!mv.split) {
            nodes_[mv.node].value += alpha * h.value;
            return;
        }
        if (leg == 0) {
            ++nodes_[mv.node].stumps;
            for (bool upper : {false, true}) {
                PredictionNode child;
                child.path = nodes_[mv.node].path;
                child.path.push_back({h.axis, h.threshold, upper});
                for (std::size_t i : nodes_[mv.node].members)
                    if (child.path.back().holds(d[i].x)) child.members.push_back(i);
                nodes_.push_back(std::move(child));
            }
        }
        // Children were appended as (lower, upper).
        const int upper_child = static_cast<int>(nodes_.size()) - 1;
        nodes_[h.upper ? upper_child : upper_child - 1].value += alpha * h.value;
    }

    double score(const Point& x) const {
        double s = 0.0;
        for (const auto& n : nodes_) {
            bool reach = true;
            for (const auto& c : n.path) reach = reach && c.holds(x);
            if (reach) s += n.value;
        }
        return s;
    }

    int outdegree() const { return outdegree_; }
    const std::vector<PredictionNode>& nodes() const { return nodes_; }

private:
    int outdegree_;
    std::vector<PredictionNode> nodes_;
};

} // namespace properboost
