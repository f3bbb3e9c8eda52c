#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "properboost/models/plm.hpp"
#include "properboost/weak_learners.hpp"

namespace properboost {

// Labeled branching program: a DAG where every internal node tests one split
// and leaves may have several parents. The score of x sums node values along
// its (unique) root-to-leaf path.
class BranchingProgram {
public:
    struct Node {
        int axis = -1;
        double threshold = 0.0;
        int lo = -1, hi = -1;
        double value = 0.0;
        Region members;  // leaves only

        bool is_leaf() const { return axis < 0; }
    };

    struct Move {
        std::vector<Leg> legs;
        std::vector<int> leaves;
        bool split = false;
    };

    BranchingProgram(const Dataset& d, double beta) : beta_(beta) {
        if (!(beta > 0.0 && beta <= 1.0)) throw ConfigError("LBP beta must lie in (0, 1]");
        nodes_.push_back(Node{-1, 0.0, -1, -1, 0.0, whole_region(d)});
    }

    std::vector<int> leaf_ids() const {
        std::vector<int> ids;
        for (int i = 0; i < static_cast<int>(nodes_.size()); ++i)
            if (nodes_[i].is_leaf()) ids.push_back(i);
        return ids;
    }

    Region union_of(const std::vector<int>& leaves) const {
        Region r;
        for (int id : leaves) r.insert(r.end(), nodes_[id].members.begin(), nodes_[id].members.end());
        std::sort(r.begin(), r.end());
        return r;
    }

    // Leaves by decreasing J, cut at the shortest prefix whose union reaches
    // beta * J(whole sample).
    std::vector<int> choose_leaf_set(const Dataset& d, std::span<const double> w) const {
        std::vector<int> ids = leaf_ids();
        std::vector<double> j(nodes_.size(), 0.0);
        for (int id : ids) j[id] = region_j(d, w, nodes_[id].members);
        std::stable_sort(ids.begin(), ids.end(), [&](int a, int b) { return j[a] > j[b]; });
        const double target = beta_ * region_j(d, w, whole_region(d));
        std::vector<int> set;
        for (int id : ids) {
            set.push_back(id);
            if (region_j(d, w, union_of(set)) >= target) break;
        }
        return set;
    }

    bool cuts_every_leaf(const Dataset& d, const std::vector<int>& leaves, int axis, double a) const {
        for (int id : leaves) {
            bool up = false, down = false;
            for (std::size_t i : nodes_[id].members) (d[i].x[axis] >= a ? up : down) = true;
            if (!(up && down)) return false;
        }
        return true;
    }

    std::optional<Move> propose(const Dataset& d, std::span<const double> w, double gamma_wl) const {
        std::vector<int> set = choose_leaf_set(d, w);
        while (!set.empty()) {
            const Region r = union_of(set);
            auto accept = [&](int axis, double a) { return cuts_every_leaf(d, set, axis, a); };
            if (auto best = best_leaf_hypothesis(d, w, r, gamma_wl, accept)) {
                Move mv;
                mv.leaves = set;
                mv.split = best->hypothesis.kind == HypothesisKind::stump_half;
                mv.legs.push_back(make_leg(d, best->hypothesis, r));
                if (mv.split) mv.legs.push_back(make_leg(d, companion_hypothesis(best->hypothesis), r));
                return mv;
            }
            set.pop_back();
        }
        return std::nullopt;
    }

    // Every leaf in the set takes the split; the upper (lower) children merge
    // into one new leaf. Returns the new (lower, upper) leaf ids.
    std::pair<int, int> split_merge(const Dataset& d, const std::vector<int>& leaves, int axis,
                                    double threshold) {
        for (int id : leaves)
            if (id < 0 || id >= static_cast<int>(nodes_.size()) || !nodes_[id].is_leaf())
                throw ConfigError("split-merge on a non-leaf node " + std::to_string(id));
        if (!cuts_every_leaf(d, leaves, axis, threshold))
            throw ConfigError("split does not cut every participating leaf in two");
        Node lo, hi;
        for (int id : leaves)
            for (std::size_t i : nodes_[id].members)
                (d[i].x[axis] >= threshold ? hi : lo).members.push_back(i);
        std::sort(lo.members.begin(), lo.members.end());
        std::sort(hi.members.begin(), hi.members.end());
        nodes_.push_back(std::move(lo));
        nodes_.push_back(std::move(hi));
        const int lo_id = static_cast<int>(nodes_.size()) - 2, hi_id = lo_id + 1;
        for (int id : leaves) {
            Node& n = nodes_[id];
            n.axis = axis;
            n.threshold = threshold;
            n.lo = lo_id;
            n.hi = hi_id;
            n.members.clear();
        }
        return {lo_id, hi_id};
    }

    void commit(const Dataset& d, const Move& mv, std::size_t leg, double alpha) {
        const WeakHypothesis& h = mv.legs[leg].hypothesis;
        if (!mv.split) {
            for (int id : mv.leaves) nodes_[id].value += alpha * h.value;
            return;
        }
        if (leg == 0) last_ = split_merge(d, mv.leaves, h.axis, h.threshold);
        nodes_[h.upper ? last_.second : last_.first].value += alpha * h.value;
    }

    double score(const Point& x) const {
        int n = 0;
        double s = nodes_[0].value;
        while (!nodes_[n].is_leaf()) {
            n = x[nodes_[n].axis] >= nodes_[n].threshold ? nodes_[n].hi : nodes_[n].lo;
            s += nodes_[n].value;
        }
        return s;
    }

    double beta() const { return beta_; }
    const std::vector<Node>& nodes() const { return nodes_; }

private:
    double beta_;
    std::vector<Node> nodes_;
    std::pair<int, int> last_{-1, -1};
};

// Free-function form of the split-merge step.
inline BranchingProgram lbp_split_merge(BranchingProgram state, const Dataset& d,
                                        const std::vector<int>& leaves, int axis, double threshold) {
    state.split_merge(d, leaves, axis, threshold);
    return state;
}

} // namespace properboost
