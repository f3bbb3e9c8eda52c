#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include "properboost/losses.hpp"
#include "properboost/models/plm.hpp"
#include "properboost/weak_learners.hpp"

namespace properboost {

inline constexpr double kZMax = 50.0;

// Decision tree whose leaves hold the cumulative score H_leaf. A split is
// grown by leveraging a half-split and then its companion.
class DecisionTree {
public:
    struct Node {
        int axis = -1;  // -1 for a leaf
        double threshold = 0.0;
        int lo = -1, hi = -1;
        double score = 0.0;
        Region members;

        bool is_leaf() const { return axis < 0; }
    };

    struct LeafInfo {
        int node;
        Region members;
        double score;
        Count m;
        Count m_plus;

        double p_plus() const { return static_cast<double>(m_plus) / static_cast<double>(m); }
    };

    struct Move {
        std::vector<Leg> legs;
        int leaf = 0;
        bool split = false;
    };

    explicit DecisionTree(const Dataset& d) { nodes_.push_back(Node{-1, 0.0, -1, -1, 0.0, whole_region(d)}); }

    std::optional<Move> propose(const Dataset& d, std::span<const double> w, double gamma_wl) const {
        const std::vector<int> ids = leaf_ids();
        std::vector<Region> regions;
        for (int id : ids) regions.push_back(nodes_[id].members);
        const int leaf = ids[choose_region_by_J(d, w, regions)];
        const Region& r = nodes_[leaf].members;
        auto best = best_leaf_hypothesis(d, w, r, gamma_wl);
        if (!best) return std::nullopt;
        Move mv;
        mv.leaf = leaf;
        mv.split = best->hypothesis.kind == HypothesisKind::stump_half;
        mv.legs.push_back(make_leg(d, best->hypothesis, r));
        if (mv.split) mv.legs.push_back(make_leg(d, companion_hypothesis(best->hypothesis), r));
        return mv;
    }

    void commit(const Dataset& d, const Move& mv, std::size_t leg, double alpha) {
        const WeakHypothesis& h = mv.legs[leg].hypothesis;
        if (!mv.split) {
            nodes_[mv.leaf].score += alpha * h.value;
            return;
        }
        if (leg == 0) grow(d, mv.leaf, h.axis, h.threshold);
        const Node& parent = nodes_[mv.leaf];
        Node& child = nodes_[h.upper ? parent.hi : parent.lo];
        child.score += alpha * h.value;
    }

    double score(const Point& x) const {
        int n = 0;
        while (!nodes_[n].is_leaf())
            n = x[nodes_[n].axis] >= nodes_[n].threshold ? nodes_[n].hi : nodes_[n].lo;
        return nodes_[n].score;
    }

    std::vector<int> leaf_ids() const {
        std::vector<int> ids;
        for (int i = 0; i < static_cast<int>(nodes_.size()); ++i)
            if (nodes_[i].is_leaf()) ids.push_back(i);
        return ids;
    }

    std::vector<LeafInfo> leaves(const Dataset& d) const {
        std::vector<LeafInfo> out;
        for (int id : leaf_ids()) {
            LeafInfo li{id, nodes_[id].members, nodes_[id].score, 0, 0};
            for (std::size_t i : li.members) {
                li.m += d[i].multiplicity;
                if (d[i].y == 1) li.m_plus += d[i].multiplicity;
            }
            out.push_back(std::move(li));
        }
        return out;
    }

    const std::vector<Node>& nodes() const { return nodes_; }

private:
    // Children inherit the parent's cumulative score.
    void grow(const Dataset& d, int leaf, int axis, double threshold) {
        Node lo{-1, 0.0, -1, -1, nodes_[leaf].score, {}};
        Node hi = lo;
        for (std::size_t i : nodes_[leaf].members)
            (d[i].x[axis] >= threshold ? hi : lo).members.push_back(i);
        nodes_.push_back(std::move(lo));
        nodes_.push_back(std::move(hi));
        Node& p = nodes_[leaf];
        p.axis = axis;
        p.threshold = threshold;
        p.lo = static_cast<int>(nodes_.size()) - 2;
        p.hi = static_cast<int>(nodes_.size()) - 1;
        p.members.clear();
    }

    std::vector<Node> nodes_;
};

// ============================================================================
// Leaf identities
// ============================================================================

// Leaf score after leveraging: fwd_link(p+), saturated at +-kZMax for
// unbounded links at pure leaves.
inline double dt_leaf_closed_form(const ProperLoss& loss, double p_plus) {
    if (!(p_plus >= 0.0 && p_plus <= 1.0)) throw std::domain_error("p+ outside [0,1]");
    if (!loss.bounded_link()) {
        if (p_plus <= 0.0) return -kZMax;
        if (p_plus >= 1.0) return kZMax;
    }
    return loss.fwd_link(p_plus);
}

// sum_leaf (m_leaf / m) L(p+_leaf).
inline double dt_population_surrogate_identity(const ProperLoss& loss, const DecisionTree& tree,
                                               const Dataset& d) {
    const double m = static_cast<double>(d.total_multiplicity());
    double s = 0.0;
    for (const auto& leaf : tree.leaves(d))
        if (leaf.m > 0) s += static_cast<double>(leaf.m) / m * loss.bayes_risk(leaf.p_plus());
    return s;
}

// Noisy leaf positive rate when clean labels are flipped at rate eta.
inline double noisy_leaf_fraction(double p_clean, double eta) {
    return eta + (1.0 - 2.0 * eta) * p_clean;
}

// Split-until condition for the asymmetric case, checked on every leaf.
inline bool noise_immunity_condition(const ProperLoss& loss, double eta,
                                     std::span<const double> clean_leaf_fractions) {
    const double ps = loss.inv_link(0.0);
    const double lo = std::min((ps - eta) / (1.0 - 2.0 * eta), 0.5);
    const double hi = std::min(((1.0 - ps) - eta) / (1.0 - 2.0 * eta), 0.5);
    return std::all_of(clean_leaf_fractions.begin(), clean_leaf_fractions.end(),
                       [&](double p) { return p <= lo || 1.0 - p <= hi; });
}

// Whether sign(H_leaf) is the same with and without label noise.
inline bool leaf_sign_unaffected(const ProperLoss& loss, double p_clean, double eta) {
    const double clean = dt_leaf_closed_form(loss, p_clean);
    const double noisy = dt_leaf_closed_form(loss, noisy_leaf_fraction(p_clean, eta));
    return (clean >= 0.0) == (noisy >= 0.0);
}

} // namespace properboost
