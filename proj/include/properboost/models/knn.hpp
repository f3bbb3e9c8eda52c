#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include "properboost/models/plm.hpp"
#include "properboost/weak_learners.hpp"

namespace properboost {

// Neighbours of x among the training examples: the nearest ones until their
// multiplicities reach K, plus every tie at the last distance. Includes x's
// own co-located examples (distance 0).
inline std::vector<std::size_t> knn_neighbors(const Dataset& d, const Point& x, int k) {
    std::vector<std::pair<double, std::size_t>> by_dist;
    by_dist.reserve(d.size());
    for (std::size_t j = 0; j < d.size(); ++j)
        by_dist.push_back({std::hypot(d[j].x[0] - x[0], d[j].x[1] - x[1]), j});
    std::sort(by_dist.begin(), by_dist.end());
    std::vector<std::size_t> out;
    Count seen = 0;
    double cutoff = 0.0;
    for (const auto& [dist, j] : by_dist) {
        if (seen >= k && dist > cutoff) break;
        out.push_back(j);
        seen += d[j].multiplicity;
        cutoff = dist;
    }
    std::sort(out.begin(), out.end());
    return out;
}

struct KnnState {
    int k = 1;
    std::vector<std::vector<std::size_t>> neighbors;  // NN(i)
    std::vector<Region> reciprocal;                   // R(j) = {i : j in NN(i)}
    std::vector<std::size_t> candidates;              // one per distinct R(j)
    Count k_rec = 0;                                  // min multiplicity of any R(j)
};

inline KnnState knn_build_index(const Dataset& d, int k) {
    if (k < 1) throw ConfigError("K must be >= 1");
    if (d.empty()) throw ConfigError("K-NN index over an empty dataset");
    KnnState s;
    s.k = k;
    s.reciprocal.assign(d.size(), {});
    for (std::size_t i = 0; i < d.size(); ++i) {
        s.neighbors.push_back(knn_neighbors(d, d[i].x, k));
        for (std::size_t j : s.neighbors.back()) s.reciprocal[j].push_back(i);
    }
    s.k_rec = d.total_multiplicity();
    for (std::size_t j = 0; j < d.size(); ++j) {
        Count c = 0;
        for (std::size_t i : s.reciprocal[j]) c += d[i].multiplicity;
        s.k_rec = std::min(s.k_rec, c);
        const bool fresh = std::none_of(s.candidates.begin(), s.candidates.end(),
                                        [&](std::size_t q) { return s.reciprocal[q] == s.reciprocal[j]; });
        if (fresh) s.candidates.push_back(j);
    }
    return s;
}

// Candidate whose reciprocal neighbourhood gives the largest |edge| for h = +1.
inline std::optional<std::pair<std::size_t, EdgeReport>>
knn_best_leverage_point(const Dataset& d, std::span<const double> w, const KnnState& s,
                        double gamma_wl) {
    std::optional<std::pair<std::size_t, EdgeReport>> best;
    for (std::size_t j : s.candidates) {
        const Region& r = s.reciprocal[j];
        if (!(detail::weight_mass(d, w, r) > 0.0)) continue;
        const auto h = WeakHypothesis::constant(1.0);
        const double e = normalized_edge(d, w, r, h);
        if (!best || detail::beats(std::abs(e), best->second.abs_edge))
            best = std::pair{j, EdgeReport{h, e, std::abs(e)}};
    }
    if (!best || best->second.abs_edge < gamma_wl) return std::nullopt;
    return best;
}

// Leveraged nearest neighbours: score(x) = sum of c_j over x's neighbours j.
class KnnModel {
public:
    struct Move {
        std::vector<Leg> legs;
        std::size_t point = 0;
    };

    KnnModel(const Dataset& d, int k) : train_(d), index_(knn_build_index(d, k)), c_(d.size(), 0.0) {}

    std::optional<Move> propose(const Dataset& d, std::span<const double> w, double gamma_wl) const {
        auto best = knn_best_leverage_point(d, w, index_, gamma_wl);
        if (!best) return std::nullopt;
        return Move{{make_leg(d, best->second.hypothesis, index_.reciprocal[best->first])}, best->first};
    }

    void commit(const Dataset&, const Move& mv, std::size_t leg, double alpha) {
        c_[mv.point] += alpha * mv.legs[leg].hypothesis.value;
    }

    double score(const Point& x) const {
        double s = 0.0;
        for (std::size_t j : knn_neighbors(train_, x, index_.k)) s += c_[j];
        return s;
    }

    const KnnState& index() const { return index_; }
    const std::vector<double>& leveraged() const { return c_; }

private:
    Dataset train_;
    KnnState index_;
    std::vector<double> c_;
};

} // namespace properboost
