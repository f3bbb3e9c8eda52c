#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "properboost/dataset.hpp"
#include "properboost/leveraging.hpp"
#include "properboost/losses.hpp"
#include "properboost/models/adt.hpp"
#include "properboost/models/decision_tree.hpp"
#include "properboost/models/knn.hpp"
#include "properboost/models/lbp.hpp"
#include "properboost/models/linear.hpp"
#include "properboost/weak_learners.hpp"

namespace properboost {

struct BoostConfig {
    int max_iters = 64;
    double gamma_wl = kDefaultGammaWl;
    LeveragingTolerances tol{};
    double z_max = kZMax;
};

enum class StopReason { max_iters, exhausted };

inline std::string_view stop_reason_name(StopReason r) {
    return r == StopReason::max_iters ? "max_iters" : "exhausted";
}

struct StepRecord {
    int iteration = 0;
    int weak_call = 0;
    WeakHypothesis hypothesis;
    double alpha = 0.0;
    double residual = 0.0;
    double edge = 0.0;         // normalized edge before leveraging
    double region_mass = 0.0;  // p_t: share of the sample inside the region
    double mean_weight = 0.0;  // region's mean weight before leveraging
    double surrogate_before = 0.0;
    double surrogate_after = 0.0;
    bool saturated = false;
    bool companion = false;
};

template <class Model>
struct BoostState {
    Model model;
    std::vector<double> scores;
    std::vector<double> weights;
    int iteration = 0;
    std::vector<double> surrogate_history;
    int weak_calls = 0;
    StopReason stop_reason = StopReason::max_iters;
    std::vector<StepRecord> steps;
};

inline std::vector<double> init_weights(const ProperLoss& loss, const Dataset& d) {
    std::vector<double> w(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) w[i] = weight(loss, d[i].y, 0.0);
    return w;
}

inline double sample_surrogate(const ProperLoss& loss, const Dataset& d,
                               std::span<const double> scores) {
    std::vector<ScoredExample> xs;
    xs.reserve(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) xs.push_back({scores[i], d[i].y, d[i].multiplicity});
    return population_surrogate(loss, xs);
}

inline int predict_label(double score) { return score >= 0.0 ? 1 : 0; }

namespace detail {

// No finite root: push every member with h != 0 to margin >= z_max.
inline double saturating_alpha(const Dataset& d, std::span<const double> scores, const Leg& leg,
                               int direction, double z_max) {
    double a = 0.0;
    for (std::size_t k = 0; k < leg.region.size(); ++k) {
        if (leg.values[k] == 0.0) continue;
        const std::size_t i = leg.region[k];
        a = std::max(a, (z_max - d[i].y_star() * scores[i]) / std::abs(leg.values[k]));
    }
    return direction * a;
}

// Weights the weak learner sees: examples held at the saturation cap are
// finished and carry none, otherwise their tiny residual weight would keep
// attracting scale-free edges.
inline std::vector<double> search_weights(const ProperLoss& loss, const Dataset& d,
                                          std::span<const double> scores,
                                          std::span<const double> weights, double z_max) {
    std::vector<double> w(weights.begin(), weights.end());
    if (loss.bounded_link()) return w;
    for (std::size_t i = 0; i < d.size(); ++i)
        if (d[i].y_star() * scores[i] >= z_max) w[i] = 0.0;
    return w;
}

} // namespace detail

template <class Model>
BoostState<Model> boost(const ProperLoss& loss, const Dataset& d, Model model,
                        const BoostConfig& cfg = {}) {
    if (cfg.max_iters < 1) throw ConfigError("max_iters must be >= 1");
    if (d.empty()) throw ConfigError("cannot boost on an empty dataset");
    BoostState<Model> st{std::move(model), std::vector<double>(d.size(), 0.0), init_weights(loss, d)};
    st.surrogate_history.push_back(sample_surrogate(loss, d, st.scores));
    const double m = static_cast<double>(d.total_multiplicity());

    for (;;) {
        if (st.iteration >= cfg.max_iters) {
            st.stop_reason = StopReason::max_iters;
            break;
        }
        auto mv = st.model.propose(d, detail::search_weights(loss, d, st.scores, st.weights, cfg.z_max),
                                   cfg.gamma_wl);
        if (!mv) {
            st.stop_reason = StopReason::exhausted;
            break;
        }
        ++st.weak_calls;
        for (std::size_t l = 0; l < mv->legs.size(); ++l) {
            const Leg& leg = mv->legs[l];
            StepRecord rec;
            rec.iteration = st.iteration + 1;
            rec.weak_call = st.weak_calls;
            rec.hypothesis = leg.hypothesis;
            rec.companion = l > 0;
            rec.surrogate_before = st.surrogate_history.back();
            double card = 0.0, mass = 0.0;
            for (std::size_t i : leg.region) {
                card += static_cast<double>(d[i].multiplicity);
                mass += static_cast<double>(d[i].multiplicity) * st.weights[i];
            }
            rec.region_mass = card / m;
            rec.mean_weight = card > 0.0 ? mass / card : 0.0;
            rec.edge = mass > 0.0 && leg.hypothesis.max_abs > 0.0
                           ? normalized_edge(d, st.weights, leg.region, leg.hypothesis)
                           : 0.0;

            try {
                const auto sol = solve_alpha(loss, d, st.scores, leg.region, leg.values, cfg.tol);
                rec.alpha = sol.alpha;
                rec.residual = sol.residual;
            } catch (const DegenerateLeveraging& e) {
                rec.alpha = detail::saturating_alpha(d, st.scores, leg, e.direction(), cfg.z_max);
                rec.residual = leveraging_residual(loss, d, st.scores, leg.region, leg.values, rec.alpha);
                rec.saturated = true;
            }

            st.model.commit(d, *mv, l, rec.alpha);
            for (std::size_t k = 0; k < leg.region.size(); ++k) {
                const std::size_t i = leg.region[k];
                st.scores[i] += rec.alpha * leg.values[k];
                st.weights[i] = weight(loss, d[i].y, st.scores[i]);
            }
            rec.surrogate_after = sample_surrogate(loss, d, st.scores);
            st.surrogate_history.push_back(rec.surrogate_after);
            ++st.iteration;
            st.steps.push_back(rec);
        }
    }
    return st;
}

// ============================================================================
// Post-run checks
// ============================================================================

struct DecreaseReport {
    bool monotone = true;
    bool quantitative = true;
    int first_violation = -1;  // step index (1-based), -1 if none
    std::string diagnostic;

    bool ok() const { return monotone && quantitative; }
};

// Non-increasing surrogate, and per step a decrease of at least
// (p_t kappa / 2) * mean_weight^2 * gamma_wl^2 whenever the step's edge
// reached gamma_wl (saturated steps excluded).
inline DecreaseReport surrogate_decrease_check(const ProperLoss& loss,
                                               std::span<const StepRecord> steps,
                                               std::span<const double> history, double gamma_wl,
                                               double tol = 1e-12) {
    DecreaseReport r;
    for (std::size_t t = 1; t < history.size(); ++t) {
        if (history[t] > history[t - 1] + tol) {
            r.monotone = false;
            if (r.first_violation < 0) {
                r.first_violation = static_cast<int>(t);
                r.diagnostic = "surrogate increased at step " + std::to_string(t);
            }
        }
    }
    for (const auto& s : steps) {
        if (s.saturated || std::abs(s.edge) < gamma_wl) continue;
        const double need = s.region_mass * loss.kappa() / 2.0 * s.mean_weight * s.mean_weight *
                            gamma_wl * gamma_wl;
        if (s.surrogate_before - s.surrogate_after < need - tol) {
            r.quantitative = false;
            if (r.first_violation < 0) {
                r.first_violation = s.iteration;
                r.diagnostic = "decrease below the guaranteed amount at step " + std::to_string(s.iteration);
            }
        }
    }
    return r;
}

template <class Model>
DecreaseReport surrogate_decrease_check(const ProperLoss& loss, const BoostState<Model>& st,
                                        double gamma_wl = kDefaultGammaWl) {
    return surrogate_decrease_check(loss, st.steps, st.surrogate_history, gamma_wl);
}

// Pr_i[y*_i H(x_i) <= theta], multiplicity-weighted.
inline double margin_distribution(const Dataset& d, std::span<const double> scores, double theta) {
    Count below = 0;
    for (std::size_t i = 0; i < d.size(); ++i)
        if (d[i].y_star() * scores[i] <= theta) below += d[i].multiplicity;
    return static_cast<double>(below) / static_cast<double>(d.total_multiplicity());
}

template <class Model>
double margin_distribution(const BoostState<Model>& st, const Dataset& d, double theta) {
    return margin_distribution(d, st.scores, theta);
}

// ============================================================================
// Model-agnostic runs
// ============================================================================

struct ModelOptions {
    int adt_outdegree = 2;
    int knn_k = 1;
    double lbp_beta = 0.25;
};

struct RunResult {
    std::vector<double> scores;
    std::vector<double> weights;
    std::vector<double> surrogate_history;
    std::vector<StepRecord> steps;
    int weak_calls = 0;
    int iterations = 0;
    StopReason stop_reason = StopReason::max_iters;
    std::function<double(const Point&)> score;
};

template <class Model>
RunResult erase_model(BoostState<Model> st) {
    auto model = std::make_shared<Model>(std::move(st.model));
    return RunResult{std::move(st.scores), std::move(st.weights), std::move(st.surrogate_history),
                     std::move(st.steps), st.weak_calls, st.iteration, st.stop_reason,
                     [model](const Point& x) { return model->score(x); }};
}

inline RunResult run(const ProperLoss& loss, ModelKind kind, const Dataset& d,
                     const BoostConfig& cfg = {}, const ModelOptions& opt = {}) {
    switch (kind) {
    case ModelKind::ls: return erase_model(boost(loss, d, LinearModel{}, cfg));
    case ModelKind::dt: return erase_model(boost(loss, d, DecisionTree(d), cfg));
    case ModelKind::adt: return erase_model(boost(loss, d, AlternatingTree(d, opt.adt_outdegree), cfg));
    case ModelKind::knn: return erase_model(boost(loss, d, KnnModel(d, opt.knn_k), cfg));
    case ModelKind::lbp: return erase_model(boost(loss, d, BranchingProgram(d, opt.lbp_beta), cfg));
    }
    throw ConfigError("unknown model kind");
}

} // namespace properboost
