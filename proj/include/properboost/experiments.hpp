#pragma once

#include <algorithm>
#include <array>
#include <cstdio>
#include <cmath>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "properboost/booster.hpp"
#include "properboost/dataset.hpp"
#include "properboost/errors.hpp"
#include "properboost/losses.hpp"

namespace properboost {

struct SweepRecord {
    std::string loss;
    std::string model;
    double gamma = 0.0;
    double eta = 0.0;
    double theta = 0.0;
    double accuracy_clean = 0.0;
    double expected_posterior = 0.0;
    double bayes_posterior = 0.0;
    int weak_calls = 0;
    double final_surrogate = 0.0;
    std::string stop_reason;

    bool operator==(const SweepRecord&) const = default;
};

struct SweepConfig {
    BoostConfig boost{};
    ModelOptions model{};
    double big_k = 5.0;
};

struct CleanEvaluation {
    double accuracy = 0.0;
    double expected_posterior = 0.0;
};

// Multiplicity-weighted accuracy and mean inv_link(score) over the clean sample.
inline CleanEvaluation evaluate_clean(const ProperLoss& loss, const Dataset& clean,
                                      const std::function<double(const Point&)>& score) {
    double hit = 0.0, post = 0.0, m = 0.0;
    for (const auto& e : clean) {
        const double s = score(e.x);
        const double k = static_cast<double>(e.multiplicity);
        hit += k * (predict_label(s) == e.y ? 1.0 : 0.0);
        post += k * loss.inv_link(s);
        m += k;
    }
    return {hit / m, post / m};
}

inline SweepRecord run_cell(const ProperLoss& loss, ModelKind model, const LsDatasetSpec& spec,
                            const SweepConfig& cfg, RunResult* keep = nullptr) {
    const Dataset noisy = make_noisy(spec);
    const Dataset clean = make_clean(spec);
    RunResult res = run(loss, model, noisy, cfg.boost, cfg.model);
    const auto ev = evaluate_clean(loss, clean, res.score);
    SweepRecord r{std::string(loss.name()), std::string(model_name(model)), spec.gamma, spec.eta(),
                  spec.theta, ev.accuracy, ev.expected_posterior, bayes_posterior(spec),
                  res.weak_calls, res.surrogate_history.back(),
                  std::string(stop_reason_name(res.stop_reason))};
    if (keep) *keep = std::move(res);
    return r;
}

// One record per (loss, model, gamma, eta) cell, sorted by (loss, model, eta, gamma).
inline std::vector<SweepRecord> run_sweep(std::span<const LossKind> losses,
                                          std::span<const ModelKind> models,
                                          std::span<const double> gammas,
                                          std::span<const double> etas, double theta,
                                          const SweepConfig& cfg = {}) {
    if (losses.empty() || models.empty() || gammas.empty() || etas.empty())
        throw ConfigError("sweep grids must be nonempty");
    std::vector<SweepRecord> out;
    for (LossKind lk : losses) {
        const ProperLoss loss(lk);
        for (ModelKind mk : models)
            for (double eta : etas)
                for (double g : gammas) {
                    const LsDatasetSpec spec{g, cfg.big_k, copies_from_eta(eta), theta};
                    out.push_back(run_cell(loss, mk, spec, cfg));
                }
    }
    std::stable_sort(out.begin(), out.end(), [](const SweepRecord& a, const SweepRecord& b) {
        return std::tie(a.loss, a.model, a.eta, a.gamma) < std::tie(b.loss, b.model, b.eta, b.gamma);
    });
    return out;
}

inline std::vector<double> logspace(double lo, double hi, int n) {
    if (!(lo > 0.0 && hi > 0.0) || n < 1) throw ConfigError("logspace needs lo, hi > 0 and n >= 1");
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) {
        const double t = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
        v[i] = std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo)));
    }
    v.front() = lo;
    if (n > 1) v.back() = hi;
    return v;
}

// ============================================================================
// Ideal linear minimizer
// ============================================================================

struct IdealResult {
    double alpha1 = 0.0;
    double alpha2 = 0.0;
    double clean_accuracy = 0.0;
    double gradient_norm = 0.0;
    double risk = 0.0;
    long steps = 0;
};

// Minimizes E[Phi(-<a,x>) - y <a,x>] by gradient descent. Each step length
// comes from bisection on the directional derivative: near the optimum the
// risk itself is a difference of O(1) terms and stops resolving progress.
inline IdealResult ideal_linear_minimizer(const ProperLoss& loss, const Dataset& train,
                                          const Dataset& clean, double grad_tol = 1e-10,
                                          long max_steps = 1000000) {
    const double m = static_cast<double>(train.total_multiplicity());
    auto risk = [&](double a1, double a2) {
        double s = 0.0;
        for (const auto& e : train) {
            const double h = a1 * e.x[0] + a2 * e.x[1];
            s += static_cast<double>(e.multiplicity) * (loss.surrogate(-h) - (e.y == 1 ? h : 0.0));
        }
        return s / m;
    };
    auto grad = [&](double a1, double a2) {
        std::array<double, 2> g{0.0, 0.0};
        for (const auto& e : train) {
            const double r = static_cast<double>(e.multiplicity) *
                             (loss.inv_link(a1 * e.x[0] + a2 * e.x[1]) - e.y);
            g[0] += r * e.x[0];
            g[1] += r * e.x[1];
        }
        return std::array<double, 2>{g[0] / m, g[1] / m};
    };

    IdealResult out;
    for (;;) {
        const auto g = grad(out.alpha1, out.alpha2);
        out.gradient_norm = std::hypot(g[0], g[1]);
        if (out.gradient_norm < grad_tol) break;
        if (out.steps >= max_steps) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.3e", out.gradient_norm);
            throw NumericError("ideal linear minimizer did not converge in " +
                               std::to_string(max_steps) + " steps (|grad| = " + buf + ")");
        }
        // slope(t) = d/dt risk(alpha - t g), non-decreasing in t, negative at 0.
        auto slope = [&](double t) {
            const auto q = grad(out.alpha1 - t * g[0], out.alpha2 - t * g[1]);
            return -(q[0] * g[0] + q[1] * g[1]);
        };
        double lo = 0.0, hi = 1.0;
        while (slope(hi) < 0.0) {
            lo = hi;
            hi *= 2.0;
            if (hi > 1e30) throw NumericError("ideal linear minimizer: risk unbounded below");
        }
        while (hi - lo > 1e-15 * hi) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;
            (slope(mid) < 0.0 ? lo : hi) = mid;
        }
        const double step = 0.5 * (lo + hi);
        out.alpha1 -= step * g[0];
        out.alpha2 -= step * g[1];
        ++out.steps;
    }
    out.risk = risk(out.alpha1, out.alpha2);
    out.clean_accuracy = evaluate_clean(loss, clean, [&](const Point& x) {
                             return out.alpha1 * x[0] + out.alpha2 * x[1];
                         }).accuracy;
    return out;
}

inline IdealResult ideal_linear_minimizer(const ProperLoss& loss, const LsDatasetSpec& spec) {
    return ideal_linear_minimizer(loss, make_noisy(spec), make_clean(spec));
}

struct Lemma2Cell {
    double gamma;
    double big_k;
    Count n_copies;
    double clean_accuracy;
};

// First (N, K, gamma) cell, in grid order, where the ideal linear minimizer
// reaches at most 50% clean accuracy.
inline std::optional<Lemma2Cell> find_lemma2_cell(const ProperLoss& loss,
                                                  std::span<const double> gammas,
                                                  std::span<const double> ks,
                                                  std::span<const Count> ns) {
    for (Count n : ns)
        for (double k : ks)
            for (double g : gammas) {
                const auto r = ideal_linear_minimizer(loss, LsDatasetSpec{g, k, n, 0.0});
                if (r.clean_accuracy <= 0.5) return Lemma2Cell{g, k, n, r.clean_accuracy};
            }
    return std::nullopt;
}

// ============================================================================
// Rate bounds
// ============================================================================

struct RateExtras {
    double adt_outdegree = 2.0;  // N for N-ADT
    double m = 16.0;             // sample size for leveraged K-NN
    double k_rec = 1.0;          // min reciprocal neighbourhood size
    double lbp_c = 0.5;          // exponent constant in [0,1)
};

// min{1 - inv_link(theta), inv_link(-theta)}
inline double weight_floor(const ProperLoss& loss, double theta) {
    return std::min(loss.inv_link_complement(theta), loss.inv_link(-theta));
}

inline double rate_b_ls(const ProperLoss& loss, double epsilon, double theta, double gamma_wl) {
    if (!(epsilon > 0.0 && epsilon <= 1.0)) throw ConfigError("epsilon must lie in (0,1]");
    if (!(gamma_wl > 0.0 && gamma_wl <= 1.0)) throw ConfigError("gamma_wl must lie in (0,1]");
    if (!(theta >= 0.0)) throw ConfigError("theta must be >= 0");
    const double w = weight_floor(loss, theta);
    if (!(w > 0.0)) throw std::domain_error("weight floor is 0: theta outside the link's range");
    return 2.0 * (loss.surrogate(0.0) - loss.floor_c()) /
           (loss.kappa() * epsilon * epsilon * w * w * gamma_wl * gamma_wl);
}

inline double compute_rate_bound(ModelKind model, const ProperLoss& loss, double epsilon,
                                 double theta, double gamma_wl, const RateExtras& x = {}) {
    const double b = rate_b_ls(loss, epsilon, theta, gamma_wl);
    switch (model) {
    case ModelKind::ls: return b;
    case ModelKind::dt: return std::exp(b);
    case ModelKind::adt:
        if (!(x.adt_outdegree > 0.0)) throw ConfigError("ADT outdegree must be > 0");
        return x.adt_outdegree * std::exp(b / x.adt_outdegree);
    case ModelKind::knn:
        if (!(x.k_rec > 0.0) || !(x.m > 0.0)) throw ConfigError("K-NN bound needs m, K_rec > 0");
        return x.m * b / x.k_rec;
    case ModelKind::lbp:
        if (!(x.lbp_c >= 0.0 && x.lbp_c < 1.0)) throw ConfigError("LBP constant c must lie in [0,1)");
        return std::pow(b, 1.0 / (1.0 - x.lbp_c));
    }
    throw ConfigError("unknown model kind");
}

} // namespace properboost
