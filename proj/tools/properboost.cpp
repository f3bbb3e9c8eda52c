// properboost: sweeps, ideal linear minimizer and rate bounds on the
// Long-Servedio construction.

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "properboost/properboost.hpp"

namespace pb = properboost;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

std::vector<std::string> split_list(const std::vector<std::string>& raw) {
    std::vector<std::string> out;
    for (const auto& item : raw) {
        std::stringstream ss(item);
        for (std::string tok; std::getline(ss, tok, ',');)
            if (!tok.empty()) out.push_back(tok);
    }
    return out;
}

std::vector<double> to_doubles(const std::vector<std::string>& raw, const char* what) {
    std::vector<double> v;
    for (const auto& s : split_list(raw)) {
        try {
            std::size_t used = 0;
            v.push_back(std::stod(s, &used));
            if (used != s.size()) throw std::invalid_argument(s);
        } catch (const std::exception&) {
            throw pb::ConfigError(std::string("bad number for ") + what + ": '" + s + "'");
        }
    }
    return v;
}

std::vector<double> parse_gamma_grid(const std::string& spec) {
    std::stringstream ss(spec);
    std::string lo, hi, n;
    if (!std::getline(ss, lo, ':') || !std::getline(ss, hi, ':') || !std::getline(ss, n))
        throw pb::ConfigError("--gamma-grid expects lo:hi:n");
    try {
        return pb::logspace(std::stod(lo), std::stod(hi), std::stoi(n));
    } catch (const pb::ConfigError&) {
        throw;
    } catch (const std::exception&) {
        throw pb::ConfigError("--gamma-grid expects lo:hi:n, got '" + spec + "'");
    }
}

// eta from --eta, or from --N as 1/(N+1).
std::vector<double> noise_levels(const std::vector<std::string>& etas, const std::vector<std::string>& ns) {
    if (!ns.empty()) {
        std::vector<double> out;
        for (double n : to_doubles(ns, "--N")) {
            if (n < 2 || n != static_cast<double>(static_cast<long long>(n)))
                throw pb::ConfigError("--N must be an integer >= 2");
            out.push_back(1.0 / (n + 1.0));
        }
        return out;
    }
    return to_doubles(etas, "--eta");
}

pb::Count single_copies(double eta, double n) {
    if (n > 0) {
        if (n < 2 || n != static_cast<double>(static_cast<long long>(n)))
            throw pb::ConfigError("--N must be an integer >= 2");
        return static_cast<pb::Count>(n);
    }
    return pb::copies_from_eta(eta);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Proper-loss boosting on the Long-Servedio construction"};
    app.require_subcommand(1);

    // sweep
    auto* sweep = app.add_subcommand("sweep", "Run a grid of boosting experiments and write CSV");
    std::vector<std::string> s_loss{"square"}, s_model{"ls"}, s_eta, s_n, s_svg;
    std::string s_grid = "0.001:0.5:40", s_out;
    double s_theta = 0.0, s_k = 5.0;
    pb::SweepConfig s_cfg;
    sweep->add_option("--loss", s_loss, "matusita|log|square|asym1 (comma list)");
    sweep->add_option("--model", s_model, "ls|dt|adt|knn|lbp (comma list)");
    sweep->add_option("--gamma-grid", s_grid, "log-spaced margins lo:hi:n")->capture_default_str();
    auto* s_eta_opt = sweep->add_option("--eta", s_eta, "noise rates (comma list)");
    auto* s_n_opt = sweep->add_option("--N", s_n, "copies per clean sample; eta = 1/(N+1)");
    s_eta_opt->excludes(s_n_opt);
    sweep->add_option("--K", s_k, "construction constant K")->capture_default_str();
    sweep->add_option("--theta", s_theta, "rotation angle in [0, 2pi)")->capture_default_str();
    sweep->add_option("--iters", s_cfg.boost.max_iters, "boosting iterations T")->capture_default_str();
    sweep->add_option("--gamma-wl", s_cfg.boost.gamma_wl, "weak learning edge threshold")->capture_default_str();
    sweep->add_option("--tol-alpha", s_cfg.boost.tol.tol_alpha, "bisection width tolerance")->capture_default_str();
    sweep->add_option("--tol-resid", s_cfg.boost.tol.tol_resid, "leveraging residual tolerance")->capture_default_str();
    sweep->add_option("--adt-outdegree", s_cfg.model.adt_outdegree, "stumps per ADT prediction node")->capture_default_str();
    sweep->add_option("--knn-k", s_cfg.model.knn_k, "neighbours K")->capture_default_str();
    sweep->add_option("--lbp-beta", s_cfg.model.lbp_beta, "LBP leaf-set J fraction")->capture_default_str();
    sweep->add_option("--out", s_out, "CSV output path")->required();
    sweep->add_option("--svg", s_svg, "panel:path, panel in accuracy|posterior|calls (repeatable)");

    // ideal
    auto* ideal = app.add_subcommand("ideal", "Minimize the population surrogate over linear models");
    std::string i_loss = "square";
    double i_gamma = 0.1, i_eta = 0.0, i_n = 0.0, i_k = 5.0;
    ideal->add_option("--loss", i_loss)->capture_default_str();
    ideal->add_option("--gamma", i_gamma)->capture_default_str();
    auto* i_eta_opt = ideal->add_option("--eta", i_eta, "noise rate");
    auto* i_n_opt = ideal->add_option("--N", i_n, "copies per clean sample");
    i_eta_opt->excludes(i_n_opt);
    ideal->add_option("--K", i_k)->capture_default_str();

    // bound
    auto* bound = app.add_subcommand("bound", "Evaluate a boosting rate bound");
    std::string b_model = "ls", b_loss = "square";
    double b_eps = 0.1, b_theta = 0.0, b_gwl = pb::kDefaultGammaWl;
    pb::RateExtras b_x;
    bound->add_option("--model", b_model)->capture_default_str();
    bound->add_option("--loss", b_loss)->capture_default_str();
    bound->add_option("--epsilon", b_eps)->capture_default_str();
    bound->add_option("--theta", b_theta)->capture_default_str();
    bound->add_option("--gamma-wl", b_gwl)->capture_default_str();
    bound->add_option("--adt-outdegree", b_x.adt_outdegree)->capture_default_str();
    bound->add_option("--m", b_x.m, "sample size (knn)")->capture_default_str();
    bound->add_option("--k-rec", b_x.k_rec, "min reciprocal neighbourhood size (knn)")->capture_default_str();
    bound->add_option("--lbp-c", b_x.lbp_c, "LBP exponent constant in [0,1)")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (*sweep) {
            std::vector<pb::LossKind> losses;
            for (const auto& s : split_list(s_loss)) losses.push_back(pb::parse_loss_kind(s));
            std::vector<pb::ModelKind> models;
            for (const auto& s : split_list(s_model)) models.push_back(pb::parse_model_kind(s));
            std::vector<double> etas = noise_levels(s_eta, s_n);
            if (etas.empty()) etas = {0.25};
            s_cfg.big_k = s_k;
            std::vector<std::pair<pb::Panel, std::string>> svgs;
            for (const auto& spec : s_svg) {
                const auto colon = spec.find(':');
                if (colon == std::string::npos) throw pb::ConfigError("--svg expects panel:path");
                svgs.push_back({pb::parse_panel(spec.substr(0, colon)), spec.substr(colon + 1)});
            }
            const auto gammas = parse_gamma_grid(s_grid);
            const auto records = pb::run_sweep(losses, models, gammas, etas, s_theta, s_cfg);
            pb::emit_csv(records, s_out);
            for (const auto& [panel, path] : svgs) pb::emit_svg(records, path, panel);
            std::cout << "wrote " << records.size() << " records to " << s_out << '\n';
        } else if (*ideal) {
            const pb::ProperLoss loss = pb::make_loss(i_loss);
            if (i_eta == 0.0 && i_n == 0.0) i_n = 3;
            const pb::LsDatasetSpec spec{i_gamma, i_k, single_copies(i_eta, i_n), 0.0};
            const auto r = pb::ideal_linear_minimizer(loss, spec);
            std::cout << "alpha1," << pb::fmt_double(r.alpha1) << '\n'
                      << "alpha2," << pb::fmt_double(r.alpha2) << '\n'
                      << "clean_accuracy," << pb::fmt_double(r.clean_accuracy) << '\n'
                      << "gradient_norm," << pb::fmt_double(r.gradient_norm) << '\n'
                      << "risk," << pb::fmt_double(r.risk) << '\n'
                      << "steps," << r.steps << '\n';
        } else if (*bound) {
            const pb::ProperLoss loss = pb::make_loss(b_loss);
            const auto model = pb::parse_model_kind(b_model);
            std::cout << pb::fmt_double(pb::compute_rate_bound(model, loss, b_eps, b_theta, b_gwl, b_x)) << '\n';
        }
    } catch (const pb::NumericError& e) {
        std::cerr << "numeric failure: " << e.what() << '\n';
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }
    return 0;
}
