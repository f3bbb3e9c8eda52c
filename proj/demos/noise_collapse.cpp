// Train a linear separator and a decision tree on the noisy Long-Servedio
// sample and compare them on the clean one.

#include <cstdio>

#include "properboost/properboost.hpp"

using namespace properboost;

int main() {
    const LsDatasetSpec spec{0.02, 5.0, 3, 0.0};
    const SweepConfig cfg;

    std::printf("gamma=%.3g  eta=%.3g  bayes posterior=%.3g\n\n", spec.gamma, spec.eta(),
                bayes_posterior(spec));
    std::printf("%-9s %-5s %9s %10s %6s\n", "loss", "model", "accuracy", "posterior", "calls");
    for (LossKind lk : kAllLosses) {
        const ProperLoss loss(lk);
        for (ModelKind mk : {ModelKind::ls, ModelKind::dt}) {
            const SweepRecord r = run_cell(loss, mk, spec, cfg);
            std::printf("%-9s %-5s %9.3f %10.4f %6d\n", r.loss.c_str(), r.model.c_str(),
                        r.accuracy_clean, r.expected_posterior, r.weak_calls);
        }
    }
}
