#pragma once

#include <string_view>
#include <vector>

#include "properboost/dataset.hpp"
#include "properboost/errors.hpp"
#include "properboost/hypothesis.hpp"

namespace properboost {

// One leveraging step handed to the booster: a hypothesis restricted to a
// region, with its values at the region's members.
struct Leg {
    WeakHypothesis hypothesis;
    Region region;
    std::vector<double> values;
};

inline Leg make_leg(const Dataset& d, const WeakHypothesis& h, Region region) {
    Leg leg{normalized_on(h, d, region), std::move(region), {}};
    leg.values.reserve(leg.region.size());
    for (std::size_t i : leg.region) leg.values.push_back(leg.hypothesis(d[i].x));
    return leg;
}

enum class ModelKind { ls, dt, adt, knn, lbp };

inline constexpr ModelKind kAllModels[] = {ModelKind::ls, ModelKind::dt, ModelKind::adt,
                                           ModelKind::knn, ModelKind::lbp};

inline std::string_view model_name(ModelKind k) {
    switch (k) {
    case ModelKind::ls: return "ls";
    case ModelKind::dt: return "dt";
    case ModelKind::adt: return "adt";
    case ModelKind::knn: return "knn";
    case ModelKind::lbp: return "lbp";
    }
    return "?";
}

inline ModelKind parse_model_kind(std::string_view name) {
    for (ModelKind k : kAllModels)
        if (model_name(k) == name) return k;
    throw ConfigError("unknown model '" + std::string(name) + "' (expected ls|dt|adt|knn|lbp)");
}

// Split test shared by the tree-shaped models.
struct SplitCondition {
    int axis = 0;
    double threshold = 0.0;
    bool upper = true;

    bool holds(const Point& x) const { return upper ? x[axis] >= threshold : x[axis] < threshold; }
};

} // namespace properboost
