#pragma once

#include "properboost/errors.hpp"
#include "properboost/losses.hpp"
#include "properboost/dataset.hpp"
#include "properboost/hypothesis.hpp"
#include "properboost/weak_learners.hpp"
#include "properboost/leveraging.hpp"
#include "properboost/models/plm.hpp"
#include "properboost/models/linear.hpp"
#include "properboost/models/decision_tree.hpp"
#include "properboost/models/adt.hpp"
#include "properboost/models/knn.hpp"
#include "properboost/models/lbp.hpp"
#include "properboost/booster.hpp"
#include "properboost/experiments.hpp"
#include "properboost/io.hpp"
