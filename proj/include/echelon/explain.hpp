#pragma once

#include <span>
#include <vector>

#include "echelon/features.hpp"
#include "echelon/svr.hpp"

namespace echelon::model {

// Additive per-feature attribution for a linear model against a background
// point: contribution_j = w_j * (x_j - background_j). For a linear map these
// are exactly the Shapley values, and baseline + sum(contributions)
// reproduces the prediction.
struct LinearExplanation {
  double baseline = 0.0;    // prediction at the background point
  double prediction = 0.0;  // prediction at x
  std::vector<double> contributions;  // dense, one per feature
};

LinearExplanation explain_linear(const SvrModel& model,
                                 const features::SparseVector& x,
                                 std::span<const double> background);

}  // namespace echelon::model
