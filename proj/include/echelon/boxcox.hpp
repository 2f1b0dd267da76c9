#pragma once

#include <span>
#include <vector>

namespace echelon::model {

// Power transform y -> (y^lambda - 1) / lambda (ln y at lambda = 0), with an
// optional shift added first so inputs stay positive. Lambda is fit by
// maximizing the profile log-likelihood on a grid over [-5, 5] refined by
// golden-section search.
struct BoxCoxTransform {
  double lambda = 1.0;
  double shift = 0.0;
  bool fitted = false;
  double log_likelihood = 0.0;
};

BoxCoxTransform boxcox_fit(std::span<const double> y, double shift = 0.0);

// Profile log-likelihood at a given lambda (shift already applied by the
// caller is not assumed: `y` is raw and `shift` is added here).
double boxcox_loglik(std::span<const double> y, double shift, double lambda);

double boxcox_apply_one(const BoxCoxTransform& t, double y);
std::vector<double> boxcox_apply(const BoxCoxTransform& t,
                                 std::span<const double> y);

// Inverse transform; z outside the image of the forward map is an error.
double boxcox_invert_one(const BoxCoxTransform& t, double z);
std::vector<double> boxcox_invert(const BoxCoxTransform& t,
                                  std::span<const double> z);

}  // namespace echelon::model
