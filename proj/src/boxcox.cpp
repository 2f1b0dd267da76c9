#include "echelon/boxcox.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "echelon/errors.hpp"

namespace echelon::model {

namespace {

constexpr double kLambdaLo = -5.0;
constexpr double kLambdaHi = 5.0;
constexpr double kLambdaZeroEps = 1e-9;

double transform_one(double y_shifted, double lambda) {
  if (std::fabs(lambda) < kLambdaZeroEps) return std::log(y_shifted);
  return (std::pow(y_shifted, lambda) - 1.0) / lambda;
}

void check_positive(std::span<const double> y, double shift) {
  for (double v : y)
    if (v + shift <= 0.0)
      throw ValidationError("box-cox: value " + std::to_string(v) +
                            " is not positive after shift");
}

}  // namespace

double boxcox_loglik(std::span<const double> y, double shift, double lambda) {
  const std::size_t n = y.size();
  double sum_log = 0.0;
  for (double v : y) sum_log += std::log(v + shift);

  double mean = 0.0;
  std::vector<double> z(n);
  for (std::size_t i = 0; i < n; ++i) {
    z[i] = transform_one(y[i] + shift, lambda);
    mean += z[i];
  }
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double v : z) {
    const double d = v - mean;
    ss += d * d;
  }
  const double var = ss / static_cast<double>(n);  // MLE variance
  if (var <= 0.0 || !std::isfinite(var)) return -1e300;
  return -0.5 * static_cast<double>(n) * std::log(var) +
         (lambda - 1.0) * sum_log;
}

BoxCoxTransform boxcox_fit(std::span<const double> y, double shift) {
  if (y.size() < 3)
    throw ValidationError("box-cox: need at least 3 observations");
  check_positive(y, shift);
  double lo = y[0], hi = y[0];
  for (double v : y) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (lo == hi) throw ValidationError("box-cox: input is constant");

  // Coarse grid keeps the profile from trapping the line search in a local
  // ripple; the golden-section pass then pins lambda down.
  double best_lambda = 1.0, best_ll = -1e301;
  for (double l = kLambdaLo; l <= kLambdaHi + 1e-12; l += 0.01) {
    const double ll = boxcox_loglik(y, shift, l);
    if (ll > best_ll) {
      best_ll = ll;
      best_lambda = l;
    }
  }

  double a = std::max(kLambdaLo, best_lambda - 0.01);
  double b = std::min(kLambdaHi, best_lambda + 0.01);
  const double gr = 0.6180339887498949;
  double c = b - gr * (b - a);
  double d = a + gr * (b - a);
  double fc = boxcox_loglik(y, shift, c);
  double fd = boxcox_loglik(y, shift, d);
  while (b - a > 1e-8) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = boxcox_loglik(y, shift, c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = boxcox_loglik(y, shift, d);
    }
  }

  BoxCoxTransform t;
  t.lambda = (a + b) / 2.0;
  if (std::fabs(t.lambda) < kLambdaZeroEps) t.lambda = 0.0;
  t.shift = shift;
  t.fitted = true;
  t.log_likelihood = boxcox_loglik(y, shift, t.lambda);
  return t;
}

double boxcox_apply_one(const BoxCoxTransform& t, double y) {
  const double v = y + t.shift;
  if (v <= 0.0)
    throw ValidationError("box-cox: value " + std::to_string(y) +
                          " is not positive after shift");
  return transform_one(v, t.lambda);
}

std::vector<double> boxcox_apply(const BoxCoxTransform& t,
                                 std::span<const double> y) {
  std::vector<double> out;
  out.reserve(y.size());
  for (double v : y) out.push_back(boxcox_apply_one(t, v));
  return out;
}

double boxcox_invert_one(const BoxCoxTransform& t, double z) {
  if (std::fabs(t.lambda) < kLambdaZeroEps) return std::exp(z) - t.shift;
  const double w = t.lambda * z + 1.0;
  if (w <= 0.0)
    throw ValidationError("box-cox: " + std::to_string(z) +
                          " is outside the transform's range");
  return std::pow(w, 1.0 / t.lambda) - t.shift;
}

std::vector<double> boxcox_invert(const BoxCoxTransform& t,
                                  std::span<const double> z) {
  std::vector<double> out;
  out.reserve(z.size());
  for (double v : z) out.push_back(boxcox_invert_one(t, v));
  return out;
}

}  // namespace echelon::model
