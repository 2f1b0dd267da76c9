#pragma once

#include <span>
#include <vector>

namespace echelon::model {

// Rank-correlation metrics return NaN when either input has zero variance
// (the statistic is undefined there); MAE is always defined.
struct EvalReport {
  double pearson_r = 0.0;
  double spearman_rho = 0.0;
  double kendall_tau = 0.0;
  double mae = 0.0;
};

// Average (fractional) ranks, 1-based; ties share the mean of their ranks.
std::vector<double> fractional_ranks(std::span<const double> x);

double pearson(std::span<const double> a, std::span<const double> b);
double spearman(std::span<const double> a, std::span<const double> b);

// Tau-b with tie correction, O(n log n) via merge-sort inversion counting.
double kendall_tau_b(std::span<const double> a, std::span<const double> b);

double mean_abs_error(std::span<const double> y_true,
                      std::span<const double> y_pred);

// All four metrics; lengths must match and be at least 3.
EvalReport evaluate(std::span<const double> y_true,
                    std::span<const double> y_pred);

}  // namespace echelon::model
