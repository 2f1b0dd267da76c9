#include "echelon/svr.hpp"

#include <cmath>
#include <numeric>

#include "echelon/errors.hpp"
#include "echelon/rng.hpp"

namespace echelon::model {

double SvrModel::predict(const features::SparseVector& x) const {
  if (x.dim != weights.size())
    throw ValidationError("svr: feature dimension mismatch");
  return x.dot_dense(weights) + bias;
}

// Dual problem (L1 loss):
//   min_beta 0.5 beta^T Q beta + eps * ||beta||_1 - y^T beta,
//   s.t. -C <= beta_i <= C,  Q_ij = x_i^T x_j  (x augmented with a 1),
// with w = sum_i beta_i x_i. One coordinate at a time: the gradient of the
// smooth part is G = w^T x_i - y_i, the subgradient bracket is [G - eps,
// G + eps], and the unconstrained minimizer along the coordinate follows
// from the quadratic term Q_ii, then gets clipped to the box.
SvrModel train_svr(const std::vector<features::SparseVector>& x,
                   std::span<const double> y, const SvrParams& params) {
  const std::size_t l = x.size();
  if (l != y.size()) throw ValidationError("svr: |x| != |y|");
  if (l < 2) throw ValidationError("svr: need at least 2 instances");
  if (params.c <= 0.0) throw ValidationError("svr: C must be positive");
  if (params.epsilon < 0.0)
    throw ValidationError("svr: epsilon must be non-negative");
  if (params.tol <= 0.0) throw ValidationError("svr: tol must be positive");
  if (params.max_passes < 1)
    throw ValidationError("svr: max_passes must be at least 1");

  const std::size_t dim = x[0].dim;
  for (const auto& xi : x)
    if (xi.dim != dim) throw ValidationError("svr: inconsistent feature dims");

  const double upper = params.c;
  // Augmented weight vector; the last slot is the bias feature.
  std::vector<double> w(dim + 1, 0.0);
  std::vector<double> beta(l, 0.0);
  std::vector<double> qd(l);
  for (std::size_t i = 0; i < l; ++i) {
    double s = 1.0;  // the constant bias feature
    for (const auto& [idx, v] : x[i].entries) s += v * v;
    qd[i] = s;
  }

  auto dot_w = [&](std::size_t i) {
    double s = w[dim];
    for (const auto& [idx, v] : x[i].entries)
      s += v * w[static_cast<std::size_t>(idx)];
    return s;
  };
  auto axpy_w = [&](std::size_t i, double d) {
    w[dim] += d;
    for (const auto& [idx, v] : x[i].entries)
      w[static_cast<std::size_t>(idx)] += d * v;
  };
  auto dual_objective = [&] {
    double obj = 0.0;
    for (double v : w) obj += v * v;
    obj *= 0.5;
    for (std::size_t i = 0; i < l; ++i)
      obj += params.epsilon * std::fabs(beta[i]) - y[i] * beta[i];
    return obj;
  };

  std::vector<std::size_t> index(l);
  std::iota(index.begin(), index.end(), std::size_t{0});
  Rng rng(params.seed);

  SvrModel model;
  model.params = params;
  double gnorm_init = -1.0;

  int pass = 0;
  for (; pass < params.max_passes; ++pass) {
    rng.shuffle(index);
    double gnorm = 0.0;
    for (const std::size_t i : index) {
      const double g = dot_w(i) - y[i];
      const double gp = g + params.epsilon;
      const double gn = g - params.epsilon;

      // Projected-gradient violation at beta_i, box [-C, C] with the
      // |beta| kink at zero.
      double violation = 0.0;
      if (beta[i] >= upper) {
        if (gp > 0.0) violation = gp;
      } else if (beta[i] <= -upper) {
        if (gn < 0.0) violation = -gn;
      } else if (beta[i] > 0.0) {
        violation = std::fabs(gp);
      } else if (beta[i] < 0.0) {
        violation = std::fabs(gn);
      } else {
        if (gp < 0.0)
          violation = -gp;
        else if (gn > 0.0)
          violation = gn;
      }
      gnorm += violation;

      double d = 0.0;
      if (gp < qd[i] * beta[i])
        d = -gp / qd[i];
      else if (gn > qd[i] * beta[i])
        d = -gn / qd[i];
      else
        d = -beta[i];
      if (std::fabs(d) < 1e-14) continue;

      const double nb = std::min(std::max(beta[i] + d, -upper), upper);
      const double delta = nb - beta[i];
      beta[i] = nb;
      if (delta != 0.0) axpy_w(i, delta);
    }

    model.diag.objective_per_pass.push_back(dual_objective());
    if (gnorm_init < 0.0) gnorm_init = gnorm;
    if (gnorm <= params.tol * std::max(gnorm_init, 1e-12)) {
      model.diag.converged = true;
      ++pass;
      break;
    }
  }

  model.diag.passes = pass;
  model.diag.final_objective =
      model.diag.objective_per_pass.empty() ? 0.0
                                            : model.diag.objective_per_pass.back();
  model.weights.assign(w.begin(), w.begin() + static_cast<long>(dim));
  model.bias = w[dim];
  return model;
}

}  // namespace echelon::model
