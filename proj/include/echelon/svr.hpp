#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "echelon/features.hpp"

namespace echelon::model {

struct SvrParams {
  double c = 1.0;
  double epsilon = 0.1;
  double tol = 1e-4;  // relative to the initial projected-gradient norm
  int max_passes = 1000;
  std::uint64_t seed = 12345;
};

struct SvrDiagnostics {
  bool converged = false;
  int passes = 0;
  double final_objective = 0.0;
  std::vector<double> objective_per_pass;  // dual objective, non-increasing
};

struct SvrModel {
  std::vector<double> weights;  // feature weights, dim entries
  double bias = 0.0;
  SvrParams params;
  SvrDiagnostics diag;

  double predict(const features::SparseVector& x) const;
};

// Epsilon-insensitive linear SVR with L1 loss, solved in the dual by
// coordinate descent over beta in [-C, C]^l. The bias is an augmented
// always-one feature, so it is regularized along with the weights. The
// coordinate order is reshuffled each pass with the seeded generator, which
// makes training bit-reproducible.
SvrModel train_svr(const std::vector<features::SparseVector>& x,
                   std::span<const double> y, const SvrParams& params = {});

}  // namespace echelon::model
