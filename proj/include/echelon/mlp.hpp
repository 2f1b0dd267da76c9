#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "echelon/features.hpp"

namespace echelon::model {

struct MlpConfig {
  std::array<int, 2> hidden = {64, 64};
  int epochs = 30;
  double learning_rate = 0.01;
  std::uint64_t seed = 12345;
};

// Two ReLU hidden layers and a linear head, trained on absolute error with
// per-sample SGD. The first layer consumes sparse inputs directly, so wide
// tf-idf vectors stay cheap. Same seed, same data: bit-identical model.
struct MlpModel {
  std::size_t input_dim = 0;
  MlpConfig config;
  // w1 is stored per input feature (row = feature, contiguous h1 slice) so
  // sparse forward passes touch only the active rows.
  std::vector<double> w1, b1, w2, b2, w3;
  double b3 = 0.0;
  std::vector<double> epoch_mae;  // training MAE after each epoch

  double predict(const features::SparseVector& x) const;
};

MlpModel train_mlp(const std::vector<features::SparseVector>& x,
                   std::span<const double> y, const MlpConfig& config = {});

}  // namespace echelon::model
