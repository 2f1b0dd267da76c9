#include "echelon/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "echelon/errors.hpp"
#include "echelon/rng.hpp"

namespace echelon::model {

namespace {

struct Activations {
  std::vector<double> h1, h2;  // post-ReLU
  std::vector<double> a1, a2;  // pre-activation
  double out = 0.0;
};

void forward(const MlpModel& m, const features::SparseVector& x,
             Activations& act) {
  const std::size_t h1 = static_cast<std::size_t>(m.config.hidden[0]);
  const std::size_t h2 = static_cast<std::size_t>(m.config.hidden[1]);
  act.a1.assign(m.b1.begin(), m.b1.end());
  for (const auto& [idx, v] : x.entries) {
    const double* row = &m.w1[static_cast<std::size_t>(idx) * h1];
    for (std::size_t j = 0; j < h1; ++j) act.a1[j] += v * row[j];
  }
  act.h1.resize(h1);
  for (std::size_t j = 0; j < h1; ++j)
    act.h1[j] = act.a1[j] > 0.0 ? act.a1[j] : 0.0;

  act.a2.assign(m.b2.begin(), m.b2.end());
  for (std::size_t j = 0; j < h1; ++j) {
    const double hv = act.h1[j];
    if (hv == 0.0) continue;
    const double* row = &m.w2[j * h2];
    for (std::size_t k = 0; k < h2; ++k) act.a2[k] += hv * row[k];
  }
  act.h2.resize(h2);
  for (std::size_t k = 0; k < h2; ++k)
    act.h2[k] = act.a2[k] > 0.0 ? act.a2[k] : 0.0;

  double out = m.b3;
  for (std::size_t k = 0; k < h2; ++k) out += act.h2[k] * m.w3[k];
  act.out = out;
}

}  // namespace

double MlpModel::predict(const features::SparseVector& x) const {
  if (x.dim != input_dim)
    throw ValidationError("mlp: feature dimension mismatch");
  Activations act;
  forward(*this, x, act);
  return act.out;
}

MlpModel train_mlp(const std::vector<features::SparseVector>& x,
                   std::span<const double> y, const MlpConfig& config) {
  const std::size_t n = x.size();
  if (n != y.size()) throw ValidationError("mlp: |x| != |y|");
  if (n < 2) throw ValidationError("mlp: need at least 2 instances");
  if (config.epochs < 0) throw ValidationError("mlp: negative epoch count");
  if (config.learning_rate <= 0.0)
    throw ValidationError("mlp: learning rate must be positive");
  if (config.hidden[0] < 1 || config.hidden[1] < 1)
    throw ValidationError("mlp: hidden sizes must be positive");

  const std::size_t dim = x[0].dim;
  for (const auto& xi : x)
    if (xi.dim != dim) throw ValidationError("mlp: inconsistent feature dims");

  const std::size_t h1 = static_cast<std::size_t>(config.hidden[0]);
  const std::size_t h2 = static_cast<std::size_t>(config.hidden[1]);

  MlpModel m;
  m.input_dim = dim;
  m.config = config;
  Rng rng(config.seed);
  auto uniform_init = [&](std::vector<double>& w, std::size_t count,
                          std::size_t fan_in) {
    const double bound = std::sqrt(6.0 / static_cast<double>(fan_in));
    w.resize(count);
    for (auto& v : w) v = (2.0 * rng.next_double() - 1.0) * bound;
  };
  uniform_init(m.w1, dim * h1, dim == 0 ? 1 : dim);
  m.b1.assign(h1, 0.0);
  uniform_init(m.w2, h1 * h2, h1);
  m.b2.assign(h2, 0.0);
  uniform_init(m.w3, h2, h2);
  m.b3 = 0.0;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Activations act;
  std::vector<double> g1(h1), g2(h2);

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    rng.shuffle(order);
    for (const std::size_t i : order) {
      forward(m, x[i], act);
      const double err = act.out - y[i];
      // d|err|/dout; flat at zero error.
      const double dout = err > 0.0 ? 1.0 : (err < 0.0 ? -1.0 : 0.0);
      if (dout == 0.0) continue;
      const double lr = config.learning_rate;

      for (std::size_t k = 0; k < h2; ++k)
        g2[k] = act.a2[k] > 0.0 ? dout * m.w3[k] : 0.0;
      for (std::size_t k = 0; k < h2; ++k) {
        m.w3[k] -= lr * dout * act.h2[k];
        m.b2[k] -= lr * g2[k];
      }
      m.b3 -= lr * dout;

      std::fill(g1.begin(), g1.end(), 0.0);
      for (std::size_t j = 0; j < h1; ++j) {
        if (act.a1[j] <= 0.0) continue;
        double acc = 0.0;
        const double* row = &m.w2[j * h2];
        for (std::size_t k = 0; k < h2; ++k) acc += g2[k] * row[k];
        g1[j] = acc;
      }
      for (std::size_t j = 0; j < h1; ++j) {
        if (act.h1[j] == 0.0) continue;
        double* row = &m.w2[j * h2];
        const double hv = act.h1[j];
        for (std::size_t k = 0; k < h2; ++k) row[k] -= lr * g2[k] * hv;
      }
      for (std::size_t j = 0; j < h1; ++j) m.b1[j] -= lr * g1[j];
      for (const auto& [idx, v] : x[i].entries) {
        double* row = &m.w1[static_cast<std::size_t>(idx) * h1];
        for (std::size_t j = 0; j < h1; ++j) row[j] -= lr * g1[j] * v;
      }
    }

    double mae = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      forward(m, x[i], act);
      mae += std::fabs(act.out - y[i]);
    }
    mae /= static_cast<double>(n);
    if (!std::isfinite(mae))
      throw NumericError("mlp: training diverged at epoch " +
                         std::to_string(epoch + 1));
    m.epoch_mae.push_back(mae);
  }
  return m;
}

}  // namespace echelon::model
