#include "echelon/explain.hpp"

#include "echelon/errors.hpp"

namespace echelon::model {

LinearExplanation explain_linear(const SvrModel& model,
                                 const features::SparseVector& x,
                                 std::span<const double> background) {
  const std::size_t dim = model.weights.size();
  if (x.dim != dim || background.size() != dim)
    throw ValidationError("explain: feature dimension mismatch");

  LinearExplanation e;
  e.contributions.resize(dim);
  double baseline = model.bias;
  for (std::size_t j = 0; j < dim; ++j) {
    baseline += model.weights[j] * background[j];
    e.contributions[j] = -model.weights[j] * background[j];
  }
  for (const auto& [idx, v] : x.entries)
    e.contributions[static_cast<std::size_t>(idx)] +=
        model.weights[static_cast<std::size_t>(idx)] * v;
  e.baseline = baseline;
  e.prediction = model.predict(x);
  return e;
}

}  // namespace echelon::model
