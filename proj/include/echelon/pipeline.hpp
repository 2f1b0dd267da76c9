#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "echelon/boxcox.hpp"
#include "echelon/explain.hpp"
#include "echelon/features.hpp"
#include "echelon/labels.hpp"
#include "echelon/metrics.hpp"
#include "echelon/mlp.hpp"
#include "echelon/svr.hpp"

namespace echelon::model {

enum class Algorithm { Svr, Mlp };

const char* algorithm_name(Algorithm a);

struct FeatureConfig {
  bool use_tfidf = true;
  int n_max = 3;
  long min_df = 2;
  bool use_dict = false;
  std::string dict_path;  // read at training time; patterns embed in the model
};

struct Candidate {
  std::string name;
  FeatureConfig features;
  Algorithm algorithm = Algorithm::Svr;
  SvrParams svr;
  MlpConfig mlp;
};

// Aligned columns; one row per scored document.
struct Dataset {
  std::vector<std::string> call_ids;
  std::vector<std::string> ceos;
  std::vector<features::TokenizedDoc> docs;
  std::vector<labels::MbtiVector> y;

  std::size_t size() const { return docs.size(); }
};

// Labels live on [0, 1]; the power transform needs strictly positive input,
// so scores are floored here first.
inline constexpr double kLabelFloor = 1e-3;
double clamp_label(double v);

struct ScaleModel {
  Algorithm algorithm = Algorithm::Svr;
  BoxCoxTransform boxcox;
  std::optional<SvrModel> svr;
  std::optional<MlpModel> mlp;

  double predict_transformed(const features::SparseVector& x) const;
};

struct TrainedModel {
  Candidate candidate;
  features::Vocabulary vocab;  // empty when tf-idf is off
  std::optional<features::CategoryDictionary> dict;
  std::size_t feature_dim = 0;
  std::vector<double> background;  // train-set mean feature vector
  std::array<ScaleModel, 4> scales;

  features::SparseVector featurize(const features::TokenizedDoc& doc) const;
  std::array<double, 4> predict_transformed(
      const features::TokenizedDoc& doc) const;
  // Inverts the per-scale transform and clamps to [0, 1]. Predictions that
  // fall outside the transform's image snap to the nearest boundary instead
  // of failing: downstream consumers need a score for every document.
  labels::MbtiVector predict_labels(const features::TokenizedDoc& doc) const;
  // Per-feature attribution for one scale; linear (SVR) scales only.
  LinearExplanation explain(const features::TokenizedDoc& doc,
                            labels::Scale scale) const;
};

TrainedModel train_candidate(const Candidate& c, const Dataset& train);

enum class EvalSpace { Transformed, Original };

std::array<EvalReport, 4> evaluate_model(const TrainedModel& m,
                                         const Dataset& data, EvalSpace space);

struct CandidateOutcome {
  std::string name;
  bool ok = false;
  std::string error;
  double mean_val_mae = 0.0;  // transformed space, mean over scales
  double mean_val_tau = 0.0;  // undefined taus enter the mean as 0
  std::array<EvalReport, 4> per_scale{};
};

struct SelectionResult {
  std::size_t best_index = 0;
  std::vector<CandidateOutcome> outcomes;
  TrainedModel best;
};

// Trains every candidate on `train`, scores it on `val` in transformed
// space, and keeps the lowest mean MAE (ties: higher mean Kendall tau, then
// earlier position). Candidates that fail record their error; if all fail,
// the errors are aggregated into one ValidationError.
SelectionResult select_model(const std::vector<Candidate>& candidates,
                             const Dataset& train, const Dataset& val);

// Pure ranking rule over already-computed outcomes (index of the winner).
std::size_t rank_best(const std::vector<CandidateOutcome>& outcomes);

// Versioned plain-text model file; load(save(m)) predicts bit-identically.
void save_model(const TrainedModel& m, const std::string& path,
                const std::string& provenance);
TrainedModel load_model(const std::string& path);

}  // namespace echelon::model
