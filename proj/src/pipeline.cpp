#include "echelon/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "echelon/errors.hpp"

namespace echelon::model {

const char* algorithm_name(Algorithm a) {
  return a == Algorithm::Svr ? "svr" : "mlp";
}

double clamp_label(double v) {
  return std::min(std::max(v, kLabelFloor), 1.0);
}

double ScaleModel::predict_transformed(const features::SparseVector& x) const {
  if (algorithm == Algorithm::Svr) {
    if (!svr) throw ValidationError("scale model missing svr weights");
    return svr->predict(x);
  }
  if (!mlp) throw ValidationError("scale model missing mlp weights");
  return mlp->predict(x);
}

features::SparseVector TrainedModel::featurize(
    const features::TokenizedDoc& doc) const {
  features::SparseVector out;
  if (candidate.features.use_tfidf) {
    out = features::transform_tfidf(vocab, doc);
  }
  if (candidate.features.use_dict) {
    if (!dict) throw ValidationError("model expects an embedded dictionary");
    const auto extra = features::dict_features(*dict, doc);
    const long base = static_cast<long>(out.dim);
    for (std::size_t i = 0; i < extra.size(); ++i)
      if (extra[i] != 0.0)
        out.entries.emplace_back(base + static_cast<long>(i), extra[i]);
    out.dim += extra.size();
  }
  if (out.dim != feature_dim)
    throw ValidationError("featurize: dimension drifted from training");
  return out;
}

std::array<double, 4> TrainedModel::predict_transformed(
    const features::TokenizedDoc& doc) const {
  const auto x = featurize(doc);
  std::array<double, 4> z{};
  for (labels::Scale s : labels::kScales) {
    const auto i = static_cast<std::size_t>(s);
    z[i] = scales[i].predict_transformed(x);
  }
  return z;
}

namespace {

// Inverse transform that saturates instead of throwing: a prediction below
// the image of the forward map becomes the smallest representable value.
double invert_saturating(const BoxCoxTransform& t, double z) {
  if (std::fabs(t.lambda) < 1e-9) return std::exp(z) - t.shift;
  double w = t.lambda * z + 1.0;
  if (w <= 0.0) w = 1e-12;
  return std::pow(w, 1.0 / t.lambda) - t.shift;
}

}  // namespace

labels::MbtiVector TrainedModel::predict_labels(
    const features::TokenizedDoc& doc) const {
  const auto z = predict_transformed(doc);
  labels::MbtiVector v;
  for (labels::Scale s : labels::kScales) {
    const auto i = static_cast<std::size_t>(s);
    double y = invert_saturating(scales[i].boxcox, z[i]);
    if (!std::isfinite(y)) y = 0.0;
    v.set(s, std::min(std::max(y, 0.0), 1.0));
  }
  v.total_votes = 0;
  return v;
}

LinearExplanation TrainedModel::explain(const features::TokenizedDoc& doc,
                                        labels::Scale scale) const {
  const auto& sm = scales[static_cast<std::size_t>(scale)];
  if (sm.algorithm != Algorithm::Svr || !sm.svr)
    throw ValidationError(
        "explanations are only defined for the linear (svr) model");
  return explain_linear(*sm.svr, featurize(doc), background);
}

namespace {

void check_dataset(const Dataset& d, const char* what, std::size_t min_rows) {
  if (d.docs.size() != d.y.size() || d.docs.size() != d.call_ids.size() ||
      d.docs.size() != d.ceos.size())
    throw ValidationError(std::string(what) + ": misaligned dataset columns");
  if (d.size() < min_rows)
    throw ValidationError(std::string(what) + ": need at least " +
                          std::to_string(min_rows) + " rows, have " +
                          std::to_string(d.size()));
}

}  // namespace

TrainedModel train_candidate(const Candidate& c, const Dataset& train) {
  check_dataset(train, "train", 3);
  if (!c.features.use_tfidf && !c.features.use_dict)
    throw ValidationError("candidate '" + c.name + "' enables no features");

  TrainedModel m;
  m.candidate = c;
  if (c.features.use_tfidf)
    m.vocab = features::fit_tfidf(train.docs, c.features.n_max,
                                  c.features.min_df);
  if (c.features.use_dict) {
    if (c.features.dict_path.empty())
      throw ValidationError("candidate '" + c.name +
                            "' needs a dictionary path");
    m.dict = features::CategoryDictionary::load(c.features.dict_path);
  }
  m.feature_dim = m.vocab.size() +
                  (m.dict ? m.dict->categories.size() + 1 : 0);
  if (m.feature_dim == 0)
    throw ValidationError("candidate '" + c.name +
                          "' produced an empty feature space");

  std::vector<features::SparseVector> x;
  x.reserve(train.size());
  m.background.assign(m.feature_dim, 0.0);
  for (const auto& doc : train.docs) {
    features::SparseVector v;
    v.dim = m.feature_dim;
    if (c.features.use_tfidf) {
      auto t = features::transform_tfidf(m.vocab, doc);
      v.entries = std::move(t.entries);
    }
    if (c.features.use_dict) {
      const auto extra = features::dict_features(*m.dict, doc);
      const long base = static_cast<long>(m.vocab.size());
      for (std::size_t i = 0; i < extra.size(); ++i)
        if (extra[i] != 0.0)
          v.entries.emplace_back(base + static_cast<long>(i), extra[i]);
    }
    for (const auto& [idx, val] : v.entries)
      m.background[static_cast<std::size_t>(idx)] += val;
    x.push_back(std::move(v));
  }
  for (auto& b : m.background) b /= static_cast<double>(train.size());

  for (labels::Scale s : labels::kScales) {
    const auto i = static_cast<std::size_t>(s);
    std::vector<double> y_raw(train.size());
    for (std::size_t r = 0; r < train.size(); ++r)
      y_raw[r] = clamp_label(train.y[r].get(s));

    ScaleModel& sm = m.scales[i];
    sm.algorithm = c.algorithm;
    sm.boxcox = boxcox_fit(y_raw, 0.0);
    const auto z = boxcox_apply(sm.boxcox, y_raw);
    if (c.algorithm == Algorithm::Svr)
      sm.svr = train_svr(x, z, c.svr);
    else
      sm.mlp = train_mlp(x, z, c.mlp);
  }
  return m;
}

std::array<EvalReport, 4> evaluate_model(const TrainedModel& m,
                                         const Dataset& data, EvalSpace space) {
  check_dataset(data, "eval", 3);
  std::array<EvalReport, 4> out{};
  std::vector<features::SparseVector> x;
  x.reserve(data.size());
  for (const auto& doc : data.docs) x.push_back(m.featurize(doc));

  for (labels::Scale s : labels::kScales) {
    const auto i = static_cast<std::size_t>(s);
    std::vector<double> y_true(data.size()), y_pred(data.size());
    for (std::size_t r = 0; r < data.size(); ++r) {
      const double z = m.scales[i].predict_transformed(x[r]);
      if (space == EvalSpace::Transformed) {
        y_true[r] = boxcox_apply_one(m.scales[i].boxcox,
                                     clamp_label(data.y[r].get(s)));
        y_pred[r] = z;
      } else {
        y_true[r] = data.y[r].get(s);
        double y = invert_saturating(m.scales[i].boxcox, z);
        if (!std::isfinite(y)) y = 0.0;
        y_pred[r] = std::min(std::max(y, 0.0), 1.0);
      }
    }
    out[i] = evaluate(y_true, y_pred);
  }
  return out;
}

namespace {

double tau_or_zero(double tau) { return std::isnan(tau) ? 0.0 : tau; }

// Lower MAE wins; exact ties fall back to higher tau, then earlier index.
bool outcome_better(const CandidateOutcome& a, const CandidateOutcome& b) {
  if (a.mean_val_mae != b.mean_val_mae) return a.mean_val_mae < b.mean_val_mae;
  return a.mean_val_tau > b.mean_val_tau;
}

}  // namespace

std::size_t rank_best(const std::vector<CandidateOutcome>& outcomes) {
  std::size_t best = outcomes.size();
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    if (!outcomes[i].ok) continue;
    if (best == outcomes.size() || outcome_better(outcomes[i], outcomes[best]))
      best = i;
  }
  if (best == outcomes.size())
    throw ValidationError("no candidate finished training");
  return best;
}

SelectionResult select_model(const std::vector<Candidate>& candidates,
                             const Dataset& train, const Dataset& val) {
  if (candidates.empty()) throw ValidationError("select_model: no candidates");
  check_dataset(val, "val", 3);

  SelectionResult result;
  std::optional<TrainedModel> best;
  std::size_t best_idx = 0;

  for (std::size_t ci = 0; ci < candidates.size(); ++ci) {
    CandidateOutcome out;
    out.name = candidates[ci].name;
    try {
      TrainedModel m = train_candidate(candidates[ci], train);
      out.per_scale = evaluate_model(m, val, EvalSpace::Transformed);
      double mae = 0.0, tau = 0.0;
      for (const auto& r : out.per_scale) {
        mae += r.mae;
        tau += tau_or_zero(r.kendall_tau);
      }
      out.mean_val_mae = mae / 4.0;
      out.mean_val_tau = tau / 4.0;
      out.ok = true;
      if (!best || outcome_better(out, result.outcomes[best_idx])) {
        best = std::move(m);
        best_idx = ci;
      }
    } catch (const Error& e) {
      out.ok = false;
      out.error = e.what();
    }
    result.outcomes.push_back(std::move(out));
  }

  if (!best) {
    std::string msg = "every candidate failed:";
    for (const auto& o : result.outcomes)
      msg += "\n  " + o.name + ": " + o.error;
    throw ValidationError(msg);
  }
  result.best_index = best_idx;
  result.best = std::move(*best);
  return result;
}

}  // namespace echelon::model
