#include "echelon/commands.hpp"

#include <cstdio>
#include <filesystem>
#include <map>
#include <set>

#include "echelon/agreement.hpp"
#include "echelon/corpus.hpp"
#include "echelon/econ.hpp"
#include "echelon/errors.hpp"
#include "echelon/io_util.hpp"
#include "echelon/pipeline.hpp"
#include "echelon/report.hpp"
#include "echelon/split.hpp"
#include "echelon/synth.hpp"

namespace echelon::cli {

namespace {

std::string require_path(const std::string& value, const char* key) {
  if (value.empty())
    throw ConfigError(std::string("config: ") + key +
                      " is required for this command");
  return value;
}

std::string out_path(const RunConfig& c, const std::string& name) {
  return c.out_dir + "/" + name;
}

void write_artifact(const RunConfig& c, const std::string& command,
                    const std::string& name, const std::string& body) {
  ioutil::write_file(out_path(c, name), provenance_header(command, c) + body);
}

// Documents in manifest order; entries without a named CEO contribute every
// CEO speaker found in the transcript.
std::vector<corpus::CeoDocument> load_documents(const std::string& manifest) {
  auto entries = corpus::read_manifest(manifest);
  std::string base = std::filesystem::path(manifest).parent_path().string();
  std::vector<corpus::CeoDocument> docs;
  for (const auto& e : entries) {
    std::string path = base.empty() ? e.path : base + "/" + e.path;
    corpus::Transcript t;
    try {
      t = corpus::parse_transcript(ioutil::read_file(path));
    } catch (const ParseError& err) {
      throw ParseError(path + ": " + err.what());
    }
    if (e.ceo.empty()) {
      for (auto& d : corpus::extract_all_ceo_documents(t))
        docs.push_back(std::move(d));
    } else {
      docs.push_back(corpus::extract_ceo_document(t, e.ceo));
    }
  }
  return docs;
}

model::Dataset dataset_from(
    const std::vector<corpus::CeoDocument>& docs,
    const std::map<std::string, labels::MbtiVector>* label_map) {
  model::Dataset ds;
  for (const auto& d : docs) {
    const labels::MbtiVector* y = nullptr;
    if (label_map) {
      auto it = label_map->find(d.ceo_name);
      if (it == label_map->end()) continue;  // unlabeled speaker
      y = &it->second;
    }
    ds.call_ids.push_back(d.call_id);
    ds.ceos.push_back(d.ceo_name);
    ds.docs.push_back(corpus::tokenized(d));
    ds.y.push_back(y ? *y : labels::MbtiVector{});
  }
  return ds;
}

model::Dataset take_part(const model::Dataset& ds,
                         const std::map<std::string, std::string>& part_of,
                         const std::string& part) {
  model::Dataset out;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    auto it = part_of.find(ds.call_ids[i]);
    if (it == part_of.end() || it->second != part) continue;
    out.call_ids.push_back(ds.call_ids[i]);
    out.ceos.push_back(ds.ceos[i]);
    out.docs.push_back(ds.docs[i]);
    out.y.push_back(ds.y[i]);
  }
  return out;
}

std::map<std::string, std::string> read_split_csv(const std::string& path) {
  std::map<std::string, std::string> part_of;
  for (const auto& row : ioutil::read_csv(path, "call_id,ceo,part")) {
    if (row[2] != "train" && row[2] != "val" && row[2] != "test")
      throw ValidationError("split: unknown part '" + row[2] + "' in " + path);
    if (!part_of.emplace(row[0], row[2]).second)
      throw ValidationError("split: duplicate call_id " + row[0] + " in " +
                            path);
  }
  return part_of;
}

model::Candidate candidate_from(const RunConfig& c) {
  model::Candidate cand;
  cand.features.use_tfidf = c.features.use_tfidf;
  cand.features.n_max = static_cast<int>(c.features.n_max);
  cand.features.min_df = c.features.min_df;
  cand.features.use_dict = c.features.use_dict;
  if (c.features.use_dict)
    cand.features.dict_path = require_path(c.paths.dictionary,
                                           "paths.dictionary");
  std::string feat;
  if (c.features.use_tfidf)
    feat = "tfidf" + std::to_string(c.features.n_max);
  if (c.features.use_dict) feat += feat.empty() ? "dict" : "+dict";
  if (c.train.algorithm == "mlp") {
    cand.algorithm = model::Algorithm::Mlp;
    cand.mlp.epochs = static_cast<int>(c.train.mlp_epochs);
    cand.mlp.learning_rate = c.train.mlp_learning_rate;
    cand.mlp.seed = c.seed;
    auto widths = ioutil::split_csv(c.train.mlp_hidden);
    if (widths.size() != cand.mlp.hidden.size())
      throw ConfigError("config: train.mlp_hidden wants exactly " +
                        std::to_string(cand.mlp.hidden.size()) + " widths");
    for (std::size_t i = 0; i < widths.size(); ++i) {
      long width = ioutil::parse_long(ioutil::trim(widths[i]), "mlp_hidden");
      if (width < 1)
        throw ConfigError("config: train.mlp_hidden widths must be positive");
      cand.mlp.hidden[i] = static_cast<int>(width);
    }
  } else {
    cand.algorithm = model::Algorithm::Svr;
    cand.svr.c = c.train.svr_c;
    cand.svr.epsilon = c.train.svr_epsilon;
    cand.svr.tol = c.train.svr_tol;
    cand.svr.max_passes = c.train.svr_max_passes;
    cand.svr.seed = c.seed;
  }
  cand.name = feat + "-" + c.train.algorithm;
  return cand;
}

std::string labels_path(const RunConfig& c) {
  return c.paths.labels.empty() ? out_path(c, "labels.csv") : c.paths.labels;
}

std::string split_path(const RunConfig& c) {
  return c.paths.split.empty() ? out_path(c, "split.csv") : c.paths.split;
}

std::string model_path(const RunConfig& c) {
  return c.paths.model.empty() ? out_path(c, "model.txt") : c.paths.model;
}

std::string predictions_path(const RunConfig& c) {
  return c.paths.predictions.empty() ? out_path(c, "predictions.csv")
                                     : c.paths.predictions;
}

std::vector<std::string> model_feature_names(const model::TrainedModel& m) {
  std::vector<std::string> names = m.vocab.terms;
  if (m.dict) {
    for (const auto& cat : m.dict->categories)
      names.push_back("dict:" + cat.name);
    names.push_back("dict:token_count");
  }
  if (names.size() != m.feature_dim)
    throw ValidationError("model: feature name count mismatch");
  return names;
}

}  // namespace

void run_synth(const RunConfig& config) {
  synth::SynthConfig sc = config.synth;
  sc.seed = config.seed;
  synth::World world = synth::gen_world(sc);
  synth::write_world(world, out_path(config, "world"),
                     provenance_header("synth", config));
  std::printf("world: %zu CEOs, %zu calls, %zu price series -> %s\n",
              world.ceos.size(), world.transcripts.size(),
              world.prices.size(), out_path(config, "world").c_str());
}

void run_ingest(const RunConfig& config) {
  auto docs = load_documents(require_path(config.paths.manifest,
                                          "paths.manifest"));
  corpus::CorpusStats stats = corpus::corpus_stats(docs);
  write_artifact(config, "ingest", "corpus_stats.txt",
                 corpus_stats_text(stats));
  write_artifact(config, "ingest", "corpus_stats.csv",
                 corpus_stats_csv(stats));
  std::printf("documents: %ld  tokens: %ld\n", stats.documents,
              stats.tokens.sum);
}

void run_labels(const RunConfig& config) {
  auto votes =
      labels::read_votes_csv(require_path(config.paths.votes, "paths.votes"));
  long excluded = 0;
  auto label_map =
      labels::labels_from_votes(votes, config.train.min_votes, &excluded);
  labels::write_labels_csv(labels_path(config), label_map,
                           provenance_header("labels", config));
  std::vector<labels::MbtiVector> vectors;
  for (const auto& [name, v] : label_map) vectors.push_back(v);
  labels::LabelSummary summary = labels::label_summary(vectors);
  write_artifact(config, "labels", "label_summary.txt",
                 label_summary_text(summary, excluded));
  write_artifact(config, "labels", "label_summary.csv",
                 label_summary_csv(summary));
  if (!config.paths.big5.empty()) {
    auto big5 = labels::read_big5_csv(config.paths.big5);
    std::vector<labels::MbtiVector> mv;
    std::vector<labels::Big5Vector> bv;
    for (const auto& [name, v] : label_map) {
      auto it = big5.find(name);
      if (it == big5.end()) continue;
      mv.push_back(v);
      bv.push_back(it->second);
    }
    write_artifact(config, "labels", "cross_correlation.csv",
                   cross_correlation_csv(labels::cross_correlation(mv, bv)));
  }
  std::printf("entities: %ld  excluded: %ld\n", summary.n, excluded);
}

void run_iaa(const RunConfig& config) {
  auto votes =
      labels::read_votes_csv(require_path(config.paths.votes, "paths.votes"));
  auto tables = agreement::tables_from_votes(votes);
  agreement::AgreementReport report = agreement::agreement_report(tables);
  write_artifact(config, "iaa", "iaa.txt", agreement_text(report));
  write_artifact(config, "iaa", "iaa.csv", agreement_csv(report));
  std::fputs(agreement_text(report).c_str(), stdout);
}

void run_split(const RunConfig& config) {
  auto docs = load_documents(require_path(config.paths.manifest,
                                          "paths.manifest"));
  auto label_map = labels::read_labels_csv(labels_path(config));
  model::Dataset ds = dataset_from(docs, &label_map);
  if (ds.size() == 0)
    throw ValidationError("split: no labeled documents to split");
  model::SplitFractions fr{config.split.train, config.split.val,
                           config.split.test};
  model::Split split = model::group_shuffle_split(ds.ceos, fr, config.seed);
  std::vector<int> parts;
  for (auto p : split.part_of) parts.push_back(static_cast<int>(p));
  write_artifact(config, "split", "split.csv",
                 split_manifest_csv(ds.call_ids, ds.ceos, parts));
  std::printf("split: %zu train, %zu val, %zu test (of %zu documents)\n",
              split.train.size(), split.val.size(), split.test.size(),
              ds.size());
}

void run_train(const RunConfig& config) {
  auto docs = load_documents(require_path(config.paths.manifest,
                                          "paths.manifest"));
  auto label_map = labels::read_labels_csv(labels_path(config));
  auto part_of = read_split_csv(split_path(config));
  model::Dataset ds = dataset_from(docs, &label_map);
  model::Dataset train_ds = take_part(ds, part_of, "train");
  model::Candidate cand = candidate_from(config);
  model::TrainedModel trained = model::train_candidate(cand, train_ds);
  model::save_model(trained, model_path(config),
                    provenance_header("train", config));
  write_artifact(config, "train", "train_summary.txt",
                 train_summary_text(trained));
  std::printf("trained %s on %zu documents -> %s\n", cand.name.c_str(),
              train_ds.size(), model_path(config).c_str());
}

void run_eval(const RunConfig& config, const std::string& part) {
  if (part != "train" && part != "val" && part != "test")
    throw ConfigError("eval: part must be train, val or test, got '" + part +
                      "'");
  model::TrainedModel m = model::load_model(model_path(config));
  auto docs = load_documents(require_path(config.paths.manifest,
                                          "paths.manifest"));
  auto label_map = labels::read_labels_csv(labels_path(config));
  auto part_of = read_split_csv(split_path(config));
  model::Dataset ds = take_part(dataset_from(docs, &label_map), part_of, part);
  model::EvalSpace space = config.train.eval_space == "original"
                               ? model::EvalSpace::Original
                               : model::EvalSpace::Transformed;
  auto reports = model::evaluate_model(m, ds, space);
  long n = static_cast<long>(ds.size());
  write_artifact(config, "eval", "eval_" + part + ".txt",
                 eval_text(reports, config.train.eval_space, n));
  write_artifact(config, "eval", "eval_" + part + ".csv",
                 eval_csv(reports, config.train.eval_space, n));
  std::fputs(eval_text(reports, config.train.eval_space, n).c_str(), stdout);
}

void run_predict(const RunConfig& config) {
  model::TrainedModel m = model::load_model(model_path(config));
  auto docs = load_documents(require_path(config.paths.manifest,
                                          "paths.manifest"));
  model::Dataset ds = dataset_from(docs, nullptr);
  std::vector<labels::MbtiVector> preds;
  for (std::size_t i = 0; i < ds.size(); ++i)
    preds.push_back(m.predict_labels(ds.docs[i]));
  std::string body = predictions_csv(ds.call_ids, ds.ceos, preds);
  ioutil::write_file(predictions_path(config),
                 provenance_header("predict", config) + body);
  std::printf("predicted %zu documents -> %s\n", ds.size(),
              predictions_path(config).c_str());
}

void run_risk(const RunConfig& config) {
  auto panel =
      econ::read_panel_csv(require_path(config.paths.panel, "paths.panel"));
  auto traits = read_predictions_csv(
      require_path(config.paths.predictions, "paths.predictions"));
  auto rows = econ::assemble_risk_rows(
      panel, require_path(config.paths.prices_dir, "paths.prices_dir"),
      traits, static_cast<int>(config.risk.post_days),
      static_cast<int>(config.risk.past_days));
  econ::DesignSpec spec;
  spec.industry_fe = config.risk.industry_fe;
  spec.time_fe = config.risk.time_fe;
  spec.standardize_dummies = config.risk.standardize_dummies;
  econ::RiskRegressionResult result =
      econ::risk_regression(rows, config.risk.include_mbti, spec);
  write_artifact(config, "risk", "risk.txt", risk_text(result));
  write_artifact(config, "risk", "risk.csv", risk_csv(result));
  const econ::DesignMatrix& vif_design =
      result.joint_design ? *result.joint_design : result.baseline_design;
  auto vif_entries = econ::vif(vif_design.x, vif_design.names);
  write_artifact(config, "risk", "vif.txt", vif_text(vif_entries));
  write_artifact(config, "risk", "vif.csv", vif_csv(vif_entries));
  std::fputs(risk_text(result).c_str(), stdout);
}

void run_explain(const RunConfig& config, const std::string& call_id,
                 const std::string& scale, long top) {
  if (call_id.empty()) throw ConfigError("explain: --call is required");
  auto parsed = labels::parse_scale(scale);
  if (!parsed)
    throw ConfigError("explain: unknown scale '" + scale + "'");
  if (top < 1) throw ConfigError("explain: --top must be positive");
  model::TrainedModel m = model::load_model(model_path(config));
  auto docs = load_documents(require_path(config.paths.manifest,
                                          "paths.manifest"));
  const corpus::CeoDocument* doc = nullptr;
  for (const auto& d : docs)
    if (d.call_id == call_id) {
      doc = &d;
      break;
    }
  if (!doc)
    throw NotFoundError("explain: call_id " + call_id +
                        " not found in the manifest's documents");
  model::LinearExplanation e = m.explain(corpus::tokenized(*doc), *parsed);
  auto names = model_feature_names(m);
  std::string label = labels::scale_label(*parsed);
  write_artifact(config, "explain", "explain_" + call_id + "_" +
                     labels::scale_name(*parsed) + ".txt",
                 explain_text(e, names, call_id, label,
                              static_cast<std::size_t>(top)));
  write_artifact(config, "explain", "explain_" + call_id + "_" +
                     labels::scale_name(*parsed) + ".csv",
                 explain_csv(e, names, static_cast<std::size_t>(top)));
  std::fputs(explain_text(e, names, call_id, label,
                          static_cast<std::size_t>(top))
                 .c_str(),
             stdout);
}

}  // namespace echelon::cli
