#include <CLI11.hpp>
#include <cstdio>
#include <string>

#include "echelon/commands.hpp"
#include "echelon/errors.hpp"
#include "echelon/io_util.hpp"

namespace {

using echelon::cli::RunConfig;

// Flag values land here first; only flags the user actually passed override
// the config file, which in turn overrides the defaults.
struct FlagValues {
  std::string config_file, out_dir;
  long seed = -1;
  std::string manifest, votes, big5, labels, split, panel, prices_dir,
      dictionary, model, predictions;
  long n_ceos = 0, calls_per_ceo = 0, total_calls = 0, votes_per_ceo = 0,
       doc_length = 0;
  double trait_share = 0, beta_ei = 0, beta_sn = 0, beta_tf = 0, beta_jp = 0,
         noise = 0;
  double train_frac = 0, val_frac = 0, test_frac = 0;
  std::string algorithm, eval_space, part = "test", call, scale;
  long n_max = 0, min_df = 0, min_votes = 0, top = 25;
  bool use_dict = false, no_mbti = false, no_industry_fe = false,
       no_time_fe = false, raw_dummies = false;
  long post_days = 0, past_days = 0;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"earnings-call personality and risk pipeline"};
  app.require_subcommand(1);
  FlagValues f;

  app.add_option("--config", f.config_file, "INI configuration file");
  app.add_option("--out", f.out_dir, "run directory for artifacts");
  app.add_option("--seed", f.seed, "random seed")->check(CLI::NonNegativeNumber);

  auto* c_synth = app.add_subcommand("synth", "generate a seeded synthetic world");
  auto* o_ceos = c_synth->add_option("--ceos", f.n_ceos, "number of CEOs");
  auto* o_calls = c_synth->add_option("--calls-per-ceo", f.calls_per_ceo,
                                      "calls per CEO");
  auto* o_total = c_synth->add_option("--total-calls", f.total_calls,
                                      "total calls, spread evenly");
  auto* o_vpc = c_synth->add_option("--votes-per-ceo", f.votes_per_ceo,
                                    "raters per scale and CEO");
  auto* o_dlen = c_synth->add_option("--doc-length", f.doc_length,
                                     "CEO tokens per call");
  auto* o_share = c_synth->add_option("--trait-share", f.trait_share,
                                      "fraction of signal tokens");
  auto* o_bei = c_synth->add_option("--beta-ei", f.beta_ei, "planted EI effect");
  auto* o_bsn = c_synth->add_option("--beta-sn", f.beta_sn, "planted SN effect");
  auto* o_btf = c_synth->add_option("--beta-tf", f.beta_tf, "planted TF effect");
  auto* o_bjp = c_synth->add_option("--beta-jp", f.beta_jp, "planted JP effect");
  auto* o_noise = c_synth->add_option("--noise", f.noise,
                                      "structural noise scale");

  auto* c_ingest = app.add_subcommand("ingest",
                                      "parse transcripts and report corpus stats");
  auto* o_manifest_i = c_ingest->add_option("--manifest", f.manifest,
                                            "transcript manifest (jsonl)");

  auto* c_labels = app.add_subcommand("labels",
                                      "crowd votes to continuous MBTI labels");
  auto* o_votes_l = c_labels->add_option("--votes", f.votes, "votes CSV");
  auto* o_big5 = c_labels->add_option("--big5", f.big5, "Big Five CSV");
  auto* o_labels_l = c_labels->add_option("--labels", f.labels,
                                          "labels CSV to write");
  auto* o_minv = c_labels->add_option("--min-votes", f.min_votes,
                                      "votes required per scale");

  auto* c_iaa = app.add_subcommand("iaa", "inter-annotator agreement report");
  auto* o_votes_a = c_iaa->add_option("--votes", f.votes, "votes CSV");

  auto* c_split = app.add_subcommand("split", "grouped train/val/test split");
  auto* o_manifest_s = c_split->add_option("--manifest", f.manifest,
                                           "transcript manifest");
  auto* o_labels_s = c_split->add_option("--labels", f.labels, "labels CSV");
  auto* o_tr = c_split->add_option("--train-frac", f.train_frac,
                                   "train fraction");
  auto* o_va = c_split->add_option("--val-frac", f.val_frac, "val fraction");
  auto* o_te = c_split->add_option("--test-frac", f.test_frac, "test fraction");

  auto* c_train = app.add_subcommand("train", "fit the per-scale regressors");
  auto* o_manifest_t = c_train->add_option("--manifest", f.manifest,
                                           "transcript manifest");
  auto* o_labels_t = c_train->add_option("--labels", f.labels, "labels CSV");
  auto* o_split_t = c_train->add_option("--split", f.split, "split CSV");
  auto* o_model_t = c_train->add_option("--model", f.model, "model file to write");
  auto* o_algo = c_train->add_option("--algorithm", f.algorithm,
                                     "svr or mlp");
  auto* o_nmax = c_train->add_option("--nmax", f.n_max, "n-gram order");
  auto* o_mindf = c_train->add_option("--min-df", f.min_df,
                                      "minimum document frequency");
  auto* o_dict = c_train->add_option("--dict", f.dictionary,
                                     "category dictionary file");
  auto* o_usedict = c_train->add_flag("--use-dict", f.use_dict,
                                      "add dictionary features");

  auto* c_eval = app.add_subcommand("eval", "held-out correlation report");
  auto* o_manifest_e = c_eval->add_option("--manifest", f.manifest,
                                          "transcript manifest");
  auto* o_labels_e = c_eval->add_option("--labels", f.labels, "labels CSV");
  auto* o_split_e = c_eval->add_option("--split", f.split, "split CSV");
  auto* o_model_e = c_eval->add_option("--model", f.model, "model file");
  c_eval->add_option("--part", f.part, "train, val or test");
  auto* o_space = c_eval->add_option("--space", f.eval_space,
                                     "transformed or original");

  auto* c_predict = app.add_subcommand("predict", "score documents with a model");
  auto* o_manifest_p = c_predict->add_option("--manifest", f.manifest,
                                             "transcript manifest");
  auto* o_model_p = c_predict->add_option("--model", f.model, "model file");
  auto* o_preds_p = c_predict->add_option("--predictions", f.predictions,
                                          "predictions CSV to write");

  auto* c_risk = app.add_subcommand("risk",
                                    "fixed-effects volatility regression");
  auto* o_panel = c_risk->add_option("--panel", f.panel, "panel CSV");
  auto* o_prices = c_risk->add_option("--prices", f.prices_dir,
                                      "price CSV directory");
  auto* o_preds_r = c_risk->add_option("--predictions", f.predictions,
                                       "per-call trait CSV");
  auto* o_nombti = c_risk->add_flag("--no-mbti", f.no_mbti,
                                    "baseline model only");
  auto* o_noind = c_risk->add_flag("--no-industry-fe", f.no_industry_fe,
                                   "drop industry fixed effects");
  auto* o_notime = c_risk->add_flag("--no-time-fe", f.no_time_fe,
                                    "drop calendar-quarter fixed effects");
  auto* o_rawdum = c_risk->add_flag("--raw-dummies", f.raw_dummies,
                                    "keep dummies 0/1 instead of z-scored");
  auto* o_post = c_risk->add_option("--post-days", f.post_days,
                                    "post-call window length");
  auto* o_past = c_risk->add_option("--past-days", f.past_days,
                                    "pre-call window length");

  auto* c_explain = app.add_subcommand("explain",
                                       "per-feature contributions for one document");
  auto* o_manifest_x = c_explain->add_option("--manifest", f.manifest,
                                             "transcript manifest");
  auto* o_model_x = c_explain->add_option("--model", f.model, "model file");
  c_explain->add_option("--call", f.call, "call_id to explain")->required();
  c_explain->add_option("--scale", f.scale, "ei, sn, tf or jp")->required();
  c_explain->add_option("--top", f.top, "features to list");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // bad flags are a config-class failure
  }

  try {
    RunConfig cfg;
    if (!f.config_file.empty())
      cfg = echelon::cli::config_from_ini(
          echelon::ioutil::read_file(f.config_file));
    if (!f.out_dir.empty()) cfg.out_dir = f.out_dir;
    if (f.seed >= 0) cfg.seed = static_cast<std::uint64_t>(f.seed);

    auto set_str = [](const CLI::Option* o, std::string& dst,
                      const std::string& v) {
      if (o->count()) dst = v;
    };
    set_str(o_manifest_i, cfg.paths.manifest, f.manifest);
    set_str(o_manifest_s, cfg.paths.manifest, f.manifest);
    set_str(o_manifest_t, cfg.paths.manifest, f.manifest);
    set_str(o_manifest_e, cfg.paths.manifest, f.manifest);
    set_str(o_manifest_p, cfg.paths.manifest, f.manifest);
    set_str(o_manifest_x, cfg.paths.manifest, f.manifest);
    set_str(o_votes_l, cfg.paths.votes, f.votes);
    set_str(o_votes_a, cfg.paths.votes, f.votes);
    set_str(o_big5, cfg.paths.big5, f.big5);
    set_str(o_labels_l, cfg.paths.labels, f.labels);
    set_str(o_labels_s, cfg.paths.labels, f.labels);
    set_str(o_labels_t, cfg.paths.labels, f.labels);
    set_str(o_labels_e, cfg.paths.labels, f.labels);
    set_str(o_split_t, cfg.paths.split, f.split);
    set_str(o_split_e, cfg.paths.split, f.split);
    set_str(o_model_t, cfg.paths.model, f.model);
    set_str(o_model_e, cfg.paths.model, f.model);
    set_str(o_model_p, cfg.paths.model, f.model);
    set_str(o_model_x, cfg.paths.model, f.model);
    set_str(o_preds_p, cfg.paths.predictions, f.predictions);
    set_str(o_preds_r, cfg.paths.predictions, f.predictions);
    set_str(o_panel, cfg.paths.panel, f.panel);
    set_str(o_prices, cfg.paths.prices_dir, f.prices_dir);
    set_str(o_dict, cfg.paths.dictionary, f.dictionary);
    set_str(o_algo, cfg.train.algorithm, f.algorithm);
    set_str(o_space, cfg.train.eval_space, f.eval_space);

    if (o_ceos->count()) cfg.synth.n_ceos = f.n_ceos;
    if (o_calls->count()) cfg.synth.calls_per_ceo = f.calls_per_ceo;
    if (o_total->count()) cfg.synth.total_calls = f.total_calls;
    if (o_vpc->count()) cfg.synth.votes_per_ceo = f.votes_per_ceo;
    if (o_dlen->count()) cfg.synth.doc_length = f.doc_length;
    if (o_share->count()) cfg.synth.trait_token_share = f.trait_share;
    if (o_bei->count()) cfg.synth.risk_betas[0] = f.beta_ei;
    if (o_bsn->count()) cfg.synth.risk_betas[1] = f.beta_sn;
    if (o_btf->count()) cfg.synth.risk_betas[2] = f.beta_tf;
    if (o_bjp->count()) cfg.synth.risk_betas[3] = f.beta_jp;
    if (o_noise->count()) cfg.synth.noise_scale = f.noise;
    if (o_tr->count()) cfg.split.train = f.train_frac;
    if (o_va->count()) cfg.split.val = f.val_frac;
    if (o_te->count()) cfg.split.test = f.test_frac;
    if (o_nmax->count()) cfg.features.n_max = f.n_max;
    if (o_mindf->count()) cfg.features.min_df = f.min_df;
    if (o_usedict->count()) cfg.features.use_dict = f.use_dict;
    if (o_minv->count()) cfg.train.min_votes = f.min_votes;
    if (o_nombti->count()) cfg.risk.include_mbti = !f.no_mbti;
    if (o_noind->count()) cfg.risk.industry_fe = !f.no_industry_fe;
    if (o_notime->count()) cfg.risk.time_fe = !f.no_time_fe;
    if (o_rawdum->count()) cfg.risk.standardize_dummies = !f.raw_dummies;
    if (o_post->count()) cfg.risk.post_days = f.post_days;
    if (o_past->count()) cfg.risk.past_days = f.past_days;
    cfg.validate();

    if (c_synth->parsed()) echelon::cli::run_synth(cfg);
    else if (c_ingest->parsed()) echelon::cli::run_ingest(cfg);
    else if (c_labels->parsed()) echelon::cli::run_labels(cfg);
    else if (c_iaa->parsed()) echelon::cli::run_iaa(cfg);
    else if (c_split->parsed()) echelon::cli::run_split(cfg);
    else if (c_train->parsed()) echelon::cli::run_train(cfg);
    else if (c_eval->parsed()) echelon::cli::run_eval(cfg, f.part);
    else if (c_predict->parsed()) echelon::cli::run_predict(cfg);
    else if (c_risk->parsed()) echelon::cli::run_risk(cfg);
    else if (c_explain->parsed())
      echelon::cli::run_explain(cfg, f.call, f.scale, f.top);
    return 0;
  } catch (const echelon::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const echelon::IoError& e) {
    std::fprintf(stderr, "io error: %s\n", e.what());
    return 3;
  } catch (const echelon::ParseError& e) {
    std::fprintf(stderr, "parse error: %s\n", e.what());
    return 4;
  } catch (const echelon::ValidationError& e) {
    std::fprintf(stderr, "validation error: %s\n", e.what());
    return 4;
  } catch (const echelon::NumericError& e) {
    std::fprintf(stderr, "numerical error: %s\n", e.what());
    return 5;
  } catch (const echelon::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "unexpected error: %s\n", e.what());
    return 1;
  }
}
