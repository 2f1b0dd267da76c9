#include "echelon/config.hpp"

#include <array>
#include <cmath>

#include "echelon/errors.hpp"
#include "echelon/io_util.hpp"

namespace echelon::cli {

namespace {

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("config: " + key + " wants a boolean, got '" + v + "'");
}

double parse_num(const std::string& key, const std::string& v) {
  try {
    return ioutil::parse_double(v, key);
  } catch (const Error&) {
    throw ConfigError("config: " + key + " wants a number, got '" + v + "'");
  }
}

long parse_int(const std::string& key, const std::string& v) {
  try {
    return ioutil::parse_long(v, key);
  } catch (const Error&) {
    throw ConfigError("config: " + key + " wants an integer, got '" + v + "'");
  }
}

std::uint64_t parse_seed(const std::string& key, const std::string& v) {
  long n = parse_int(key, v);
  if (n < 0) throw ConfigError("config: " + key + " must be non-negative");
  return static_cast<std::uint64_t>(n);
}

}  // namespace

IniData parse_ini(const std::string& text) {
  IniData data;
  std::string section;
  long line_no = 0;
  for (const auto& raw : ioutil::split_lines(text)) {
    ++line_no;
    std::string line = ioutil::trim(raw);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("config line " + std::to_string(line_no) +
                          ": unterminated section header");
      section = ioutil::trim(line.substr(1, line.size() - 2));
      if (section.empty())
        throw ConfigError("config line " + std::to_string(line_no) +
                          ": empty section name");
      data[section];
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": expected 'key = value'");
    std::string key = ioutil::trim(line.substr(0, eq));
    std::string value = ioutil::trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": empty key");
    data[section][key] = value;
  }
  return data;
}

RunConfig config_from_ini(const std::string& text) {
  RunConfig c;
  for (const auto& [section, entries] : parse_ini(text)) {
    for (const auto& [key, v] : entries) {
      std::string full = section.empty() ? key : section + "." + key;
      if (section == "run") {
        if (key == "seed") c.seed = parse_seed(full, v);
        else if (key == "out_dir") c.out_dir = v;
        else throw ConfigError("config: unknown key " + full);
      } else if (section == "paths") {
        if (key == "manifest") c.paths.manifest = v;
        else if (key == "votes") c.paths.votes = v;
        else if (key == "big5") c.paths.big5 = v;
        else if (key == "labels") c.paths.labels = v;
        else if (key == "split") c.paths.split = v;
        else if (key == "panel") c.paths.panel = v;
        else if (key == "prices_dir") c.paths.prices_dir = v;
        else if (key == "dictionary") c.paths.dictionary = v;
        else if (key == "model") c.paths.model = v;
        else if (key == "predictions") c.paths.predictions = v;
        else throw ConfigError("config: unknown key " + full);
      } else if (section == "split") {
        if (key == "train") c.split.train = parse_num(full, v);
        else if (key == "val") c.split.val = parse_num(full, v);
        else if (key == "test") c.split.test = parse_num(full, v);
        else throw ConfigError("config: unknown key " + full);
      } else if (section == "features") {
        if (key == "use_tfidf") c.features.use_tfidf = parse_bool(full, v);
        else if (key == "n_max") c.features.n_max = parse_int(full, v);
        else if (key == "min_df") c.features.min_df = parse_int(full, v);
        else if (key == "use_dict") c.features.use_dict = parse_bool(full, v);
        else throw ConfigError("config: unknown key " + full);
      } else if (section == "train") {
        if (key == "algorithm") c.train.algorithm = v;
        else if (key == "min_votes") c.train.min_votes = parse_int(full, v);
        else if (key == "svr_c") c.train.svr_c = parse_num(full, v);
        else if (key == "svr_epsilon") c.train.svr_epsilon = parse_num(full, v);
        else if (key == "svr_tol") c.train.svr_tol = parse_num(full, v);
        else if (key == "svr_max_passes")
          c.train.svr_max_passes = parse_int(full, v);
        else if (key == "mlp_epochs") c.train.mlp_epochs = parse_int(full, v);
        else if (key == "mlp_learning_rate")
          c.train.mlp_learning_rate = parse_num(full, v);
        else if (key == "mlp_hidden") c.train.mlp_hidden = v;
        else if (key == "eval_space") c.train.eval_space = v;
        else throw ConfigError("config: unknown key " + full);
      } else if (section == "risk") {
        if (key == "include_mbti") c.risk.include_mbti = parse_bool(full, v);
        else if (key == "industry_fe") c.risk.industry_fe = parse_bool(full, v);
        else if (key == "time_fe") c.risk.time_fe = parse_bool(full, v);
        else if (key == "standardize_dummies")
          c.risk.standardize_dummies = parse_bool(full, v);
        else if (key == "post_days") c.risk.post_days = parse_int(full, v);
        else if (key == "past_days") c.risk.past_days = parse_int(full, v);
        else throw ConfigError("config: unknown key " + full);
      } else if (section == "synth") {
        if (key == "n_ceos") c.synth.n_ceos = parse_int(full, v);
        else if (key == "calls_per_ceo")
          c.synth.calls_per_ceo = parse_int(full, v);
        else if (key == "total_calls") c.synth.total_calls = parse_int(full, v);
        else if (key == "votes_per_ceo")
          c.synth.votes_per_ceo = parse_int(full, v);
        else if (key == "doc_length") c.synth.doc_length = parse_int(full, v);
        else if (key == "lexicon_words_per_pole")
          c.synth.lexicon_words_per_pole = parse_int(full, v);
        else if (key == "filler_words")
          c.synth.filler_words = parse_int(full, v);
        else if (key == "trait_token_share")
          c.synth.trait_token_share = parse_num(full, v);
        else if (key == "beta_ei") c.synth.risk_betas[0] = parse_num(full, v);
        else if (key == "beta_sn") c.synth.risk_betas[1] = parse_num(full, v);
        else if (key == "beta_tf") c.synth.risk_betas[2] = parse_num(full, v);
        else if (key == "beta_jp") c.synth.risk_betas[3] = parse_num(full, v);
        else if (key == "noise_scale")
          c.synth.noise_scale = parse_num(full, v);
        else throw ConfigError("config: unknown key " + full);
      } else {
        throw ConfigError("config: unknown section [" + section + "]");
      }
    }
  }
  c.validate();
  return c;
}

void RunConfig::validate() const {
  double sum = split.train + split.val + split.test;
  if (std::abs(sum - 1.0) > 1e-9)
    throw ConfigError("config: split fractions sum to " + ioutil::fmt_exact(sum) +
                      ", expected 1");
  if (split.train < 0 || split.val < 0 || split.test < 0)
    throw ConfigError("config: split fractions must be non-negative");
  if (train.algorithm != "svr" && train.algorithm != "mlp")
    throw ConfigError("config: train.algorithm must be svr or mlp, got '" +
                      train.algorithm + "'");
  if (train.eval_space != "transformed" && train.eval_space != "original")
    throw ConfigError(
        "config: train.eval_space must be transformed or original, got '" +
        train.eval_space + "'");
  if (train.min_votes < 1)
    throw ConfigError("config: train.min_votes must be positive");
  if (features.n_max < 1)
    throw ConfigError("config: features.n_max must be positive");
  if (features.min_df < 1)
    throw ConfigError("config: features.min_df must be positive");
  if (!features.use_tfidf && !features.use_dict)
    throw ConfigError("config: at least one feature family must be enabled");
  if (risk.post_days < 2 || risk.past_days < 2)
    throw ConfigError("config: volatility windows need at least 2 days");
  synth.validate();
}

std::uint64_t config_hash(const RunConfig& c) {
  std::string s;
  auto add = [&s](const std::string& key, const std::string& value) {
    s += key;
    s += '=';
    s += value;
    s += ';';
  };
  auto num = [](double v) { return ioutil::fmt_exact(v); };
  add("split.train", num(c.split.train));
  add("split.val", num(c.split.val));
  add("split.test", num(c.split.test));
  add("features.use_tfidf", c.features.use_tfidf ? "1" : "0");
  add("features.n_max", std::to_string(c.features.n_max));
  add("features.min_df", std::to_string(c.features.min_df));
  add("features.use_dict", c.features.use_dict ? "1" : "0");
  add("train.algorithm", c.train.algorithm);
  add("train.min_votes", std::to_string(c.train.min_votes));
  add("train.svr_c", num(c.train.svr_c));
  add("train.svr_epsilon", num(c.train.svr_epsilon));
  add("train.svr_tol", num(c.train.svr_tol));
  add("train.svr_max_passes", std::to_string(c.train.svr_max_passes));
  add("train.mlp_epochs", std::to_string(c.train.mlp_epochs));
  add("train.mlp_learning_rate", num(c.train.mlp_learning_rate));
  add("train.mlp_hidden", c.train.mlp_hidden);
  add("train.eval_space", c.train.eval_space);
  add("risk.include_mbti", c.risk.include_mbti ? "1" : "0");
  add("risk.industry_fe", c.risk.industry_fe ? "1" : "0");
  add("risk.time_fe", c.risk.time_fe ? "1" : "0");
  add("risk.standardize_dummies", c.risk.standardize_dummies ? "1" : "0");
  add("risk.post_days", std::to_string(c.risk.post_days));
  add("risk.past_days", std::to_string(c.risk.past_days));
  add("synth.n_ceos", std::to_string(c.synth.n_ceos));
  add("synth.calls_per_ceo", std::to_string(c.synth.calls_per_ceo));
  add("synth.total_calls", std::to_string(c.synth.total_calls));
  add("synth.votes_per_ceo", std::to_string(c.synth.votes_per_ceo));
  add("synth.doc_length", std::to_string(c.synth.doc_length));
  add("synth.lexicon_words_per_pole",
      std::to_string(c.synth.lexicon_words_per_pole));
  add("synth.filler_words", std::to_string(c.synth.filler_words));
  add("synth.trait_token_share", num(c.synth.trait_token_share));
  for (int i = 0; i < 4; ++i)
    add("synth.beta" + std::to_string(i),
        num(c.synth.risk_betas[static_cast<std::size_t>(i)]));
  add("synth.noise_scale", num(c.synth.noise_scale));
  return ioutil::fnv1a(s);
}

std::string provenance_header(const std::string& command, const RunConfig& c) {
  return "# echelon " + command + "\n# config " + ioutil::hex16(config_hash(c)) +
         "\n# seed " + std::to_string(c.seed) + "\n";
}

}  // namespace echelon::cli
