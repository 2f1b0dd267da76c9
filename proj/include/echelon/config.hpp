#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "echelon/synth.hpp"

namespace echelon::cli {

// Parsed INI text: '[section]' headers, 'key = value' lines, '#' or ';'
// comments. Values keep internal whitespace, surrounding whitespace trimmed.
using IniData = std::map<std::string, std::map<std::string, std::string>>;
IniData parse_ini(const std::string& text);

struct PathsConfig {
  std::string manifest;
  std::string votes;
  std::string big5;
  std::string labels;
  std::string split;
  std::string panel;
  std::string prices_dir;
  std::string dictionary;
  std::string model;
  std::string predictions;
};

struct SplitConfig {
  double train = 0.8;
  double val = 0.1;
  double test = 0.1;
};

struct FeaturesConfig {
  bool use_tfidf = true;
  long n_max = 3;
  long min_df = 2;
  bool use_dict = false;
};

struct TrainConfig {
  std::string algorithm = "svr";  // svr | mlp
  long min_votes = 3;
  double svr_c = 1.0;
  double svr_epsilon = 0.1;
  double svr_tol = 1e-4;
  long svr_max_passes = 1000;
  long mlp_epochs = 30;
  double mlp_learning_rate = 0.01;
  std::string mlp_hidden = "64,64";
  std::string eval_space = "transformed";  // transformed | original
};

struct RiskConfig {
  bool include_mbti = true;
  bool industry_fe = true;
  bool time_fe = true;
  bool standardize_dummies = true;
  long post_days = 5;
  long past_days = 63;
};

struct RunConfig {
  PathsConfig paths;
  SplitConfig split;
  FeaturesConfig features;
  TrainConfig train;
  RiskConfig risk;
  synth::SynthConfig synth;
  std::uint64_t seed = 42;
  std::string out_dir = "runs/out";

  void validate() const;  // cross-field checks; path existence is per-command
};

// Applies an INI file over the defaults. Unknown sections or keys are
// ConfigErrors so typos surface instead of silently reverting to defaults.
RunConfig config_from_ini(const std::string& text);

// FNV-1a over the semantic settings (split fractions, features,
// hyperparameters, regression flags, synthetic-world shape). Paths, the
// output directory and the seed are deliberately excluded: the hash names
// the analysis, the seed names the draw, and reports carry both.
std::uint64_t config_hash(const RunConfig& c);

// "# <tool> <command>" plus config hash and seed; prepended to artifacts.
std::string provenance_header(const std::string& command, const RunConfig& c);

}  // namespace echelon::cli
