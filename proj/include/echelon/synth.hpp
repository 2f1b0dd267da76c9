#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "echelon/corpus.hpp"
#include "echelon/econ.hpp"
#include "echelon/labels.hpp"

namespace echelon::synth {

// Everything downstream of `seed` is deterministic: the generator draws from
// a single stream in a fixed order, so equal configs give byte-equal worlds.
struct SynthConfig {
  long n_ceos = 12;
  long calls_per_ceo = 8;
  // When positive, overrides n_ceos * calls_per_ceo and spreads calls as
  // evenly as possible across CEOs.
  long total_calls = 0;
  long votes_per_ceo = 60;     // raters per scale and CEO
  long doc_length = 400;       // CEO tokens per call
  long lexicon_words_per_pole = 24;
  long filler_words = 120;
  double trait_token_share = 0.6;  // fraction of CEO tokens that carry signal
  // Planted standardized volatility effects, scale order ei, sn, tf, jp.
  std::array<double, 4> risk_betas = {0.03, -0.017, 0.10, 0.0};
  double noise_scale = 0.34;  // residual share of the structural equation
  std::uint64_t seed = 42;

  void validate() const;
};

struct CeoProfile {
  std::string name;  // canonical "First Last"
  labels::MbtiVector traits;
  std::string firm_id;
  int sic = 0;
  double base_age = 0.0;
  int gender = 0;
};

struct World {
  SynthConfig config;
  std::vector<CeoProfile> ceos;
  std::vector<corpus::Transcript> transcripts;  // one per call, call_id order
  std::vector<labels::VoteRow> votes;
  std::map<std::string, labels::Big5Vector> big5;         // by CEO name
  std::map<std::string, labels::MbtiVector> call_traits;  // oracle, by call_id
  std::map<std::string, std::string> call_ceo;            // call_id -> CEO
  std::vector<econ::PanelRow> panel;
  std::map<std::string, econ::PriceSeries> prices;  // price_file -> series
};

// Latent traits from skewed Beta priors (CEOs lean extraverted, intuitive,
// thinking, judging), binomial crowd votes around them, documents mixing
// pole lexicons proportionally to traits, and a price panel whose post-call
// volatility is log-linear in the planted effects.
World gen_world(const SynthConfig& config);

// Writes the canonical file layout for a world under `dir`: transcripts/,
// manifest.jsonl, votes.csv, big5.csv, oracle_mbti.csv, panel.csv, prices/.
// `provenance` is prepended as comment lines to the CSV artifacts.
void write_world(const World& world, const std::string& dir,
                 const std::string& provenance);

// Finance-only fast path: the same per-call structural equation and price
// windows, measured through econ's realized-vol estimator, without any text
// or vote generation. Traits attached are the oracle values.
std::vector<econ::RiskRow> gen_risk_rows(const SynthConfig& config);

}  // namespace echelon::synth
