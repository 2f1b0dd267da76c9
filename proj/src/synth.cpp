#include "echelon/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "echelon/errors.hpp"
#include "echelon/io_util.hpp"
#include "echelon/rng.hpp"

namespace echelon::synth {

namespace {

// Latent traits: right-pole shares drawn from skewed Betas so the population
// leans extraverted (low I), intuitive (high N), thinking (low F) and
// judging (low P). Mean/sd below are the exact Beta(2,5)/Beta(5,2) moments;
// both shapes share the same variance.
constexpr double kBetaA[4] = {2.0, 5.0, 2.0, 2.0};
constexpr double kBetaB[4] = {5.0, 2.0, 5.0, 5.0};
const double kTraitMean[4] = {2.0 / 7.0, 5.0 / 7.0, 2.0 / 7.0, 2.0 / 7.0};
const double kTraitSd = std::sqrt(10.0 / 392.0);

// Log-vol scale shared by past and post windows.
const double kMuVol = std::log(0.02);
constexpr double kSVol = 0.25;

// Control generators (z is standard normal in every case).
constexpr double kMuLnSize = 21.0, kSLnSize = 1.2;
constexpr double kMuLnVolume = 16.0, kSLnVolume = 1.0;
constexpr double kMuLnBtm = -0.6, kSLnBtm = 0.5;
constexpr double kLev0 = 0.28, kLevS = 0.12;
constexpr double kSpr0 = 0.02, kSprS = 0.006;
constexpr double kSue0 = 0.05, kSueS = 0.02;
constexpr double kRoa0 = 0.05, kRoaS = 0.03;

// Standardized control effects in the structural equation. Sized so that the
// total structural variance is close to 1, which makes the planted trait
// betas come back at about their nominal magnitude after standardization.
constexpr double kBetaPastVola = 0.85;
constexpr double kBetaSize = -0.30;
constexpr double kBetaVolume = 0.13;
constexpr double kBetaLeverage = -0.14;
constexpr double kBetaSpread = 0.08;
constexpr double kBetaBtm = -0.12;
constexpr double kBetaSue = 0.0;
constexpr double kBetaRoa = 0.0;

// Fixed industry and calendar-quarter offsets, absorbed by the dummies.
constexpr double kIndustryOffset[12] = {0.03,  -0.05, 0.01, 0.04, -0.02, 0.05,
                                        -0.04, 0.02,  -0.01, 0.03, -0.03, 0.0};
constexpr double kPeriodOffset[8] = {0.02, -0.03, 0.01,  0.03,
                                     -0.02, 0.0,  -0.01, 0.02};

// SIC pool spanning most of the twelve industry groups. Worlds use a prefix
// sized so each industry keeps roughly three CEOs; industry dummies plus
// per-CEO trait columns stay full rank that way.
constexpr int kSicPool[12] = {2836, 2911, 3571, 3674, 4813, 4911,
                              5331, 6022, 7372, 8062, 3711, 9995};

int sic_for_ceo(long ceo_idx, long n_ceos) {
  long pool = std::min<long>(12, std::max<long>(2, n_ceos / 3));
  return kSicPool[ceo_idx % pool];
}

const char* kFirstNames[24] = {
    "Avery",  "Blake",   "Casey",  "Drew",   "Ellis",  "Finley",
    "Gray",   "Harper",  "Indigo", "Jordan", "Kendall", "Logan",
    "Morgan", "Noel",    "Oakley", "Parker", "Quinn",  "Reese",
    "Sage",   "Taylor",  "Umber",  "Vaughn", "Winter", "Zane"};
const char* kLastNames[24] = {
    "Abbott",  "Barnes",  "Carver",    "Dalton",  "Ellison",  "Foster",
    "Granger", "Holt",    "Ibarra",    "Jensen",  "Keller",   "Lowell",
    "Mercer",  "Norwood", "Osborne",   "Prescott", "Quimby",  "Rhodes",
    "Sterling", "Thorne", "Underhill", "Vance",   "Whitfield", "York"};

struct Lexicons {
  // [scale][0] = left-pole words, [scale][1] = right-pole words.
  std::vector<std::string> pole[4][2];
  std::vector<std::string> filler;
};

std::string make_word(Rng& rng) {
  static const char consonants[] = "bcdfghjklmnprstvwz";
  static const char vowels[] = "aeiou";
  std::string w;
  for (int s = 0; s < 3; ++s) {
    w.push_back(consonants[rng.next_below(18)]);
    w.push_back(vowels[rng.next_below(5)]);
  }
  return w;
}

Lexicons make_lexicons(Rng& rng, long per_pole, long filler) {
  Lexicons lex;
  std::set<std::string> used;
  auto fill = [&](std::vector<std::string>& out, long n) {
    while (static_cast<long>(out.size()) < n) {
      std::string w = make_word(rng);
      if (used.insert(w).second) out.push_back(w);
    }
  };
  for (int s = 0; s < 4; ++s)
    for (int p = 0; p < 2; ++p) fill(lex.pole[s][p], per_pole);
  fill(lex.filler, filler);
  return lex;
}

std::string capitalize(std::string w) {
  if (!w.empty() && w[0] >= 'a' && w[0] <= 'z')
    w[0] = static_cast<char>(w[0] - 'a' + 'A');
  return w;
}

// Tokens -> sentences of 6..12 words, capitalized and period-terminated, so
// the sentence counter sees real boundaries.
std::string render_sentences(Rng& rng, const std::vector<std::string>& tokens) {
  std::string out;
  std::size_t i = 0;
  while (i < tokens.size()) {
    std::size_t n = 6 + rng.next_below(7);
    n = std::min(n, tokens.size() - i);
    for (std::size_t k = 0; k < n; ++k) {
      if (k == 0) {
        if (!out.empty()) out += ' ';
        out += capitalize(tokens[i + k]);
      } else {
        out += ' ';
        out += tokens[i + k];
      }
    }
    out += '.';
    i += n;
  }
  return out;
}

// One CEO token: with probability trait_token_share a pole word whose side
// is Bernoulli(trait) on a uniformly chosen scale, otherwise filler.
std::vector<std::string> ceo_tokens(Rng& rng, const Lexicons& lex,
                                    const labels::MbtiVector& traits,
                                    long count, double share) {
  std::vector<std::string> out;
  out.reserve(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) {
    if (rng.next_double() < share) {
      int s = static_cast<int>(rng.next_below(4));
      double t = traits.get(static_cast<labels::Scale>(s));
      int pole = rng.next_double() < t ? 1 : 0;
      const auto& words = lex.pole[s][pole];
      out.push_back(words[rng.next_below(words.size())]);
    } else {
      out.push_back(lex.filler[rng.next_below(lex.filler.size())]);
    }
  }
  return out;
}

std::vector<std::string> filler_tokens(Rng& rng, const Lexicons& lex,
                                       long count) {
  std::vector<std::string> out;
  out.reserve(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i)
    out.push_back(lex.filler[rng.next_below(lex.filler.size())]);
  return out;
}

// Everything the structural equation produces for one call.
struct CallFinance {
  double past_target = 0.0;  // realized vol the pre window must reproduce
  double post_target = 0.0;  // realized vol the post window must reproduce
  double ln_size = 0.0;
  double volume = 0.0;
  double btm = 0.0;
  double leverage = 0.0;
  double spread = 0.0;
  double sue = 0.0;
  double roa = 0.0;
};

CallFinance draw_call_finance(Rng& rng, const labels::MbtiVector& traits,
                              int industry, const std::string& period,
                              const SynthConfig& cfg) {
  CallFinance f;
  double z_pv = rng.next_normal();
  f.past_target = std::exp(kMuVol + kSVol * z_pv);
  double z_sz = rng.next_normal();
  f.ln_size = kMuLnSize + kSLnSize * z_sz;
  double z_vm = rng.next_normal();
  f.volume = std::exp(kMuLnVolume + kSLnVolume * z_vm);
  double z_bt = rng.next_normal();
  f.btm = std::exp(kMuLnBtm + kSLnBtm * z_bt);
  double z_lv = rng.next_normal();
  f.leverage = kLev0 + kLevS * z_lv;
  double z_sp = rng.next_normal();
  f.spread = std::max(kSpr0 + kSprS * z_sp, 1e-4);
  double z_su = rng.next_normal();
  f.sue = kSue0 + kSueS * z_su;
  double z_ro = rng.next_normal();
  f.roa = kRoa0 + kRoaS * z_ro;

  double eta = kBetaPastVola * z_pv + kBetaSize * z_sz + kBetaVolume * z_vm +
               kBetaLeverage * z_lv + kBetaSpread * z_sp + kBetaBtm * z_bt +
               kBetaSue * z_su + kBetaRoa * z_ro;
  for (int s = 0; s < 4; ++s) {
    double z_t =
        (traits.get(static_cast<labels::Scale>(s)) - kTraitMean[s]) / kTraitSd;
    eta += cfg.risk_betas[static_cast<std::size_t>(s)] * z_t;
  }
  eta += kIndustryOffset[industry - 1];
  eta += kPeriodOffset[ioutil::fnv1a(period) % 8];
  eta += cfg.noise_scale * rng.next_normal();
  f.post_target = std::exp(kMuVol + kSVol * eta);
  return f;
}

// m centered normal draws rescaled so their sample (m-1) standard deviation
// equals target exactly; the realized-vol estimator then recovers the target
// up to floating-point rounding.
std::vector<double> exact_sd_returns(Rng& rng, int m, double target) {
  for (;;) {
    std::vector<double> g(static_cast<std::size_t>(m));
    for (auto& v : g) v = rng.next_normal();
    double mean = 0.0;
    for (double v : g) mean += v;
    mean /= m;
    double ss = 0.0;
    for (auto& v : g) {
      v -= mean;
      ss += v * v;
    }
    double sd = std::sqrt(ss / (m - 1));
    if (sd > 1e-12) {
      for (auto& v : g) v *= target / sd;
      return g;
    }
  }
}

// Shared trading-day grid: every firm runs the same 71-day-per-call
// schedule, 2 buffer + 63 pre + call day + 5 post, starting after this base.
constexpr Date kGridBase{2012, 11, 1};
constexpr int kDaysPerCall = 71;
constexpr int kCallOffset = 65;  // index of the call day within a segment

std::vector<Date> trading_grid(long n_days) {
  std::vector<Date> grid;
  grid.reserve(static_cast<std::size_t>(n_days));
  Date d = kGridBase;
  for (long i = 0; i < n_days; ++i) {
    d = next_trading_day(d);
    grid.push_back(d);
  }
  return grid;
}

// Appends one call's segment to the series: 2 buffer days, a 63-day pre
// window whose internal returns have exact sample sd past_target, the call
// day, then a 5-day post window with exact sd post_target. `days` points at
// the segment's 71 grid dates; `price` advances for the next call.
void append_call_segment(Rng& rng, econ::PriceSeries& ps, const Date* days,
                         double& price, double past_target,
                         double post_target) {
  std::size_t k = 0;
  auto push = [&](double ret) {
    price *= std::exp(ret);
    ps.points.push_back({days[k++], price});
  };
  for (int i = 0; i < 2; ++i) push(0.01 * rng.next_normal());
  push(0.005 * rng.next_normal());  // first pre day; entry return is free
  for (double r : exact_sd_returns(rng, 62, past_target)) push(r);
  push(0.005 * rng.next_normal());  // call day
  push(0.005 * rng.next_normal());  // first post day
  for (double r : exact_sd_returns(rng, 4, post_target)) push(r);
}

std::string call_id_for(long idx) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "C%05ld", idx);
  return buf;
}

std::string firm_id_for(long idx) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "F%03ld", idx);
  return buf;
}

std::string ceo_display_name(long i) {
  return std::string(kFirstNames[i % 24]) + " " +
         kLastNames[(i + i / 24) % 24];
}

// Display variants for turn lines; all normalize back to the canonical name.
std::string speaker_variant(Rng& rng, const std::string& name, int gender) {
  double u = rng.next_double();
  if (u < 0.2) {
    auto sp = name.find(' ');
    std::string mid(1, static_cast<char>('A' + rng.next_below(26)));
    return name.substr(0, sp) + " " + mid + ". " + name.substr(sp + 1);
  }
  if (u < 0.3) return (gender == 1 ? "Ms. " : "Mr. ") + name;
  return name;
}

double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

std::vector<long> calls_per_ceo_counts(const SynthConfig& cfg) {
  long total = cfg.total_calls > 0 ? cfg.total_calls
                                   : cfg.n_ceos * cfg.calls_per_ceo;
  long base = total / cfg.n_ceos;
  long extra = total % cfg.n_ceos;
  if (base < 1)
    throw ValidationError("synth: fewer calls than CEOs (" +
                          std::to_string(total) + " calls, " +
                          std::to_string(cfg.n_ceos) + " CEOs)");
  std::vector<long> counts(static_cast<std::size_t>(cfg.n_ceos), base);
  for (long i = 0; i < extra; ++i) counts[static_cast<std::size_t>(i)]++;
  return counts;
}

}  // namespace

void SynthConfig::validate() const {
  if (n_ceos < 1) throw ConfigError("synth: n_ceos must be positive");
  if (calls_per_ceo < 1 && total_calls < 1)
    throw ConfigError("synth: calls_per_ceo must be positive");
  if (votes_per_ceo < 1) throw ConfigError("synth: votes_per_ceo must be positive");
  // Below 8 tokens one of the five CEO turns would come out empty.
  if (doc_length < 8) throw ConfigError("synth: doc_length must be at least 8");
  if (lexicon_words_per_pole < 1)
    throw ConfigError("synth: lexicon_words_per_pole must be positive");
  if (filler_words < 1) throw ConfigError("synth: filler_words must be positive");
  if (trait_token_share < 0.0 || trait_token_share > 1.0)
    throw ConfigError("synth: trait_token_share must be in [0, 1]");
  if (noise_scale < 0.0) throw ConfigError("synth: noise_scale must be non-negative");
}

World gen_world(const SynthConfig& config) {
  config.validate();
  if (config.n_ceos > 576)
    throw ConfigError("synth: name pool supports at most 576 distinct CEOs");
  World w;
  w.config = config;
  Rng rng(config.seed);
  Lexicons lex = make_lexicons(rng, config.lexicon_words_per_pole,
                               config.filler_words);
  std::vector<long> counts = calls_per_ceo_counts(config);
  long max_calls = *std::max_element(counts.begin(), counts.end());
  std::vector<Date> grid = trading_grid(max_calls * kDaysPerCall);

  long call_idx = 0;
  for (long i = 0; i < config.n_ceos; ++i) {
    CeoProfile ceo;
    ceo.name = ceo_display_name(i);
    ceo.firm_id = firm_id_for(i);
    ceo.sic = sic_for_ceo(i, config.n_ceos);
    for (int s = 0; s < 4; ++s)
      ceo.traits.set(static_cast<labels::Scale>(s),
                     rng.next_beta(kBetaA[s], kBetaB[s]));
    ceo.traits.total_votes = config.votes_per_ceo;
    ceo.gender = rng.next_double() < 0.12 ? 1 : 0;
    ceo.base_age = 44.0 + 14.0 * rng.next_double();
    w.ceos.push_back(ceo);

    std::string canonical = corpus::normalize_name(ceo.name);

    // Crowd votes: binomial draws around the latent right-pole share.
    for (int s = 0; s < 4; ++s) {
      labels::VoteRow row;
      row.entity_id = canonical;
      row.rec.scale = static_cast<labels::Scale>(s);
      double t = ceo.traits.get(row.rec.scale);
      row.rec.votes_right = rng.next_binomial(config.votes_per_ceo, t);
      row.rec.votes_left = config.votes_per_ceo - row.rec.votes_right;
      w.votes.push_back(row);
    }

    // A loosely aligned self-report instrument for the cross-check table.
    labels::Big5Vector b5;
    double g = rng.next_normal();
    b5.extraversion = clamp01(1.0 - ceo.traits.ei + 0.10 * g);
    b5.openness = clamp01(ceo.traits.sn + 0.10 * rng.next_normal());
    b5.agreeableness = clamp01(ceo.traits.tf + 0.10 * rng.next_normal());
    b5.conscientiousness = clamp01(1.0 - ceo.traits.jp + 0.10 * rng.next_normal());
    b5.neuroticism = clamp01(0.5 + 0.15 * rng.next_normal());
    w.big5[canonical] = b5;

    econ::PriceSeries& ps = w.prices[ceo.firm_id + ".csv"];
    double price = 100.0;
    int industry = econ::ff12_industry(ceo.sic);

    for (long j = 0; j < counts[static_cast<std::size_t>(i)]; ++j) {
      std::string cid = call_id_for(call_idx++);
      // Finance first: the post-window construction needs the target vol,
      // and the period offset keys on the quarter the call lands in, which
      // the shared day grid fixes in advance.
      Date call_date = grid[static_cast<std::size_t>(j * kDaysPerCall +
                                                     kCallOffset)];
      std::string period = quarter_of(call_date);
      CallFinance fin =
          draw_call_finance(rng, ceo.traits, industry, period, config);
      append_call_segment(rng, ps,
                          &grid[static_cast<std::size_t>(j * kDaysPerCall)],
                          price, fin.past_target, fin.post_target);

      double prev_close = econ::close_before(ps, call_date);
      econ::PanelRow pr;
      pr.call_id = cid;
      pr.date = call_date;
      pr.sic = ceo.sic;
      pr.age = ceo.base_age + 0.25 * static_cast<double>(j);
      pr.gender = ceo.gender;
      pr.price_file = ceo.firm_id + ".csv";
      pr.leverage = fin.leverage;
      pr.spread = fin.spread;
      pr.btm = fin.btm;
      pr.sue = fin.sue;
      pr.roa = fin.roa;
      pr.shares_out = std::exp(fin.ln_size) / prev_close;
      pr.volume = fin.volume;
      w.panel.push_back(pr);

      w.call_traits[cid] = ceo.traits;
      w.call_ceo[cid] = canonical;

      // Transcript: operator intro, two presentation turns, Q&A with
      // analyst questions between CEO answers.
      corpus::Transcript t;
      t.call_id = cid;
      t.company_id = ceo.firm_id;
      t.call_date = call_date;
      t.quarter = {call_date.year, (call_date.month - 1) / 3 + 1};
      std::string display = speaker_variant(rng, ceo.name, ceo.gender);

      std::vector<std::string> body =
          ceo_tokens(rng, lex, ceo.traits, config.doc_length,
                     config.trait_token_share);
      long pres = config.doc_length * 55 / 100;
      long half = pres / 2;
      std::vector<std::vector<std::string>> chunks;
      chunks.emplace_back(body.begin(), body.begin() + half);
      chunks.emplace_back(body.begin() + half, body.begin() + pres);
      long qa_rest = config.doc_length - pres;
      long third = qa_rest / 3;
      chunks.emplace_back(body.begin() + pres, body.begin() + pres + third);
      chunks.emplace_back(body.begin() + pres + third,
                          body.begin() + pres + 2 * third);
      chunks.emplace_back(body.begin() + pres + 2 * third, body.end());

      int order = 0;
      auto add = [&](const std::string& who, corpus::SpeakerRole role,
                     corpus::Section sec, const std::string& text) {
        corpus::Utterance u;
        u.speaker_name = who;
        u.role = role;
        u.section = sec;
        u.text = text;
        u.order_index = order++;
        t.utterances.push_back(u);
      };
      add("Conference Operator", corpus::SpeakerRole::Operator,
          corpus::Section::Presentation,
          render_sentences(rng, filler_tokens(rng, lex, 12)));
      add(display, corpus::SpeakerRole::Ceo, corpus::Section::Presentation,
          render_sentences(rng, chunks[0]));
      add(display, corpus::SpeakerRole::Ceo, corpus::Section::Presentation,
          render_sentences(rng, chunks[1]));
      for (int q = 0; q < 3; ++q) {
        std::string analyst = std::string(kFirstNames[rng.next_below(24)]) +
                              " " + kLastNames[rng.next_below(24)];
        add(analyst, corpus::SpeakerRole::Analyst, corpus::Section::Qa,
            render_sentences(rng, filler_tokens(rng, lex, 14)));
        add(display, corpus::SpeakerRole::Ceo, corpus::Section::Qa,
            render_sentences(rng, chunks[static_cast<std::size_t>(2 + q)]));
      }
      w.transcripts.push_back(t);
    }
  }
  for (auto& [file, ps] : w.prices) ps.validate(file);
  return w;
}

void write_world(const World& world, const std::string& dir,
                 const std::string& provenance) {
  for (const auto& t : world.transcripts)
    ioutil::write_file(dir + "/transcripts/" + t.call_id + ".txt",
                   corpus::serialize_transcript(t));
  std::string manifest;
  for (const auto& t : world.transcripts)
    manifest += "{\"path\": \"transcripts/" + t.call_id + ".txt\"}\n";
  ioutil::write_file(dir + "/manifest.jsonl", manifest);

  labels::write_votes_csv(dir + "/votes.csv", world.votes, provenance);

  std::string b5 = provenance + "entity_id,o,c,e,a,n\n";
  for (const auto& [name, v] : world.big5) {
    b5 += name;
    for (int i = 0; i < 5; ++i) {
      b5 += ',';
      b5 += ioutil::fmt_exact(v.get(i));
    }
    b5 += '\n';
  }
  ioutil::write_file(dir + "/big5.csv", b5);

  std::string oracle = provenance + "call_id,ceo,ei,sn,tf,jp\n";
  for (const auto& [cid, tr] : world.call_traits) {
    oracle += cid + "," + world.call_ceo.at(cid);
    for (int s = 0; s < 4; ++s) {
      oracle += ',';
      oracle += ioutil::fmt_exact(tr.get(static_cast<labels::Scale>(s)));
    }
    oracle += '\n';
  }
  ioutil::write_file(dir + "/oracle_mbti.csv", oracle);

  econ::write_panel_csv(dir + "/panel.csv", world.panel, provenance);
  for (const auto& [file, ps] : world.prices)
    econ::write_prices_csv(dir + "/prices/" + file, ps, provenance);
}

std::vector<econ::RiskRow> gen_risk_rows(const SynthConfig& config) {
  config.validate();
  Rng rng(config.seed);
  std::vector<long> counts = calls_per_ceo_counts(config);
  long max_calls = *std::max_element(counts.begin(), counts.end());
  std::vector<Date> grid = trading_grid(max_calls * kDaysPerCall);
  std::vector<econ::RiskRow> rows;
  long call_idx = 0;
  for (long i = 0; i < config.n_ceos; ++i) {
    labels::MbtiVector traits;
    for (int s = 0; s < 4; ++s)
      traits.set(static_cast<labels::Scale>(s),
                 rng.next_beta(kBetaA[s], kBetaB[s]));
    traits.total_votes = config.votes_per_ceo;
    int gender = rng.next_double() < 0.12 ? 1 : 0;
    double base_age = 44.0 + 14.0 * rng.next_double();
    int sic = sic_for_ceo(i, config.n_ceos);
    int industry = econ::ff12_industry(sic);

    double price = 100.0;
    econ::PriceSeries ps;
    for (long j = 0; j < counts[static_cast<std::size_t>(i)]; ++j) {
      Date call_date = grid[static_cast<std::size_t>(j * kDaysPerCall +
                                                     kCallOffset)];
      std::string period = quarter_of(call_date);
      CallFinance fin = draw_call_finance(rng, traits, industry, period, config);
      append_call_segment(rng, ps,
                          &grid[static_cast<std::size_t>(j * kDaysPerCall)],
                          price, fin.past_target, fin.post_target);

      econ::RiskRow r;
      r.call_id = call_id_for(call_idx++);
      r.date = call_date;
      r.sic = sic;
      // Measured through the same estimator the file-backed pipeline uses.
      r.vola_post = econ::realized_vol_after(ps, call_date, 5);
      r.past_vola = econ::realized_vol_before(ps, call_date, 63);
      r.age = base_age + 0.25 * static_cast<double>(j);
      r.gender = gender;
      r.size = std::exp(fin.ln_size);
      r.volume = fin.volume;
      r.leverage = fin.leverage;
      r.spread = fin.spread;
      r.btm = fin.btm;
      r.sue = fin.sue;
      r.roa = fin.roa;
      r.mbti = traits;
      rows.push_back(r);
    }
  }
  return rows;
}

}  // namespace echelon::synth
