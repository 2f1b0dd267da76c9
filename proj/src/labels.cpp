#include "echelon/labels.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <sstream>

#include "echelon/errors.hpp"
#include "echelon/io_util.hpp"

namespace echelon::labels {

const char* scale_name(Scale s) {
  switch (s) {
    case Scale::Ei: return "ei";
    case Scale::Sn: return "sn";
    case Scale::Tf: return "tf";
    case Scale::Jp: return "jp";
  }
  return "?";
}

const char* scale_label(Scale s) {
  switch (s) {
    case Scale::Ei: return "E-I";
    case Scale::Sn: return "S-N";
    case Scale::Tf: return "T-F";
    case Scale::Jp: return "J-P";
  }
  return "?";
}

std::optional<Scale> parse_scale(const std::string& raw) {
  std::string s;
  for (char c : raw)
    if (c != '-')
      s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (s == "ei") return Scale::Ei;
  if (s == "sn") return Scale::Sn;
  if (s == "tf") return Scale::Tf;
  if (s == "jp") return Scale::Jp;
  return std::nullopt;
}

double MbtiVector::get(Scale s) const {
  switch (s) {
    case Scale::Ei: return ei;
    case Scale::Sn: return sn;
    case Scale::Tf: return tf;
    case Scale::Jp: return jp;
  }
  return 0.0;
}

void MbtiVector::set(Scale s, double v) {
  switch (s) {
    case Scale::Ei: ei = v; break;
    case Scale::Sn: sn = v; break;
    case Scale::Tf: tf = v; break;
    case Scale::Jp: jp = v; break;
  }
}

double Big5Vector::get(int i) const {
  switch (i) {
    case 0: return openness;
    case 1: return conscientiousness;
    case 2: return extraversion;
    case 3: return agreeableness;
    case 4: return neuroticism;
  }
  return 0.0;
}

double normalize_votes(const VoteRecord& r) {
  if (r.votes_left < 0 || r.votes_right < 0)
    throw ValidationError("negative vote count on scale " +
                          std::string(scale_name(r.scale)));
  const long total = r.total();
  if (total == 0)
    throw ValidationError("zero votes on scale " +
                          std::string(scale_name(r.scale)));
  const double d = static_cast<double>(total);
  // Evaluating the smaller share directly and deriving the larger one as its
  // complement makes score + complement sum to exactly 1.0, and keeps the
  // result invariant when both counts share a common factor.
  if (r.votes_right <= r.votes_left)
    return static_cast<double>(r.votes_right) / d;
  return 1.0 - static_cast<double>(r.votes_left) / d;
}

MbtiVector build_mbti_vector(const std::vector<VoteRecord>& records,
                             long min_votes) {
  std::array<const VoteRecord*, 4> by_scale{};
  for (const auto& r : records) {
    auto& slot = by_scale[static_cast<std::size_t>(r.scale)];
    if (slot != nullptr)
      throw ValidationError("duplicate scale " +
                            std::string(scale_name(r.scale)));
    slot = &r;
  }
  MbtiVector v;
  v.total_votes = -1;
  for (Scale s : kScales) {
    const auto* r = by_scale[static_cast<std::size_t>(s)];
    if (r == nullptr)
      throw ValidationError("missing scale " + std::string(scale_name(s)));
    if (r->total() < min_votes)
      throw ValidationError("scale " + std::string(scale_name(s)) + " has " +
                            std::to_string(r->total()) + " votes, need " +
                            std::to_string(min_votes));
    v.set(s, normalize_votes(*r));
    if (v.total_votes < 0 || r->total() < v.total_votes)
      v.total_votes = r->total();
  }
  return v;
}

LabelSummary label_summary(const std::vector<MbtiVector>& vectors) {
  const std::size_t n = vectors.size();
  if (n < 2) throw ValidationError("label_summary: need at least 2 vectors");
  LabelSummary out;
  out.n = static_cast<long>(n);
  for (Scale s : kScales) {
    auto& sum = out.scales[static_cast<std::size_t>(s)];
    double mean = 0.0;
    for (const auto& v : vectors) mean += v.get(s);
    mean /= static_cast<double>(n);
    double m2 = 0.0, m3 = 0.0, ss = 0.0;
    double lo = vectors[0].get(s), hi = vectors[0].get(s);
    for (const auto& v : vectors) {
      const double x = v.get(s);
      lo = std::min(lo, x);
      hi = std::max(hi, x);
      const double d = x - mean;
      m2 += d * d;
      m3 += d * d * d;
      const double clamped = std::min(std::max(x, 0.0), 1.0);
      int bin = static_cast<int>(clamped * 10.0);
      if (bin > 9) bin = 9;
      ++sum.histogram[static_cast<std::size_t>(bin)];
    }
    ss = m2 / static_cast<double>(n - 1);
    m2 /= static_cast<double>(n);
    m3 /= static_cast<double>(n);
    sum.mean = mean;
    // A constant column is exactly spreadless; the rounded mean must not
    // leak an artificial epsilon into the deviations.
    sum.stddev = lo == hi ? 0.0 : std::sqrt(ss);
    // Adjusted Fisher-Pearson coefficient; needs n >= 3 and spread.
    if (n >= 3 && m2 > 1e-15) {
      const double g1 = m3 / std::pow(m2, 1.5);
      const double nn = static_cast<double>(n);
      sum.skewness = std::sqrt(nn * (nn - 1.0)) / (nn - 2.0) * g1;
    } else {
      sum.skewness = 0.0;
    }
  }
  return out;
}

namespace {

double pearson_cols(const std::vector<double>& a, const std::vector<double>& b) {
  const std::size_t n = a.size();
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= static_cast<double>(n);
  mb /= static_cast<double>(n);
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double da = a[i] - ma;
    const double db = b[i] - mb;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (saa <= 0.0 || sbb <= 0.0)
    return std::numeric_limits<double>::quiet_NaN();
  return sab / std::sqrt(saa * sbb);
}

}  // namespace

CorrMatrix cross_correlation(const std::vector<MbtiVector>& mbti,
                             const std::vector<Big5Vector>& big5) {
  if (mbti.size() != big5.size())
    throw ValidationError("cross_correlation: length mismatch");
  if (mbti.size() < 3)
    throw ValidationError("cross_correlation: need at least 3 paired vectors");
  CorrMatrix m{};
  const std::size_t n = mbti.size();
  for (Scale s : kScales) {
    std::vector<double> a(n);
    for (std::size_t i = 0; i < n; ++i) a[i] = mbti[i].get(s);
    for (int f = 0; f < 5; ++f) {
      std::vector<double> b(n);
      for (std::size_t i = 0; i < n; ++i) b[i] = big5[i].get(f);
      m[static_cast<std::size_t>(s)][static_cast<std::size_t>(f)] =
          pearson_cols(a, b);
    }
  }
  return m;
}

std::vector<VoteRow> read_votes_csv(const std::string& path) {
  static const std::string kHeader = "entity_id,scale,votes_left,votes_right";
  const auto rows = ioutil::read_csv(path, kHeader);
  std::vector<VoteRow> out;
  out.reserve(rows.size());
  for (const auto& r : rows) {
    VoteRow v;
    v.entity_id = ioutil::trim(r[0]);
    if (v.entity_id.empty()) throw ParseError("'" + path + "': empty entity_id");
    const auto s = parse_scale(ioutil::trim(r[1]));
    if (!s) throw ParseError("'" + path + "': unknown scale '" + r[1] + "'");
    v.rec.scale = *s;
    v.rec.votes_left = ioutil::parse_long(r[2], "votes_left");
    v.rec.votes_right = ioutil::parse_long(r[3], "votes_right");
    if (v.rec.votes_left < 0 || v.rec.votes_right < 0)
      throw ValidationError("'" + path + "': negative votes for '" +
                            v.entity_id + "'");
    out.push_back(std::move(v));
  }
  return out;
}

void write_votes_csv(const std::string& path, const std::vector<VoteRow>& rows,
                     const std::string& provenance) {
  std::ostringstream out;
  out << provenance;
  out << "entity_id,scale,votes_left,votes_right\n";
  for (const auto& r : rows)
    out << r.entity_id << ',' << scale_name(r.rec.scale) << ','
        << r.rec.votes_left << ',' << r.rec.votes_right << "\n";
  ioutil::write_file(path, out.str());
}

std::map<std::string, MbtiVector> labels_from_votes(
    const std::vector<VoteRow>& rows, long min_votes, long* excluded) {
  // Repeated rows for one entity and scale are vote batches; tallies merge
  // by summation before the per-vector checks run.
  std::map<std::string, std::array<VoteRecord, 4>> grouped;
  std::map<std::string, std::array<bool, 4>> seen;
  for (const auto& r : rows) {
    const auto idx = static_cast<std::size_t>(r.rec.scale);
    auto& recs = grouped[r.entity_id];
    recs[idx].scale = r.rec.scale;
    recs[idx].votes_left += r.rec.votes_left;
    recs[idx].votes_right += r.rec.votes_right;
    seen[r.entity_id][idx] = true;
  }
  std::map<std::string, MbtiVector> out;
  long skipped = 0;
  for (const auto& [entity, recs] : grouped) {
    std::vector<VoteRecord> present;
    for (std::size_t i = 0; i < 4; ++i)
      if (seen[entity][i]) present.push_back(recs[i]);
    try {
      out[entity] = build_mbti_vector(present, min_votes);
    } catch (const ValidationError&) {
      ++skipped;
    }
  }
  if (excluded != nullptr) *excluded = skipped;
  return out;
}

std::map<std::string, MbtiVector> read_labels_csv(const std::string& path) {
  static const std::string kHeader = "entity_id,ei,sn,tf,jp,total_votes";
  const auto rows = ioutil::read_csv(path, kHeader);
  std::map<std::string, MbtiVector> out;
  for (const auto& r : rows) {
    const std::string id = ioutil::trim(r[0]);
    if (out.count(id))
      throw ValidationError("'" + path + "': duplicate entity '" + id + "'");
    MbtiVector v;
    v.ei = ioutil::parse_double(r[1], "ei");
    v.sn = ioutil::parse_double(r[2], "sn");
    v.tf = ioutil::parse_double(r[3], "tf");
    v.jp = ioutil::parse_double(r[4], "jp");
    v.total_votes = ioutil::parse_long(r[5], "total_votes");
    for (Scale s : kScales)
      if (v.get(s) < 0.0 || v.get(s) > 1.0)
        throw ValidationError("'" + path + "': score out of [0,1] for '" + id +
                              "'");
    out[id] = v;
  }
  return out;
}

void write_labels_csv(const std::string& path,
                      const std::map<std::string, MbtiVector>& labels,
                      const std::string& provenance) {
  std::ostringstream out;
  out << provenance;
  out << "entity_id,ei,sn,tf,jp,total_votes\n";
  for (const auto& [id, v] : labels)
    out << id << ',' << ioutil::fmt_exact(v.ei) << ',' << ioutil::fmt_exact(v.sn)
        << ',' << ioutil::fmt_exact(v.tf) << ',' << ioutil::fmt_exact(v.jp)
        << ',' << v.total_votes << "\n";
  ioutil::write_file(path, out.str());
}

std::map<std::string, Big5Vector> read_big5_csv(const std::string& path) {
  static const std::string kHeader = "entity_id,o,c,e,a,n";
  const auto rows = ioutil::read_csv(path, kHeader);
  std::map<std::string, Big5Vector> out;
  for (const auto& r : rows) {
    const std::string id = ioutil::trim(r[0]);
    if (out.count(id))
      throw ValidationError("'" + path + "': duplicate entity '" + id + "'");
    Big5Vector v;
    v.openness = ioutil::parse_double(r[1], "o");
    v.conscientiousness = ioutil::parse_double(r[2], "c");
    v.extraversion = ioutil::parse_double(r[3], "e");
    v.agreeableness = ioutil::parse_double(r[4], "a");
    v.neuroticism = ioutil::parse_double(r[5], "n");
    out[id] = v;
  }
  return out;
}

}  // namespace echelon::labels
