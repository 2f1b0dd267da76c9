#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace echelon::labels {

// The four trait scales. Scores are the share of votes on the right pole,
// which by convention here is I, N, F, P respectively; 0 is the left pole.
enum class Scale { Ei = 0, Sn = 1, Tf = 2, Jp = 3 };

inline constexpr std::array<Scale, 4> kScales = {Scale::Ei, Scale::Sn,
                                                 Scale::Tf, Scale::Jp};

const char* scale_name(Scale s);                       // "ei" .. "jp"
const char* scale_label(Scale s);                      // "E-I" .. "J-P"
std::optional<Scale> parse_scale(const std::string&);  // accepts ei/EI/E-I

struct VoteRecord {
  Scale scale = Scale::Ei;
  long votes_left = 0;
  long votes_right = 0;
  long total() const { return votes_left + votes_right; }
};

struct MbtiVector {
  double ei = 0.0, sn = 0.0, tf = 0.0, jp = 0.0;
  long total_votes = 0;  // min across the four scales

  double get(Scale s) const;
  void set(Scale s, double v);
  bool operator==(const MbtiVector&) const = default;
};

struct Big5Vector {
  double openness = 0.0, conscientiousness = 0.0, extraversion = 0.0,
         agreeableness = 0.0, neuroticism = 0.0;
  double get(int i) const;  // column order o, c, e, a, n
};

// Right-pole vote share. Computed so that the score and its complement sum
// to exactly 1.0 in floating point, and so that scaling both counts by a
// common factor leaves the score bit-identical. Zero total is an error.
double normalize_votes(const VoteRecord& r);

// One record per scale, each with total() >= min_votes. Duplicate or missing
// scales, or a thin scale, raise ValidationError naming the scale.
MbtiVector build_mbti_vector(const std::vector<VoteRecord>& records,
                             long min_votes = 3);

struct ScaleSummary {
  double mean = 0.0;
  double stddev = 0.0;    // sample, n-1
  double skewness = 0.0;  // adjusted Fisher-Pearson; 0 when undefined
  std::array<long, 10> histogram{};  // [0,1] in ten bins, 1.0 in the last
};

struct LabelSummary {
  long n = 0;
  std::array<ScaleSummary, 4> scales;
};

LabelSummary label_summary(const std::vector<MbtiVector>& vectors);

// Pearson correlations between the four scales (rows) and the five factor
// columns o, c, e, a, n. Zero-variance columns give NaN entries.
using CorrMatrix = std::array<std::array<double, 5>, 4>;
CorrMatrix cross_correlation(const std::vector<MbtiVector>& mbti,
                             const std::vector<Big5Vector>& big5);

// CSV bridges. Votes: entity_id,scale,votes_left,votes_right.
struct VoteRow {
  std::string entity_id;
  VoteRecord rec;
};

std::vector<VoteRow> read_votes_csv(const std::string& path);
void write_votes_csv(const std::string& path, const std::vector<VoteRow>& rows,
                     const std::string& provenance);

// Groups rows by entity and keeps entities with all four scales at or above
// min_votes; thinner entities are excluded (the count is reported back).
std::map<std::string, MbtiVector> labels_from_votes(
    const std::vector<VoteRow>& rows, long min_votes, long* excluded = nullptr);

std::map<std::string, MbtiVector> read_labels_csv(const std::string& path);
void write_labels_csv(const std::string& path,
                      const std::map<std::string, MbtiVector>& labels,
                      const std::string& provenance);

std::map<std::string, Big5Vector> read_big5_csv(const std::string& path);

}  // namespace echelon::labels
