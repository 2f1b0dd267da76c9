#pragma once

#include <array>
#include <string>
#include <vector>

#include "echelon/labels.hpp"

namespace echelon::agreement {

// Binary rating tallies: per subject, how many raters chose each pole.
struct SubjectCounts {
  long n_left = 0;
  long n_right = 0;
  long total() const { return n_left + n_right; }
};

struct RatingTable {
  std::vector<SubjectCounts> subjects;
};

// Subjects with fewer than two raters carry no pairwise information and are
// excluded from every coefficient; the count of exclusions is reported back
// through `excluded` when non-null. An empty table after exclusion is an
// error.

// Mean over subjects of the fraction of agreeing rater pairs.
double percent_agreement(const RatingTable& t, long* excluded = nullptr);

// Chance-corrected agreement against a uniform two-category baseline:
// kappa = 2 * p_a - 1.
double brennan_prediger(const RatingTable& t, long* excluded = nullptr);
double kappa_bp_from_pa(double pa);

// Gwet's first-order chance correction. The chance term uses the overall
// propensity pi = mean share of right-pole ratings: p_e = 2 * pi * (1 - pi).
double gwet_gamma(const RatingTable& t, long* excluded = nullptr);

// Krippendorff's alpha for nominal data from the coincidence matrix. When
// every rating falls in one category the expected disagreement is zero; that
// degenerate case is reported as alpha = 1 with the flag set.
double krippendorff_alpha(const RatingTable& t, bool* degenerate = nullptr,
                          long* excluded = nullptr);

struct ScaleAgreement {
  double p_a = 0.0;
  double alpha = 0.0;
  double kappa_bp = 0.0;
  double gamma = 0.0;
  bool alpha_degenerate = false;
  long excluded_subjects = 0;
};

struct AgreementReport {
  std::array<ScaleAgreement, 4> scales;  // indexed by labels::Scale
};

// All four coefficients for each scale's table; per-scale errors are
// rethrown with the scale name prepended.
AgreementReport agreement_report(const std::array<RatingTable, 4>& tables);

// Builds one table per scale from crowd-vote rows, one subject per entity.
std::array<RatingTable, 4> tables_from_votes(
    const std::vector<labels::VoteRow>& rows);

}  // namespace echelon::agreement
