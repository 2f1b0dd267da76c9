#include "echelon/agreement.hpp"

#include <cmath>
#include <map>

#include "echelon/errors.hpp"

namespace echelon::agreement {

namespace {

// Subjects usable for pairwise coefficients: at least two raters.
std::vector<SubjectCounts> included_subjects(const RatingTable& t,
                                             long* excluded) {
  std::vector<SubjectCounts> kept;
  long dropped = 0;
  for (const auto& s : t.subjects) {
    if (s.n_left < 0 || s.n_right < 0)
      throw ValidationError("agreement: negative rating count");
    if (s.total() >= 2)
      kept.push_back(s);
    else
      ++dropped;
  }
  if (excluded != nullptr) *excluded = dropped;
  if (kept.empty())
    throw ValidationError("agreement: no subject has two or more raters");
  return kept;
}

double pairs(long k) { return static_cast<double>(k) * (k - 1) / 2.0; }

double percent_agreement_of(const std::vector<SubjectCounts>& subjects) {
  double acc = 0.0;
  for (const auto& s : subjects)
    acc += (pairs(s.n_left) + pairs(s.n_right)) / pairs(s.total());
  return acc / static_cast<double>(subjects.size());
}

}  // namespace

double percent_agreement(const RatingTable& t, long* excluded) {
  return percent_agreement_of(included_subjects(t, excluded));
}

double kappa_bp_from_pa(double pa) { return 2.0 * pa - 1.0; }

double brennan_prediger(const RatingTable& t, long* excluded) {
  return kappa_bp_from_pa(percent_agreement(t, excluded));
}

double gwet_gamma(const RatingTable& t, long* excluded) {
  const auto subjects = included_subjects(t, excluded);
  const double pa = percent_agreement_of(subjects);
  double pi = 0.0;
  for (const auto& s : subjects)
    pi += static_cast<double>(s.n_right) / static_cast<double>(s.total());
  pi /= static_cast<double>(subjects.size());
  const double pe = 2.0 * pi * (1.0 - pi);
  // pe peaks at 0.5 for two categories, so the denominator stays positive.
  return (pa - pe) / (1.0 - pe);
}

double krippendorff_alpha(const RatingTable& t, bool* degenerate,
                          long* excluded) {
  const auto subjects = included_subjects(t, excluded);
  if (degenerate != nullptr) *degenerate = false;

  // Coincidence-matrix accounting for two categories. Within a subject with
  // n ratings, each ordered pair of distinct ratings contributes 1/(n-1).
  double o_lr = 0.0;  // left-right coincidences (one triangle)
  double n_total = 0.0, n_left = 0.0, n_right = 0.0;
  for (const auto& s : subjects) {
    const double n = static_cast<double>(s.total());
    o_lr += static_cast<double>(s.n_left) * static_cast<double>(s.n_right) /
            (n - 1.0);
    n_total += n;
    n_left += static_cast<double>(s.n_left);
    n_right += static_cast<double>(s.n_right);
  }

  const double d_o = 2.0 * o_lr / n_total;
  const double d_e = 2.0 * n_left * n_right / (n_total * (n_total - 1.0));
  if (d_e <= 0.0) {
    // Every rating in one category: no expected disagreement to normalize
    // by. Reported as perfect agreement with the degenerate flag raised.
    if (degenerate != nullptr) *degenerate = true;
    return 1.0;
  }
  return 1.0 - d_o / d_e;
}

AgreementReport agreement_report(const std::array<RatingTable, 4>& tables) {
  AgreementReport report;
  for (labels::Scale s : labels::kScales) {
    const auto idx = static_cast<std::size_t>(s);
    try {
      auto& out = report.scales[idx];
      out.p_a = percent_agreement(tables[idx], &out.excluded_subjects);
      out.kappa_bp = kappa_bp_from_pa(out.p_a);
      out.gamma = gwet_gamma(tables[idx]);
      out.alpha = krippendorff_alpha(tables[idx], &out.alpha_degenerate);
    } catch (const Error& e) {
      throw ValidationError(std::string(labels::scale_label(s)) + ": " +
                            e.what());
    }
  }
  return report;
}

std::array<RatingTable, 4> tables_from_votes(
    const std::vector<labels::VoteRow>& rows) {
  std::array<std::map<std::string, SubjectCounts>, 4> grouped;
  for (const auto& r : rows) {
    auto& cell = grouped[static_cast<std::size_t>(r.rec.scale)][r.entity_id];
    cell.n_left += r.rec.votes_left;
    cell.n_right += r.rec.votes_right;
  }
  std::array<RatingTable, 4> tables;
  for (std::size_t i = 0; i < 4; ++i)
    for (const auto& [id, counts] : grouped[i])
      tables[i].subjects.push_back(counts);
  return tables;
}

}  // namespace echelon::agreement
