#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "echelon/econ.hpp"
#include "echelon/errors.hpp"

namespace echelon::econ {

namespace {

// Continued-fraction kernel for the incomplete beta (Lentz's method, the
// classic numerical-recipes arrangement).
double betacf(double a, double b, double x) {
  constexpr int kMaxIter = 300;
  constexpr double kEps = 3e-16;
  constexpr double kFpMin = 1e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kFpMin) d = kFpMin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) <= kEps) return h;
  }
  throw NumericError("incomplete beta failed to converge");
}

int star_count(double p) {
  if (p <= 0.001) return 3;
  if (p <= 0.01) return 2;
  if (p <= 0.05) return 1;
  return 0;
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  if (a <= 0.0 || b <= 0.0)
    throw NumericError("incomplete beta: parameters must be positive");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double ln_front = std::lgamma(a + b) - std::lgamma(a) -
                          std::lgamma(b) + a * std::log(x) +
                          b * std::log1p(-x);
  const double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * betacf(a, b, x) / a;
  return 1.0 - front * betacf(b, a, 1.0 - x) / b;
}

double student_t_two_sided_p(double t, double dof) {
  if (dof <= 0.0) throw NumericError("student t: dof must be positive");
  if (!std::isfinite(t)) return 0.0;
  const double x = dof / (dof + t * t);
  return regularized_incomplete_beta(dof / 2.0, 0.5, x);
}

DesignMatrix build_design_matrix(const std::vector<RiskRow>& rows,
                                 const DesignSpec& spec) {
  if (rows.size() < 2)
    throw ValidationError("design matrix: need at least 2 rows");

  // Book-to-market must be positive before log1p.
  std::vector<const RiskRow*> kept;
  long dropped = 0;
  for (const auto& r : rows) {
    if (r.btm <= 0.0) {
      ++dropped;
      continue;
    }
    if (r.size < 0.0 || r.volume < 0.0)
      throw ValidationError("design matrix: negative size or volume on call '" +
                            r.call_id + "'");
    kept.push_back(&r);
  }
  if (kept.size() < 2)
    throw ValidationError("design matrix: fewer than 2 rows remain after the "
                          "btm filter");

  std::set<int> industries;
  std::set<std::string> periods;
  for (const auto* r : kept) {
    industries.insert(ff12_industry(r->sic));
    periods.insert(quarter_of(r->date));
  }
  if (spec.time_fe && periods.size() < 2)
    throw ValidationError("design matrix: time effects need at least 2 "
                          "distinct periods");

  DesignMatrix dm;
  dm.rows_dropped_btm = dropped;

  struct Column {
    std::string name;
    std::vector<double> values;
    bool is_dummy = false;
  };
  std::vector<Column> cols;
  const std::size_t n = kept.size();
  auto add = [&](const std::string& name, bool dummy) -> std::vector<double>& {
    cols.push_back({name, std::vector<double>(n, 0.0), dummy});
    return cols.back().values;
  };

  {
    auto& v = add("past_vola", false);
    for (std::size_t i = 0; i < n; ++i) v[i] = kept[i]->past_vola;
  }
  {
    auto& v = add("size", false);
    for (std::size_t i = 0; i < n; ++i) v[i] = std::log1p(kept[i]->size);
  }
  {
    auto& v = add("volume", false);
    for (std::size_t i = 0; i < n; ++i) v[i] = std::log1p(kept[i]->volume);
  }
  {
    auto& v = add("leverage", false);
    for (std::size_t i = 0; i < n; ++i) v[i] = kept[i]->leverage;
  }
  {
    auto& v = add("spread", false);
    for (std::size_t i = 0; i < n; ++i) v[i] = kept[i]->spread;
  }
  {
    auto& v = add("btm", false);
    for (std::size_t i = 0; i < n; ++i) v[i] = std::log1p(kept[i]->btm);
  }
  {
    auto& v = add("sue", false);
    for (std::size_t i = 0; i < n; ++i) v[i] = kept[i]->sue;
  }
  {
    auto& v = add("roa", false);
    for (std::size_t i = 0; i < n; ++i) v[i] = kept[i]->roa;
  }
  if (spec.include_mbti) {
    for (labels::Scale s : labels::kScales) {
      auto& v = add(labels::scale_name(s), false);
      for (std::size_t i = 0; i < n; ++i) v[i] = kept[i]->mbti.get(s);
    }
    {
      auto& v = add("age", false);
      for (std::size_t i = 0; i < n; ++i) v[i] = kept[i]->age;
    }
    {
      auto& v = add("gender", false);
      for (std::size_t i = 0; i < n; ++i)
        v[i] = static_cast<double>(kept[i]->gender);
    }
  }
  if (spec.industry_fe && industries.size() > 1) {
    bool first = true;
    for (const int ind : industries) {
      if (first) {
        dm.industry_ref = ff12_name(ind);
        first = false;
        continue;
      }
      auto& v = add(std::string("ind_") + ff12_name(ind), true);
      for (std::size_t i = 0; i < n; ++i)
        v[i] = ff12_industry(kept[i]->sic) == ind ? 1.0 : 0.0;
    }
  } else if (spec.industry_fe && industries.size() == 1) {
    dm.industry_ref = ff12_name(*industries.begin());
  }
  if (spec.time_fe) {
    bool first = true;
    for (const auto& per : periods) {
      if (first) {
        dm.period_ref = per;
        first = false;
        continue;
      }
      auto& v = add("q_" + per, true);
      for (std::size_t i = 0; i < n; ++i)
        v[i] = quarter_of(kept[i]->date) == per ? 1.0 : 0.0;
    }
  }

  // z-score columns (and y); zero-variance columns carry no information and
  // would break standardization, so they are dropped with a note.
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = kept[i]->vola_post;
  auto standardize = [&](std::vector<double>& v, const std::string& name,
                         bool* ok) {
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double x : v) {
      const double d = x - mean;
      ss += d * d;
    }
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    if (sd < 1e-12) {
      if (ok == nullptr)
        throw ValidationError("design matrix: response has no variance");
      *ok = false;
      dm.dropped_zero_variance.push_back(name);
      return;
    }
    for (double& x : v) x = (x - mean) / sd;
    if (ok != nullptr) *ok = true;
  };

  std::vector<Column> final_cols;
  for (auto& c : cols) {
    if (!spec.standardize_dummies && c.is_dummy) {
      final_cols.push_back(std::move(c));
      continue;
    }
    bool ok = true;
    standardize(c.values, c.name, &ok);
    if (ok) final_cols.push_back(std::move(c));
  }
  standardize(y, "y", nullptr);

  dm.names.push_back("intercept");
  for (const auto& c : final_cols) dm.names.push_back(c.name);
  dm.x.resize(static_cast<long>(n), static_cast<long>(final_cols.size() + 1));
  dm.y.resize(static_cast<long>(n));
  for (std::size_t i = 0; i < n; ++i) {
    dm.x(static_cast<long>(i), 0) = 1.0;
    for (std::size_t j = 0; j < final_cols.size(); ++j)
      dm.x(static_cast<long>(i), static_cast<long>(j + 1)) =
          final_cols[j].values[i];
    dm.y(static_cast<long>(i)) = y[i];
  }
  return dm;
}

OlsReport ols_fit(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                  const std::vector<std::string>& names) {
  const long n = x.rows();
  const long k = x.cols();
  if (static_cast<long>(names.size()) != k)
    throw ValidationError("ols: column name count mismatch");
  if (n != y.size()) throw ValidationError("ols: row count mismatch");
  if (n <= k)
    throw ValidationError("ols: need more rows than columns (n = " +
                          std::to_string(n) + ", k = " + std::to_string(k) +
                          ")");

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
  qr.setThreshold(1e-10);
  const long rank = qr.rank();
  if (rank < k) {
    // The permutation sorts pivots by decreasing magnitude, so everything
    // past `rank` names a column expressible by the ones before it.
    const auto& perm = qr.colsPermutation();
    std::ostringstream msg;
    msg << "ols: design matrix is rank deficient (rank " << rank << " of " << k
        << "); collinear columns:";
    for (long j = rank; j < k; ++j)
      msg << " " << names[static_cast<std::size_t>(perm.indices()(j))];
    throw ValidationError(msg.str());
  }

  const Eigen::VectorXd beta = qr.solve(y);
  const Eigen::VectorXd resid = y - x * beta;
  const double rss = resid.squaredNorm();
  const double ymean = y.mean();
  double tss = 0.0;
  for (long i = 0; i < n; ++i) {
    const double d = y(i) - ymean;
    tss += d * d;
  }
  if (tss <= 0.0) throw ValidationError("ols: response has no variance");

  const long dof = n - k;
  const double sigma2 = rss / static_cast<double>(dof);

  // (X^T X)^{-1} from the triangular factor: X P = Q R, so
  // (X^T X)^{-1} = P R^{-1} R^{-T} P^T.
  const Eigen::MatrixXd r_full = qr.matrixR()
                                     .topLeftCorner(k, k)
                                     .template triangularView<Eigen::Upper>();
  const Eigen::MatrixXd r_inv =
      r_full.triangularView<Eigen::Upper>().solve(
          Eigen::MatrixXd::Identity(k, k));
  const Eigen::MatrixXd xtx_inv_perm = r_inv * r_inv.transpose();
  const auto& perm = qr.colsPermutation();
  const Eigen::MatrixXd xtx_inv =
      perm * xtx_inv_perm * perm.transpose();

  OlsReport report;
  report.n = n;
  report.k = static_cast<int>(k - 1);
  report.r2 = 1.0 - rss / tss;
  report.adj_r2 = 1.0 - (1.0 - report.r2) * static_cast<double>(n - 1) /
                            static_cast<double>(n - k);
  double diag_max = 0.0, diag_min = 0.0;
  for (long j = 0; j < k; ++j) {
    const double d = std::fabs(r_full(j, j));
    if (j == 0) diag_max = diag_min = d;
    diag_max = std::max(diag_max, d);
    diag_min = std::min(diag_min, d);
  }
  report.condition = diag_min > 0.0 ? diag_max / diag_min
                                    : std::numeric_limits<double>::infinity();

  report.coefficients.reserve(static_cast<std::size_t>(k));
  for (long j = 0; j < k; ++j) {
    Coefficient c;
    c.name = names[static_cast<std::size_t>(j)];
    c.beta = beta(j);
    c.se = std::sqrt(sigma2 * xtx_inv(j, j));
    c.t = c.se > 0.0 ? c.beta / c.se
                     : std::numeric_limits<double>::infinity();
    c.p = student_t_two_sided_p(c.t, static_cast<double>(dof));
    c.stars = star_count(c.p);
    report.coefficients.push_back(std::move(c));
  }
  return report;
}

std::vector<VifEntry> vif(const Eigen::MatrixXd& x,
                          const std::vector<std::string>& names) {
  const long n = x.rows();
  const long k = x.cols();
  if (static_cast<long>(names.size()) != k)
    throw ValidationError("vif: column name count mismatch");
  if (k < 2) throw ValidationError("vif: need at least one non-intercept column");
  if (n <= k) throw ValidationError("vif: need more rows than columns");

  std::vector<VifEntry> out;
  out.reserve(static_cast<std::size_t>(k - 1));
  for (long j = 1; j < k; ++j) {
    Eigen::MatrixXd others(n, k - 1);
    long c = 0;
    for (long m = 0; m < k; ++m) {
      if (m == j) continue;
      others.col(c++) = x.col(m);
    }
    const Eigen::VectorXd target = x.col(j);
    const Eigen::VectorXd beta =
        others.colPivHouseholderQr().solve(target);
    const double rss = (target - others * beta).squaredNorm();
    const double mean = target.mean();
    double tss = 0.0;
    for (long i = 0; i < n; ++i) {
      const double d = target(i) - mean;
      tss += d * d;
    }
    VifEntry e;
    e.name = names[static_cast<std::size_t>(j)];
    if (tss <= 0.0) {
      // A constant column duplicates the intercept.
      e.infinite = true;
      e.vif = std::numeric_limits<double>::infinity();
    } else {
      const double r2 = 1.0 - rss / tss;
      if (r2 >= 1.0 - 1e-12) {
        e.infinite = true;
        e.vif = std::numeric_limits<double>::infinity();
      } else {
        e.vif = 1.0 / (1.0 - r2);
      }
    }
    out.push_back(std::move(e));
  }
  return out;
}

RiskRegressionResult risk_regression(const std::vector<RiskRow>& rows,
                                     bool include_mbti,
                                     const DesignSpec& base) {
  RiskRegressionResult result;
  DesignSpec fin = base;
  fin.include_mbti = false;
  result.baseline_design = build_design_matrix(rows, fin);
  result.baseline = ols_fit(result.baseline_design.x, result.baseline_design.y,
                            result.baseline_design.names);
  if (include_mbti) {
    DesignSpec joint = base;
    joint.include_mbti = true;
    result.joint_design = build_design_matrix(rows, joint);
    result.joint = ols_fit(result.joint_design->x, result.joint_design->y,
                           result.joint_design->names);
  }
  return result;
}

}  // namespace echelon::econ
