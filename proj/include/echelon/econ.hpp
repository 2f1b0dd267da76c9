#pragma once

#include <Eigen/Dense>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "echelon/date.hpp"
#include "echelon/labels.hpp"

namespace echelon::econ {

struct PricePoint {
  Date date;
  double close = 0.0;
};

// Strictly increasing dates, positive closes.
struct PriceSeries {
  std::vector<PricePoint> points;
  void validate(const std::string& what) const;
};

PriceSeries read_prices_csv(const std::string& path);
void write_prices_csv(const std::string& path, const PriceSeries& series,
                      const std::string& provenance);

// ln(p_t / p_{t-1}) over consecutive points of the series.
std::vector<double> log_returns(const PriceSeries& series);

// Annualization is deliberately absent everywhere: volatilities are per-day.
// Sample (n-1) standard deviation of log returns over the window; fewer than
// three prices (two returns) is an error.
double realized_vol(const PriceSeries& window);

// First n trading days present in the series strictly after `call`.
PriceSeries window_after(const PriceSeries& series, const Date& call, int n);
// Last n trading days present in the series strictly before `call`.
PriceSeries window_before(const PriceSeries& series, const Date& call, int n);

double realized_vol_after(const PriceSeries& series, const Date& call,
                          int n_days);
double realized_vol_before(const PriceSeries& series, const Date& call,
                           int n_days);

// Closing price on the last trading day before `call`.
double close_before(const PriceSeries& series, const Date& call);

// Twelve-industry grouping keyed by 4-digit SIC code (leading zeros
// allowed, so the numeric range is 100..9999). Returns 1..12; codes outside
// every named range fall into 12 ("Other").
int ff12_industry(int sic);
const char* ff12_name(int industry);

struct RiskRow {
  std::string call_id;
  Date date;
  int sic = 0;
  double vola_post = 0.0;  // dependent variable
  double past_vola = 0.0;
  double age = 0.0;
  int gender = 0;  // indicator
  double size = 0.0;
  double volume = 0.0;
  double leverage = 0.0;
  double spread = 0.0;
  double btm = 0.0;
  double sue = 0.0;
  double roa = 0.0;
  labels::MbtiVector mbti;
};

struct DesignSpec {
  bool include_mbti = false;
  bool industry_fe = true;
  bool time_fe = true;
  // Dummies are standardized like every other regressor by default; turning
  // this off leaves them 0/1.
  bool standardize_dummies = true;
};

struct DesignMatrix {
  std::vector<std::string> names;  // column 0 is the intercept
  Eigen::MatrixXd x;
  Eigen::VectorXd y;
  long rows_dropped_btm = 0;
  std::vector<std::string> dropped_zero_variance;
  std::string industry_ref;  // reference (dropped) categories
  std::string period_ref;
};

// Rows with non-positive book-to-market are dropped (counted). Size, volume
// and btm enter as log1p, everything else raw, then every column except the
// intercept is z-scored along with y. Industry and year-quarter dummies each
// drop their first present category.
DesignMatrix build_design_matrix(const std::vector<RiskRow>& rows,
                                 const DesignSpec& spec);

struct Coefficient {
  std::string name;
  double beta = 0.0;
  double se = 0.0;
  double t = 0.0;
  double p = 1.0;
  int stars = 0;  // p <= .05 / .01 / .001
};

struct OlsReport {
  std::vector<Coefficient> coefficients;
  long n = 0;
  int k = 0;  // regressors excluding the intercept
  double r2 = 0.0;
  double adj_r2 = 0.0;
  double condition = 0.0;  // |R_00| / |R_kk| from the QR factor
};

// Least squares through a rank-revealing QR decomposition; classical
// standard errors. Rank deficiency is an error that names the collinear
// columns.
OlsReport ols_fit(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                  const std::vector<std::string>& names);

struct VifEntry {
  std::string name;
  double vif = 0.0;
  bool infinite = false;  // perfectly collinear with the rest
};

// Variance inflation per non-intercept column (column 0 must be the
// intercept).
std::vector<VifEntry> vif(const Eigen::MatrixXd& x,
                          const std::vector<std::string>& names);

// Regularized incomplete beta I_x(a, b) by continued fraction; used for the
// two-sided Student-t p-value.
double regularized_incomplete_beta(double a, double b, double x);
double student_t_two_sided_p(double t, double dof);

struct RiskRegressionResult {
  DesignMatrix baseline_design;
  OlsReport baseline;  // financial controls only
  std::optional<DesignMatrix> joint_design;
  std::optional<OlsReport> joint;  // controls plus traits, age, gender
};

RiskRegressionResult risk_regression(const std::vector<RiskRow>& rows,
                                     bool include_mbti,
                                     const DesignSpec& base = {});

// Panel CSV bridge. Size is assembled downstream as shares_out times the
// close on the last trading day before the call.
struct PanelRow {
  std::string call_id;
  Date date;
  int sic = 0;
  double age = 0.0;
  int gender = 0;
  std::string price_file;
  double leverage = 0.0;
  double spread = 0.0;
  double btm = 0.0;
  double sue = 0.0;
  double roa = 0.0;
  double shares_out = 0.0;
  double volume = 0.0;
};

std::vector<PanelRow> read_panel_csv(const std::string& path);
void write_panel_csv(const std::string& path,
                     const std::vector<PanelRow>& rows,
                     const std::string& provenance);

// Joins panel rows with price files (relative to `price_dir`) and predicted
// traits keyed by call_id. Window lengths: post_days after the call for the
// dependent volatility, past_days before it for the control.
std::vector<RiskRow> assemble_risk_rows(
    const std::vector<PanelRow>& panel, const std::string& price_dir,
    const std::map<std::string, labels::MbtiVector>& traits_by_call,
    int post_days = 5, int past_days = 63);

}  // namespace echelon::econ
