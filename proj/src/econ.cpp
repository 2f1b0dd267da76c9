#include "echelon/econ.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "echelon/errors.hpp"
#include "echelon/io_util.hpp"

namespace echelon::econ {

void PriceSeries::validate(const std::string& what) const {
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].close <= 0.0)
      throw ValidationError(what + ": non-positive close on " +
                            format_date(points[i].date));
    if (i > 0 && !(points[i - 1].date < points[i].date))
      throw ValidationError(what + ": dates not strictly increasing at " +
                            format_date(points[i].date));
  }
}

PriceSeries read_prices_csv(const std::string& path) {
  static const std::string kHeader = "date,close";
  const auto rows = ioutil::read_csv(path, kHeader);
  PriceSeries s;
  s.points.reserve(rows.size());
  for (const auto& r : rows) {
    PricePoint p;
    p.date = parse_date(ioutil::trim(r[0]));
    p.close = ioutil::parse_double(r[1], "close");
    s.points.push_back(p);
  }
  s.validate("'" + path + "'");
  return s;
}

void write_prices_csv(const std::string& path, const PriceSeries& series,
                      const std::string& provenance) {
  std::ostringstream out;
  out << provenance;
  out << "date,close\n";
  for (const auto& p : series.points)
    out << format_date(p.date) << ',' << ioutil::fmt_exact(p.close) << "\n";
  ioutil::write_file(path, out.str());
}

std::vector<double> log_returns(const PriceSeries& series) {
  series.validate("log_returns");
  if (series.points.size() < 2)
    throw ValidationError("log_returns: need at least 2 prices");
  std::vector<double> r;
  r.reserve(series.points.size() - 1);
  for (std::size_t i = 1; i < series.points.size(); ++i)
    r.push_back(std::log(series.points[i].close / series.points[i - 1].close));
  return r;
}

double realized_vol(const PriceSeries& window) {
  if (window.points.size() < 3)
    throw ValidationError("realized_vol: need at least 3 prices, have " +
                          std::to_string(window.points.size()));
  const auto r = log_returns(window);
  double mean = 0.0;
  for (double v : r) mean += v;
  mean /= static_cast<double>(r.size());
  double ss = 0.0;
  for (double v : r) {
    const double d = v - mean;
    ss += d * d;
  }
  return std::sqrt(ss / static_cast<double>(r.size() - 1));
}

PriceSeries window_after(const PriceSeries& series, const Date& call, int n) {
  PriceSeries w;
  for (const auto& p : series.points) {
    if (p.date > call) {
      w.points.push_back(p);
      if (static_cast<int>(w.points.size()) == n) break;
    }
  }
  return w;
}

PriceSeries window_before(const PriceSeries& series, const Date& call, int n) {
  PriceSeries w;
  std::size_t end = 0;
  while (end < series.points.size() && series.points[end].date < call) ++end;
  const std::size_t start =
      end > static_cast<std::size_t>(n) ? end - static_cast<std::size_t>(n) : 0;
  w.points.assign(series.points.begin() + static_cast<long>(start),
                  series.points.begin() + static_cast<long>(end));
  return w;
}

double realized_vol_after(const PriceSeries& series, const Date& call,
                          int n_days) {
  const auto w = window_after(series, call, n_days);
  if (static_cast<int>(w.points.size()) < n_days)
    throw ValidationError("realized_vol_after: only " +
                          std::to_string(w.points.size()) + " of " +
                          std::to_string(n_days) + " trading days after " +
                          format_date(call));
  return realized_vol(w);
}

double realized_vol_before(const PriceSeries& series, const Date& call,
                           int n_days) {
  const auto w = window_before(series, call, n_days);
  if (static_cast<int>(w.points.size()) < n_days)
    throw ValidationError("realized_vol_before: only " +
                          std::to_string(w.points.size()) + " of " +
                          std::to_string(n_days) + " trading days before " +
                          format_date(call));
  return realized_vol(w);
}

double close_before(const PriceSeries& series, const Date& call) {
  const PricePoint* last = nullptr;
  for (const auto& p : series.points) {
    if (!(p.date < call)) break;
    last = &p;
  }
  if (last == nullptr)
    throw ValidationError("close_before: no trading day before " +
                          format_date(call));
  return last->close;
}

namespace {

struct SicRange {
  int lo, hi, industry;
};

// Twelve-group SIC mapping; anything not covered is group 12.
constexpr SicRange kSicRanges[] = {
    {100, 999, 1},    {2000, 2399, 1},  {2700, 2749, 1},  {2770, 2799, 1},
    {3100, 3199, 1},  {3940, 3989, 1},
    {2500, 2519, 2},  {2590, 2599, 2},  {3630, 3659, 2},  {3710, 3711, 2},
    {3714, 3714, 2},  {3716, 3716, 2},  {3750, 3751, 2},  {3792, 3792, 2},
    {3900, 3939, 2},  {3990, 3999, 2},
    {2520, 2589, 3},  {2600, 2699, 3},  {2750, 2769, 3},  {3000, 3099, 3},
    {3200, 3569, 3},  {3580, 3629, 3},  {3700, 3709, 3},  {3712, 3713, 3},
    {3715, 3715, 3},  {3717, 3749, 3},  {3752, 3791, 3},  {3793, 3799, 3},
    {3830, 3839, 3},  {3860, 3899, 3},
    {1200, 1399, 4},  {2900, 2999, 4},
    {2800, 2829, 5},  {2840, 2899, 5},
    {3570, 3579, 6},  {3660, 3692, 6},  {3694, 3699, 6},  {3810, 3829, 6},
    {7370, 7379, 6},
    {4800, 4899, 7},
    {4900, 4949, 8},
    {5000, 5999, 9},  {7200, 7299, 9},  {7600, 7699, 9},
    {2830, 2839, 10}, {3693, 3693, 10}, {3840, 3859, 10}, {8000, 8099, 10},
    {6000, 6999, 11},
};

constexpr const char* kIndustryNames[] = {
    "NoDur", "Durbl", "Manuf", "Enrgy", "Chems", "BusEq",
    "Telcm", "Utils", "Shops", "Hlth",  "Money", "Other"};

}  // namespace

int ff12_industry(int sic) {
  if (sic < 100 || sic > 9999)
    throw ValidationError("ff12: '" + std::to_string(sic) +
                          "' is not a 4-digit SIC code");
  for (const auto& r : kSicRanges)
    if (sic >= r.lo && sic <= r.hi) return r.industry;
  return 12;
}

const char* ff12_name(int industry) {
  if (industry < 1 || industry > 12)
    throw ValidationError("ff12: industry index out of range");
  return kIndustryNames[industry - 1];
}

std::vector<PanelRow> read_panel_csv(const std::string& path) {
  static const std::string kHeader =
      "call_id,date,sic,age,gender,price_file,leverage,spread,btm,sue,roa,"
      "shares_out,volume";
  const auto rows = ioutil::read_csv(path, kHeader);
  std::vector<PanelRow> out;
  out.reserve(rows.size());
  for (const auto& r : rows) {
    PanelRow p;
    p.call_id = ioutil::trim(r[0]);
    if (p.call_id.empty()) throw ParseError("'" + path + "': empty call_id");
    p.date = parse_date(ioutil::trim(r[1]));
    p.sic = static_cast<int>(ioutil::parse_long(r[2], "sic"));
    p.age = ioutil::parse_double(r[3], "age");
    p.gender = static_cast<int>(ioutil::parse_long(r[4], "gender"));
    p.price_file = ioutil::trim(r[5]);
    p.leverage = ioutil::parse_double(r[6], "leverage");
    p.spread = ioutil::parse_double(r[7], "spread");
    p.btm = ioutil::parse_double(r[8], "btm");
    p.sue = ioutil::parse_double(r[9], "sue");
    p.roa = ioutil::parse_double(r[10], "roa");
    p.shares_out = ioutil::parse_double(r[11], "shares_out");
    p.volume = ioutil::parse_double(r[12], "volume");
    if (p.gender != 0 && p.gender != 1)
      throw ValidationError("'" + path + "': gender must be 0/1 for '" +
                            p.call_id + "'");
    if (p.shares_out < 0.0 || p.volume < 0.0)
      throw ValidationError("'" + path +
                            "': negative shares_out or volume for '" +
                            p.call_id + "'");
    out.push_back(std::move(p));
  }
  return out;
}

void write_panel_csv(const std::string& path, const std::vector<PanelRow>& rows,
                     const std::string& provenance) {
  std::ostringstream out;
  out << provenance;
  out << "call_id,date,sic,age,gender,price_file,leverage,spread,btm,sue,roa,"
         "shares_out,volume\n";
  for (const auto& p : rows)
    out << p.call_id << ',' << format_date(p.date) << ',' << p.sic << ','
        << ioutil::fmt_exact(p.age) << ',' << p.gender << ',' << p.price_file
        << ',' << ioutil::fmt_exact(p.leverage) << ','
        << ioutil::fmt_exact(p.spread) << ',' << ioutil::fmt_exact(p.btm)
        << ',' << ioutil::fmt_exact(p.sue) << ',' << ioutil::fmt_exact(p.roa)
        << ',' << ioutil::fmt_exact(p.shares_out) << ','
        << ioutil::fmt_exact(p.volume) << "\n";
  ioutil::write_file(path, out.str());
}

std::vector<RiskRow> assemble_risk_rows(
    const std::vector<PanelRow>& panel, const std::string& price_dir,
    const std::map<std::string, labels::MbtiVector>& traits_by_call,
    int post_days, int past_days) {
  if (panel.empty()) throw ValidationError("assemble_risk_rows: empty panel");
  std::map<std::string, PriceSeries> cache;
  std::vector<RiskRow> rows;
  rows.reserve(panel.size());
  for (const auto& p : panel) {
    auto it = cache.find(p.price_file);
    if (it == cache.end()) {
      const std::string full =
          price_dir.empty() ? p.price_file : price_dir + "/" + p.price_file;
      it = cache.emplace(p.price_file, read_prices_csv(full)).first;
    }
    const PriceSeries& series = it->second;

    const auto traits = traits_by_call.find(p.call_id);
    if (traits == traits_by_call.end())
      throw ValidationError("assemble_risk_rows: no traits for call '" +
                            p.call_id + "'");

    RiskRow r;
    r.call_id = p.call_id;
    r.date = p.date;
    r.sic = p.sic;
    try {
      r.vola_post = realized_vol_after(series, p.date, post_days);
      r.past_vola = realized_vol_before(series, p.date, past_days);
      r.size = p.shares_out * close_before(series, p.date);
    } catch (const ValidationError& e) {
      throw ValidationError("call '" + p.call_id + "': " + e.what());
    }
    r.age = p.age;
    r.gender = p.gender;
    r.volume = p.volume;
    r.leverage = p.leverage;
    r.spread = p.spread;
    r.btm = p.btm;
    r.sue = p.sue;
    r.roa = p.roa;
    r.mbti = traits->second;
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace echelon::econ
