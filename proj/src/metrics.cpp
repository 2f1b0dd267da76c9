#include "echelon/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "echelon/errors.hpp"

namespace echelon::model {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

void check_pair(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size())
    throw ValidationError("metrics: length mismatch");
  if (a.size() < 3)
    throw ValidationError("metrics: need at least 3 observations");
}

// Merge sort that counts strict inversions (pairs i < j with v[i] > v[j]).
long long count_inversions(std::vector<double>& v, std::vector<double>& tmp,
                           std::size_t lo, std::size_t hi) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  long long swaps = count_inversions(v, tmp, lo, mid) +
                    count_inversions(v, tmp, mid, hi);
  std::size_t i = lo, j = mid, k = lo;
  while (i < mid && j < hi) {
    if (v[j] < v[i]) {
      swaps += static_cast<long long>(mid - i);
      tmp[k++] = v[j++];
    } else {
      tmp[k++] = v[i++];
    }
  }
  while (i < mid) tmp[k++] = v[i++];
  while (j < hi) tmp[k++] = v[j++];
  std::copy(tmp.begin() + static_cast<long>(lo),
            tmp.begin() + static_cast<long>(hi),
            v.begin() + static_cast<long>(lo));
  return swaps;
}

long long tie_pairs_sorted(const std::vector<double>& sorted) {
  long long acc = 0;
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    const long long t = static_cast<long long>(j - i);
    acc += t * (t - 1) / 2;
    i = j;
  }
  return acc;
}

}  // namespace

std::vector<double> fractional_ranks(std::span<const double> x) {
  const std::size_t n = x.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> ranks(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j < n && x[order[j]] == x[order[i]]) ++j;
    // Ties share the average of the 1-based ranks they span.
    const double avg = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = avg;
    i = j;
  }
  return ranks;
}

double pearson(std::span<const double> a, std::span<const double> b) {
  check_pair(a, b);
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
  if (saa <= 0.0 || sbb <= 0.0) return kNan;
  return sab / std::sqrt(saa * sbb);
}

double spearman(std::span<const double> a, std::span<const double> b) {
  check_pair(a, b);
  const auto ra = fractional_ranks(a);
  const auto rb = fractional_ranks(b);
  return pearson(ra, rb);
}

double kendall_tau_b(std::span<const double> a, std::span<const double> b) {
  check_pair(a, b);
  const std::size_t n = a.size();

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    if (a[i] != a[j]) return a[i] < a[j];
    return b[i] < b[j];
  });

  // Knight's decomposition: with the data sorted by (a, b), discordant pairs
  // are exactly the strict inversions of b, and tie corrections come from
  // run lengths in a, b, and the joint key.
  const long long n0 = static_cast<long long>(n) * (static_cast<long long>(n) - 1) / 2;
  long long n1 = 0, n3 = 0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j < n && a[order[j]] == a[order[i]]) ++j;
    const long long t = static_cast<long long>(j - i);
    n1 += t * (t - 1) / 2;
    std::size_t k = i;
    while (k < j) {
      std::size_t m = k;
      while (m < j && b[order[m]] == b[order[k]]) ++m;
      const long long u = static_cast<long long>(m - k);
      n3 += u * (u - 1) / 2;
      k = m;
    }
    i = j;
  }

  std::vector<double> bseq(n);
  for (std::size_t idx = 0; idx < n; ++idx) bseq[idx] = b[order[idx]];
  std::vector<double> tmp(n);
  const long long swaps = count_inversions(bseq, tmp, 0, n);

  std::vector<double> bsorted(b.begin(), b.end());
  std::sort(bsorted.begin(), bsorted.end());
  const long long n2 = tie_pairs_sorted(bsorted);

  if (n0 == n1 || n0 == n2) return kNan;
  const double num = static_cast<double>(n0 - n1 - n2 + n3 - 2 * swaps);
  const double den = std::sqrt(static_cast<double>(n0 - n1)) *
                     std::sqrt(static_cast<double>(n0 - n2));
  return num / den;
}

double mean_abs_error(std::span<const double> y_true,
                      std::span<const double> y_pred) {
  check_pair(y_true, y_pred);
  double acc = 0.0;
  for (std::size_t i = 0; i < y_true.size(); ++i)
    acc += std::fabs(y_true[i] - y_pred[i]);
  return acc / static_cast<double>(y_true.size());
}

EvalReport evaluate(std::span<const double> y_true,
                    std::span<const double> y_pred) {
  check_pair(y_true, y_pred);
  EvalReport r;
  r.pearson_r = pearson(y_true, y_pred);
  r.spearman_rho = spearman(y_true, y_pred);
  r.kendall_tau = kendall_tau_b(y_true, y_pred);
  r.mae = mean_abs_error(y_true, y_pred);
  return r;
}

}  // namespace echelon::model
