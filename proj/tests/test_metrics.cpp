#include <doctest.h>

#include <cmath>
#include <vector>

#include "echelon/errors.hpp"
#include "echelon/metrics.hpp"
#include "oracles.hpp"

using namespace echelon;

namespace {

// Mixed continuous and tied values; duplicates land often enough to exercise
// every tie-correction branch.
std::vector<double> random_tied_vector(oracles::Rand& rand, std::size_t n) {
  std::vector<double> v(n);
  for (auto& x : v) {
    if (rand.uniform() < 0.4)
      x = static_cast<double>(rand.uniform_int(0, 4));  // heavy ties
    else
      x = rand.uniform(-2.0, 2.0);
  }
  return v;
}

}  // namespace

TEST_CASE("perfect predictions pin every metric") {
  const std::vector<double> y = {0.1, 0.4, 0.2, 0.9, 0.6};
  const auto r = model::evaluate(y, y);
  CHECK(r.pearson_r == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.spearman_rho == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.kendall_tau == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.mae == 0.0);
}

TEST_CASE("an antitone map flips every correlation to minus one") {
  const std::vector<double> y = {0.1, 0.4, 0.2, 0.9, 0.6};
  std::vector<double> p;
  for (double v : y) p.push_back(-v + 3.0);
  const auto r = model::evaluate(y, p);
  CHECK(r.pearson_r == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(r.spearman_rho == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(r.kendall_tau == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("fractional ranks average over tie runs") {
  const std::vector<double> x = {3.0, 1.0, 3.0, 2.0};
  CHECK(model::fractional_ranks(x) ==
        std::vector<double>{3.5, 1.0, 3.5, 2.0});
  const std::vector<double> all_tied = {2.0, 2.0, 2.0};
  CHECK(model::fractional_ranks(all_tied) ==
        std::vector<double>{2.0, 2.0, 2.0});
}

TEST_CASE("zero variance in either argument yields NaN correlations") {
  const std::vector<double> flat = {0.5, 0.5, 0.5, 0.5};
  const std::vector<double> vary = {0.1, 0.2, 0.3, 0.4};

  for (const auto& [a, b] : {std::pair{flat, vary}, std::pair{vary, flat}}) {
    const auto r = model::evaluate(a, b);
    CHECK(std::isnan(r.pearson_r));
    CHECK(std::isnan(r.spearman_rho));
    CHECK(std::isnan(r.kendall_tau));
    CHECK(!std::isnan(r.mae));
  }
  CHECK(model::evaluate(flat, vary).mae == doctest::Approx(0.25));
}

TEST_CASE("length checks reject mismatches and tiny samples") {
  const std::vector<double> two = {1.0, 2.0};
  const std::vector<double> three = {1.0, 2.0, 3.0};
  CHECK_THROWS_AS(model::evaluate(two, three), ValidationError);
  CHECK_THROWS_AS(model::evaluate(two, two), ValidationError);
  CHECK_THROWS_AS(model::pearson(two, two), ValidationError);
}

TEST_CASE("metrics match brute-force oracles on tied random vectors") {
  oracles::Rand rand(112233);
  for (int trial = 0; trial < 60; ++trial) {
    const auto n = static_cast<std::size_t>(rand.uniform_int(3, 50));
    const auto a = random_tied_vector(rand, n);
    const auto b = random_tied_vector(rand, n);

    const double pr = model::pearson(a, b);
    const double orc_pr = oracles::pearson(a, b);
    if (std::isnan(orc_pr)) {
      CHECK(std::isnan(pr));
      continue;
    }
    CHECK(pr == doctest::Approx(orc_pr).epsilon(1e-10));
    CHECK(model::spearman(a, b) ==
          doctest::Approx(oracles::spearman(a, b)).epsilon(1e-10));
    const double tau = model::kendall_tau_b(a, b);
    const double orc_tau = oracles::kendall_tau_b(a, b);
    if (std::isnan(orc_tau))
      CHECK(std::isnan(tau));
    else
      CHECK(tau == doctest::Approx(orc_tau).epsilon(1e-10));
    CHECK(model::mean_abs_error(a, b) ==
          doctest::Approx(oracles::mae(a, b)).epsilon(1e-12));
  }
}

TEST_CASE("rank metrics ignore strictly increasing transforms") {
  oracles::Rand rand(445566);
  const auto n = std::size_t{30};
  const auto a = random_tied_vector(rand, n);
  const auto b = random_tied_vector(rand, n);
  std::vector<double> a2, b2;
  for (double v : a) a2.push_back(std::exp(v));
  for (double v : b) b2.push_back(v * v * v + 2.0 * v);  // strictly increasing

  CHECK(model::spearman(a, b) ==
        doctest::Approx(model::spearman(a2, b2)).epsilon(1e-12));
  CHECK(model::kendall_tau_b(a, b) ==
        doctest::Approx(model::kendall_tau_b(a2, b2)).epsilon(1e-12));
}

TEST_CASE("pearson ignores positive affine transforms and flips on negative") {
  oracles::Rand rand(778899);
  std::vector<double> a(20), b(20);
  for (std::size_t i = 0; i < 20; ++i) {
    a[i] = rand.uniform();
    b[i] = rand.uniform();
  }
  std::vector<double> a_aff;
  for (double v : a) a_aff.push_back(2.5 * v - 7.0);
  CHECK(model::pearson(a, b) ==
        doctest::Approx(model::pearson(a_aff, b)).epsilon(1e-12));
  std::vector<double> a_neg;
  for (double v : a) a_neg.push_back(-3.0 * v + 1.0);
  CHECK(model::pearson(a, b) ==
        doctest::Approx(-model::pearson(a_neg, b)).epsilon(1e-12));
}

TEST_CASE("kendall handles worked small cases") {
  // Three increasing pairs, one swap: tau = (2 - 1) / 3.
  const std::vector<double> a = {1.0, 2.0, 3.0};
  const std::vector<double> b = {1.0, 3.0, 2.0};
  CHECK(model::kendall_tau_b(a, b) == doctest::Approx(1.0 / 3.0));

  // A fully tied x column has no orderable pair: undefined.
  const std::vector<double> tied = {1.0, 1.0, 1.0};
  CHECK(std::isnan(model::kendall_tau_b(tied, b)));
}

TEST_CASE("spearman reduces to pearson of fractional ranks") {
  oracles::Rand rand(1357);
  const auto a = random_tied_vector(rand, 25);
  const auto b = random_tied_vector(rand, 25);
  const auto ra = model::fractional_ranks(a);
  const auto rb = model::fractional_ranks(b);
  CHECK(model::spearman(a, b) ==
        doctest::Approx(model::pearson(ra, rb)).epsilon(1e-12));
}
