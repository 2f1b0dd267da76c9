#include <doctest.h>

#include <cmath>
#include <vector>

#include "echelon/boxcox.hpp"
#include "echelon/errors.hpp"
#include "echelon/metrics.hpp"
#include "oracles.hpp"

using namespace echelon;
using model::BoxCoxTransform;

namespace {

std::vector<double> lognormal_sample(oracles::Rand& rand, std::size_t n,
                                     double mu, double sigma) {
  std::vector<double> y(n);
  for (auto& v : y) v = std::exp(mu + sigma * rand.normal());
  return y;
}

BoxCoxTransform at(double lambda, double shift = 0.0) {
  BoxCoxTransform t;
  t.lambda = lambda;
  t.shift = shift;
  t.fitted = true;
  return t;
}

}  // namespace

TEST_CASE("the two transform branches match their closed forms") {
  // lambda = 1: y - 1. lambda = 0: ln y. lambda = 0.5 at 0.25: -1.
  const std::vector<double> y = {0.25, 0.5, 1.0, 2.0};
  const auto linear = model::boxcox_apply(at(1.0), y);
  for (std::size_t i = 0; i < y.size(); ++i)
    CHECK(linear[i] == doctest::Approx(y[i] - 1.0).epsilon(1e-15));

  const auto logs = model::boxcox_apply(at(0.0), y);
  for (std::size_t i = 0; i < y.size(); ++i)
    CHECK(logs[i] == doctest::Approx(std::log(y[i])).epsilon(1e-15));

  CHECK(model::boxcox_apply_one(at(0.5), 0.25) ==
        doctest::Approx(-1.0).epsilon(1e-15));
}

TEST_CASE("apply and invert round-trip within 1e-9") {
  oracles::Rand rand(99);
  for (double lambda : {-2.0, -0.5, 0.0, 0.3, 1.0, 2.5}) {
    const auto t = at(lambda, 0.0);
    for (int i = 0; i < 200; ++i) {
      const double y = rand.uniform(1e-3, 1.0);
      const double z = model::boxcox_apply_one(t, y);
      CHECK(model::boxcox_invert_one(t, z) ==
            doctest::Approx(y).epsilon(1e-9));
    }
  }
}

TEST_CASE("the zero-lambda inverse subtracts the shift after exp") {
  const auto t = at(0.0, 0.25);
  CHECK(model::boxcox_invert_one(t, 0.0) == doctest::Approx(0.75));
  const double z = model::boxcox_apply_one(t, 0.5);
  CHECK(model::boxcox_invert_one(t, z) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("out-of-range inverse inputs are rejected") {
  // lambda = 0.5 maps (0, inf) to (-2, inf); -3 is outside the image.
  CHECK_THROWS_AS(model::boxcox_invert_one(at(0.5), -3.0), ValidationError);
}

TEST_CASE("apply rejects non-positive shifted values") {
  CHECK_THROWS_AS(model::boxcox_apply_one(at(1.0), 0.0), ValidationError);
  CHECK_THROWS_AS(model::boxcox_apply_one(at(1.0, 0.5), -0.5),
                  ValidationError);
  CHECK(model::boxcox_apply_one(at(1.0, 0.5), 0.0) ==
        doctest::Approx(-0.5).epsilon(1e-15));
}

TEST_CASE("fit rejects degenerate samples") {
  CHECK_THROWS_AS(model::boxcox_fit(std::vector<double>{1.0, 1.0, 1.0}),
                  ValidationError);
  CHECK_THROWS_AS(model::boxcox_fit(std::vector<double>{1.0, 2.0}),
                  ValidationError);
  CHECK_THROWS_AS(model::boxcox_fit(std::vector<double>{-1.0, 2.0, 3.0}),
                  ValidationError);
}

TEST_CASE("lognormal data pulls the fitted lambda toward zero") {
  // Sampling scatter of the estimate shrinks with the log-scale sigma; at
  // sigma 1.5 and n = 200 the estimate stays well inside +-0.15.
  oracles::Rand rand(2718);
  for (int trial = 0; trial < 8; ++trial) {
    const auto y = lognormal_sample(rand, 200, -1.0, 1.5);
    const auto t = model::boxcox_fit(y);
    CHECK(std::fabs(t.lambda) < 0.15);
    CHECK(t.fitted);
    // The 1e-3 grid oracle lands on the same optimum.
    const double grid = oracles::boxcox_lambda_grid(y, 0.0);
    CHECK(std::fabs(t.lambda - grid) < 1e-2);
  }
}

TEST_CASE("fitted lambda maximizes the profile likelihood locally") {
  oracles::Rand rand(314);
  const auto y = lognormal_sample(rand, 150, 0.0, 0.8);
  const auto t = model::boxcox_fit(y);
  const double at_opt = model::boxcox_loglik(y, 0.0, t.lambda);
  CHECK(t.log_likelihood == doctest::Approx(at_opt).epsilon(1e-12));
  for (double d : {-0.05, 0.05})
    CHECK(at_opt >= model::boxcox_loglik(y, 0.0, t.lambda + d) - 1e-9);
}

TEST_CASE("the transform is strictly increasing for every lambda") {
  oracles::Rand rand(161);
  for (double lambda : {-3.0, -1.0, 0.0, 0.5, 2.0}) {
    const auto t = at(lambda);
    double prev_y = 1e-4;
    double prev_z = model::boxcox_apply_one(t, prev_y);
    for (int i = 0; i < 100; ++i) {
      const double y = prev_y + rand.uniform(1e-4, 0.05);
      const double z = model::boxcox_apply_one(t, y);
      CHECK(z > prev_z);
      prev_y = y;
      prev_z = z;
    }
  }
}

TEST_CASE("rank statistics are invariant under the fitted transform") {
  oracles::Rand rand(10101);
  std::vector<double> y = lognormal_sample(rand, 40, -1.5, 0.6);
  std::vector<double> partner(40);
  for (auto& v : partner) v = rand.uniform();

  const auto t = model::boxcox_fit(y);
  const auto z = model::boxcox_apply(t, y);

  CHECK(model::spearman(y, partner) ==
        doctest::Approx(model::spearman(z, partner)).epsilon(1e-12));
  CHECK(model::kendall_tau_b(y, partner) ==
        doctest::Approx(model::kendall_tau_b(z, partner)).epsilon(1e-12));
}

TEST_CASE("profile log-likelihood agrees with the direct recomputation") {
  oracles::Rand rand(777);
  const auto y = lognormal_sample(rand, 60, -0.5, 0.4);
  for (double lambda : {-1.0, 0.0, 0.7, 2.0})
    CHECK(model::boxcox_loglik(y, 0.0, lambda) ==
          doctest::Approx(oracles::boxcox_loglik_direct(y, 0.0, lambda))
              .epsilon(1e-10));
}
