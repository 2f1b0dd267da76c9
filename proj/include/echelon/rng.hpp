#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "echelon/errors.hpp"

namespace echelon {

// Deterministic random source. Every distribution is derived from the raw
// mt19937_64 stream with fixed algorithms, so identical seeds give identical
// draws regardless of platform or standard-library version.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  // Uniform in [0, 1) with 53-bit resolution.
  double next_double() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, bound) by rejection; bound must be positive.
  std::uint64_t next_below(std::uint64_t bound) {
    if (bound == 0) throw NumericError("next_below: bound must be positive");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    for (;;) {
      std::uint64_t v = eng_();
      if (v < limit) return v % bound;
    }
  }

  // Standard normal via Box-Muller; no cached spare, two uniforms per call.
  double next_normal() {
    const double u1 = 1.0 - next_double();  // (0, 1], keeps log finite
    const double u2 = next_double();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(6.283185307179586477 * u2);
  }

  // Gamma(shape, 1) via Marsaglia-Tsang, with the power boost for shape < 1.
  double next_gamma(double shape) {
    if (shape <= 0.0) throw NumericError("next_gamma: shape must be positive");
    if (shape < 1.0) {
      double u = next_double();
      while (u <= 0.0) u = next_double();
      return next_gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x = 0.0;
      double v = 0.0;
      do {
        x = next_normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = next_double();
      if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
      if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v)))
        return d * v;
    }
  }

  double next_beta(double a, double b) {
    const double x = next_gamma(a);
    const double y = next_gamma(b);
    return x / (x + y);
  }

  // Exact Bernoulli-sum binomial; n stays small enough here that the loop
  // beats the bookkeeping of a rejection sampler.
  long next_binomial(long n, double p) {
    if (n < 0) throw NumericError("next_binomial: n must be non-negative");
    if (p < 0.0 || p > 1.0)
      throw NumericError("next_binomial: p must lie in [0, 1]");
    long k = 0;
    for (long i = 0; i < n; ++i)
      if (next_double() < p) ++k;
    return k;
  }

  // Fisher-Yates with our own index draws.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    if (v.size() < 2) return;
    for (std::size_t i = v.size() - 1; i > 0; --i) {
      const auto j = static_cast<std::size_t>(next_below(i + 1));
      std::swap(v[i], v[j]);
    }
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace echelon
