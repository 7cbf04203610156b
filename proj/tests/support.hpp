#pragma once

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "nhqfi/qmat.hpp"

namespace nhqfi::test {

inline constexpr double kPi = std::numbers::pi;

// Seeded draws shared by the property tests.
class Draws {
 public:
  explicit Draws(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

  // Uniform in the unit ball, scaled to radius in [r_lo, r_hi].
  BlochVectord bloch(double r_lo = 0.0, double r_hi = 1.0) {
    std::normal_distribution<double> n;
    BlochVectord v(n(rng_), n(rng_), n(rng_));
    return v.normalized() * uniform(r_lo, r_hi);
  }

  CMat2d matrix(double scale = 1.0) {
    CMat2d m;
    for (int i = 0; i < 4; ++i) m(i / 2, i % 2) = {uniform(-scale, scale), uniform(-scale, scale)};
    return m;
  }

  CMat2d hermitian(double scale = 1.0) { return hermitian_part<double>(matrix(scale)); }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

inline bool rel_near(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(1.0, std::abs(b));
}

template <typename A, typename B>
double max_diff(const A& a, const B& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace nhqfi::test
