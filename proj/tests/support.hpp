#pragma once

#include <cmath>
#include <complex>
#include <numbers>

#include "bergman/sampling.hpp"

namespace test {

using cplx = std::complex<double>;

inline double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }

// Seeded generators for the property tests.
inline cplx disk_point(bergman::Rng& rng, double max_abs = 0.999) {
  const double r = max_abs * std::sqrt(rng.uniform());
  return std::polar(r, 2.0 * std::numbers::pi * rng.uniform());
}

inline cplx boundary_point(bergman::Rng& rng) {
  const double gap = std::pow(10.0, rng.uniform(-4.0, -1.0));
  return std::polar(1.0 - gap, 2.0 * std::numbers::pi * rng.uniform());
}

inline bergman::detail::BallCoords ball_point(bergman::Rng& rng, std::size_t n, double max_abs = 0.999) {
  bergman::detail::BallCoords u{};
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    u[k] = cplx(rng.normal(), rng.normal());
    s += std::norm(u[k]);
  }
  const double r = max_abs * std::pow(rng.uniform(), 1.0 / (2.0 * n)) / std::sqrt(s);
  for (std::size_t k = 0; k < n; ++k) u[k] *= r;
  return u;
}

}  // namespace test
