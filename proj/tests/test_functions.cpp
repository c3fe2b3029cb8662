#include <cmath>

#include "bergman/error.hpp"
#include "bergman/functions.hpp"
#include "bergman/sampling.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace bergman;
using test::cplx;

namespace {

BallPoly::Term term(int e1, int e2, cplx c) {
  BallPoly::Term t;
  t.exponents = {e1, e2, 0};
  t.coeff = c;
  return t;
}

}  // namespace

TEST_SUITE("functions") {
  TEST_CASE("evaluation examples") {
    CHECK(std::abs(HoloFunction::taylor({0.0, 1.0}).eval(DiskPoint(0.3, 0)) - 0.3) < 1e-16);
    CHECK(std::abs(HoloFunction::power(1.0).eval(DiskPoint(0.5, 0)) - 2.0) < 1e-15);
    CHECK(std::abs(HoloFunction::log_kernel().eval(DiskPoint(0, 0))) == 0.0);
    CHECK(std::abs(HoloFunction::log_kernel().eval(DiskPoint(0.5, 0)) - std::log(2.0)) < 1e-15);
  }

  TEST_CASE("derivative examples") {
    CHECK(std::abs(HoloFunction::taylor({0.0, 0.0, 1.0}).derivative(DiskPoint(0.5, 0)) - 1.0) < 1e-15);
    CHECK(std::abs(HoloFunction::power(2.0).derivative(DiskPoint(0.5, 0)) - 16.0) < 1e-12);
    const HoloFunction z1 = HoloFunction::ball_poly(2, {term(1, 0, 1.0)});
    const BallPoint p({cplx(0.3, 0), cplx(0, 0.4)});
    CHECK(std::abs(z1.derivative(p, DerivativeKind::radial) - 0.3) < 1e-15);
    CHECK(std::abs(z1.derivative(p, DerivativeKind::gradient) - 1.0) < 1e-15);
    CHECK(std::abs(invariant_gradient(z1, BallPoint::origin(2)) - 1.0) < 1e-9);
  }

  TEST_CASE("variant mismatches are type errors") {
    const HoloFunction z1 = HoloFunction::ball_poly(2, {term(1, 0, 1.0)});
    CHECK_THROWS_AS(z1.eval(DiskPoint(0.1, 0)), TypeMismatch);
    CHECK_THROWS_AS(HoloFunction::taylor({1.0}).eval(BallPoint::origin(2)), TypeMismatch);
    CHECK_THROWS_AS(HoloFunction::power(0.5).degree(), TypeMismatch);
    CHECK_THROWS_AS(z1.derivative(BallPoint::origin(2), DerivativeKind::complex), TypeMismatch);
    CHECK_THROWS_AS(HoloFunction::power(0.0), ParameterError);
  }

  TEST_CASE("power sections carry the binomial series") {
    // (1 - z)^{-s} = sum (s)_k / k! z^k
    const HoloFunction f = HoloFunction::power_section(0.5, 4);
    const auto& c = std::get<TaylorPoly>(f.variant()).coeffs;
    REQUIRE(c.size() == 5);
    const double want[] = {1.0, 0.5, 0.375, 0.3125, 0.2734375};
    for (int k = 0; k < 5; ++k) CHECK(std::abs(c[k] - want[k]) < 1e-15);
  }

  TEST_CASE("property: Taylor derivative matches central differences") {
    Rng rng(21);
    for (int i = 0; i < 100; ++i) {
      std::vector<cplx> c(1 + rng.index(15));
      for (auto& a : c) a = cplx(rng.normal(), rng.normal());
      const HoloFunction f = HoloFunction::taylor(c);
      const cplx z = test::disk_point(rng, 0.95);
      const double h = 1e-6;
      const cplx fd = (f.eval_raw(z + h) - f.eval_raw(z - h)) / (2.0 * h);
      const cplx d = f.derivative_raw(z);
      CHECK(std::abs(fd - d) <= 1e-7 * std::max(1.0, std::abs(d)));
    }
  }

  TEST_CASE("property: batched evaluation equals pointwise evaluation") {
    Rng rng(22);
    std::vector<cplx> c(31);
    for (auto& a : c) a = cplx(rng.normal(), rng.normal());
    std::vector<cplx> z(257), out(257), dout(257);
    for (auto& p : z) p = test::disk_point(rng);
    for (const HoloFunction& f : {HoloFunction::taylor(c), HoloFunction::power(0.7), HoloFunction::log_kernel()}) {
      f.eval_many(z, out);
      f.derivative_many(z, dout);
      for (std::size_t i = 0; i < z.size(); ++i) {
        CHECK(std::abs(out[i] - f.eval_raw(z[i])) <= 1e-13 * std::max(1.0, std::abs(out[i])));
        CHECK(std::abs(dout[i] - f.derivative_raw(z[i])) <= 1e-13 * std::max(1.0, std::abs(dout[i])));
      }
    }
  }

  TEST_CASE("property: invariant gradient identity on the ball") {
    // |invariant grad f|^2 = (1 - |z|^2)(|grad f|^2 - |Rf|^2)
    Rng rng(23);
    const HoloFunction f = HoloFunction::ball_poly(2, {term(2, 0, 1.0), term(1, 1, cplx(0, 2)), term(0, 3, -0.5)});
    for (int i = 0; i < 200; ++i) {
      const BallPoint z(test::ball_point(rng, 2, 0.99), 2);
      const double g = gradient_norm(f, z);
      const double r = std::abs(radial_derivative(f, z));
      const double want = std::sqrt((1.0 - z.norm2()) * (g * g - r * r));
      CHECK(std::abs(invariant_gradient(f, z) - want) <= 1e-6 * std::max(want, 1e-3));
    }
  }

  TEST_CASE("radial difference limit") {
    CHECK(radial_difference_limit(DiskPoint(0.5, 0), DiskMetric::rho, 1e-5) ==
          doctest::Approx(4.0 / 3.0).epsilon(1e-3));
    CHECK(radial_difference_limit(DiskPoint(0, 0), DiskMetric::beta, 1e-5) == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(radial_difference_limit(BallPoint({0.6, 0.0}), BallMetric::rho, 1e-5) ==
          doctest::Approx(1.5625).epsilon(1e-3));
    CHECK_THROWS_AS(radial_difference_limit(DiskPoint(0.5, 0), DiskMetric::rho, 0.6), ParameterError);
    CHECK_THROWS_AS(radial_difference_limit(BallPoint::origin(2), BallMetric::rho, 1e-5), ParameterError);
  }
}
