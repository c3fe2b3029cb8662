#include <cmath>
#include <utility>
#include <vector>

#include "bergman/error.hpp"
#include "bergman/quadrature.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace bergman;
using test::cplx;

namespace {

HoloFunction monomial(std::size_t k) {
  std::vector<cplx> c(k + 1, 0.0);
  c[k] = 1.0;
  return HoloFunction::taylor(std::move(c));
}

// Series for I(a) with lambda = (2 + s + t)/2:
// sum_n ((lambda)_n / n!)^2 B(n + 1, s + 1) a^{2n}, summed in log space.
double growth_series(double a, double s, double t) {
  const double lam = 0.5 * (2.0 + s + t);
  double sum = 0.0;
  for (int n = 0; n < 200000; ++n) {
    const double lp = std::lgamma(lam + n) - std::lgamma(lam) - std::lgamma(n + 1.0);
    const double lb = std::lgamma(n + 1.0) + std::lgamma(s + 1.0) - std::lgamma(n + s + 2.0);
    const double term = std::exp(2.0 * lp + lb + 2.0 * n * std::log(a));
    sum += term;
    if (n > 10 && term < 1e-18 * sum) break;
  }
  return sum;
}

}  // namespace

TEST_SUITE("quadrature") {
  TEST_CASE("Gauss-Legendre rules are exact to degree 2n - 1") {
    for (int n : {1, 4, 16, 40}) {
      const GaussRule g = gauss_legendre(n);
      for (int k = 0; k < 2 * n; ++k) {
        double s = 0.0;
        for (std::size_t i = 0; i < g.x.size(); ++i) s += g.w[i] * std::pow(g.x[i], k);
        const double want = k % 2 ? 0.0 : 2.0 / (k + 1);
        CHECK(std::abs(s - want) < 1e-13);
      }
    }
    CHECK_THROWS_AS(gauss_legendre(0), ParameterError);
  }

  TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(WeightParams(2.0, -1.0), ParameterError);
    CHECK_THROWS_AS(WeightParams(0.0, 0.0), ParameterError);
    CHECK_THROWS_AS(DiskGrid::build(-1.5, 1e-3, {}), ParameterError);
    CHECK_THROWS_AS(DiskGrid::build(0.0, 0.7, {}), ParameterError);
    CHECK_THROWS_AS(monomial_norm_exact(-1, 0.0), ParameterError);
    const DiskGrid g = DiskGrid::build(1.0, 0x1.0p-12, GridResolution::for_polynomial(4));
    CHECK_THROWS_AS(norm_p(monomial(1), WeightParams(2.0, 0.0), g), ParameterError);
    CHECK_THROWS_AS(BallGrid::build(4, 0.0, 1e-3, 16, 1), ParameterError);
  }

  TEST_CASE("exact monomial norms") {
    CHECK(monomial_norm_exact(0, 2.5) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(monomial_norm_exact(3, 0.0) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(monomial_norm_exact(2, 1.0) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  }

  TEST_CASE("property: quadrature matches exact monomial norms") {
    for (const double alpha : {-0.5, 0.0, 1.0, 2.5}) {
      const DiskGrid grid = DiskGrid::build(alpha, 0x1.0p-12, GridResolution::for_polynomial(30));
      for (int k = 0; k <= 30; k += 3) {
        const NormResult r = norm_p(monomial(k), WeightParams(2.0, alpha), grid);
        CHECK(test::rel(r.value, monomial_norm_exact(k, alpha)) < 1e-8);
        CHECK(r.converged);
      }
      const NormResult one = norm_p(HoloFunction::taylor({1.0}), WeightParams(3.0, alpha), grid);
      CHECK(std::abs(one.value - 1.0) < 1e-8);
    }
  }

  TEST_CASE("truncated partial integrals are nondecreasing") {
    const MembershipResult m = membership(HoloFunction::power(0.9), WeightParams(2.0, 0.0));
    REQUIRE(m.norm.partials.size() >= 2);
    for (std::size_t i = 1; i < m.norm.partials.size(); ++i) CHECK(m.norm.partials[i] >= m.norm.partials[i - 1]);
    CHECK(m.verdict == Membership::member);
  }

  TEST_CASE("membership of power singularities") {
    CHECK(membership(HoloFunction::power(1.1), WeightParams(2.0, 0.0)).verdict == Membership::non_member);
    CHECK(membership(HoloFunction::taylor({1.0, 2.0}), WeightParams(4.0, 0.0)).verdict == Membership::member);
    // p s = 2.2 < 2 + alpha = 3
    CHECK(membership(HoloFunction::power(1.1), WeightParams(2.0, 1.0)).verdict == Membership::member);
  }

  TEST_CASE("classification of synthetic partial sequences") {
    std::vector<double> conv, div;
    for (int k = 0; k < 9; ++k) {
      conv.push_back(1.0 - std::pow(0.5, k));
      div.push_back(1.0 + 0.1 * k);
    }
    CHECK(classify(conv) == Membership::member);
    CHECK(classify(div) == Membership::non_member);
  }

  TEST_CASE("derivative seminorm examples") {
    const WeightParams wp(2.0, 0.0);
    const HoloFunction c = HoloFunction::taylor({cplx(0.6, 0.8)});
    const HoloFunction z = monomial(1);
    CHECK(lemma5_seminorm(c, wp, default_disk_grid(c, 0.0)).value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(lemma5_seminorm(z, wp, default_disk_grid(z, 0.0)).value == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
    // f = z^2: |f(0)|^2 + int (1-|z|^2)^2 |2z|^2 dA = 4 B(2, 3) = 1/3
    const HoloFunction z2 = monomial(2);
    CHECK(lemma5_seminorm(z2, wp, default_disk_grid(z2, 0.0)).value == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
  }

  TEST_CASE("growth integral at the origin") {
    for (const double s : {-0.5, 0.0, 0.5, 2.0}) {
      CHECK(lemma10_integral(DiskPoint(0, 0), s, 1.0).value == doctest::Approx(1.0 / (s + 1.0)).epsilon(1e-10));
    }
    CHECK_THROWS_AS(lemma10_integral(DiskPoint(0, 0), -1.0, 0.0), ParameterError);
    CHECK_THROWS_AS(lemma10_boundary_limit(0.0, 0.5), ParameterError);
  }

  TEST_CASE("growth integral against high-precision reference values") {
    struct Ref {
      double a, s, t, value;
    };
    // Evaluated independently with 30-digit hypergeometric arithmetic.
    const Ref refs[] = {{0.5, 0.0, 1.0, 1.3795088245938222384},   {0.9, 0.0, 1.0, 6.1088421453436981692},
                        {0.99, 0.0, 1.0, 62.779375710648917655},  {0.999, 0.5, 2.0, 172744.15307213503425},
                        {0.9, 0.0, -0.5, 1.4480931654825021132},  {0.99, 0.5, 0.5, 11.519474051013250692},
                        {0.9999, 0.0, 0.5, 150.22892390057118029}};
    for (const auto& r : refs) {
      CAPTURE(r.a);
      CAPTURE(r.s);
      CAPTURE(r.t);
      const NormResult I = lemma10_integral(DiskPoint(r.a, 0.0), r.s, r.t);
      CHECK(test::rel(I.value, r.value) < 1e-6);
      // Rotation invariance.
      CHECK(test::rel(lemma10_integral(DiskPoint::polar(r.a, 1.0), r.s, r.t).value, I.value) < 1e-9);
    }
    // At |z| = 1 the singularity sits on the truncation circle; convergence in eps is slower.
    CHECK(test::rel(lemma10_boundary_limit(0.0, -0.5).value, 2.1574104047535174267) < 1e-4);
    CHECK(test::rel(lemma10_boundary_limit(0.5, -0.5).value, 2.0) < 1e-4);
  }

  TEST_CASE("property: growth integral against its power series") {
    Rng rng(31);
    for (int i = 0; i < 12; ++i) {
      const double a = rng.uniform(0.0, 0.95);
      const double s = rng.uniform(-0.5, 2.0);
      const double t = rng.uniform(-0.9, 2.0);
      CAPTURE(a);
      CAPTURE(s);
      CAPTURE(t);
      CHECK(test::rel(lemma10_integral(DiskPoint(a, 0.0), s, t).value, growth_series(a, s, t)) < 1e-6);
    }
  }

  TEST_CASE("growth exponent fit") {
    std::vector<std::pair<double, double>> samples;
    for (const double a : {0.9, 0.99, 0.999, 0.9999}) samples.emplace_back(a, std::pow(1.0 - a * a, -2.0));
    CHECK(std::abs(fit_growth_exponent(samples) - 2.0) < 1e-6);
    samples.pop_back();
    CHECK_THROWS_AS(fit_growth_exponent(samples), ParameterError);
    samples.emplace_back(0.5, 1.0);
    CHECK_THROWS_AS(fit_growth_exponent(samples), ParameterError);
  }

  TEST_CASE("growth exponent from the integral") {
    std::vector<std::pair<double, double>> t1, t2;
    for (const double a : {0.99, 0.999, 0.9999, 0.99999}) {
      t1.emplace_back(a, lemma10_integral(DiskPoint(a, 0.0), 0.0, 1.0).value);
      t2.emplace_back(a, lemma10_integral(DiskPoint(a, 0.0), 0.5, 2.0).value);
    }
    CHECK(std::abs(fit_growth_exponent(t1) - 1.0) < 0.05);
    CHECK(std::abs(fit_growth_exponent(t2) - 2.0) < 0.05);
  }

  TEST_CASE("ball quasi-Monte Carlo grid") {
    const BallGrid g = BallGrid::build(2, 0.0, 0x1.0p-12, std::size_t{1} << 16, 7);
    BallPoly::Term one;
    one.coeff = 1.0;
    const NormResult r = norm_p(HoloFunction::ball_poly(2, {one}), WeightParams(2.0, 0.0), g);
    CHECK(std::abs(r.value - 1.0) < 1e-2);
    const BallGrid h = BallGrid::build(3, 1.0, 0x1.0p-12, std::size_t{1} << 16, 7);
    const NormResult q = norm_p(HoloFunction::ball_poly(3, {one}), WeightParams(1.0, 1.0), h);
    CHECK(std::abs(q.value - 1.0) < 1e-2);
    CHECK_THROWS_AS(norm_p(monomial(1), WeightParams(2.0, 0.0), g), TypeMismatch);
  }
}
