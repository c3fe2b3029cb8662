#include <cmath>
#include <numbers>
#include <vector>

#include "bergman/error.hpp"
#include "bergman/lifting.hpp"
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

}  // namespace

TEST_SUITE("lifting") {
  TEST_CASE("lifted evaluation examples") {
    CHECK(std::abs(lift_eval(monomial(1), DiskPoint(0.3, 0.1), DiskPoint(-0.2, 0.5)) - 1.0) < 1e-15);
    const cplx z(0.3, 0.1), w(-0.2, 0.5);
    CHECK(std::abs(lift_eval(monomial(2), DiskPoint(z), DiskPoint(w)) - (z + w)) < 1e-15);
    CHECK(std::abs(lift_eval(monomial(3), DiskPoint(0.5, 0), DiskPoint(0.5, 0)) - 0.75) < 1e-15);
    // Closed forms use the quotient away from the diagonal.
    const HoloFunction p = HoloFunction::power(1.0);
    const cplx q = (p.eval_raw(z) - p.eval_raw(w)) / (z - w);
    CHECK(std::abs(lift_eval(p, DiskPoint(z), DiskPoint(w)) - q) < 1e-14);
    CHECK(std::abs(lift_eval(p, DiskPoint(z), DiskPoint(z)) - p.derivative_raw(z)) < 1e-10);
  }

  TEST_CASE("diagonal examples") {
    CHECK(std::abs(diagonal(BidiskFunction::lifted(monomial(2)), DiskPoint(0.3, 0)) - 0.6) < 1e-15);
    CHECK(std::abs(diagonal(BidiskFunction::lifted(monomial(4)), DiskPoint(0.5, 0)) - 0.5) < 1e-15);
    CHECK(std::abs(diagonal(BidiskFunction::tensor({{1.0}}), DiskPoint(-0.4, 0.7)) - 1.0) < 1e-15);
  }

  TEST_CASE("property: lifted monomials are the divided differences") {
    Rng rng(51);
    for (std::size_t k = 1; k <= 12; ++k) {
      const BidiskFunction T = BidiskFunction::tensor(lifted_monomial(k).c);
      const cplx z = test::disk_point(rng, 0.9), w = test::disk_point(rng, 0.9);
      const cplx want = (std::pow(z, static_cast<int>(k)) - std::pow(w, static_cast<int>(k))) / (z - w);
      CHECK(std::abs(T.eval(DiskPoint(z), DiskPoint(w)) - want) < 1e-12);
    }
  }

  TEST_CASE("property: diagonal of the lift is the derivative") {
    Rng rng(52);
    for (int i = 0; i < 100; ++i) {
      std::vector<cplx> c(1 + rng.index(20));
      for (auto& a : c) a = cplx(rng.normal(), rng.normal());
      const HoloFunction f = HoloFunction::taylor(c);
      const cplx z = test::disk_point(rng);
      const cplx d = f.derivative_raw(z);
      CHECK(std::abs(diagonal(BidiskFunction::lifted(f), DiskPoint(z)) - d) <= 1e-13 * std::max(1.0, std::abs(d)));
    }
  }

  TEST_CASE("property: lifting is linear") {
    Rng rng(53);
    std::vector<cplx> a(8), b(8), s(8);
    for (std::size_t k = 0; k < 8; ++k) {
      a[k] = cplx(rng.normal(), rng.normal());
      b[k] = cplx(rng.normal(), rng.normal());
    }
    const cplx x(0.7, -1.2), y(-0.3, 2.0);
    for (std::size_t k = 0; k < 8; ++k) s[k] = x * a[k] + y * b[k];
    const HoloFunction fa = HoloFunction::taylor(a), fb = HoloFunction::taylor(b), fs = HoloFunction::taylor(s);
    for (int i = 0; i < 100; ++i) {
      const DiskPoint z(test::disk_point(rng)), w(test::disk_point(rng));
      const cplx lhs = lift_eval(fs, z, w);
      CHECK(std::abs(lhs - (x * lift_eval(fa, z, w) + y * lift_eval(fb, z, w))) <= 1e-12 * std::max(1.0, std::abs(lhs)));
    }
  }

  TEST_CASE("series norm examples") {
    CHECK(lift_norm_series_A2(std::vector<cplx>{0.0, 1.0}) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(lift_norm_series_A2(std::vector<cplx>{0.0, 0.0, 1.0}) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(lift_norm_series_A2(std::vector<cplx>{0.0}) == 0.0);
    // A single term k = 2 contributes |a_2|^2.
    CHECK(lift_norm_series_A2(std::vector<cplx>{0.0, 0.0, cplx(0.6, 0.8)}) == doctest::Approx(1.0).epsilon(1e-15));
  }

  TEST_CASE("bidisk norms") {
    CHECK(bidisk_norm(BidiskFunction::lifted(monomial(1)), 2.0, 0.0).value == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(bidisk_norm(BidiskFunction::lifted(monomial(2)), 2.0, 0.0).value == doctest::Approx(1.0).epsilon(1e-8));
    CHECK_THROWS_AS(bidisk_norm(BidiskFunction::lifted(monomial(1)), 0.0, 0.0), ParameterError);
  }

  TEST_CASE("property: series norm equals bidisk quadrature") {
    Rng rng(54);
    for (int i = 0; i < 10; ++i) {
      std::vector<cplx> c(1 + rng.index(16));
      for (auto& a : c) a = cplx(rng.normal(), rng.normal());
      const HoloFunction f = HoloFunction::taylor(c);
      const DiskGrid grid = bidisk_polynomial_grid(c.size(), 2.0, 0.0);
      const double series = lift_norm_series_A2(c);
      CHECK(test::rel(bidisk_norm(BidiskFunction::lifted(f), 2.0, grid).value, series) < 1e-6);
    }
  }

  TEST_CASE("homogeneous pieces are orthogonal") {
    const DiskGrid grid = bidisk_polynomial_grid(10, 2.0, 0.0);
    for (std::size_t k = 1; k <= 6; ++k) {
      for (std::size_t m = k + 1; m <= 6; ++m) {
        const cplx v = bidisk_inner(BidiskFunction::tensor(lifted_monomial(k).c),
                                    BidiskFunction::tensor(lifted_monomial(m).c), grid);
        CHECK(std::abs(v) < 1e-10);
      }
    }
  }

  TEST_CASE("log-weighted norms") {
    GridResolution res = GridResolution::for_polynomial(200);
    res.angular_nodes = 8;
    res.tail_panels = 24;
    const DiskGrid grid = DiskGrid::build(0.0, 0x1.0p-12, res);
    CHECK(log_weighted_norm(HoloFunction::taylor({1.0}), grid).value == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(log_weighted_norm(HoloFunction::taylor({0.0}), grid).value == 0.0);
    // int_0^1 t^k log(1/(1-t)) dt = H_{k+1}/(k+1)
    for (std::size_t k : {1, 5, 20}) {
      double H = 0.0;
      for (std::size_t j = 1; j <= k + 1; ++j) H += 1.0 / j;
      CHECK(log_weighted_monomial(k) == doctest::Approx(H / (k + 1)).epsilon(1e-14));
      CHECK(test::rel(log_weighted_norm(monomial(k), grid).value, H / (k + 1)) < 1e-8);
    }
    const DiskGrid weighted = DiskGrid::build(1.0, 0x1.0p-12, res);
    CHECK_THROWS_AS(log_weighted_norm(monomial(1), weighted), ParameterError);
  }

  TEST_CASE("divergence demonstration") {
    const std::vector<std::size_t> N = {100, 1000, 10000};
    const DivergenceDemo d = divergence_demo(N);
    REQUIRE(d.a2_partial.size() == 3);
    CHECK(d.a2_partial[2] - d.a2_partial[1] < 0.02 * d.a2_partial[1]);
    CHECK(d.lift_partial[2] > d.lift_partial[0]);
    for (std::size_t i = 1; i < 3; ++i) CHECK(d.a2_partial[i] >= d.a2_partial[i - 1]);
    CHECK_THROWS_AS(divergence_demo(std::vector<std::size_t>{}), ParameterError);
    CHECK_THROWS_AS(divergence_demo(std::vector<std::size_t>{100, 10}), ParameterError);
  }

  TEST_CASE("scan preconditions") {
    const double s[] = {0.5};
    CHECK_THROWS_AS(lifting_scan(s, 3.0, 0.0, LiftTarget::thm11), ParameterError);
    CHECK_THROWS_AS(lifting_scan(s, 1.0, 0.0, LiftTarget::thm12), ParameterError);
    CHECK_THROWS_AS(lifting_scan(s, 2.0, 0.0, LiftTarget::thm11), ParameterError);
  }
}
