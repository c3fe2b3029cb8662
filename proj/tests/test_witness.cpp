#include <cmath>

#include "bergman/error.hpp"
#include "bergman/serialize.hpp"
#include "bergman/witness.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace bergman;
using test::cplx;

TEST_SUITE("witness") {
  TEST_CASE("disk constant") {
    CHECK(disk_witness_constant(0.5) == doctest::Approx(6.0).epsilon(1e-15));
    CHECK_THROWS_AS(disk_witness_constant(1.0), ParameterError);
  }

  TEST_CASE("local sup examples") {
    CHECK(local_sup_h(HoloFunction::taylor({2.0}), DiskPoint(0.3, 0), 0.5) == 0.0);
    // sup of (1 - |u|^2) over |u| <= 1/2 is 1, attained at the origin.
    CHECK(local_sup_h(HoloFunction::taylor({0.0, 1.0}), DiskPoint(0, 0), 0.5) == doctest::Approx(6.0).epsilon(1e-12));
    // f = z^2 over the Euclidean disk centre 0.4 radius 0.4: 2t(1 - t^2) on t in [0, 0.8]
    // peaks at t = 1/sqrt(3).
    const double t = 1.0 / std::sqrt(3.0);
    const double h = local_sup_h(HoloFunction::taylor({0.0, 0.0, 1.0}), DiskPoint(0.5, 0), 0.5);
    CHECK(h <= 6.0 * 2.0 * t * (1.0 - t * t) + 1e-12);
    CHECK(h >= 0.99 * 6.0 * 2.0 * t * (1.0 - t * t));
    CHECK_THROWS_AS(local_sup_h(HoloFunction::taylor({1.0}), DiskPoint(0, 0), 0.0), ParameterError);
  }

  TEST_CASE("witness formulas") {
    const HoloFunction z = HoloFunction::taylor({0.0, 1.0});
    const Witness w = build_witness(z, WitnessMetric::rho, 0.5);
    const Witness e = build_witness(z, WitnessMetric::euclid, 0.5);
    const cplx p(0.3, -0.4);
    CHECK(w.g(p) == doctest::Approx(2.0 * std::abs(p) + w.h(p)).epsilon(1e-15));
    CHECK(e.g(p) == doctest::Approx(w.g(p) / (1.0 - std::abs(p))).epsilon(1e-15));
    CHECK(w.C() == doctest::Approx(6.0));
    CHECK_THROWS_AS(build_witness(z, WitnessMetric::d, 0.5), ParameterError);
    CHECK_THROWS_AS(witness_metric_from_string("taxicab"), ParameterError);
    CHECK(witness_metric_from_string(to_string(WitnessMetric::beta)) == WitnessMetric::beta);
  }

  TEST_CASE("pair sampler splits near and far pairs") {
    const DiskPairSample s = make_disk_pairs(10000, 0.5, 3);
    CHECK(s.pairs.size() == 10000);
    CHECK(s.near >= 4000);
    CHECK(s.far >= 4000);
    for (const auto& [i, j] : s.pairs) {
      REQUIRE(i < s.pool.size());
      REQUIRE(j < s.pool.size());
    }
    const DiskPairSample t = make_disk_pairs(10000, 0.5, 3);
    CHECK(t.pairs == s.pairs);
    CHECK_THROWS_AS(make_disk_pairs(0, 0.5, 3), ParameterError);
  }

  TEST_CASE("verification examples") {
    const HoloFunction z = HoloFunction::taylor({0.0, 1.0});
    CHECK(verify_lipschitz(z, [](cplx) { return 1.0; }, WitnessMetric::rho, 20000, 4).max_violation <= 0.0);
    CHECK(verify_lipschitz(build_witness(z, WitnessMetric::rho, 0.5), 20000, 5).valid());
    const HoloFunction z2 = HoloFunction::taylor({0.0, 0.0, 1.0});
    CHECK(verify_lipschitz(build_witness(z2, WitnessMetric::euclid, 0.5), 20000, 6).valid());
    const HoloFunction sec = HoloFunction::power_section(0.4, 50);
    const Witness ws = build_witness(sec, WitnessMetric::rho, 0.5);
    CHECK(verify_lipschitz(ws, 20000, 7).valid());
    CHECK(verify_lipschitz(ws.with_metric(WitnessMetric::beta), 20000, 8).valid());
    // A witness that is too small must be caught.
    CHECK_FALSE(verify_lipschitz(z, [](cplx) { return 0.1; }, WitnessMetric::rho, 2000, 9).valid());
  }

  TEST_CASE("zero function") {
    const Witness w = build_witness(HoloFunction::taylor({0.0}), WitnessMetric::rho, 0.5);
    CHECK(w.g(cplx(0.7, 0.1)) == 0.0);
    CHECK(verify_lipschitz(w, 1000, 1).max_violation <= 0.0);
  }

  TEST_CASE("property: scale covariance") {
    Rng rng(41);
    const HoloFunction f = HoloFunction::taylor({1.0, cplx(0, 2), -0.5, 0.25});
    const Witness w = build_witness(f, WitnessMetric::rho, 0.5);
    const Witness w3 = build_witness(f.scaled(3.0), WitnessMetric::rho, 0.5);
    for (int i = 0; i < 200; ++i) {
      const cplx z = test::disk_point(rng);
      CHECK(std::abs(w3.g(z) - 3.0 * w.g(z)) <= 1e-12 * w3.g(z));
    }
  }

  TEST_CASE("integrability and derivative bound") {
    const HoloFunction f = HoloFunction::power(0.4);
    const Witness rho = build_witness(f, WitnessMetric::rho, 0.5);
    const Witness euc = build_witness(f, WitnessMetric::euclid, 0.5);
    CHECK(witness_integrability(rho, WeightParams(2.0, 0.0)).converged);
    CHECK(witness_integrability(euc, WeightParams(2.0, 0.0)).converged);
    CHECK(witness_weight(WitnessMetric::euclid, WeightParams(2.0, 0.0)) == 2.0);
    CHECK(witness_weight(WitnessMetric::rho, WeightParams(2.0, 0.5)) == 0.5);
    const HoloFunction z3 = HoloFunction::taylor({0.0, 0.0, 0.0, 1.0});
    CHECK(derivative_bound_check(build_witness(z3, WitnessMetric::euclid, 0.5)) <= 0.0);
    CHECK(derivative_bound_check(build_witness(HoloFunction::taylor({0.0, 1.0}), WitnessMetric::rho, 0.5)) <= 0.0);
    CHECK(derivative_check_grid().size() >= 1000);
  }

  TEST_CASE("ball witness") {
    const auto stencil = ball_sup_stencil(2, 0.5);
    REQUIRE(stencil.size() == kBallSupSample);
    CHECK(detail::norm2(stencil.front(), 2) == 0.0);
    for (const auto& u : stencil) CHECK(detail::norm2(u, 2) < 0.25);

    BallPoly::Term c;
    c.coeff = 2.0;
    const BallWitness k = build_witness_ball(HoloFunction::ball_poly(2, {c}), 0.5, 1.0);
    CHECK(k.g(detail::BallCoords{cplx(0.3, 0.1), cplx(-0.2, 0.0)}) == doctest::Approx(4.0).epsilon(1e-12));

    const auto fam = ball_calibration_family(2);
    REQUIRE(fam.size() == 3);
    const BallWitness w = build_witness_ball(fam[0], 0.5, 1.0);
    CHECK(verify_lipschitz_ball(w, WitnessMetric::rho, 10000, 11).valid());
    CHECK_THROWS_AS(build_witness_ball(HoloFunction::taylor({1.0}), 0.5, 1.0), TypeMismatch);
  }

  TEST_CASE("serialization round trip") {
    const HoloFunction f = HoloFunction::taylor({1.0, cplx(0.5, -2.0)});
    const HoloFunction g = holo_function_from_json(to_json(f));
    CHECK(g.eval_raw(cplx(0.2, 0.3)) == f.eval_raw(cplx(0.2, 0.3)));
    const HoloFunction p = holo_function_from_json(to_json(HoloFunction::power(0.7)));
    CHECK(p.eval_raw(0.5) == HoloFunction::power(0.7).eval_raw(0.5));
    BallPoly::Term t;
    t.exponents = {1, 2, 0};
    t.coeff = cplx(0, 1);
    const HoloFunction b = HoloFunction::ball_poly(2, {t});
    const detail::BallCoords z{cplx(0.1, 0.2), cplx(0.3, 0.0)};
    CHECK(holo_function_from_json(to_json(b)).eval_raw(z) == b.eval_raw(z));
    CHECK_THROWS_AS(holo_function_from_json(json{{"variant", "spline"}}), ConfigError);
    const json r = to_json(verify_lipschitz(build_witness(f, WitnessMetric::rho, 0.5), 100, 2));
    CHECK(r.contains("max_violation"));
    CHECK(r.contains("seed"));
  }
}
