#include <algorithm>
#include <cmath>
#include <numbers>

#include "bergman/lifting.hpp"
#include "bergman/quadrature.hpp"
#include "suites/kit.hpp"

namespace bergman::suites {

namespace {

HoloFunction monomial(std::size_t k) {
  std::vector<cplx> c(k + 1, 0.0);
  c[k] = 1.0;
  return HoloFunction::taylor(std::move(c));
}

HoloFunction ball_one(std::size_t n) {
  BallPoly::Term t;
  t.coeff = 1.0;
  return HoloFunction::ball_poly(n, {t});
}

// int_{D(z, r)} |f|^p dA by polar Gauss-Legendre on the Euclidean disk.
double local_integral(const HoloFunction& f, cplx z, double r, double p) {
  static const GaussRule gl = gauss_legendre(16);
  constexpr int kAngles = 64;
  const EuclideanDisk e = pseudo_disk(DiskPoint(z), r);
  double s = 0.0;
  for (std::size_t i = 0; i < gl.x.size(); ++i) {
    const double rad = 0.5 * (gl.x[i] + 1.0) * e.radius;
    double ring = 0.0;
    for (int k = 0; k < kAngles; ++k) {
      const cplx u = e.center + std::polar(rad, 2.0 * std::numbers::pi * k / kAngles);
      ring += std::pow(std::abs(f.eval_raw(u)), p);
    }
    s += 0.5 * e.radius * gl.w[i] * rad * ring * (2.0 * std::numbers::pi / kAngles);
  }
  return s / std::numbers::pi;
}

}  // namespace

void quadrature(Builder& b) {
  const double alphas[] = {-0.5, 0.0, 1.0, 2.5};
  double exact = 0.0, ortho = 0.0, normalization = 0.0;
  for (const double alpha : alphas) {
    const DiskGrid grid = DiskGrid::build(alpha, 0x1.0p-12, GridResolution::for_polynomial(30));
    for (std::size_t k = 0; k <= 30; ++k) {
      const NormResult r = norm_p(monomial(k), WeightParams(2.0, alpha), grid);
      exact = std::max(exact, rel_err(r.value, monomial_norm_exact(static_cast<int>(k), alpha)));
    }
    for (int k = 0; k <= 10; ++k) {
      for (int m = 0; m <= 10; ++m) {
        if (k == m) continue;
        const cplx v = integrate_complex(grid, [&](cplx z) { return std::pow(z, k) * std::pow(std::conj(z), m); });
        ortho = std::max(ortho, std::abs(v));
      }
    }
    for (const double p : {0.5, 1.0, 2.0, 4.0}) {
      const NormResult r = norm_p(HoloFunction::taylor({1.0}), WeightParams(p, alpha), grid);
      normalization = std::max(normalization, std::abs(r.value - 1.0));
    }
  }
  b.at_most("monomial_norms", exact, 1e-8, "k <= 30, alpha in {-0.5, 0, 1, 2.5}, relative");
  b.at_most("orthogonality", ortho, 1e-10, "k != m <= 10, absolute");
  b.at_most("normalization", normalization, 1e-8, "|int 1 dA_alpha - 1|");

  double tensor = 0.0;
  const std::pair<std::size_t, std::size_t> idx[] = {{0, 0}, {1, 0}, {0, 1}, {2, 3}, {3, 7}, {5, 5}, {10, 0}, {10, 10}};
  for (const auto& [i, j] : idx) {
    std::vector<std::vector<cplx>> c(i + 1, std::vector<cplx>(j + 1, 0.0));
    c[i][j] = 1.0;
    const DiskGrid grid = bidisk_polynomial_grid(i + j, 2.0, 0.0);
    const NormResult r = bidisk_norm(BidiskFunction::tensor(std::move(c)), 2.0, grid);
    tensor = std::max(tensor, rel_err(r.value, 1.0 / ((i + 1.0) * (j + 1.0))));
  }
  b.at_most("bidisk_tensor", tensor, 1e-8, "int int |z^i w^j|^2 = 1/((i+1)(j+1)), relative");

  double weighted = 0.0;
  {
    const DiskGrid grid = DiskGrid::build(1.0, 0x1.0p-12, GridResolution::for_polynomial(8));
    for (std::size_t k = 1; k <= 5; ++k) {
      const NormResult r = norm_p(monomial(k), WeightParams(2.0, 1.0), grid);
      weighted = std::max(weighted, rel_err(r.value, 2.0 / ((k + 1.0) * (k + 2.0))));
    }
  }
  b.at_most("monomial_alpha1", weighted, 1e-10, "int |z^k|^2 dA_1 = 2/((k+1)(k+2))");

  const MembershipResult below = membership(HoloFunction::power(0.9), WeightParams(2.0, 0.0));
  const MembershipResult above = membership(HoloFunction::power(1.1), WeightParams(2.0, 0.0));
  const MembershipResult poly = membership(HoloFunction::taylor({1.0, -2.0, 0.5, 3.0}), WeightParams(1.0, 0.0));
  b.require("member_power_0.9", below.verdict == Membership::member, to_string(below.verdict));
  b.require("non_member_power_1.1", above.verdict == Membership::non_member, to_string(above.verdict));
  b.require("member_polynomial", poly.verdict == Membership::member, to_string(poly.verdict));
  bool monotone = true;
  for (const auto* r : {&below.norm, &above.norm, &poly.norm}) {
    for (std::size_t i = 1; i < r->partials.size(); ++i) monotone = monotone && r->partials[i] >= r->partials[i - 1];
  }
  b.require("partials_monotone", monotone, "truncated integrals are nondecreasing as eps halves");
  b.data()["membership"] = {{"power_0.9", below.norm.partials}, {"power_1.1", above.norm.partials}};

  // Sub-mean-value bound |f(z)|^p (1-|z|^2)^2 <= C int_{D(z,1/2)} |f|^p dA.
  Rng rng(b.seed(1));
  double C = 0.0;
  for (int k = 0; k < 5; ++k) {
    const HoloFunction f = random_polynomial(rng, 2 + 2 * k);
    for (int i = 0; i < 100; ++i) {
      const cplx z = random_disk_point(rng);
      const double lhs = std::pow(std::abs(f.eval_raw(z)), 2.0) * std::pow(1.0 - std::norm(z), 2.0);
      C = std::max(C, lhs / local_integral(f, z, 0.5, 2.0));
    }
  }
  b.require("sub_mean_value_finite", std::isfinite(C), "empirical C = " + fmt(C));
  b.info("sub_mean_value_C", C);

  const BallGrid ball = BallGrid::build(2, 0.0, 0x1.0p-12, BallGrid::kDefaultPoints, b.seed(2));
  const NormResult one = norm_p(ball_one(2), WeightParams(2.0, 0.0), ball);
  BallPoly::Term z1;
  z1.exponents = {1, 0, 0};
  z1.coeff = 1.0;
  const NormResult m1 = norm_p(HoloFunction::ball_poly(2, {z1}), WeightParams(2.0, 0.0), ball);
  b.at_most("ball_normalization", std::abs(one.value - 1.0), 1e-2, "2^20 scrambled Halton points, n = 2");
  b.at_most("ball_monomial", rel_err(m1.value, 1.0 / 3.0), 1e-2, "int |z_1|^2 dv = 1/3");
}

void lemma5(Builder& b) {
  const WeightParams params[] = {{2.0, 0.0}, {1.0, 0.0}, {0.5, 1.0}, {4.0, 2.5}};

  // Ratio of the derivative seminorm to the norm, both as p-th power integrals.
  auto ratio = [](const HoloFunction& f, const WeightParams& wp) {
    const DiskGrid grid = default_disk_grid(f, wp.alpha);
    const NormResult d = lemma5_seminorm(f, wp, grid);
    const NormResult n = norm_p(f, wp, grid);
    return std::pair{d.value / n.value, d.converged && n.converged};
  };

  // The family at degree D: random polynomials of degree D/4, D/2 and D
  // (three of each), z, and sections of degree 2.5 D of (1 - z)^{-s} for
  // every s with p s comfortably below 2 + alpha.
  Rng base(b.seed(1));
  std::vector<std::vector<cplx>> coeff_draws;
  for (int i = 0; i < 9; ++i) {
    std::vector<cplx> c(21);
    for (auto& a : c) a = cplx(base.normal(), base.normal());
    coeff_draws.push_back(std::move(c));
  }
  // K over the whole family, and over the members that change with D
  // (everything but z), whose K is the one that could drift.
  struct FamilyK {
    double all = 1.0;
    double varying = 1.0;
    bool converged = true;
  };
  auto family_K = [&](std::size_t D, nlohmann::json& log) {
    FamilyK K;
    for (const auto& wp : params) {
      std::vector<std::pair<std::string, HoloFunction>> fam;
      fam.emplace_back("z", HoloFunction::taylor({0.0, 1.0}));
      const std::size_t degs[] = {D / 4, D / 2, D};
      for (int i = 0; i < 9; ++i) {
        const std::size_t d = degs[i / 3];
        fam.emplace_back("poly" + std::to_string(i) + "_deg" + std::to_string(d),
                         HoloFunction::taylor({coeff_draws[i].begin(), coeff_draws[i].begin() + d + 1}));
      }
      for (const double s : {0.3, 0.6, 0.9}) {
        if (wp.p * s > 2.0 + wp.alpha - 0.5) continue;
        fam.emplace_back("section_s" + fmt(s), HoloFunction::power_section(s, D * 5 / 2));
      }
      for (const auto& [name, f] : fam) {
        const auto [q, ok] = ratio(f, wp);
        K.converged = K.converged && ok;
        const double k = std::max(q, 1.0 / q);
        K.all = std::max(K.all, k);
        if (name != "z") K.varying = std::max(K.varying, k);
        log[fmt(wp.p) + "," + fmt(wp.alpha)][name] = q;
      }
    }
    return K;
  };

  nlohmann::json log10, log20;
  const FamilyK K10 = family_K(10, log10);
  const FamilyK K20 = family_K(20, log20);
  b.data()["ratios_D10"] = log10;
  b.data()["ratios_D20"] = log20;
  const double K = std::max(K10.all, K20.all);
  b.require("integrals_converged", K10.converged && K20.converged);
  b.require("K_finite", std::isfinite(K), "every ratio lies in [1/K, K] with K = " + fmt(K));
  b.info("K", K);
  b.info("K_D10", K10.varying, "degree-dependent members");
  b.info("K_D20", K20.varying, "degree-dependent members");
  b.at_most("K_stability", std::abs(K20.varying / K10.varying - 1.0), 0.10,
            "relative change of K over the degree-dependent members when the degree doubles");

  // Fixed examples.
  {
    const WeightParams wp(2.0, 0.0);
    const HoloFunction c = HoloFunction::taylor({cplx(1.5, -2.0)});
    const HoloFunction z = HoloFunction::taylor({0.0, 1.0});
    const double vc = lemma5_seminorm(c, wp, default_disk_grid(c, 0.0)).value;
    const double vz = lemma5_seminorm(z, wp, default_disk_grid(z, 0.0)).value;
    b.at_most("constant_seminorm", rel_err(vc, 6.25), 1e-12, "f = c gives |c|^p");
    b.at_most("z_seminorm", rel_err(vz, 1.0 / 3.0), 1e-10, "f = z gives 1/3");
    const HoloFunction f = HoloFunction::power(0.4);
    const DiskGrid grid = default_disk_grid(f, 0.0);
    const NormResult d = lemma5_seminorm(f, wp, grid);
    const NormResult n = norm_p(f, wp, grid);
    b.require("power_0.4_ratio_finite", d.converged && n.converged && std::isfinite(d.value / n.value),
              "ratio " + fmt(d.value / n.value));
  }
}

}  // namespace bergman::suites
