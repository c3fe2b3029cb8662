#include <algorithm>
#include <cmath>

#include "bergman/lifting.hpp"
#include "bergman/quadrature.hpp"
#include "bergman/serialize.hpp"
#include "suites/kit.hpp"

namespace bergman::suites {

namespace {

HoloFunction monomial(std::size_t k) {
  std::vector<cplx> c(k + 1, 0.0);
  c[k] = 1.0;
  return HoloFunction::taylor(std::move(c));
}

const std::vector<cplx>& coeffs(const HoloFunction& f) {
  return std::get<TaylorPoly>(f.variant()).coeffs;
}

void scan_table(Builder& b, const LiftingScanResult& scan) {
  Table& t = b.table("scan", {"s", "norm_f", "norm_Lf", "ratio", "converged"});
  for (const auto& r : scan.rows) {
    t.rows.push_back({r.s, r.norm_f.value, r.norm_Lf.value, r.ratio, r.converged ? 1.0 : 0.0});
    b.require("scan_s" + fmt(r.s) + "_converged", r.converged,
              "norm_f " + to_string(r.norm_f.verdict) + ", norm_Lf " + to_string(r.norm_Lf.verdict) +
                  ", ratio " + fmt(r.ratio));
  }
  b.data()["scan"] = to_json(scan);
}

}  // namespace

void lemma10(Builder& b) {
  Table& t = b.table("growth", {"s", "t", "abs_z", "neg_log_1_minus_abs_z2", "log_I"});
  bool converged = true;
  auto I = [&](double a, double s, double tt) {
    const NormResult r = lemma10_integral(DiskPoint(a, 0.0), s, tt);
    converged = converged && r.converged;
    t.rows.push_back({s, tt, a, -std::log1p(-a * a), std::log(r.value)});
    return r.value;
  };
  const double radii[] = {0.99, 0.999, 0.9999, 0.99999};
  nlohmann::json slopes;
  for (const double s : {0.0, 0.5}) {
    for (const double tt : {0.5, 1.0, 2.0}) {
      std::vector<std::pair<double, double>> samples;
      for (const double a : radii) samples.emplace_back(a, I(a, s, tt));
      const double slope = fit_growth_exponent(samples);
      slopes["s" + fmt(s) + "_t" + fmt(tt)] = slope;
      b.at_most("slope_s" + fmt(s) + "_t" + fmt(tt), std::abs(slope - tt), 0.05,
                "fitted slope " + fmt(slope) + " on |z| in {0.99, ..., 0.99999}");
    }
  }
  b.data()["slopes"] = slopes;

  // t < 0: I is bounded by its boundary value, approached like sqrt(1 - |z|).
  for (const double s : {0.0, 0.5}) {
    const double i1 = I(0.9, s, -0.5), i2 = I(0.99, s, -0.5), i3 = I(0.999, s, -0.5);
    const NormResult sup = lemma10_boundary_limit(s, -0.5);
    converged = converged && sup.converged;
    const double mx = std::max({i1, i2, i3}), mn = std::min({i1, i2, i3});
    const std::string name = "bounded_s" + fmt(s) + "_t-0.5";
    const std::string detail = "I(1) = " + fmt(sup.value) + ", max sampled " + fmt(mx);
    if (s == 0.0) {
      b.at_most(name, (sup.value - mx) / sup.value, 0.05, detail);
    } else {
      b.info(name, (sup.value - mx) / sup.value, detail);
    }
    b.at_most("spread_s" + fmt(s) + "_t-0.5", (mx - mn) / mx, 0.05,
              "(max - min)/max over |z| in {0.9, 0.99, 0.999}; I increases toward I(1)");
  }

  double origin = 0.0;
  for (const double s : {0.0, 0.5, 2.0}) {
    for (const double tt : {-0.5, 1.0, 2.0}) {
      origin = std::max(origin, rel_err(lemma10_integral(DiskPoint(0.0, 0.0), s, tt).value, 1.0 / (s + 1.0)));
    }
  }
  b.at_most("value_at_origin", origin, 1e-10, "I(0) = 1/(s+1)");

  std::vector<std::pair<double, double>> log_growth;
  for (const double a : radii) log_growth.emplace_back(a, I(a, 0.0, 0.0));
  b.info("slope_s0_t0", fit_growth_exponent(log_growth), "logarithmic growth; no power law expected");
  nlohmann::json scaled = nlohmann::json::array();
  for (const double a : {0.9, 0.99, 0.999, 0.9999}) scaled.push_back(I(a, 0.0, 1.0) * (1.0 - a * a));
  b.data()["I_times_1_minus_abs_z2_t1"] = scaled;
  b.require("integrals_converged", converged);
}

void thm11(Builder& b) {
  Rng rng(b.seed(1));
  std::vector<HoloFunction> fam;
  for (int i = 0; i < 50; ++i) fam.push_back(random_polynomial(rng, 1 + rng.index(20)));

  double series = 0.0, diag_K = 0.0;
  for (const auto& f : fam) {
    const double exact = lift_norm_series_A2(coeffs(f));
    const NormResult q = bidisk_norm(BidiskFunction::lifted(f), 2.0, 0.0);
    series = std::max(series, rel_err(q.value, exact));
    // Diagonal restriction: int |f'|^2 dA_2 against the lifted norm.
    const HoloFunction df = HoloFunction::taylor(derivative_coeffs(coeffs(f)));
    const double diag = norm_p(df, WeightParams(2.0, 2.0), default_disk_grid(df, 2.0)).value;
    diag_K = std::max(diag_K, diag / exact);
  }
  b.at_most("series_vs_quadrature", series, 1e-6, "50 random polynomials of degree <= 20, relative");
  b.require("diagonal_restriction_bounded", std::isfinite(diag_K), "empirical K = " + fmt(diag_K));
  b.info("diagonal_restriction_K", diag_K, "int |Lf(z,z)|^2 dA_2 / int int |Lf|^2 dA dA");

  const double n1 = bidisk_norm(BidiskFunction::lifted(monomial(1)), 2.0, 0.0).value;
  const double n2 = bidisk_norm(BidiskFunction::lifted(monomial(2)), 2.0, 0.0).value;
  b.at_most("lifted_z_norm", std::abs(n1 - 1.0), 1e-12, "L z = 1");
  b.at_most("lifted_z2_norm", std::abs(n2 - 1.0), 1e-12, "L z^2 = z + w");

  // Diagonal of the lift equals the derivative; error relative to the
  // absolute term sum so cancellation does not inflate it.
  const auto grid_pts = derivative_check_grid();
  double diag = 0.0;
  for (int i = 0; i < 5; ++i) {
    const HoloFunction& f = fam[i * 10];
    const BidiskFunction F = BidiskFunction::lifted(f);
    const auto& a = coeffs(f);
    for (const cplx z : grid_pts) {
      double scale = 0.0;
      for (std::size_t k = 1; k < a.size(); ++k) scale += k * std::abs(a[k]) * std::pow(std::abs(z), k - 1.0);
      diag = std::max(diag, std::abs(diagonal(F, DiskPoint(z)) - f.derivative(DiskPoint(z))) / std::max(scale, 1e-300));
    }
  }
  b.at_most("diagonal_is_derivative", diag, 1e-14, "1e3 grid points, relative to the term sum");

  double ortho = 0.0;
  {
    const DiskGrid grid = bidisk_polynomial_grid(10, 2.0, 0.0);
    for (std::size_t k = 1; k <= 10; ++k) {
      for (std::size_t m = k + 1; m <= 10; ++m) {
        const cplx v = bidisk_inner(BidiskFunction::tensor(lifted_monomial(k).c),
                                    BidiskFunction::tensor(lifted_monomial(m).c), grid);
        ortho = std::max(ortho, std::abs(v));
      }
    }
  }
  b.at_most("homogeneous_orthogonality", ortho, 1e-10, "k != m <= 10, absolute");

  double lin = 0.0;
  {
    const HoloFunction& f = fam[0];
    const HoloFunction& g = fam[1];
    const cplx ca(0.7, -1.2), cb(-2.0, 0.3);
    std::vector<cplx> sum(std::max(coeffs(f).size(), coeffs(g).size()), 0.0);
    for (std::size_t k = 0; k < coeffs(f).size(); ++k) sum[k] += ca * coeffs(f)[k];
    for (std::size_t k = 0; k < coeffs(g).size(); ++k) sum[k] += cb * coeffs(g)[k];
    const HoloFunction h = HoloFunction::taylor(std::move(sum));
    Rng pts(b.seed(2));
    for (int i = 0; i < 1000; ++i) {
      const DiskPoint z(random_disk_point(pts));
      const DiskPoint w(i % 2 ? random_disk_point(pts) : z.value() * (1.0 - 1e-9));
      const cplx lf = lift_eval(f, z, w), lg = lift_eval(g, z, w);
      const double scale = std::max(1.0, std::abs(ca * lf) + std::abs(cb * lg));
      lin = std::max(lin, std::abs(lift_eval(h, z, w) - ca * lf - cb * lg) / scale);
    }
  }
  b.at_most("linearity", lin, 1e-12, "L(af + bg) - aLf - bLg, relative");

  const double s_values[] = {0.5, 1.0, 1.5};
  scan_table(b, lifting_scan(s_values, 1.0, 0.0, LiftTarget::thm11));
}

void thm12(Builder& b) {
  const double s_values[] = {0.1, 0.3, 0.45};
  scan_table(b, lifting_scan(s_values, 4.0, 0.0, LiftTarget::thm12));

  // Trend of the lifted integral in the target weight; no sharpness claim.
  const BidiskFunction F = BidiskFunction::lifted(HoloFunction::power(0.3));
  nlohmann::json trend = nlohmann::json::array();
  for (const double beta : {0.5, 1.0, 1.5}) {
    const NormResult r = bidisk_norm(F, 4.0, bidisk_singular_grid(beta));
    trend.push_back({{"beta", beta}, {"result", to_json(r)}});
    b.info("beta_trend_" + fmt(beta), r.value, "(1 - z)^{-0.3} lifted, p = 4, " + to_string(r.verdict));
  }
  b.data()["beta_trend"] = trend;
}

void a2_diverge(Builder& b) {
  std::vector<std::size_t> N;
  for (std::size_t d = 10; d <= 10000; d *= 10) {
    for (const std::size_t m : {1, 2, 5}) {
      if (m * d <= 10000) N.push_back(m * d);
    }
  }
  auto at = [&](const DivergenceDemo& demo, const std::vector<double>& v, std::size_t n) {
    const auto it = std::find(demo.N.begin(), demo.N.end(), n);
    return v[static_cast<std::size_t>(it - demo.N.begin())];
  };
  const DivergenceDemo lit = divergence_demo(N);
  const DivergenceDemo harm = divergence_demo(N, divergence_weight_harmonic);
  Table& t = b.table("partials", {"N", "a2_partial", "lift_partial", "a2_partial_harmonic", "lift_partial_harmonic"});
  for (std::size_t i = 0; i < lit.N.size(); ++i) {
    t.rows.push_back({static_cast<double>(lit.N[i]), lit.a2_partial[i], lit.lift_partial[i], harm.a2_partial[i],
                      harm.lift_partial[i]});
  }

  const double inc = (at(lit, lit.a2_partial, 10000) - at(lit, lit.a2_partial, 1000)) / at(lit, lit.a2_partial, 1000);
  const double growth = at(lit, lit.lift_partial, 10000) / at(lit, lit.lift_partial, 100);
  b.below("a2_increment", inc, 0.02, "|a_k|^2 = 1/((k+2) log^2(k+2)), N = 1e3 to 1e4");
  b.at_least("lift_growth", growth, 1.5, "lifted partial sum N = 1e4 over N = 1e2");

  // Lifted term for a single coefficient against |a_k|^2 log(k+1)/(k+1).
  double lo = INFINITY, hi = 0.0;
  for (std::size_t k = 10; k <= 100; ++k) {
    std::vector<cplx> a(k + 1, 0.0);
    a[k] = std::sqrt(divergence_weight(k));
    const double term = lift_norm_series_A2(a);
    const double ref = divergence_weight(k) * std::log(k + 1.0) / (k + 1.0);
    lo = std::min(lo, term / ref);
    hi = std::max(hi, term / ref);
  }
  b.at_least("term_ratio_min", lo, 0.5, "k in [10, 100]");
  b.at_most("term_ratio_max", hi, 2.0, "k in [10, 100]");

  const double h_inc =
      (at(harm, harm.a2_partial, 10000) - at(harm, harm.a2_partial, 1000)) / at(harm, harm.a2_partial, 1000);
  b.info("harmonic_a2_increment", h_inc, "|a_k|^2 = (k+1)/((k+2) log^2(k+2))");
  b.info("harmonic_lift_growth", at(harm, harm.lift_partial, 10000) / at(harm, harm.lift_partial, 100));

  // Exact series values.
  const cplx a2 = cplx(0.6, -0.8) * 1.7;
  b.at_most("series_z", std::abs(lift_norm_series_A2(coeffs(monomial(1))) - 1.0), 1e-15);
  b.at_most("series_z2", std::abs(lift_norm_series_A2(coeffs(monomial(2))) - 1.0), 1e-15);
  b.at_most("series_single_k2", rel_err(lift_norm_series_A2(std::vector<cplx>{0.0, 0.0, a2}), std::norm(a2)), 1e-15);
  b.at_most("series_zero", std::abs(lift_norm_series_A2(std::vector<cplx>{0.0})), 0.0);

  // The log-weighted norm tracks the lifted series term by term.
  const DiskGrid grid = DiskGrid::build(0.0, 0x1.0p-12, [] {
    GridResolution r = GridResolution::for_polynomial(200);
    r.angular_nodes = 8;
    r.tail_panels = 24;  // the log weight needs the tail carried close to the boundary
    return r;
  }());
  const NormResult one = log_weighted_norm(HoloFunction::taylor({1.0}), grid);
  b.at_most("log_weighted_one", std::abs(one.value - 1.0), 1e-8, "int log 1/(1 - t) dt = 1");
  double lw_lo = INFINITY, lw_hi = 0.0, lw_exact = 0.0;
  for (std::size_t k = 10; k <= 100; k += 10) {
    const double v = log_weighted_norm(monomial(k), grid).value;
    lw_exact = std::max(lw_exact, rel_err(v, log_weighted_monomial(k)));
    const double term = lift_norm_series_A2(coeffs(monomial(k)));
    lw_lo = std::min(lw_lo, v / term);
    lw_hi = std::max(lw_hi, v / term);
  }
  b.at_most("log_weighted_monomials", lw_exact, 1e-8, "z^k against H_{k+1}/(k+1)");
  b.require("log_weighted_term_ratio", lw_lo >= 0.5 && lw_hi <= 2.0,
            "range [" + fmt(lw_lo) + ", " + fmt(lw_hi) + "] for k in [10, 100]");
}

}  // namespace bergman::suites
