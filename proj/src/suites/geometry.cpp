#include <algorithm>
#include <cmath>
#include <numbers>

#include "bergman/geometry.hpp"
#include "suites/kit.hpp"

namespace bergman::suites {

namespace {

constexpr std::size_t kTriples = 100000;
constexpr std::size_t kBallPairs = 10000;

struct AxiomStats {
  double identity = 0.0;
  double symmetry = 0.0;
  double triangle = -INFINITY;  // max of d(x,z) - d(x,y) - d(y,z)
};

template <class Metric>
void accumulate(AxiomStats& s, Metric m, cplx x, cplx y, cplx z) {
  const double xy = m(x, y), yz = m(y, z), xz = m(x, z);
  s.identity = std::max(s.identity, m(x, x));
  s.symmetry = std::max(s.symmetry, std::abs(xy - m(y, x)));
  s.triangle = std::max(s.triangle, xz - xy - yz);
}

// y close to x in rho, so near-degenerate triangles are exercised.
cplx nearby(Rng& rng, cplx x) {
  const double t = std::pow(10.0, rng.uniform(-6.0, 0.0)) * 0.999;
  const cplx u = std::polar(t, 2.0 * std::numbers::pi * rng.uniform());
  return (x + u) / (1.0 + std::conj(x) * u);
}

void disk_axioms(Builder& b) {
  Rng rng(b.seed(1));
  AxiomStats rs, bs;
  double beta_ge_rho = -INFINITY;
  double atanh_ld = 0.0;
  for (std::size_t i = 0; i < kTriples; ++i) {
    const cplx x = random_disk_point(rng);
    const cplx y = (i % 4 == 0) ? nearby(rng, x) : random_disk_point(rng);
    const cplx z = (i % 4 == 1) ? nearby(rng, y) : random_disk_point(rng);
    accumulate(rs, detail::rho, x, y, z);
    accumulate(bs, detail::beta, x, y, z);
    const double r = rho(DiskPoint(x), DiskPoint(y));
    const double h = beta(DiskPoint(x), DiskPoint(y));
    beta_ge_rho = std::max(beta_ge_rho, r - h);
    // Extended-precision oracle: artanh of rho evaluated in long double.
    const std::complex<long double> xl(x), yl(y);
    const long double rl = std::abs(xl - yl) / std::abs(1.0L - std::conj(xl) * yl);
    const long double hl = std::atanh(rl);
    atanh_ld = std::max(atanh_ld, static_cast<double>(std::abs(h - hl) / std::max(1.0L, hl)));
  }
  b.at_most("rho_identity", rs.identity, 1e-12);
  b.at_most("rho_symmetry", rs.symmetry, 1e-12);
  b.at_most("rho_triangle", rs.triangle, 1e-12, "max rho(x,z) - rho(x,y) - rho(y,z)");
  b.at_most("beta_identity", bs.identity, 1e-12);
  b.at_most("beta_symmetry", bs.symmetry, 1e-12);
  b.at_most("beta_triangle", bs.triangle, 1e-12, "max beta(x,z) - beta(x,y) - beta(y,z)");
  b.at_most("beta_ge_rho", beta_ge_rho, 0.0, "max rho - beta");
  b.at_most("beta_is_artanh_rho", atanh_ld, 1e-13, "against artanh(rho) in extended precision, relative");
  b.data()["triples"] = kTriples;
}

void radii(Builder& b) {
  double roundtrip = 0.0;
  for (int i = 1; i < 10000; ++i) {
    const double r = i / 10000.0;
    const RadiusPair a = radius_convert(r, RadiusInput::pseudo_hyperbolic);
    const RadiusPair c = radius_convert(a.R, RadiusInput::hyperbolic);
    roundtrip = std::max(roundtrip, std::abs(c.r - r));
  }
  b.at_most("radius_roundtrip", roundtrip, 1e-14, "|tanh(artanh r) - r| over r in (0, 1)");

  Rng rng(b.seed(2));
  double boundary = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const cplx z = random_disk_point(rng);
    const double r = i % 4 == 0 ? 0.5 : rng.uniform(0.01, 0.95);
    const EuclideanDisk e = pseudo_disk(DiskPoint(z), r);
    for (int k = 0; k < 16; ++k) {
      const cplx u = e.center + std::polar(e.radius, 2.0 * std::numbers::pi * (k + rng.uniform()) / 16);
      if (std::abs(u) >= 1.0) continue;
      boundary = std::max(boundary, std::abs(detail::rho(z, u) - r));
    }
  }
  b.at_most("pseudo_disk_boundary", boundary, 1e-11, "max |rho(z, u) - r| for u on the boundary circle");

  // rho(z,u) < r and rho(u,v) < r imply rho(z,v) < 2r/(1+r^2).
  std::size_t doubling_fail = 0;
  double doubling_margin = -INFINITY;
  for (int i = 0; i < 10000; ++i) {
    const double r = rng.uniform(0.05, 0.95);
    const cplx z = random_disk_point(rng);
    auto step = [&](cplx c) {
      const cplx t = std::polar(r * std::sqrt(rng.uniform()), 2.0 * std::numbers::pi * rng.uniform());
      return (c + t) / (1.0 + std::conj(c) * t);
    };
    const cplx u = step(z);
    const cplx v = step(u);
    const double margin = detail::rho(z, v) - double_radius(r);
    doubling_margin = std::max(doubling_margin, margin);
    if (margin >= 0.0) ++doubling_fail;
  }
  b.at_most("radius_doubling_failures", static_cast<double>(doubling_fail), 0.0,
            "max rho(z,v) - r' = " + fmt(doubling_margin));

  // On D(z, r): (1-r)/(1+r) <= (1-|w|^2)/(1-|z|^2) <= (1+r)/(1-r) and
  // |1 - conj(z) w| is comparable to 1 - |z|^2 with the matching constants.
  const double r = 0.5;
  double worst = -INFINITY;
  for (int i = 0; i < 10000; ++i) {
    const cplx z = random_disk_point(rng);
    const cplx t = std::polar(r * std::sqrt(rng.uniform()), 2.0 * std::numbers::pi * rng.uniform());
    const cplx w = (z + t) / (1.0 + std::conj(z) * t);
    const double q = (1.0 - std::norm(w)) / (1.0 - std::norm(z));
    const double k = std::abs(1.0 - std::conj(z) * w) / (1.0 - std::norm(z));
    const double lo = (1.0 - r) / (1.0 + r), hi = (1.0 + r) / (1.0 - r);
    worst = std::max({worst, lo - q, q - hi, 1.0 / (1.0 + r) - k - 1e-12 * k,
                      k - 1.0 / (1.0 - r) - 1e-12 * k});
  }
  b.at_most("pseudo_disk_comparability", worst, 1e-12,
            "weights and kernel on D(z, 1/2) stay within (1 +- r)/(1 -+ r)");
}

detail::BallCoords scale(const detail::BallCoords& a, double t, std::size_t n) {
  detail::BallCoords out{};
  for (std::size_t k = 0; k < n; ++k) out[k] = t * a[k];
  return out;
}

void ball(Builder& b) {
  Rng rng(b.seed(3));
  double identity = 0.0, identity_rel = 0.0, involution = 0.0, zero_swap = 0.0, rho_le_d = -INFINITY;
  double symmetry = 0.0;
  std::size_t d_triangle_fail = 0;
  double d_triangle_worst = -INFINITY;
  for (std::size_t i = 0; i < kBallPairs; ++i) {
    const std::size_t n = i % 2 == 0 ? 2 : 3;
    const auto a = random_ball_point(rng, n);
    const auto z = random_ball_point(rng, n);
    const auto w = i % 5 == 0 ? scale(z, rng.uniform(0.2, 1.0), n) : random_ball_point(rng, n);
    const auto pz = detail::ball_phi(a, z, n);
    const auto pw = detail::ball_phi(a, w, n);
    // 1 - <phi_a(z), phi_a(w)> = (1 - |a|^2)(1 - <z, w>) / ((1 - <z, a>)(1 - <a, w>))
    const cplx lhs = 1.0 - detail::inner(pz, pw, n);
    const cplx rhs = (1.0 - detail::norm2(a, n)) * (1.0 - detail::inner(z, w, n)) /
                     ((1.0 - detail::inner(z, a, n)) * (1.0 - detail::inner(a, w, n)));
    identity = std::max(identity, std::abs(lhs - rhs));
    identity_rel = std::max(identity_rel, std::abs(lhs - rhs) / std::abs(rhs));
    const auto back = detail::ball_phi(a, pz, n);
    double e = 0.0;
    for (std::size_t k = 0; k < n; ++k) e += std::norm(back[k] - z[k]);
    involution = std::max(involution, std::sqrt(e));
    const detail::BallCoords zero{};
    const auto pa = detail::ball_phi(a, a, n);
    const auto p0 = detail::ball_phi(a, zero, n);
    double s0 = detail::norm2(pa, n), s1 = 0.0;
    for (std::size_t k = 0; k < n; ++k) s1 += std::norm(p0[k] - a[k]);
    zero_swap = std::max(zero_swap, std::sqrt(std::max(s0, s1)));

    const double rz = detail::ball_metric(z, w, n, BallMetric::rho);
    const double dz = detail::ball_metric(z, w, n, BallMetric::d);
    rho_le_d = std::max(rho_le_d, rz - dz);
    for (const auto kind : {BallMetric::rho, BallMetric::beta, BallMetric::d}) {
      const double fwd = detail::ball_metric(z, w, n, kind);
      symmetry = std::max(symmetry, std::abs(fwd - detail::ball_metric(w, z, n, kind)) / std::max(1.0, fwd));
    }
    const double dxa = detail::ball_metric(z, a, n, BallMetric::d) +
                       detail::ball_metric(a, w, n, BallMetric::d) - dz;
    d_triangle_worst = std::max(d_triangle_worst, -dxa);
    if (dxa < -1e-12) ++d_triangle_fail;
  }
  b.at_most("ball_identity", identity, 1e-12, "absolute residual of the 1 - <phi_a z, phi_a w> identity");
  b.info("ball_identity_relative", identity_rel, "grows as phi_a(z), phi_a(w) approach the sphere");
  b.at_most("ball_involution", involution, 1e-10, "max |phi_a(phi_a(z)) - z|");
  b.at_most("ball_phi_swaps_zero", zero_swap, 1e-12, "phi_a(0) = a and phi_a(a) = 0");
  b.at_most("ball_rho_le_d", rho_le_d, 1e-12, "max rho - d");
  b.at_most("ball_metric_symmetry", std::max(symmetry, 0.0), 1e-12);
  b.info("ball_d_triangle_violations", static_cast<double>(d_triangle_fail),
         "d is not required to be a metric; worst excess " + fmt(d_triangle_worst));
  b.data()["ball_pairs"] = kBallPairs;
}

}  // namespace

void geometry(Builder& b) {
  disk_axioms(b);
  radii(b);
  ball(b);
}

void lemma4(Builder& b) {
  constexpr double h = 1e-5;
  constexpr double max_abs = 0.99;
  Rng rng(b.seed(1));
  double disk_rho = 0.0, disk_beta = 0.0, ball_rho = 0.0, ball_beta = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double a = i == 0 ? 0.0 : std::min(max_abs, mixed_radius(rng));
    const DiskPoint z = DiskPoint::polar(a, 2.0 * std::numbers::pi * rng.uniform());
    const double target = 1.0 / (1.0 - a * a);
    disk_rho = std::max(disk_rho, rel_err(radial_difference_limit(z, DiskMetric::rho, h), target));
    disk_beta = std::max(disk_beta, rel_err(radial_difference_limit(z, DiskMetric::beta, h), target));
  }
  for (int i = 0; i < 100; ++i) {
    auto c = random_ball_point(rng, 2);
    const double a = std::sqrt(detail::norm2(c, 2));
    if (a > max_abs) c = scale(c, max_abs / a, 2);
    const BallPoint z(c, 2);
    const double target = 1.0 / (1.0 - z.norm2());
    ball_rho = std::max(ball_rho, rel_err(radial_difference_limit(z, BallMetric::rho, h), target));
    ball_beta = std::max(ball_beta, rel_err(radial_difference_limit(z, BallMetric::beta, h), target));
  }
  const std::string where = "h = 1e-5, 100 points with |z| <= 0.99";
  b.at_most("disk_rho_ratio", disk_rho, 1e-3, where);
  b.at_most("disk_beta_ratio", disk_beta, 1e-3, where);
  b.at_most("ball_rho_ratio", ball_rho, 1e-3, where);
  b.at_most("ball_beta_ratio", ball_beta, 1e-3, where);

  // The error is first order in h; check the observed order.
  Table& t = b.table("convergence", {"h", "abs_z", "rel_err_rho", "rel_err_beta"});
  double min_slope = INFINITY;
  for (const double a : {0.5, 0.9}) {
    const DiskPoint z(a, 0.0);
    const double target = 1.0 / (1.0 - a * a);
    std::vector<double> lh, le;
    for (int e = 2; e <= 5; ++e) {
      const double step = std::pow(10.0, -e);
      const double er = rel_err(radial_difference_limit(z, DiskMetric::rho, step), target);
      const double eb = rel_err(radial_difference_limit(z, DiskMetric::beta, step), target);
      t.rows.push_back({step, a, er, eb});
      lh.push_back(std::log(step));
      le.push_back(std::log(er));
    }
    const double mx = (lh[0] + lh[1] + lh[2] + lh[3]) / 4, my = (le[0] + le[1] + le[2] + le[3]) / 4;
    double sxy = 0.0, sxx = 0.0;
    for (int k = 0; k < 4; ++k) {
      sxy += (lh[k] - mx) * (le[k] - my);
      sxx += (lh[k] - mx) * (lh[k] - mx);
    }
    min_slope = std::min(min_slope, sxy / sxx);
  }
  b.at_least("difference_order", min_slope, 0.9, "log-log slope of the rho ratio error against h");
}

}  // namespace bergman::suites
