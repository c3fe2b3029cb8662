#include "bergman/quadrature.hpp"

#include <algorithm>
#include <numbers>
#include <numeric>

#include "bergman/error.hpp"
#include "bergman/sampling.hpp"

namespace bergman {

namespace {

constexpr double kPi = std::numbers::pi;

void check_alpha(double alpha) {
  if (!(alpha > -1.0) || !std::isfinite(alpha)) {
    throw ParameterError("weight alpha must exceed -1");
  }
}

void check_eps(double eps) {
  if (!(eps > 0.0 && eps < 0.5)) throw ParameterError("truncation eps must lie in (0, 0.5)");
}

struct AngularNodes {
  std::vector<double> theta;
  std::vector<double> weight;  // sums to 1
};

AngularNodes uniform_angles(int m) {
  AngularNodes a;
  a.theta.resize(m);
  a.weight.assign(m, 1.0 / m);
  for (int k = 0; k < m; ++k) a.theta[k] = 2.0 * kPi * k / m;
  return a;
}

// Gauss-Legendre panels on [0, pi] with breakpoints pi 2^-k down to
// `finest`, mirrored onto [-pi, 0].
AngularNodes graded_angles(int per_panel, double finest, const GaussRule& gl) {
  std::vector<double> breaks{kPi};
  while (breaks.back() > finest && breaks.size() < 64) breaks.push_back(breaks.back() * 0.5);
  breaks.push_back(0.0);
  AngularNodes a;
  for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
    const double hi = breaks[p];
    const double lo = breaks[p + 1];
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    for (int i = 0; i < per_panel; ++i) {
      const double t = mid + half * gl.x[i];
      const double w = half * gl.w[i] / (2.0 * kPi);
      a.theta.push_back(t);
      a.weight.push_back(w);
      a.theta.push_back(-t);
      a.weight.push_back(w);
    }
  }
  return a;
}

double lgamma_ratio_monomial(int k, double alpha) {
  return std::lgamma(alpha + 2.0) + std::lgamma(k + 1.0) - std::lgamma(k + alpha + 2.0);
}

}  // namespace

WeightParams::WeightParams(double p_, double alpha_) : p(p_), alpha(alpha_) {
  if (!(p > 0.0) || !std::isfinite(p)) throw ParameterError("exponent p must be positive");
  check_alpha(alpha);
}

GaussRule gauss_legendre(int n) {
  if (n < 1) throw ParameterError("Gauss-Legendre rule needs at least one node");
  GaussRule r;
  r.x.resize(n);
  r.w.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1);
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double dz = p1 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    // one more derivative evaluation at the converged root
    double p1 = 1.0, p2 = 0.0;
    for (int j = 0; j < n; ++j) {
      const double p3 = p2;
      p2 = p1;
      p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1);
    }
    pp = n * (z * p1 - p2) / (z * z - 1.0);
    r.x[i] = -z;
    r.x[n - 1 - i] = z;
    r.w[i] = r.w[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
  }
  return r;
}

double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 64) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t h = v.size() / 2;
  return pairwise_sum(v.first(h)) + pairwise_sum(v.subspan(h));
}

GridResolution GridResolution::for_polynomial(std::size_t degree) {
  GridResolution r;
  r.radial_nodes = std::max(16, static_cast<int>(degree) / 2 + 4);
  r.angular = AngularRule::uniform;
  r.angular_nodes = 4 * static_cast<int>(degree) + 16;
  r.tail_panels = 0;
  return r;
}

GridResolution GridResolution::for_boundary_singularity() {
  GridResolution r;
  r.radial_nodes = 16;
  r.angular = AngularRule::graded;
  r.graded_nodes = 8;
  r.tail_panels = 8;
  return r;
}

std::vector<double> truncation_sequence(double eps) {
  check_eps(eps);
  std::vector<double> seq;
  for (int j = kFirstLevel;; ++j) {
    const double e = std::ldexp(1.0, -j);
    if (e <= eps * (1.0 + 1e-12)) break;
    seq.push_back(e);
  }
  seq.push_back(eps);
  return seq;
}

DiskGrid DiskGrid::build(double alpha, double eps, const GridResolution& res) {
  check_alpha(alpha);
  check_eps(eps);
  if (res.radial_nodes < 1 || res.angular_nodes < 1 || res.graded_nodes < 1 ||
      res.tail_panels < 0) {
    throw ParameterError("invalid grid resolution");
  }
  DiskGrid g;
  g.alpha_ = alpha;
  g.epsilons_ = truncation_sequence(eps);
  g.has_tail_ = res.include_tail;

  const GaussRule radial = gauss_legendre(res.radial_nodes);
  const GaussRule angular_gl = gauss_legendre(res.graded_nodes);
  const AngularNodes uniform = uniform_angles(res.angular_nodes);

  auto angles_for = [&](double boundary_distance) {
    if (res.angular == AngularRule::uniform) return uniform;
    return graded_angles(res.graded_nodes, std::max(boundary_distance / 4.0, 1e-14),
                         angular_gl);
  };

  // Emits one ring per radial node. `radial_w` already includes the weight
  // (alpha + 1)(1 - u)^alpha du.
  auto emit_rings = [&](const std::vector<double>& us, const std::vector<double>& ws,
                        double boundary_distance) {
    const AngularNodes ang = angles_for(boundary_distance);
    for (std::size_t i = 0; i < us.size(); ++i) {
      const double r = std::sqrt(us[i]);
      for (std::size_t k = 0; k < ang.theta.size(); ++k) {
        g.nodes_.push_back(std::polar(r, ang.theta[k]));
        g.weights_.push_back(ws[i] * ang.weight[k]);
      }
    }
  };

  auto emit_panel = [&](double ra, double rb) {
    const double ua = ra * ra;
    const double ub = rb * rb;
    const double half = 0.5 * (ub - ua);
    const double mid = 0.5 * (ub + ua);
    std::vector<double> us(radial.x.size()), ws(radial.x.size());
    for (std::size_t i = 0; i < us.size(); ++i) {
      us[i] = mid + half * radial.x[i];
      ws[i] = half * radial.w[i] * (alpha + 1.0) * std::pow(1.0 - us[i], alpha);
    }
    emit_rings(us, ws, 1.0 - rb);
  };

  g.offsets_.push_back(0);
  double r_prev = 0.0;
  for (std::size_t level = 0; level < g.epsilons_.size(); ++level) {
    const double r_level = 1.0 - g.epsilons_[level];
    if (level == 0) {
      // interior breakpoints 1 - 2^-k ahead of the first truncation radius
      for (int k = 1; 1.0 - std::ldexp(1.0, -k) < r_level - 1e-12; ++k) {
        const double rb = 1.0 - std::ldexp(1.0, -k);
        emit_panel(r_prev, rb);
        r_prev = rb;
      }
    }
    emit_panel(r_prev, r_level);
    r_prev = r_level;
    g.offsets_.push_back(g.nodes_.size());
  }

  if (res.include_tail) {
    double dist = eps;
    for (int k = 0; k < res.tail_panels; ++k) {
      emit_panel(1.0 - dist, 1.0 - 0.5 * dist);
      dist *= 0.5;
    }
    // Final panel [1 - delta_u, 1] in y = ((1 - u)/delta_u)^(alpha + 1):
    // (alpha + 1)(1 - u)^alpha du = delta_u^(alpha + 1) dy.
    const double delta_u = dist * (2.0 - dist);
    std::vector<double> us(radial.x.size()), ws(radial.x.size());
    for (std::size_t i = 0; i < us.size(); ++i) {
      const double y = 0.5 * (radial.x[i] + 1.0);
      us[i] = 1.0 - delta_u * std::pow(y, 1.0 / (alpha + 1.0));
      ws[i] = 0.5 * radial.w[i] * std::pow(delta_u, alpha + 1.0);
    }
    emit_rings(us, ws, dist);
    g.offsets_.push_back(g.nodes_.size());
  }
  return g;
}

double ball_weight_constant(std::size_t n, double alpha) {
  const double nd = static_cast<double>(n);
  return std::exp(std::lgamma(nd + alpha + 1.0) - std::lgamma(nd + 1.0) -
                  std::lgamma(alpha + 1.0));
}

BallGrid BallGrid::build(std::size_t n, double alpha, double eps, std::size_t points,
                         std::uint64_t seed) {
  if (n < 2 || n > BallPoint::max_dim) throw ParameterError("ball dimension must be 2 or 3");
  check_alpha(alpha);
  check_eps(eps);
  if (points == 0) throw ParameterError("ball grid needs at least one point");

  BallGrid g;
  g.n_ = n;
  g.alpha_ = alpha;
  g.epsilons_ = truncation_sequence(eps);
  const std::size_t levels = g.epsilons_.size();

  ScrambledHalton halton(2 * n, seed);
  // the last group holds the shell beyond 1 - eps
  std::vector<std::vector<detail::BallCoords>> by_level(levels + 1);
  std::vector<std::vector<double>> w_by_level(levels + 1);
  const double c_alpha = ball_weight_constant(n, alpha);
  double x[2 * BallPoint::max_dim];
  std::size_t accepted = 0;
  std::uint64_t index = 0;
  while (accepted < points) {
    halton.point(index++, x);
    detail::BallCoords z{};
    for (std::size_t k = 0; k < n; ++k) z[k] = cplx(2.0 * x[2 * k] - 1.0, 2.0 * x[2 * k + 1] - 1.0);
    const double r2 = detail::norm2(z, n);
    if (r2 >= 1.0) continue;
    const double r = std::sqrt(r2);
    std::size_t level = 0;
    while (level < levels && r > 1.0 - g.epsilons_[level]) ++level;
    by_level[level].push_back(z);
    w_by_level[level].push_back(c_alpha * std::pow(1.0 - r2, alpha));
    ++accepted;
  }
  g.generated_ = index;

  // cube [-1,1]^(2n) has volume 4^n; the unit ball in R^(2n) has pi^n / n!
  const double nd = static_cast<double>(n);
  const double cube_to_ball = std::pow(4.0, nd) / std::exp(nd * std::log(kPi) - std::lgamma(nd + 1.0));
  const double scale = cube_to_ball / static_cast<double>(index);
  g.offsets_.push_back(0);
  for (std::size_t l = 0; l <= levels; ++l) {
    for (std::size_t i = 0; i < by_level[l].size(); ++i) {
      g.nodes_.push_back(by_level[l][i]);
      g.weights_.push_back(w_by_level[l][i] * scale);
    }
    g.offsets_.push_back(g.nodes_.size());
  }
  return g;
}

std::string to_string(Membership m) {
  switch (m) {
    case Membership::member:
      return "member";
    case Membership::non_member:
      return "non-member";
    case Membership::undecided:
      return "undecided";
  }
  return "undecided";
}

Membership classify(std::span<const double> partials, const ConvergenceRule& rule) {
  const std::size_t w = static_cast<std::size_t>(rule.window);
  if (partials.size() < w + 1 || w < 2) return Membership::undecided;
  const double value = std::abs(partials.back());
  std::vector<double> inc(w);
  for (std::size_t k = 0; k < w; ++k) {
    const std::size_t i = partials.size() - w + k;
    inc[k] = partials[i] - partials[i - 1];
  }
  const bool all_noise = std::all_of(inc.begin(), inc.end(), [&](double d) {
    return std::abs(d) <= rule.noise_rtol * value;
  });
  if (all_noise) return Membership::member;

  std::vector<double> ratio(w - 1);
  for (std::size_t k = 0; k + 1 < w; ++k) {
    if (inc[k] > 0.0) {
      ratio[k] = inc[k + 1] / inc[k];
    } else {
      ratio[k] = std::abs(inc[k + 1]) <= rule.noise_rtol * value
                     ? 0.0
                     : std::numeric_limits<double>::infinity();
    }
  }
  if (std::all_of(ratio.begin(), ratio.end(), [&](double q) { return q < rule.decay_ratio; })) {
    return Membership::member;
  }
  const bool stagnant = std::all_of(ratio.begin(), ratio.end(),
                                    [&](double q) { return q >= rule.stagnation_ratio; });
  if (stagnant && inc.back() > rule.stagnation_rtol * value) return Membership::non_member;
  return Membership::undecided;
}

NormResult finish_norm(std::span<const double> group_sums, std::span<const double> epsilons,
                       double offset, const ConvergenceRule& rule) {
  NormResult out;
  out.epsilons.assign(epsilons.begin(), epsilons.end());
  double acc = offset;
  for (std::size_t j = 0; j < epsilons.size(); ++j) {
    acc += group_sums[j];
    out.partials.push_back(acc);
  }
  double tail = 0.0;
  for (std::size_t j = epsilons.size(); j < group_sums.size(); ++j) tail += group_sums[j];
  out.value = acc + tail;
  out.verdict = classify(out.partials, rule);
  out.converged = out.verdict == Membership::member;

  const std::size_t m = out.partials.size();
  if (m >= 3) {
    const double d1 = out.partials[m - 2] - out.partials[m - 3];
    const double d2 = out.partials[m - 1] - out.partials[m - 2];
    if (std::abs(d2) <= rule.noise_rtol * std::abs(acc)) {
      out.estimated_error = std::abs(d2);
    } else if (d1 > 0.0 && d2 >= 0.0 && d2 < d1) {
      const double q = d2 / d1;
      out.estimated_error = d2 * q / (1.0 - q);
    }
  }
  return out;
}

DiskGrid default_disk_grid(const HoloFunction& f, double alpha, double eps) {
  if (!f.on_disk()) throw TypeMismatch("disk grid requested for a ball function");
  if (f.is_polynomial()) return DiskGrid::build(alpha, eps, GridResolution::for_polynomial(f.degree()));
  return DiskGrid::build(alpha, eps, GridResolution::for_boundary_singularity());
}

NormResult norm_p(const HoloFunction& f, const WeightParams& wp, const DiskGrid& grid) {
  if (!f.on_disk()) throw TypeMismatch("disk integral of a ball function");
  if (grid.alpha() != wp.alpha) throw ParameterError("grid weight differs from alpha");
  const double half_p = 0.5 * wp.p;
  return integrate(grid, [&](cplx z) { return std::pow(std::norm(f.eval_raw(z)), half_p); });
}

NormResult norm_p(const HoloFunction& f, const WeightParams& wp, const BallGrid& grid) {
  if (!f.on_ball() || f.ball_dim() != grid.dim()) {
    throw TypeMismatch("ball integral needs a ball polynomial of matching dimension");
  }
  if (grid.alpha() != wp.alpha) throw ParameterError("grid weight differs from alpha");
  const double half_p = 0.5 * wp.p;
  return integrate(grid, [&](const detail::BallCoords& z) {
    return std::pow(std::norm(f.eval_raw(z)), half_p);
  });
}

double monomial_norm_exact(int k, double alpha) {
  if (k < 0) throw ParameterError("monomial degree must be nonnegative");
  check_alpha(alpha);
  return std::exp(lgamma_ratio_monomial(k, alpha));
}

MembershipResult membership(const HoloFunction& f, const WeightParams& wp) {
  const DiskGrid grid = default_disk_grid(f, wp.alpha);
  NormResult n = norm_p(f, wp, grid);
  return {n.verdict, std::move(n)};
}

NormResult lemma5_seminorm(const HoloFunction& f, const WeightParams& wp,
                           const DiskGrid& grid) {
  if (!f.on_disk()) throw TypeMismatch("lemma5 seminorm needs a disk function");
  if (grid.alpha() != wp.alpha) throw ParameterError("grid weight differs from alpha");
  const double half_p = 0.5 * wp.p;
  const double at_zero = std::pow(std::norm(f.eval_raw(0.0)), half_p);
  return integrate(
      grid,
      [&](cplx z) {
        const double damp = 1.0 - std::norm(z);
        return std::pow(damp * damp * std::norm(f.derivative_raw(z)), half_p);
      },
      at_zero);
}

namespace {

NormResult growth_integral_at(double a, double s, double t) {
  if (!(s > -1.0)) throw ParameterError("lemma10 integral needs s > -1");
  GridResolution res = GridResolution::for_boundary_singularity();
  res.tail_panels = 12;
  // The integrand varies on the scale 1 - a near w = 1; carry the
  // truncation sequence well past it so the increments can settle.
  double eps = 0x1.0p-12;
  while (a < 1.0 && eps > (1.0 - a) / 64.0) eps *= 0.5;
  const DiskGrid grid = DiskGrid::build(s, eps, res);
  const double expo = -0.5 * (2.0 + s + t);
  // (1 - |w|^2)^s dA = dA_s / (s + 1)
  const double norm = 1.0 / (s + 1.0);
  return integrate(grid, [&](cplx w) { return norm * std::pow(std::norm(1.0 - a * w), expo); });
}

}  // namespace

NormResult lemma10_integral(DiskPoint z, double s, double t) { return growth_integral_at(z.abs(), s, t); }

NormResult lemma10_boundary_limit(double s, double t) {
  if (!(t < 0.0)) throw ParameterError("the boundary limit of I exists only for t < 0");
  return growth_integral_at(1.0, s, t);
}

double fit_growth_exponent(std::span<const std::pair<double, double>> samples) {
  if (samples.size() < 4) throw ParameterError("growth fit needs at least four samples");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (const auto& [a, value] : samples) {
    if (!(a >= 0.9 && a < 1.0)) throw ParameterError("growth fit samples need 0.9 <= |z| < 1");
    if (!(value > 0.0)) throw ParameterError("growth fit samples must be positive");
    const double x = -std::log1p(-a * a);
    const double y = std::log(value);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(samples.size());
  const double den = n * sxx - sx * sx;
  if (den == 0.0) throw ParameterError("growth fit samples are degenerate");
  return (n * sxy - sx * sy) / den;
}

}  // namespace bergman
