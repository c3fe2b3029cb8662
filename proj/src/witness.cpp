#include "bergman/witness.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "bergman/error.hpp"
#include "bergman/sampling.hpp"

namespace bergman {

namespace {

constexpr double kPi = std::numbers::pi;

void check_radius(double r) {
  if (!(r > 0.0 && r < 1.0)) throw ParameterError("witness radius must lie in (0, 1)");
}

// Offsets in the closed unit disk: 32 radii x 32 angles, then the center.
const std::vector<cplx>& disk_stencil() {
  static const std::vector<cplx> s = [] {
    std::vector<cplx> v;
    v.reserve(kSupSampleSide * kSupSampleSide + 1);
    v.emplace_back(0.0);
    for (int i = 0; i < kSupSampleSide; ++i) {
      const double t = (i + 1.0) / kSupSampleSide;
      for (int j = 0; j < kSupSampleSide; ++j) {
        v.push_back(std::polar(t, 2.0 * kPi * j / kSupSampleSide));
      }
    }
    return v;
  }();
  return s;
}

// max over the stencil image of (1 - |u|^2)|f'(u)|
double sampled_sup(const HoloFunction& f, cplx z, double r) {
  const double a2 = std::norm(z);
  const double den = 1.0 - r * r * a2;
  const cplx center = (1.0 - r * r) * z / den;
  const double radius = r * (1.0 - a2) / den;
  const auto& stencil = disk_stencil();
  thread_local std::vector<cplx> u, df;
  u.resize(stencil.size());
  df.resize(stencil.size());
  for (std::size_t i = 0; i < stencil.size(); ++i) u[i] = center + radius * stencil[i];
  f.derivative_many(u, df);
  double best = 0.0;
  for (std::size_t i = 0; i < stencil.size(); ++i) {
    const double damp = 1.0 - std::norm(u[i]);
    best = std::max(best, damp * damp * std::norm(df[i]));
  }
  return std::sqrt(best);
}

double disk_metric(cplx z, cplx w, WitnessMetric m) {
  switch (m) {
    case WitnessMetric::rho:
      return detail::rho(z, w);
    case WitnessMetric::beta:
      return detail::beta(z, w);
    case WitnessMetric::euclid:
      return std::abs(z - w);
    case WitnessMetric::d:
      break;
  }
  throw ParameterError("the d distance is defined on the ball only");
}

// Point near `c` at pseudo-hyperbolic distance exactly |v|.
cplx disk_move(cplx c, cplx v) { return (c - v) / (1.0 - std::conj(c) * v); }

detail::BallCoords random_direction(Rng& rng, std::size_t n) {
  detail::BallCoords u{};
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    u[k] = cplx(rng.normal(), rng.normal());
    s += std::norm(u[k]);
  }
  const double inv = 1.0 / std::sqrt(s);
  for (std::size_t k = 0; k < n; ++k) u[k] *= inv;
  return u;
}

// Geometry hooks for the shared pair generator.
struct DiskSpace {
  cplx center(Rng& rng) const { return std::polar(mixed_radius(rng), 2.0 * kPi * rng.uniform()); }
  cplx near(Rng& rng, cplx c, double radius) const {
    return disk_move(c, uniform_in_disk(rng, radius));
  }
  cplx at_distance(Rng& rng, cplx c, double t) const {
    return disk_move(c, std::polar(t, 2.0 * kPi * rng.uniform()));
  }
  double rho(cplx z, cplx w) const { return detail::rho(z, w); }
};

struct BallSpace {
  std::size_t n;
  detail::BallCoords center(Rng& rng) const {
    auto u = random_direction(rng, n);
    const double t = mixed_radius(rng);
    for (std::size_t k = 0; k < n; ++k) u[k] *= t;
    return u;
  }
  detail::BallCoords near(Rng& rng, const detail::BallCoords& c, double radius) const {
    return detail::ball_phi(c, uniform_in_ball(rng, n, radius), n);
  }
  detail::BallCoords at_distance(Rng& rng, const detail::BallCoords& c, double t) const {
    auto u = random_direction(rng, n);
    for (std::size_t k = 0; k < n; ++k) u[k] *= t;
    return detail::ball_phi(c, u, n);
  }
  double rho(const detail::BallCoords& z, const detail::BallCoords& w) const {
    return detail::ball_metric(z, w, n, BallMetric::rho);
  }
};

constexpr std::size_t kClusterMembers = 16;
constexpr std::size_t kPairsPerCluster = 128;

template <class P, class Space>
PairSample<P> make_pairs(const Space& space, std::size_t n_pairs, double r, std::uint64_t seed) {
  if (n_pairs == 0) throw ParameterError("at least one pair is required");
  check_radius(r);
  PairSample<P> s;
  s.r = r;
  s.seed = seed;
  Rng rng(seed);
  const std::size_t clusters = std::max<std::size_t>(2, n_pairs / kPairsPerCluster);
  const std::size_t per = kClusterMembers + 1;
  s.pool.reserve(clusters * per);
  for (std::size_t c = 0; c < clusters; ++c) {
    const P center = space.center(rng);
    s.pool.push_back(center);
    // members stay strictly inside D(center, r) despite rounding
    for (std::size_t m = 0; m < kClusterMembers; ++m) {
      s.pool.push_back(space.near(rng, center, 0.999 * r));
    }
  }
  const std::size_t clustered = s.pool.size();

  const std::size_t n_near = n_pairs / 2;
  s.pairs.reserve(n_pairs);
  for (std::size_t k = 0; k < n_near; ++k) {
    const std::size_t base = (k % clusters) * per;
    std::array<std::uint32_t, 2> pair{static_cast<std::uint32_t>(base),
                                      static_cast<std::uint32_t>(base + 1 + rng.index(kClusterMembers))};
    for (int attempt = 0; attempt < 16; ++attempt) {
      const auto i = static_cast<std::uint32_t>(base + rng.index(per));
      const auto j = static_cast<std::uint32_t>(base + rng.index(per));
      if (i != j && space.rho(s.pool[i], s.pool[j]) < r) {
        pair = {i, j};
        break;
      }
    }
    s.pairs.push_back(pair);
  }
  s.near = n_near;

  for (std::size_t k = n_near; k < n_pairs; ++k) {
    bool found = false;
    for (int attempt = 0; attempt < 32 && !found; ++attempt) {
      const auto i = static_cast<std::uint32_t>(rng.index(clustered));
      const auto j = static_cast<std::uint32_t>(rng.index(clustered));
      if (space.rho(s.pool[i], s.pool[j]) >= r) {
        s.pairs.push_back({i, j});
        found = true;
      }
    }
    if (!found) {
      const auto i = static_cast<std::uint32_t>(rng.index(clustered));
      const double t = r + (1.0 - r) * 0.999 * rng.uniform();
      s.pool.push_back(space.at_distance(rng, s.pool[i], t));
      s.pairs.push_back({i, static_cast<std::uint32_t>(s.pool.size() - 1)});
    }
  }
  s.far = n_pairs - n_near;
  return s;
}

template <class Metric, class ToVec>
ViolationReport scan_pairs(std::span<const cplx> f_values, std::span<const double> g_values,
                           const std::vector<std::array<std::uint32_t, 2>>& pairs,
                           Metric&& metric, ToVec&& to_vec) {
  ViolationReport rep;
  rep.pairs = pairs.size();
  rep.max_violation = -std::numeric_limits<double>::infinity();
  std::size_t arg = 0;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto [i, j] = pairs[k];
    const double lhs = std::abs(f_values[i] - f_values[j]);
    const double v = lhs - metric(i, j) * (g_values[i] + g_values[j]);
    if (v > rep.max_violation) {
      rep.max_violation = v;
      arg = k;
    }
  }
  if (!pairs.empty()) {
    rep.argmax_z = to_vec(pairs[arg][0]);
    rep.argmax_w = to_vec(pairs[arg][1]);
  }
  return rep;
}

}  // namespace

std::string to_string(WitnessMetric m) {
  switch (m) {
    case WitnessMetric::rho:
      return "rho";
    case WitnessMetric::beta:
      return "beta";
    case WitnessMetric::euclid:
      return "euclid";
    case WitnessMetric::d:
      return "d";
  }
  return "rho";
}

WitnessMetric witness_metric_from_string(const std::string& name) {
  if (name == "rho") return WitnessMetric::rho;
  if (name == "beta") return WitnessMetric::beta;
  if (name == "euclid") return WitnessMetric::euclid;
  if (name == "d") return WitnessMetric::d;
  throw ParameterError("unknown witness metric: " + name);
}

double disk_witness_constant(double r) {
  check_radius(r);
  return (1.0 + r) / ((1.0 - r) * (1.0 - r));
}

double local_sup_h(const HoloFunction& f, DiskPoint z, double r) {
  if (!f.on_disk()) throw TypeMismatch("local sup needs a disk function");
  return disk_witness_constant(r) * sampled_sup(f, z.value(), r);
}

Witness::Witness(HoloFunction f, WitnessMetric metric, double r)
    : f_(std::move(f)), metric_(metric), r_(r), C_(disk_witness_constant(r)) {}

double Witness::h(cplx z) const { return safety_ * C_ * sampled_sup(f_, z, r_); }

double Witness::g(cplx z) const {
  const double g_rho = std::abs(f_.eval_raw(z)) / r_ + h(z);
  return metric_ == WitnessMetric::euclid ? g_rho / (1.0 - std::abs(z)) : g_rho;
}

Witness Witness::with_metric(WitnessMetric m) const {
  Witness w = *this;
  if (m == WitnessMetric::d) throw ParameterError("the d distance is defined on the ball only");
  w.metric_ = m;
  return w;
}

Witness build_witness(const HoloFunction& f, WitnessMetric metric, double r) {
  if (!f.on_disk()) throw TypeMismatch("disk witness needs a disk function");
  if (metric == WitnessMetric::d) throw ParameterError("the d distance is defined on the ball only");
  check_radius(r);
  return Witness(f, metric, r);
}

DiskPairSample make_disk_pairs(std::size_t n_pairs, double r, std::uint64_t seed) {
  return make_pairs<cplx>(DiskSpace{}, n_pairs, r, seed);
}

BallPairSample make_ball_pairs(std::size_t n, std::size_t n_pairs, double r, std::uint64_t seed) {
  if (n < 2 || n > BallPoint::max_dim) throw ParameterError("ball dimension must be 2 or 3");
  return make_pairs<detail::BallCoords>(BallSpace{n}, n_pairs, r, seed);
}

ViolationReport verify_lipschitz_values(std::span<const cplx> f_values,
                                        std::span<const double> g_values,
                                        const DiskPairSample& sample, WitnessMetric metric) {
  if (f_values.size() != sample.pool.size() || g_values.size() != sample.pool.size()) {
    throw ParameterError("value arrays must match the pair pool");
  }
  const auto& pool = sample.pool;
  auto rep = scan_pairs(
      f_values, g_values, sample.pairs,
      [&](std::uint32_t i, std::uint32_t j) { return disk_metric(pool[i], pool[j], metric); },
      [&](std::uint32_t i) { return std::vector<cplx>{pool[i]}; });
  rep.near_pairs = sample.near;
  rep.far_pairs = sample.far;
  rep.seed = sample.seed;
  rep.r = sample.r;
  rep.metric = metric;
  return rep;
}

ViolationReport verify_lipschitz_values(std::span<const cplx> f_values,
                                        std::span<const double> g_values,
                                        const BallPairSample& sample, std::size_t n,
                                        WitnessMetric metric) {
  if (f_values.size() != sample.pool.size() || g_values.size() != sample.pool.size()) {
    throw ParameterError("value arrays must match the pair pool");
  }
  const auto& pool = sample.pool;
  auto dist = [&](std::uint32_t i, std::uint32_t j) {
    switch (metric) {
      case WitnessMetric::rho:
        return detail::ball_metric(pool[i], pool[j], n, BallMetric::rho);
      case WitnessMetric::beta:
        return detail::ball_metric(pool[i], pool[j], n, BallMetric::beta);
      case WitnessMetric::d:
        return detail::ball_metric(pool[i], pool[j], n, BallMetric::d);
      case WitnessMetric::euclid:
        break;
    }
    double s = 0.0;
    for (std::size_t k = 0; k < n; ++k) s += std::norm(pool[i][k] - pool[j][k]);
    return std::sqrt(s);
  };
  auto rep = scan_pairs(f_values, g_values, sample.pairs, dist, [&](std::uint32_t i) {
    return std::vector<cplx>(pool[i].begin(), pool[i].begin() + static_cast<std::ptrdiff_t>(n));
  });
  rep.near_pairs = sample.near;
  rep.far_pairs = sample.far;
  rep.seed = sample.seed;
  rep.r = sample.r;
  rep.metric = metric;
  return rep;
}

ViolationReport verify_lipschitz(const Witness& w, std::size_t n_pairs, std::uint64_t seed) {
  const DiskPairSample s = make_disk_pairs(n_pairs, w.r(), seed);
  std::vector<cplx> fv(s.pool.size());
  std::vector<double> gv(s.pool.size());
  for (std::size_t i = 0; i < s.pool.size(); ++i) {
    fv[i] = w.base().eval_raw(s.pool[i]);
    gv[i] = w.g(s.pool[i]);
  }
  auto rep = verify_lipschitz_values(fv, gv, s, w.metric());
  rep.C = w.C();
  return rep;
}

ViolationReport verify_lipschitz(const HoloFunction& f, const std::function<double(cplx)>& g,
                                 WitnessMetric metric, std::size_t n_pairs, std::uint64_t seed,
                                 double r) {
  if (!f.on_disk()) throw TypeMismatch("disk verification needs a disk function");
  const DiskPairSample s = make_disk_pairs(n_pairs, r, seed);
  std::vector<cplx> fv(s.pool.size());
  std::vector<double> gv(s.pool.size());
  for (std::size_t i = 0; i < s.pool.size(); ++i) {
    fv[i] = f.eval_raw(s.pool[i]);
    gv[i] = g(s.pool[i]);
  }
  return verify_lipschitz_values(fv, gv, s, metric);
}

double witness_weight(WitnessMetric m, const WeightParams& wp) {
  return m == WitnessMetric::euclid ? wp.p + wp.alpha : wp.alpha;
}

NormResult witness_integrability(const Witness& w, const WeightParams& wp) {
  return witness_integrability(w, std::span<const WeightParams>(&wp, 1)).front();
}

std::vector<NormResult> witness_integrability(const Witness& w,
                                              std::span<const WeightParams> params) {
  // Without the tail shell the node set does not depend on the weight, so
  // one evaluation of g serves every (p, alpha).
  GridResolution res;
  res.radial_nodes = 8;
  res.angular = AngularRule::uniform;
  res.angular_nodes = 64;
  res.include_tail = false;
  std::vector<NormResult> out;
  std::vector<double> gv;
  for (const auto& wp : params) {
    const DiskGrid grid = DiskGrid::build(witness_weight(w.metric(), wp), 0x1.0p-12, res);
    if (gv.empty()) {
      gv.resize(grid.size());
      for (std::size_t i = 0; i < grid.size(); ++i) gv[i] = w.g(grid.nodes()[i]);
    }
    std::vector<double> contrib(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) contrib[i] = grid.weights()[i] * std::pow(gv[i], wp.p);
    std::vector<double> sums(grid.group_count());
    for (std::size_t g = 0; g < sums.size(); ++g) {
      const auto [b, e] = grid.group_range(g);
      sums[g] = pairwise_sum(std::span<const double>(contrib).subspan(b, e - b));
    }
    out.push_back(finish_norm(sums, grid.epsilons()));
  }
  return out;
}

std::vector<cplx> derivative_check_grid() {
  std::vector<cplx> pts;
  pts.reserve(1000);
  for (int i = 0; i < 20; ++i) {
    const double rad = i < 10 ? 0.09 * i : 1.0 - std::pow(10.0, -1.0 - 2.0 * (i - 10) / 9.0);
    for (int j = 0; j < 50; ++j) pts.push_back(std::polar(rad, 2.0 * kPi * (j + 0.5) / 50.0));
  }
  return pts;
}

double derivative_bound_check(const HoloFunction& f, const std::function<double(cplx)>& g,
                              WitnessMetric metric) {
  if (!f.on_disk()) throw TypeMismatch("derivative bound needs a disk function");
  if (metric == WitnessMetric::d) throw ParameterError("the d distance is defined on the ball only");
  double worst = -std::numeric_limits<double>::infinity();
  for (const cplx z : derivative_check_grid()) {
    const double df = std::abs(f.derivative_raw(z));
    const double lhs = metric == WitnessMetric::euclid ? df : (1.0 - std::norm(z)) * df;
    worst = std::max(worst, lhs - 2.0 * g(z));
  }
  return worst;
}

double derivative_bound_check(const Witness& w) {
  return derivative_bound_check(w.base(), [&](cplx z) { return w.g(z); }, w.metric());
}

// ---------------------------------------------------------------------------
// Ball

std::vector<detail::BallCoords> ball_sup_stencil(std::size_t n, double r) {
  if (n < 2 || n > BallPoint::max_dim) throw ParameterError("ball dimension must be 2 or 3");
  check_radius(r);
  std::vector<detail::BallCoords> pts;
  pts.reserve(kBallSupSample);
  pts.push_back(detail::BallCoords{});
  ScrambledHalton halton(2 * n, 0xba11);
  double x[2 * BallPoint::max_dim];
  for (std::uint64_t idx = 0; pts.size() < kBallSupSample; ++idx) {
    halton.point(idx, x);
    detail::BallCoords v{};
    for (std::size_t k = 0; k < n; ++k) v[k] = cplx(2.0 * x[2 * k] - 1.0, 2.0 * x[2 * k + 1] - 1.0);
    if (detail::norm2(v, n) >= 1.0) continue;
    for (std::size_t k = 0; k < n; ++k) v[k] *= r;
    pts.push_back(v);
  }
  return pts;
}

BallWitness::BallWitness(HoloFunction f, double r, double C)
    : f_(std::move(f)), n_(f_.ball_dim()), r_(r), C_(C) {
  check_radius(r);
  if (!(C >= 0.0)) throw ParameterError("witness constant must be nonnegative");
  stencil_ = std::make_shared<const std::vector<detail::BallCoords>>(ball_sup_stencil(n_, r));
}

double BallWitness::sup_invariant_gradient(const detail::BallCoords& z) const {
  double best = 0.0;
  for (const auto& v : *stencil_) {
    best = std::max(best, detail::invariant_gradient(f_, detail::ball_phi(z, v, n_), n_));
  }
  return best;
}

double BallWitness::g(const detail::BallCoords& z) const {
  return std::abs(f_.eval_raw(z)) / r_ + C_ * sup_invariant_gradient(z);
}

std::vector<HoloFunction> ball_calibration_family(std::size_t n) {
  using T = BallPoly::Term;
  return {
      HoloFunction::ball_poly(n, {T{{1, 0, 0}, 1.0}}),
      HoloFunction::ball_poly(n, {T{{1, 1, 0}, 1.0}}),
      HoloFunction::ball_poly(n, {T{{2, 0, 0}, 1.0}, T{{0, 2, 0}, 1.0}}),
  };
}

BallCalibration calibrate_ball_constant(std::size_t n, double r, std::size_t n_pairs,
                                        std::uint64_t seed) {
  const BallPairSample s = make_ball_pairs(n, n_pairs, r, seed);
  BallCalibration cal;
  cal.pairs = s.pairs.size();
  cal.seed = seed;
  for (const auto& f : ball_calibration_family(n)) {
    const BallWitness probe(f, r, 0.0);
    std::vector<cplx> fv(s.pool.size());
    std::vector<double> sv(s.pool.size());
    for (std::size_t i = 0; i < s.pool.size(); ++i) {
      fv[i] = f.eval_raw(s.pool[i]);
      sv[i] = probe.sup_invariant_gradient(s.pool[i]);
    }
    for (const auto& [i, j] : s.pairs) {
      const double rho = detail::ball_metric(s.pool[i], s.pool[j], n, BallMetric::rho);
      const double excess =
          std::abs(fv[i] - fv[j]) - rho * (std::abs(fv[i]) + std::abs(fv[j])) / r;
      if (excess <= 0.0) continue;
      const double den = rho * (sv[i] + sv[j]);
      if (den <= 0.0) continue;
      cal.C_min = std::max(cal.C_min, excess / den);
    }
  }
  cal.C = 2.0 * cal.C_min;
  return cal;
}

BallWitness build_witness_ball(const HoloFunction& f, double r, double C) {
  if (!f.on_ball()) throw TypeMismatch("ball witness needs a ball polynomial");
  return BallWitness(f, r, C);
}

BallWitness build_witness_ball(const HoloFunction& f, double r) {
  if (!f.on_ball()) throw TypeMismatch("ball witness needs a ball polynomial");
  static std::mutex mu;
  static std::map<std::pair<std::size_t, double>, double> cache;
  const auto key = std::make_pair(f.ball_dim(), r);
  double C;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it == cache.end()) {
      it = cache.emplace(key, calibrate_ball_constant(f.ball_dim(), r).C).first;
    }
    C = it->second;
  }
  return BallWitness(f, r, C);
}

ViolationReport verify_lipschitz_ball(const BallWitness& w, WitnessMetric metric,
                                      std::size_t n_pairs, std::uint64_t seed) {
  const std::size_t n = w.dim();
  const BallPairSample s = make_ball_pairs(n, n_pairs, w.r(), seed);
  std::vector<cplx> fv(s.pool.size());
  std::vector<double> gv(s.pool.size());
  for (std::size_t i = 0; i < s.pool.size(); ++i) {
    fv[i] = w.base().eval_raw(s.pool[i]);
    gv[i] = w.g(s.pool[i]);
    if (metric == WitnessMetric::euclid) gv[i] /= 1.0 - std::sqrt(detail::norm2(s.pool[i], n));
  }
  auto rep = verify_lipschitz_values(fv, gv, s, n, metric);
  rep.C = w.C();
  return rep;
}

}  // namespace bergman
