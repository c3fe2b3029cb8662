#pragma once

// Lipschitz witnesses. A witness for f under a metric m is a continuous
// g >= 0 with |f(z) - f(w)| <= m(z, w) (g(z) + g(w)) for all z, w.
//
// Disk construction, for a pseudo-hyperbolic radius r:
//   h(z)   = 1.05 * C(r) * max (1 - |u|^2)|f'(u)| over a sample of D(z, r)
//   g_rho  = |f|/r + h            (valid for rho and for beta)
//   g_euc  = g_rho / (1 - |z|)    (valid for |z - w|)
// with C(r) = (1 + r)/(1 - r)^2.
//
// Ball construction: g = |f|/r + C * sup |invariant gradient| over a
// quasi-random sample of D(z, r), with C calibrated on a fixed family.

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "bergman/functions.hpp"
#include "bergman/geometry.hpp"
#include "bergman/quadrature.hpp"

namespace bergman {

/// d is the ball distance |z - w| / |1 - <z, w>| and applies to the ball only.
enum class WitnessMetric { rho, beta, euclid, d };

std::string to_string(WitnessMetric m);
WitnessMetric witness_metric_from_string(const std::string& name);

/// (1 + r)/(1 - r)^2.
double disk_witness_constant(double r);

inline constexpr int kSupSampleSide = 32;
inline constexpr double kSupSafety = 1.05;

/// C(r) times the sampled max of (1 - |u|^2)|f'(u)| over D(z, r): a 32 x 32
/// polar sample of its Euclidean image plus the point z. No safety factor.
double local_sup_h(const HoloFunction& f, DiskPoint z, double r);

class Witness {
 public:
  const HoloFunction& base() const { return f_; }
  WitnessMetric metric() const { return metric_; }
  double r() const { return r_; }
  double C() const { return C_; }
  double safety() const { return safety_; }

  /// h including the safety factor.
  double h(cplx z) const;
  double g(cplx z) const;
  double operator()(DiskPoint z) const { return g(z.value()); }

  /// Same construction under another metric; rho and beta share g.
  Witness with_metric(WitnessMetric m) const;

 private:
  friend Witness build_witness(const HoloFunction& f, WitnessMetric metric, double r);
  Witness(HoloFunction f, WitnessMetric metric, double r);

  HoloFunction f_;
  WitnessMetric metric_;
  double r_;
  double C_;
  double safety_ = kSupSafety;
};

Witness build_witness(const HoloFunction& f, WitnessMetric metric, double r);

/// Seeded pairs stratified by pseudo-hyperbolic distance: exactly half with
/// rho < r, the rest with rho >= r. Points live in a shared pool (clusters
/// of points within rho < r of a center) so g is evaluated once per point.
template <class P>
struct PairSample {
  std::vector<P> pool;
  std::vector<std::array<std::uint32_t, 2>> pairs;
  std::size_t near = 0;
  std::size_t far = 0;
  double r = 0.5;
  std::uint64_t seed = 0;
};

using DiskPairSample = PairSample<cplx>;
using BallPairSample = PairSample<detail::BallCoords>;

DiskPairSample make_disk_pairs(std::size_t n_pairs, double r, std::uint64_t seed);
BallPairSample make_ball_pairs(std::size_t n, std::size_t n_pairs, double r, std::uint64_t seed);

struct ViolationReport {
  std::size_t pairs = 0;
  std::size_t near_pairs = 0;
  std::size_t far_pairs = 0;
  /// max over pairs of |f(z) - f(w)| - m(z, w)(g(z) + g(w))
  double max_violation = 0.0;
  std::vector<cplx> argmax_z;
  std::vector<cplx> argmax_w;
  std::uint64_t seed = 0;
  double r = 0.0;
  double C = 0.0;
  WitnessMetric metric = WitnessMetric::rho;

  bool valid() const { return max_violation <= 0.0; }
};

/// Checks the inequality from precomputed values at the pool points.
ViolationReport verify_lipschitz_values(std::span<const cplx> f_values,
                                        std::span<const double> g_values,
                                        const DiskPairSample& sample, WitnessMetric metric);
ViolationReport verify_lipschitz_values(std::span<const cplx> f_values,
                                        std::span<const double> g_values,
                                        const BallPairSample& sample, std::size_t n,
                                        WitnessMetric metric);

ViolationReport verify_lipschitz(const Witness& w, std::size_t n_pairs, std::uint64_t seed);
/// An explicit g; `r` sets the stratification radius.
ViolationReport verify_lipschitz(const HoloFunction& f, const std::function<double(cplx)>& g,
                                 WitnessMetric metric, std::size_t n_pairs, std::uint64_t seed,
                                 double r = 0.5);

/// Weight that pairs with a witness metric: alpha for rho and beta,
/// p + alpha for euclid.
double witness_weight(WitnessMetric m, const WeightParams& wp);

/// int g^p against the matching weight. The grid has no tail shell, so
/// g is evaluated only inside |z| <= 1 - 2^-12; the verdict follows the
/// truncation protocol.
NormResult witness_integrability(const Witness& w, const WeightParams& wp);
/// Several (p, alpha) at once; g is evaluated a single time.
std::vector<NormResult> witness_integrability(const Witness& w,
                                              std::span<const WeightParams> params);

/// 10^3 points: 20 radii (half of them in 0.9 <= |z| <= 0.999) by 50 angles.
std::vector<cplx> derivative_check_grid();

/// max over derivative_check_grid() of (1 - |z|^2)|f'(z)| - 2 g(z) for rho
/// and beta, |f'(z)| - 2 g(z) for euclid.
double derivative_bound_check(const HoloFunction& f, const std::function<double(cplx)>& g,
                              WitnessMetric metric);
double derivative_bound_check(const Witness& w);

// ---------------------------------------------------------------------------
// Ball

inline constexpr std::size_t kBallSupSample = 1024;

/// Sample of the Euclidean ball of radius r in C^n (scrambled Halton with
/// rejection); the first point is the origin.
std::vector<detail::BallCoords> ball_sup_stencil(std::size_t n, double r);

class BallWitness {
 public:
  BallWitness(HoloFunction f, double r, double C);

  const HoloFunction& base() const { return f_; }
  std::size_t dim() const { return n_; }
  double r() const { return r_; }
  double C() const { return C_; }

  /// Sampled sup of |invariant gradient| over D(z, r) = phi_z(|v| < r).
  double sup_invariant_gradient(const detail::BallCoords& z) const;
  double g(const detail::BallCoords& z) const;
  double operator()(const BallPoint& z) const { return g(z.coords()); }

 private:
  HoloFunction f_;
  std::size_t n_;
  double r_;
  double C_;
  std::shared_ptr<const std::vector<detail::BallCoords>> stencil_;
};

/// z_1, z_1 z_2, z_1^2 + z_2^2 (extended by zero coordinates for n = 3).
std::vector<HoloFunction> ball_calibration_family(std::size_t n);

struct BallCalibration {
  double C_min = 0.0;  // smallest C passing every sampled pair
  double C = 0.0;      // 2 * C_min
  std::size_t pairs = 0;
  std::uint64_t seed = 0;
};

/// C_min = max over pairs and family of
///   (|f(z) - f(w)| - rho (|f(z)| + |f(w)|)/r) / (rho (S(z) + S(w))),
/// S the sampled sup; this is the limit a bisection on C would reach.
BallCalibration calibrate_ball_constant(std::size_t n, double r, std::size_t n_pairs = 10000,
                                        std::uint64_t seed = 0x5eed);

BallWitness build_witness_ball(const HoloFunction& f, double r, double C);
/// Uses calibrate_ball_constant(n, r) with its defaults.
BallWitness build_witness_ball(const HoloFunction& f, double r);

/// Verifies under rho, beta, d, or euclid (g / (1 - |z|)).
ViolationReport verify_lipschitz_ball(const BallWitness& w, WitnessMetric metric,
                                      std::size_t n_pairs, std::uint64_t seed);

}  // namespace bergman
