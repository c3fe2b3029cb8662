#pragma once

// Integration against the weighted area measures
//   dA_alpha(z) = (alpha + 1) (1 - |z|^2)^alpha dA(z)
// on the disk, their tensor square on the bidisk, and the normalized
// weighted volume measures dv_alpha on the ball.
//
// Disk grids are polar. In u = |z|^2 the radial measure is
// (alpha + 1)(1 - u)^alpha du, integrated with composite Gauss-Legendre
// panels whose breakpoints sit at |z| = 1 - eps_j for the truncation
// sequence eps_j = 2^-4, 2^-5, ..., eps. Nodes are grouped by the shell
// they fall in, so one grid yields every truncated integral of the
// sequence. Beyond the last truncation radius a tail shell (geometric
// panels plus a final panel in the variable y = (1 - u)^(alpha+1)) carries
// the integral to the boundary.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bergman/functions.hpp"
#include "bergman/geometry.hpp"

namespace bergman {

struct WeightParams {
  double p;
  double alpha;

  WeightParams(double p_, double alpha_);
};

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> x;
  std::vector<double> w;
};

GaussRule gauss_legendre(int n);

/// Recursive pairwise summation; deterministic for a given order.
double pairwise_sum(std::span<const double> v);

enum class AngularRule {
  uniform,  // M equispaced angles; exact for trigonometric polynomials of degree < M
  graded,   // Gauss-Legendre panels refined geometrically toward angle 0
};

struct GridResolution {
  int radial_nodes = 16;
  AngularRule angular = AngularRule::uniform;
  int angular_nodes = 64;
  int graded_nodes = 8;
  /// Geometric panels between the last truncation radius and the final
  /// boundary panel; each halves the distance to the boundary.
  int tail_panels = 8;
  bool include_tail = true;

  /// Uniform angles with 4 * degree + 16 nodes.
  static GridResolution for_polynomial(std::size_t degree);
  /// Graded angles for integrands with a boundary singularity at z = 1.
  static GridResolution for_boundary_singularity();
};

/// The standard truncation sequence 2^-4, ..., 2^-12.
inline constexpr int kFirstLevel = 4;
inline constexpr int kLastLevel = 12;

std::vector<double> truncation_sequence(double eps);

class DiskGrid {
 public:
  static DiskGrid build(double alpha, double eps, const GridResolution& res);

  double alpha() const { return alpha_; }
  double eps() const { return epsilons_.back(); }
  std::span<const double> epsilons() const { return epsilons_; }
  std::size_t level_count() const { return epsilons_.size(); }
  bool has_tail() const { return has_tail_; }
  /// Number of node groups: level_count() shells plus the tail, if present.
  std::size_t group_count() const { return offsets_.size() - 1; }
  std::span<const cplx> nodes() const { return nodes_; }
  std::span<const double> weights() const { return weights_; }
  std::size_t size() const { return nodes_.size(); }
  std::pair<std::size_t, std::size_t> group_range(std::size_t g) const {
    return {offsets_[g], offsets_[g + 1]};
  }

 private:
  double alpha_ = 0.0;
  std::vector<double> epsilons_;
  std::vector<cplx> nodes_;
  std::vector<double> weights_;
  std::vector<std::size_t> offsets_;
  bool has_tail_ = false;
};

/// Quasi-random grid on the ball: scrambled Halton points in the cube,
/// rejected outside the ball and grouped by truncation shell (points beyond
/// 1 - eps form a final tail group), weighted by c_alpha (1 - |z|^2)^alpha
/// times the cube-to-ball volume factor.
class BallGrid {
 public:
  static constexpr std::size_t kDefaultPoints = std::size_t{1} << 20;

  static BallGrid build(std::size_t n, double alpha, double eps, std::size_t points,
                        std::uint64_t seed);

  std::size_t dim() const { return n_; }
  double alpha() const { return alpha_; }
  std::span<const double> epsilons() const { return epsilons_; }
  std::size_t level_count() const { return epsilons_.size(); }
  /// Shells plus the tail group.
  std::size_t group_count() const { return offsets_.size() - 1; }
  std::size_t size() const { return weights_.size(); }
  std::span<const double> weights() const { return weights_; }
  const detail::BallCoords& node(std::size_t i) const { return nodes_[i]; }
  std::pair<std::size_t, std::size_t> group_range(std::size_t g) const {
    return {offsets_[g], offsets_[g + 1]};
  }
  std::uint64_t generated() const { return generated_; }

 private:
  std::size_t n_ = 2;
  double alpha_ = 0.0;
  std::vector<double> epsilons_;
  std::vector<detail::BallCoords> nodes_;
  std::vector<double> weights_;
  std::vector<std::size_t> offsets_;
  std::uint64_t generated_ = 0;
};

/// Normalizing constant of dv_alpha on the ball in C^n.
double ball_weight_constant(std::size_t n, double alpha);

enum class Membership { member, non_member, undecided };

std::string to_string(Membership m);

/// Decision rule over the truncated integrals I(eps_j).
///   member      every increment in the window is below `noise_rtol * I`, or
///               each successive increment ratio is below `decay_ratio`
///   non_member  every ratio is at least `stagnation_ratio` and the last
///               increment exceeds `stagnation_rtol * I`
///   undecided   otherwise
struct ConvergenceRule {
  double decay_ratio = 0.9;
  int window = 4;  // increments inspected, i.e. the last four halvings of eps
  double stagnation_ratio = 0.97;
  double stagnation_rtol = 1e-6;
  double noise_rtol = 1e-11;
};

struct NormResult {
  /// Integral including the tail shell (the eps -> 0 value).
  double value = 0.0;
  /// Truncated integrals, one per entry of `epsilons`.
  std::vector<double> partials;
  std::vector<double> epsilons;
  Membership verdict = Membership::undecided;
  bool converged = false;
  /// Geometric extrapolation of the increments past the last truncation;
  /// infinite when the increments do not decay.
  double estimated_error = std::numeric_limits<double>::infinity();
};

Membership classify(std::span<const double> partials, const ConvergenceRule& rule = {});

/// Builds a NormResult from per-group sums (levels first, then the tail).
NormResult finish_norm(std::span<const double> group_sums, std::span<const double> epsilons,
                       double offset = 0.0, const ConvergenceRule& rule = {});

/// Integrates a real integrand over a disk grid.
template <class F>
NormResult integrate(const DiskGrid& grid, F&& integrand, double offset = 0.0,
                     const ConvergenceRule& rule = {}) {
  const auto nodes = grid.nodes();
  const auto weights = grid.weights();
  std::vector<double> contrib(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    contrib[i] = weights[i] * integrand(nodes[i]);
  }
  std::vector<double> sums(grid.group_count());
  for (std::size_t g = 0; g < sums.size(); ++g) {
    const auto [b, e] = grid.group_range(g);
    sums[g] = pairwise_sum(std::span<const double>(contrib).subspan(b, e - b));
  }
  return finish_norm(sums, grid.epsilons(), offset, rule);
}

/// Complex-valued integral over the whole grid (tail included).
template <class F>
cplx integrate_complex(const DiskGrid& grid, F&& integrand) {
  const auto nodes = grid.nodes();
  const auto weights = grid.weights();
  std::vector<double> re(nodes.size()), im(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const cplx v = weights[i] * integrand(nodes[i]);
    re[i] = v.real();
    im[i] = v.imag();
  }
  return {pairwise_sum(re), pairwise_sum(im)};
}

/// Integrates over a ball grid; the integrand receives raw coordinates.
template <class F>
NormResult integrate(const BallGrid& grid, F&& integrand, double offset = 0.0) {
  std::vector<double> contrib(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    contrib[i] = grid.weights()[i] * integrand(grid.node(i));
  }
  std::vector<double> sums(grid.group_count());
  for (std::size_t g = 0; g < sums.size(); ++g) {
    const auto [b, e] = grid.group_range(g);
    sums[g] = pairwise_sum(std::span<const double>(contrib).subspan(b, e - b));
  }
  ConvergenceRule rule;
  rule.noise_rtol = 1e-3;
  return finish_norm(sums, grid.epsilons(), offset, rule);
}

/// Tensor-square integration over the bidisk. `row(i, out)` fills out[j]
/// with the integrand at (nodes[i], nodes[j]) for every j; rows let callers
/// vectorize the inner loop. Truncation is applied jointly: the partial at
/// eps_j covers |z|, |w| <= 1 - eps_j.
template <class Row>
NormResult integrate_tensor(const DiskGrid& grid, Row&& row,
                            const ConvergenceRule& rule = {}) {
  const std::size_t n = grid.size();
  const std::size_t groups = grid.group_count();
  const auto weights = grid.weights();
  std::vector<std::size_t> group_of(n);
  for (std::size_t g = 0; g < groups; ++g) {
    const auto [b, e] = grid.group_range(g);
    for (std::size_t i = b; i < e; ++i) group_of[i] = g;
  }
  std::vector<double> values(n), scratch(n);
  std::vector<double> cell(groups * groups, 0.0);
  std::vector<double> inner(groups);
  for (std::size_t i = 0; i < n; ++i) {
    row(i, std::span<double>(values));
    for (std::size_t j = 0; j < n; ++j) scratch[j] = weights[j] * values[j];
    for (std::size_t g = 0; g < groups; ++g) {
      const auto [b, e] = grid.group_range(g);
      inner[g] = pairwise_sum(std::span<const double>(scratch).subspan(b, e - b));
    }
    const std::size_t gi = group_of[i];
    for (std::size_t g = 0; g < groups; ++g) cell[gi * groups + g] += weights[i] * inner[g];
  }
  // Collapse the group-pair table onto the joint truncation levels: the
  // pair (a, b) first appears at level max(a, b).
  std::vector<double> sums(groups, 0.0);
  for (std::size_t a = 0; a < groups; ++a) {
    for (std::size_t b = 0; b < groups; ++b) sums[std::max(a, b)] += cell[a * groups + b];
  }
  return finish_norm(sums, grid.epsilons(), 0.0, rule);
}

/// Grid suited to |f|^p for a disk function: uniform angles for
/// polynomials, graded angles for the closed forms.
DiskGrid default_disk_grid(const HoloFunction& f, double alpha, double eps = 0x1.0p-12);

/// int |f|^p dA_alpha (the p-th power integral, no root).
NormResult norm_p(const HoloFunction& f, const WeightParams& wp, const DiskGrid& grid);
NormResult norm_p(const HoloFunction& f, const WeightParams& wp, const BallGrid& grid);

/// Exact int |z^k|^2 dA_alpha = Gamma(alpha + 2) k! / Gamma(k + alpha + 2).
double monomial_norm_exact(int k, double alpha);

struct MembershipResult {
  Membership verdict;
  NormResult norm;
};

MembershipResult membership(const HoloFunction& f, const WeightParams& wp);

/// |f(0)|^p + int |(1 - |z|^2) f'(z)|^p dA_alpha.
NormResult lemma5_seminorm(const HoloFunction& f, const WeightParams& wp,
                           const DiskGrid& grid);

/// I(z) = int (1 - |w|^2)^s / |1 - conj(z) w|^(2 + s + t) dA(w). The
/// integral depends on |z| only and is evaluated at z = |z|.
NormResult lemma10_integral(DiskPoint z, double s, double t);

/// The same integral at |z| = 1, finite when t < 0; it is the supremum of I
/// over the disk in that case.
NormResult lemma10_boundary_limit(double s, double t);

/// Least-squares slope of log I against -log(1 - |z|^2); needs at least four
/// samples with |z| >= 0.9.
double fit_growth_exponent(std::span<const std::pair<double, double>> samples);

}  // namespace bergman
