#pragma once

// Holomorphic test functions on the disk and the ball, with exact
// evaluation and differentiation.

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "bergman/geometry.hpp"

namespace bergman {

/// Finite Taylor polynomial a_0 + a_1 z + ... + a_d z^d.
struct TaylorPoly {
  std::vector<cplx> coeffs;
};

/// (1 - z)^{-s}, principal branch, s > 0.
struct PowerSingularity {
  double s;
};

/// log 1/(1 - z), principal branch.
struct LogKernel {};

/// Polynomial in n = 2 or 3 complex variables, stored as a monomial table.
struct BallPoly {
  struct Term {
    std::array<int, BallPoint::max_dim> exponents{};
    cplx coeff;
  };
  std::size_t n = 2;
  std::vector<Term> terms;
};

enum class DerivativeKind { complex, radial, gradient, invariant_gradient };

class HoloFunction {
 public:
  using Variant = std::variant<TaylorPoly, PowerSingularity, LogKernel, BallPoly>;

  static HoloFunction taylor(std::vector<cplx> coeffs);
  static HoloFunction power(double s);
  static HoloFunction log_kernel();
  static HoloFunction ball_poly(std::size_t n, std::vector<BallPoly::Term> terms);

  /// Degree-d Taylor section of (1 - z)^{-s}.
  static HoloFunction power_section(double s, std::size_t degree);

  const Variant& variant() const { return v_; }
  bool on_disk() const { return !std::holds_alternative<BallPoly>(v_); }
  bool on_ball() const { return std::holds_alternative<BallPoly>(v_); }
  bool is_polynomial() const {
    return std::holds_alternative<TaylorPoly>(v_) || std::holds_alternative<BallPoly>(v_);
  }
  /// Polynomial degree; throws TypeMismatch for the closed-form variants.
  std::size_t degree() const;
  /// Ball dimension; throws TypeMismatch for disk variants.
  std::size_t ball_dim() const;
  std::string variant_name() const;

  /// c * f for the polynomial variants.
  HoloFunction scaled(cplx c) const;

  cplx eval(DiskPoint z) const;
  cplx eval(const BallPoint& z) const;

  /// f'(z) for disk variants.
  cplx derivative(DiskPoint z) const;
  /// Rf = sum z_k df/dz_k, |grad f|, or |invariant grad f|; the two
  /// magnitudes are returned as real values.
  cplx derivative(const BallPoint& z, DerivativeKind kind) const;

  // Unchecked fast paths used by the quadrature and witness kernels.
  cplx eval_raw(cplx z) const;
  cplx derivative_raw(cplx z) const;
  cplx eval_raw(const detail::BallCoords& z) const;
  /// Partial derivatives df/dz_k, k < n.
  detail::BallCoords partials_raw(const detail::BallCoords& z) const;

  /// Batched eval_raw / derivative_raw; out.size() must equal z.size().
  /// Polynomials run Horner across points so the loop pipelines.
  void eval_many(std::span<const cplx> z, std::span<cplx> out) const;
  void derivative_many(std::span<const cplx> z, std::span<cplx> out) const;

 private:
  explicit HoloFunction(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

/// Evaluate a polynomial with coefficients c_0..c_d by Horner's rule.
cplx horner(std::span<const cplx> coeffs, cplx z);

/// Horner's rule at many points; out.size() must equal z.size().
void horner_many(std::span<const cplx> coeffs, std::span<const cplx> z, std::span<cplx> out);

/// Coefficients of the derivative polynomial.
std::vector<cplx> derivative_coeffs(std::span<const cplx> coeffs);

cplx radial_derivative(const HoloFunction& f, const BallPoint& z);
double gradient_norm(const HoloFunction& f, const BallPoint& z);

/// |grad (f o phi_z)(0)| by central differences of step h.
double invariant_gradient(const HoloFunction& f, const BallPoint& z, double h = 1e-5);

namespace detail {
/// Unchecked invariant_gradient on raw coordinates.
double invariant_gradient(const HoloFunction& f, const BallCoords& z, std::size_t n,
                          double h = 1e-5);
}  // namespace detail

enum class DiskMetric { rho, beta, euclid };

/// metric(z, w) / |z - w| for w = z - h z/|z| (radially inward at distance
/// h); tends to 1/(1 - |z|^2) as h -> 0. At z = 0 the direction is +1.
double radial_difference_limit(DiskPoint z, DiskMetric metric, double h);
double radial_difference_limit(const BallPoint& z, BallMetric metric, double h);

}  // namespace bergman
