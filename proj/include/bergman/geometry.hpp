#pragma once

// Pseudo-hyperbolic and hyperbolic geometry of the unit disk and of the
// unit ball in C^n (n = 2, 3).

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>

namespace bergman {

using cplx = std::complex<double>;

/// A point of the open unit disk. Construction validates |z| < 1.
class DiskPoint {
 public:
  explicit DiskPoint(cplx z);
  DiskPoint(double re, double im) : DiskPoint(cplx(re, im)) {}

  static DiskPoint polar(double radius, double angle);

  cplx value() const { return z_; }
  double re() const { return z_.real(); }
  double im() const { return z_.imag(); }
  double abs() const { return std::abs(z_); }

 private:
  cplx z_;
};

/// A point of the open unit ball in C^n, n in {2, 3}.
class BallPoint {
 public:
  static constexpr std::size_t max_dim = 3;

  BallPoint(std::initializer_list<cplx> coords);
  /// Unchecked construction from raw coordinates; validates |z| < 1.
  BallPoint(const std::array<cplx, max_dim>& coords, std::size_t dim);

  static BallPoint origin(std::size_t dim);

  std::size_t dim() const { return n_; }
  cplx operator[](std::size_t k) const { return c_[k]; }
  const std::array<cplx, max_dim>& coords() const { return c_; }
  double norm2() const;
  double norm() const { return std::sqrt(norm2()); }

 private:
  std::array<cplx, max_dim> c_{};
  std::size_t n_ = 0;
};

/// <z, w> = sum z_k conj(w_k).
cplx inner(const BallPoint& z, const BallPoint& w);

/// Pseudo-hyperbolic radius r in (0,1) paired with hyperbolic radius
/// R = artanh(r); D(z, r) and E(z, R) are the same set.
struct RadiusPair {
  double r;
  double R;
};

enum class RadiusInput { pseudo_hyperbolic, hyperbolic };

struct EuclideanDisk {
  cplx center;
  double radius;
};

double rho(DiskPoint z, DiskPoint w);
double beta(DiskPoint z, DiskPoint w);

/// Euclidean center and radius of the pseudo-hyperbolic disk D(z, r).
EuclideanDisk pseudo_disk(DiskPoint z, double r);

RadiusPair radius_convert(double value, RadiusInput from);

/// Radius r' with D(z, r') = E(z, 2R) where D(z, r) = E(z, R).
double double_radius(double r);

/// Involutive automorphism of the ball exchanging 0 and a.
BallPoint ball_phi(const BallPoint& a, const BallPoint& z);

enum class BallMetric { rho, beta, d };

double ball_metric(const BallPoint& z, const BallPoint& w, BallMetric kind);

/// Unchecked kernels on raw values, for inner loops that already know
/// their inputs lie in the domain.
namespace detail {

inline double rho(cplx z, cplx w) {
  return std::abs(z - w) / std::abs(1.0 - std::conj(z) * w);
}

/// 1 - rho^2 = (1 - |z|^2)(1 - |w|^2) / |1 - conj(z) w|^2 with compensated
/// products, accurate to a few ulp even when both points hug the boundary.
double one_minus_rho2(cplx z, cplx w);
/// artanh(rho) for rho < 1/2; beyond that log(1 + rho) - log(1 - rho^2)/2
/// from the compensated 1 - rho^2, since artanh amplifies the rounding of
/// rho by 1/(1 - rho^2).
double beta(cplx z, cplx w);

using BallCoords = std::array<cplx, BallPoint::max_dim>;

inline cplx inner(const BallCoords& z, const BallCoords& w, std::size_t n) {
  cplx s = 0.0;
  for (std::size_t k = 0; k < n; ++k) s += z[k] * std::conj(w[k]);
  return s;
}

inline double norm2(const BallCoords& z, std::size_t n) {
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) s += std::norm(z[k]);
  return s;
}

BallCoords ball_phi(const BallCoords& a, const BallCoords& z, std::size_t n);
/// 1 - <z, w> with compensated products.
cplx one_minus_inner(const BallCoords& z, const BallCoords& w, std::size_t n);
double one_minus_rho2(const BallCoords& z, const BallCoords& w, std::size_t n);
double ball_metric(const BallCoords& z, const BallCoords& w, std::size_t n,
                   BallMetric kind);

}  // namespace detail

}  // namespace bergman
