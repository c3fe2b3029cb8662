#include "bergman/geometry.hpp"

#include <array>
#include <cmath>
#include <string>

#include "bergman/error.hpp"

namespace bergman {

namespace {

void check_radius(double r, const char* what) {
  if (!(r > 0.0 && r < 1.0)) {
    throw ParameterError(std::string(what) + ": radius must lie in (0,1), got " +
                         std::to_string(r));
  }
}

// 1 - sum x_i y_i in doubled working precision (Ogita-Rump-Oishi Dot2).
double one_minus_dot(const double* x, const double* y, std::size_t m, double start = 1.0) {
  double s = start, c = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double p = x[i] * y[i];
    const double pe = std::fma(x[i], y[i], -p);
    const double t = s - p;
    const double bv = t - s;
    const double se = (s - (t - bv)) + (-p - bv);
    s = t;
    c += se - pe;
  }
  return s + c;
}

cplx one_minus_inner_impl(const cplx* z, const cplx* w, std::size_t n) {
  // Re <z,w> = sum zr wr + zi wi, Im <z,w> = sum zi wr - zr wi.
  std::array<double, 2 * BallPoint::max_dim> a{}, b{}, c{}, d{};
  for (std::size_t k = 0; k < n; ++k) {
    a[2 * k] = z[k].real();
    b[2 * k] = w[k].real();
    a[2 * k + 1] = z[k].imag();
    b[2 * k + 1] = w[k].imag();
    c[2 * k] = z[k].imag();
    d[2 * k] = w[k].real();
    c[2 * k + 1] = -z[k].real();
    d[2 * k + 1] = w[k].imag();
  }
  return {one_minus_dot(a.data(), b.data(), 2 * n), one_minus_dot(c.data(), d.data(), 2 * n, 0.0)};
}

double beta_from(double rho, double one_minus_rho2) {
  if (rho < 0.5) return std::atanh(rho);
  return std::log1p(rho) - 0.5 * std::log(one_minus_rho2);
}

}  // namespace

namespace detail {

double one_minus_rho2(cplx z, cplx w) {
  const cplx k = one_minus_inner_impl(&z, &w, 1);
  return one_minus_inner_impl(&z, &z, 1).real() * one_minus_inner_impl(&w, &w, 1).real() / std::norm(k);
}

double beta(cplx z, cplx w) {
  const double r = std::abs(z - w) / std::abs(one_minus_inner_impl(&z, &w, 1));
  return r < 0.5 ? std::atanh(r) : beta_from(r, one_minus_rho2(z, w));
}

cplx one_minus_inner(const BallCoords& z, const BallCoords& w, std::size_t n) {
  return one_minus_inner_impl(z.data(), w.data(), n);
}

double one_minus_rho2(const BallCoords& z, const BallCoords& w, std::size_t n) {
  return one_minus_inner(z, z, n).real() * one_minus_inner(w, w, n).real() /
         std::norm(one_minus_inner(z, w, n));
}

}  // namespace detail

DiskPoint::DiskPoint(cplx z) : z_(z) {
  if (!(std::norm(z) < 1.0)) {
    throw DomainError("point outside the open unit disk");
  }
}

DiskPoint DiskPoint::polar(double radius, double angle) {
  return DiskPoint(std::polar(radius, angle));
}

BallPoint::BallPoint(std::initializer_list<cplx> coords) {
  if (coords.size() < 2 || coords.size() > max_dim) {
    throw ParameterError("ball dimension must be 2 or 3");
  }
  n_ = coords.size();
  std::size_t k = 0;
  for (const cplx& c : coords) c_[k++] = c;
  if (!(norm2() < 1.0)) throw DomainError("point outside the open unit ball");
}

BallPoint::BallPoint(const std::array<cplx, max_dim>& coords, std::size_t dim)
    : c_(coords), n_(dim) {
  if (dim < 2 || dim > max_dim) {
    throw ParameterError("ball dimension must be 2 or 3");
  }
  for (std::size_t k = dim; k < max_dim; ++k) c_[k] = 0.0;
  if (!(norm2() < 1.0)) throw DomainError("point outside the open unit ball");
}

BallPoint BallPoint::origin(std::size_t dim) { return BallPoint({}, dim); }

double BallPoint::norm2() const { return detail::norm2(c_, n_); }

cplx inner(const BallPoint& z, const BallPoint& w) {
  if (z.dim() != w.dim()) throw TypeMismatch("ball points of different dimension");
  return detail::inner(z.coords(), w.coords(), z.dim());
}

double rho(DiskPoint z, DiskPoint w) { return detail::rho(z.value(), w.value()); }

double beta(DiskPoint z, DiskPoint w) { return detail::beta(z.value(), w.value()); }

EuclideanDisk pseudo_disk(DiskPoint z, double r) {
  check_radius(r, "pseudo_disk");
  const double a2 = std::norm(z.value());
  const double r2 = r * r;
  const double den = 1.0 - r2 * a2;
  return {(1.0 - r2) / den * z.value(), r * (1.0 - a2) / den};
}

RadiusPair radius_convert(double value, RadiusInput from) {
  if (from == RadiusInput::pseudo_hyperbolic) {
    check_radius(value, "radius_convert");
    return {value, std::atanh(value)};
  }
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw ParameterError("radius_convert: hyperbolic radius must be positive");
  }
  return {std::tanh(value), value};
}

double double_radius(double r) {
  check_radius(r, "double_radius");
  return 2.0 * r / (1.0 + r * r);
}

namespace detail {

BallCoords ball_phi(const BallCoords& a, const BallCoords& z, std::size_t n) {
  const double a2 = norm2(a, n);
  BallCoords out{};
  if (a2 == 0.0) {
    for (std::size_t k = 0; k < n; ++k) out[k] = -z[k];
    return out;
  }
  const cplx za = inner(z, a, n);
  const double sa = std::sqrt(1.0 - a2);
  const cplx den = 1.0 - za;
  const cplx proj = za / a2;  // P_a z = proj * a
  for (std::size_t k = 0; k < n; ++k) {
    const cplx pz = proj * a[k];
    const cplx qz = z[k] - pz;
    out[k] = (a[k] - pz - sa * qz) / den;
  }
  return out;
}

double ball_metric(const BallCoords& z, const BallCoords& w, std::size_t n,
                   BallMetric kind) {
  switch (kind) {
    case BallMetric::rho:
      return std::sqrt(norm2(ball_phi(z, w, n), n));
    case BallMetric::beta: {
      const double r = std::sqrt(norm2(ball_phi(z, w, n), n));
      return r < 0.5 ? std::atanh(r) : beta_from(r, one_minus_rho2(z, w, n));
    }
    case BallMetric::d: {
      BallCoords diff{};
      for (std::size_t k = 0; k < n; ++k) diff[k] = z[k] - w[k];
      return std::sqrt(norm2(diff, n)) / std::abs(one_minus_inner(z, w, n));
    }
  }
  return 0.0;
}

}  // namespace detail

BallPoint ball_phi(const BallPoint& a, const BallPoint& z) {
  if (a.dim() != z.dim()) throw TypeMismatch("ball points of different dimension");
  return BallPoint(detail::ball_phi(a.coords(), z.coords(), a.dim()), a.dim());
}

double ball_metric(const BallPoint& z, const BallPoint& w, BallMetric kind) {
  if (z.dim() != w.dim()) throw TypeMismatch("ball points of different dimension");
  return detail::ball_metric(z.coords(), w.coords(), z.dim(), kind);
}

}  // namespace bergman
