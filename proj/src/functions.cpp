#include "bergman/functions.hpp"

#include <algorithm>
#include <cmath>

#include "bergman/error.hpp"

namespace bergman {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

cplx monomial(const BallPoly::Term& t, const detail::BallCoords& z, std::size_t n) {
  cplx v = t.coeff;
  for (std::size_t k = 0; k < n; ++k) {
    for (int e = 0; e < t.exponents[k]; ++e) v *= z[k];
  }
  return v;
}

// Horner over many points at once, real and imaginary parts kept apart.
// coeff(k) gives the k-th coefficient, k = 0..d.
template <class Coeff>
void horner_many(std::size_t d, Coeff&& coeff, std::span<const cplx> z, std::span<cplx> out) {
  constexpr std::size_t kBlock = 256;
  double zr[kBlock], zi[kBlock], ar[kBlock], ai[kBlock];
  for (std::size_t b = 0; b < z.size(); b += kBlock) {
    const std::size_t m = std::min(kBlock, z.size() - b);
    for (std::size_t i = 0; i < m; ++i) {
      zr[i] = z[b + i].real();
      zi[i] = z[b + i].imag();
    }
    const cplx top = coeff(d);
    for (std::size_t i = 0; i < m; ++i) {
      ar[i] = top.real();
      ai[i] = top.imag();
    }
    for (std::size_t k = d; k-- > 0;) {
      const cplx c = coeff(k);
      const double cr = c.real();
      const double ci = c.imag();
      for (std::size_t i = 0; i < m; ++i) {
        const double r = ar[i] * zr[i] - ai[i] * zi[i] + cr;
        const double im = ar[i] * zi[i] + ai[i] * zr[i] + ci;
        ar[i] = r;
        ai[i] = im;
      }
    }
    for (std::size_t i = 0; i < m; ++i) out[b + i] = cplx(ar[i], ai[i]);
  }
}

}  // namespace

cplx horner(std::span<const cplx> coeffs, cplx z) {
  cplx acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
  return acc;
}

void horner_many(std::span<const cplx> coeffs, std::span<const cplx> z, std::span<cplx> out) {
  if (coeffs.empty()) {
    std::fill(out.begin(), out.end(), cplx(0.0));
    return;
  }
  horner_many(coeffs.size() - 1, [&](std::size_t k) { return coeffs[k]; }, z, out);
}

std::vector<cplx> derivative_coeffs(std::span<const cplx> coeffs) {
  if (coeffs.size() <= 1) return {cplx(0.0)};
  std::vector<cplx> d(coeffs.size() - 1);
  for (std::size_t k = 1; k < coeffs.size(); ++k) {
    d[k - 1] = static_cast<double>(k) * coeffs[k];
  }
  return d;
}

HoloFunction HoloFunction::taylor(std::vector<cplx> coeffs) {
  if (coeffs.empty()) coeffs.push_back(0.0);
  return HoloFunction(TaylorPoly{std::move(coeffs)});
}

HoloFunction HoloFunction::power(double s) {
  if (!(s > 0.0) || !std::isfinite(s)) {
    throw ParameterError("power singularity exponent must be positive");
  }
  return HoloFunction(PowerSingularity{s});
}

HoloFunction HoloFunction::log_kernel() { return HoloFunction(LogKernel{}); }

HoloFunction HoloFunction::ball_poly(std::size_t n, std::vector<BallPoly::Term> terms) {
  if (n < 2 || n > BallPoint::max_dim) {
    throw ParameterError("ball polynomial dimension must be 2 or 3");
  }
  for (const auto& t : terms) {
    for (std::size_t k = 0; k < BallPoint::max_dim; ++k) {
      if (t.exponents[k] < 0 || (k >= n && t.exponents[k] != 0)) {
        throw ParameterError("invalid monomial exponent");
      }
    }
  }
  return HoloFunction(BallPoly{n, std::move(terms)});
}

HoloFunction HoloFunction::power_section(double s, std::size_t degree) {
  if (!(s > 0.0)) throw ParameterError("power section exponent must be positive");
  std::vector<cplx> a(degree + 1);
  double c = 1.0;
  for (std::size_t k = 0; k <= degree; ++k) {
    a[k] = c;
    c *= (static_cast<double>(k) + s) / static_cast<double>(k + 1);
  }
  return taylor(std::move(a));
}

std::size_t HoloFunction::degree() const {
  return std::visit(
      overloaded{
          [](const TaylorPoly& p) -> std::size_t { return p.coeffs.size() - 1; },
          [](const BallPoly& p) -> std::size_t {
            std::size_t d = 0;
            for (const auto& t : p.terms) {
              int s = 0;
              for (int e : t.exponents) s += e;
              d = std::max(d, static_cast<std::size_t>(s));
            }
            return d;
          },
          [](const auto&) -> std::size_t {
            throw TypeMismatch("closed-form function has no polynomial degree");
          }},
      v_);
}

std::size_t HoloFunction::ball_dim() const {
  if (const auto* p = std::get_if<BallPoly>(&v_)) return p->n;
  throw TypeMismatch("disk function has no ball dimension");
}

std::string HoloFunction::variant_name() const {
  return std::visit(overloaded{[](const TaylorPoly&) { return std::string("taylor"); },
                               [](const PowerSingularity&) { return std::string("power"); },
                               [](const LogKernel&) { return std::string("log"); },
                               [](const BallPoly&) { return std::string("ball_poly"); }},
                    v_);
}

HoloFunction HoloFunction::scaled(cplx c) const {
  if (const auto* p = std::get_if<TaylorPoly>(&v_)) {
    TaylorPoly q = *p;
    for (auto& a : q.coeffs) a *= c;
    return HoloFunction(std::move(q));
  }
  if (const auto* p = std::get_if<BallPoly>(&v_)) {
    BallPoly q = *p;
    for (auto& t : q.terms) t.coeff *= c;
    return HoloFunction(std::move(q));
  }
  throw TypeMismatch("only polynomial variants can be scaled");
}

cplx HoloFunction::eval_raw(cplx z) const {
  return std::visit(
      overloaded{[z](const TaylorPoly& p) { return horner(p.coeffs, z); },
                 [z](const PowerSingularity& p) { return std::pow(1.0 - z, -p.s); },
                 [z](const LogKernel&) { return -std::log(1.0 - z); },
                 [](const BallPoly&) -> cplx {
                   throw TypeMismatch("ball polynomial evaluated at a disk point");
                 }},
      v_);
}

cplx HoloFunction::derivative_raw(cplx z) const {
  return std::visit(
      overloaded{[z](const TaylorPoly& p) {
                   cplx acc = 0.0;
                   for (std::size_t k = p.coeffs.size(); k-- > 1;) {
                     acc = acc * z + static_cast<double>(k) * p.coeffs[k];
                   }
                   return acc;
                 },
                 [z](const PowerSingularity& p) {
                   return p.s * std::pow(1.0 - z, -p.s - 1.0);
                 },
                 [z](const LogKernel&) { return 1.0 / (1.0 - z); },
                 [](const BallPoly&) -> cplx {
                   throw TypeMismatch("ball polynomial has no complex derivative");
                 }},
      v_);
}

void HoloFunction::eval_many(std::span<const cplx> z, std::span<cplx> out) const {
  if (const auto* p = std::get_if<TaylorPoly>(&v_)) {
    const auto& c = p->coeffs;
    horner_many(c.size() - 1, [&](std::size_t k) { return c[k]; }, z, out);
    return;
  }
  for (std::size_t i = 0; i < z.size(); ++i) out[i] = eval_raw(z[i]);
}

void HoloFunction::derivative_many(std::span<const cplx> z, std::span<cplx> out) const {
  if (const auto* p = std::get_if<TaylorPoly>(&v_)) {
    const auto& c = p->coeffs;
    if (c.size() <= 1) {
      std::fill(out.begin(), out.end(), cplx(0.0));
      return;
    }
    horner_many(
        c.size() - 2, [&](std::size_t k) { return static_cast<double>(k + 1) * c[k + 1]; }, z,
        out);
    return;
  }
  for (std::size_t i = 0; i < z.size(); ++i) out[i] = derivative_raw(z[i]);
}

cplx HoloFunction::eval_raw(const detail::BallCoords& z) const {
  const auto* p = std::get_if<BallPoly>(&v_);
  if (p == nullptr) throw TypeMismatch("disk function evaluated at a ball point");
  cplx s = 0.0;
  for (const auto& t : p->terms) s += monomial(t, z, p->n);
  return s;
}

detail::BallCoords HoloFunction::partials_raw(const detail::BallCoords& z) const {
  const auto* p = std::get_if<BallPoly>(&v_);
  if (p == nullptr) throw TypeMismatch("disk function has no ball gradient");
  detail::BallCoords g{};
  for (const auto& t : p->terms) {
    for (std::size_t k = 0; k < p->n; ++k) {
      if (t.exponents[k] == 0) continue;
      BallPoly::Term d = t;
      d.coeff *= static_cast<double>(t.exponents[k]);
      d.exponents[k] -= 1;
      g[k] += monomial(d, z, p->n);
    }
  }
  return g;
}

cplx HoloFunction::eval(DiskPoint z) const { return eval_raw(z.value()); }

cplx HoloFunction::eval(const BallPoint& z) const {
  if (on_ball() && z.dim() != ball_dim()) {
    throw TypeMismatch("ball point dimension does not match the polynomial");
  }
  return eval_raw(z.coords());
}

cplx HoloFunction::derivative(DiskPoint z) const { return derivative_raw(z.value()); }

cplx HoloFunction::derivative(const BallPoint& z, DerivativeKind kind) const {
  switch (kind) {
    case DerivativeKind::complex:
      throw TypeMismatch("complex derivative applies to disk functions only");
    case DerivativeKind::radial:
      return radial_derivative(*this, z);
    case DerivativeKind::gradient:
      return gradient_norm(*this, z);
    case DerivativeKind::invariant_gradient:
      return invariant_gradient(*this, z);
  }
  return 0.0;
}

cplx radial_derivative(const HoloFunction& f, const BallPoint& z) {
  f.eval(z);  // dimension check
  const auto g = f.partials_raw(z.coords());
  cplx s = 0.0;
  for (std::size_t k = 0; k < z.dim(); ++k) s += z[k] * g[k];
  return s;
}

double gradient_norm(const HoloFunction& f, const BallPoint& z) {
  f.eval(z);
  return std::sqrt(detail::norm2(f.partials_raw(z.coords()), z.dim()));
}

double detail::invariant_gradient(const HoloFunction& f, const BallCoords& z, std::size_t n,
                                  double h) {
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    BallCoords e{};
    e[k] = h;
    const cplx fp = f.eval_raw(ball_phi(z, e, n));
    e[k] = -h;
    const cplx fm = f.eval_raw(ball_phi(z, e, n));
    s += std::norm((fp - fm) / (2.0 * h));
  }
  return std::sqrt(s);
}

double invariant_gradient(const HoloFunction& f, const BallPoint& z, double h) {
  if (!(h > 0.0 && h < 0.5)) throw ParameterError("finite-difference step out of range");
  f.eval(z);
  return detail::invariant_gradient(f, z.coords(), z.dim(), h);
}

double radial_difference_limit(DiskPoint z, DiskMetric metric, double h) {
  const double a = z.abs();
  if (!(h > 0.0) || !(h < 1.0 - a)) {
    throw ParameterError("radial step must lie in (0, 1 - |z|)");
  }
  const cplx dir = a > 0.0 ? z.value() / a : cplx(1.0);
  const cplx zv = z.value();
  const cplx w = a > 0.0 ? zv - h * dir : cplx(h);
  const double dist = std::abs(zv - w);
  switch (metric) {
    case DiskMetric::rho:
      return detail::rho(zv, w) / dist;
    case DiskMetric::beta:
      return detail::beta(zv, w) / dist;
    case DiskMetric::euclid:
      return 1.0;
  }
  return 0.0;
}

double radial_difference_limit(const BallPoint& z, BallMetric metric, double h) {
  const double a = z.norm();
  if (a == 0.0) throw ParameterError("radial direction undefined at the origin");
  if (!(h > 0.0) || !(h < a)) throw ParameterError("radial step must lie in (0, |z|)");
  const double t = 1.0 - h / a;
  detail::BallCoords w{};
  detail::BallCoords diff{};
  for (std::size_t k = 0; k < z.dim(); ++k) {
    w[k] = t * z[k];
    diff[k] = z[k] - w[k];
  }
  const double dist = std::sqrt(detail::norm2(diff, z.dim()));
  return detail::ball_metric(z.coords(), w, z.dim(), metric) / dist;
}

}  // namespace bergman
