#include "bergman/sampling.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "bergman/error.hpp"

namespace bergman {

double Rng::normal() {
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 finalizer over the combined value
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

ScrambledHalton::ScrambledHalton(std::size_t dim, std::uint64_t seed) : dim_(dim) {
  static constexpr unsigned primes[] = {2, 3, 5, 7, 11, 13, 17, 19};
  if (dim == 0 || dim > std::size(primes)) {
    throw ParameterError("scrambled Halton supports 1..8 dimensions");
  }
  Rng rng(seed);
  for (std::size_t d = 0; d < dim; ++d) {
    const unsigned b = primes[d];
    bases_.push_back(b);
    // enough digits that b^-levels < 2^-53
    const int levels = static_cast<int>(std::ceil(53.0 * std::log(2.0) / std::log(b)));
    levels_.push_back(levels);
    std::vector<unsigned> perm(static_cast<std::size_t>(levels) * b);
    for (int l = 0; l < levels; ++l) {
      unsigned* p = perm.data() + static_cast<std::size_t>(l) * b;
      std::iota(p, p + b, 0u);
      for (unsigned i = b - 1; i > 0; --i) {
        const auto j = static_cast<unsigned>(rng.index(i + 1));
        std::swap(p[i], p[j]);
      }
    }
    perms_.push_back(std::move(perm));
  }
}

void ScrambledHalton::point(std::uint64_t index, double* out) const {
  for (std::size_t d = 0; d < dim_; ++d) {
    const unsigned b = bases_[d];
    const double inv = 1.0 / b;
    double scale = inv;
    double x = 0.0;
    std::uint64_t i = index;
    for (int l = 0; l < levels_[d]; ++l) {
      const auto digit = static_cast<unsigned>(i % b);
      i /= b;
      x += perms_[d][static_cast<std::size_t>(l) * b + digit] * scale;
      scale *= inv;
    }
    out[d] = x < 1.0 ? x : std::nextafter(1.0, 0.0);
  }
}

cplx uniform_in_disk(Rng& rng, double radius) {
  const double t = radius * std::sqrt(rng.uniform());
  return std::polar(t, 2.0 * std::numbers::pi * rng.uniform());
}

detail::BallCoords uniform_in_ball(Rng& rng, std::size_t n, double radius) {
  detail::BallCoords z{};
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    z[k] = cplx(rng.normal(), rng.normal());
    s += std::norm(z[k]);
  }
  const double norm = std::sqrt(s);
  const double t = radius * std::pow(rng.uniform(), 1.0 / (2.0 * static_cast<double>(n)));
  for (std::size_t k = 0; k < n; ++k) z[k] *= t / norm;
  return z;
}

double mixed_radius(Rng& rng) {
  if (rng.uniform() < 0.5) return 0.999 * std::sqrt(rng.uniform());
  return 1.0 - 0.5 * std::pow(10.0, -std::log10(500.0) * rng.uniform());
}

}  // namespace bergman
