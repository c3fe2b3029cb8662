#pragma once

// Seeded samplers. Every random quantity in the toolkit flows through
// these so that a seed reproduces a run bit for bit on any platform.

#include <cstdint>
#include <random>
#include <vector>

#include "bergman/geometry.hpp"

namespace bergman {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform index in [0, n).
  std::uint64_t index(std::uint64_t n) { return eng_() % n; }
  /// Standard normal by Box-Muller.
  double normal();
  std::uint64_t next() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

/// Stream seed derived from a base seed and a stream label.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// Halton sequence with a random digit permutation per dimension and digit
/// position. Points lie in [0, 1)^dim, dim <= 8.
class ScrambledHalton {
 public:
  ScrambledHalton(std::size_t dim, std::uint64_t seed);

  std::size_t dim() const { return dim_; }
  /// Writes point `index` into out[0..dim).
  void point(std::uint64_t index, double* out) const;

 private:
  std::size_t dim_;
  std::vector<unsigned> bases_;
  // perms_[d][level * base + digit]
  std::vector<std::vector<unsigned>> perms_;
  std::vector<int> levels_;
};

/// Area-uniform point in the disk of radius `radius` centred at 0.
cplx uniform_in_disk(Rng& rng, double radius);

/// Volume-uniform point in the Euclidean ball of radius `radius` in C^n.
detail::BallCoords uniform_in_ball(Rng& rng, std::size_t n, double radius);

/// Radius sampler mixing area-uniform points with points whose distance to
/// the boundary is log-uniform in [1e-3, 0.5], so both the interior and the
/// boundary layer are exercised.
double mixed_radius(Rng& rng);

}  // namespace bergman
