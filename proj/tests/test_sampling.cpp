#include <cmath>
#include <set>

#include "bergman/error.hpp"
#include "bergman/sampling.hpp"
#include "doctest.h"

using namespace bergman;

TEST_SUITE("sampling") {
  TEST_CASE("seeded streams are reproducible and distinct") {
    Rng a(5), b(5), c(derive_seed(5, 1));
    for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
    CHECK(Rng(5).next() != c.next());
    CHECK(derive_seed(5, 1) != derive_seed(5, 2));
  }

  TEST_CASE("uniform draws lie in [0, 1) with the right mean") {
    Rng r(6);
    double s = 0.0;
    for (int i = 0; i < 100000; ++i) {
      const double u = r.uniform();
      REQUIRE(u >= 0.0);
      REQUIRE(u < 1.0);
      s += u;
    }
    CHECK(std::abs(s / 100000 - 0.5) < 0.01);
  }

  TEST_CASE("scrambled Halton points fill the cube evenly") {
    const ScrambledHalton h(4, 9);
    double p[4];
    std::array<int, 16> bins{};
    for (std::uint64_t i = 0; i < 4096; ++i) {
      h.point(i, p);
      for (double x : p) REQUIRE((x >= 0.0 && x < 1.0));
      ++bins[static_cast<int>(p[0] * 4) * 4 + static_cast<int>(p[1] * 4)];
    }
    for (int b : bins) CHECK(std::abs(b - 256) < 16);
    CHECK_THROWS_AS(ScrambledHalton(9, 1), ParameterError);
  }

  TEST_CASE("samplers stay inside their domains") {
    Rng r(7);
    for (int i = 0; i < 10000; ++i) {
      CHECK(std::abs(uniform_in_disk(r, 0.7)) < 0.7);
      CHECK(detail::norm2(uniform_in_ball(r, 3, 0.5), 3) < 0.25);
      const double m = mixed_radius(r);
      CHECK((m >= 0.0 && m < 1.0));
    }
  }
}
