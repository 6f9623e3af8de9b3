#include <cmath>
#include <random>

#include "doctest.h"
#include "magnetic/arith.hpp"
#include "magnetic/error.hpp"
#include "magnetic/expsums.hpp"

using namespace magnetic;

namespace {

// Naive double-precision Salie sum straight from the definition, level 1, D = 1.
double salie_naive(std::int64_t a, std::int64_t disc, std::int64_t n) {
  double s = 0;
  for (std::int64_t b = 0; b < 2 * a; ++b) {
    if (mod_floor(b * b - disc, 4 * a) == 0) s += std::cos(M_PI * static_cast<double>(n * b) / static_cast<double>(a));
  }
  return s;
}

}  // namespace

TEST_CASE("salie sum at a = 1 is (-1)^(n d D)") {
  for (auto [d, D] : std::vector<std::pair<int, int>>{{-3, 1}, {-4, 1}, {1, -3}, {-23, 1}, {-3, 13}, {-7, 1}}) {
    for (int n = 1; n <= 8; ++n) {
      const SalieParams p{1, d, D, n};
      const int expected = (n * d * D) % 2 == 0 ? 1 : -1;
      CHECK(salie_sum(p, 128).re.contains(mpz_class(expected)));
      Cyclotomic e(4);
      e.add_root(expected, 0);
      CHECK(salie_sum_exact(p) == e);
    }
  }
  CHECK(salie_sum({1, -3, 1, 1}, 64).re.contains(mpz_class(-1)));
  CHECK(salie_sum({2, -3, 1, 1}, 64).contains_zero());
  CHECK(square_roots_mod_4a(-3, 2).empty());
}

TEST_CASE("salie sums are real at level one and match the naive sum") {
  for (std::int64_t a = 1; a <= 40; ++a) {
    for (std::int64_t n = 1; n <= 5; ++n) {
      const auto s = salie_sum({a, -23, 1, n}, 128);
      CHECK(s.im.contains_zero());
      CHECK(std::fabs(s.re.mid_double() - salie_naive(a, -23, n)) < 1e-9);
      CHECK(salie_sum_exact({a, -23, 1, n}).reduced().size() > 0);
    }
  }
}

TEST_CASE("invalid salie parameters") {
  CHECK_THROWS_AS(salie_sum({1, -3, -4, 1}, 64), InvalidArgument);
  CHECK_THROWS_AS(salie_sum({1, -2, 1, 1}, 64), InvalidArgument);
  CHECK_THROWS_AS(salie_sum({6, -23, -3, 1, 6, 1}, 64), InvalidArgument);
  CHECK_THROWS_AS(salie_sum({5, -23, 1, 1, 6, 1}, 64), InvalidArgument);
  CHECK_THROWS_AS(salie_sum({6, -23, 1, 1, 6, 2}, 64), InvalidArgument);
}

TEST_CASE("kloosterman a = 1 through the identity") {
  for (std::int64_t m : {-3, -4, 1, -23}) {
    for (std::int64_t n = 1; n <= 6; ++n) {
      const auto k = kloosterman_plus(m, n, 1, 128);
      CHECK(k.im.contains_zero());
    }
  }
}

TEST_CASE("salie-kloosterman identity on a small grid") {
  for (auto [d, D] : std::vector<std::pair<int, int>>{{-3, 1}, {-4, 1}, {1, -3}, {-23, 1}, {-3, 13}}) {
    for (std::int64_t a = 1; a <= 12; ++a) {
      for (std::int64_t n = 1; n <= 6; ++n) {
        const auto lhs = salie_sum({a, d, D, n}, 160);
        const auto rhs = salie_via_kloosterman(a, d, D, n, 160);
        REQUIRE((lhs - rhs).contains_zero());
        REQUIRE(rhs.re.rad_log2() < -100);
        if (gcd(n, a) == 1) {
          // a S^2 = K+^2 exactly in Q(zeta_{4a}).
          const auto s = salie_sum_exact({a, d, D, n});
          const auto k = kloosterman_plus_exact(d, n * n * D, a);
          REQUIRE((s * s).scaled(a) == k * k);
        }
      }
    }
  }
}

TEST_CASE("representation count formula and bounds") {
  CHECK(representation_count(-3, 1) == 1);
  CHECK(representation_count_brute(-3, 1) == 1);
  CHECK(representation_count(-4, 2) == representation_count_brute(-4, 2));
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    std::int64_t disc = std::uniform_int_distribution<std::int64_t>(-400, 400)(rng);
    if (disc == 0 || !is_discriminant(disc)) continue;
    const std::int64_t a = std::uniform_int_distribution<std::int64_t>(1, 200)(rng);
    CHECK(representation_count(disc, a) == representation_count_brute(disc, a));
  }
  // r*(a) <= f 2^omega(a), the bound behind the certified tail.
  for (std::int64_t disc = -400; disc < 0; ++disc) {
    if (!is_discriminant(disc)) continue;
    const auto f = split_discriminant(disc).conductor;
    for (std::int64_t a = 1; a <= 600; ++a) {
      const std::int64_t bound = f * (std::int64_t{1} << factorize(a).size());
      REQUIRE(representation_count(disc, a) <= bound);
    }
  }
}

TEST_CASE("square root sweep matches direct enumeration") {
  for (std::int64_t disc : {-3, -4, -23, -12, -39, -27, -16, -69}) {
    for (std::int64_t step : {1, 6, 8}) {
      const SquareRootSweep sweep(disc, 3000);
      std::int64_t expected_a = 0;
      std::int64_t visited = 0;
      sweep.run(5, step, [&](std::int64_t a, const std::vector<std::int64_t>& roots) {
        REQUIRE(a % step == 0);
        REQUIRE(a >= 5);
        REQUIRE(a > expected_a);
        expected_a = a;
        auto sorted = roots;
        std::sort(sorted.begin(), sorted.end());
        REQUIRE(sorted == square_roots_mod_4a(disc, a));
        ++visited;
      });
      std::int64_t direct = 0;
      for (std::int64_t a = 5; a <= 3000; ++a) {
        if (a % step == 0 && representation_count_brute(disc, a) > 0) ++direct;
      }
      CHECK(visited == direct);
    }
  }
}
