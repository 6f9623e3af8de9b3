#include <cstdint>
#include <random>

#include "doctest.h"
#include "magnetic/arith.hpp"
#include "magnetic/error.hpp"

using namespace magnetic;

namespace {

// Euler criterion by brute force over the squares mod p.
int legendre_brute(std::int64_t a, std::int64_t p) {
  const std::int64_t r = mod_floor(a, p);
  if (r == 0) return 0;
  for (std::int64_t x = 1; x < p; ++x) {
    if (x * x % p == r) return 1;
  }
  return -1;
}

}  // namespace

TEST_CASE("kronecker examples") {
  CHECK(kronecker(12, 5) == -1);
  CHECK(kronecker(-23, 2) == 1);
  CHECK(kronecker(-3, 2) == -1);
  CHECK(kronecker(8, 2) == 0);
  for (int D : {-23, -4, -3, 1, 5, 13}) CHECK(kronecker(D, 1) == 1);
  CHECK(kronecker(1, 0) == 1);
  CHECK(kronecker(-1, 0) == 1);
  CHECK(kronecker(2, 0) == 0);
  CHECK(kronecker(-5, -1) == -1);
  CHECK(kronecker(5, -1) == 1);
}

TEST_CASE("kronecker agrees with Euler criterion for odd primes below 200") {
  for (std::int64_t p = 3; p < 200; p += 2) {
    if (!is_prime(static_cast<std::uint64_t>(p))) continue;
    for (std::int64_t a = -199; a < 200; ++a) {
      REQUIRE(kronecker(a, p) == legendre_brute(a, p));
    }
  }
}

TEST_CASE("kronecker is multiplicative in both arguments") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::int64_t> dist(-300, 300);
  for (int i = 0; i < 5000; ++i) {
    const std::int64_t a = dist(rng), b = dist(rng), m = dist(rng);
    if (m != 0) CHECK(kronecker(a * b, m) == kronecker(a, m) * kronecker(b, m));
    if (a != 0 && b != 0) CHECK(kronecker(m, a * b) == kronecker(m, a) * kronecker(m, b));
  }
}

TEST_CASE("moebius") {
  CHECK(moebius(1) == 1);
  CHECK(moebius(2) == -1);
  CHECK(moebius(12) == 0);
  CHECK(moebius(30) == -1);
  for (std::int64_t n = 1; n <= 10000; ++n) {
    int s = 0;
    for (const auto d : divisors(n)) s += moebius(d);
    REQUIRE(s == (n == 1 ? 1 : 0));
  }
}

TEST_CASE("split_discriminant") {
  auto s = split_discriminant(-23);
  CHECK(s.fundamental_part == -23);
  CHECK(s.conductor == 1);
  s = split_discriminant(-12);
  CHECK(s.fundamental_part == -3);
  CHECK(s.conductor == 2);
  s = split_discriminant(4);
  CHECK(s.fundamental_part == 1);
  CHECK(s.conductor == 2);
  s = split_discriminant(-16);
  CHECK(s.fundamental_part == -4);
  CHECK(s.conductor == 2);
  CHECK_THROWS_AS(split_discriminant(0), InvalidArgument);
  CHECK_THROWS_AS(split_discriminant(-5), InvalidArgument);
  CHECK_THROWS_AS(split_discriminant(6), InvalidArgument);
  for (std::int64_t d = -10000; d <= 10000; ++d) {
    if (!is_discriminant(d)) continue;
    const auto sd = split_discriminant(d);
    REQUIRE(sd.conductor * sd.conductor * sd.fundamental_part == d);
    REQUIRE(is_fundamental_discriminant(sd.fundamental_part));
  }
}

TEST_CASE("fundamental discriminants") {
  for (std::int64_t d : {1, -3, -4, -7, -8, 5, 8, 12, -23, 13, -24}) CHECK(is_fundamental_discriminant(d));
  for (std::int64_t d : {-12, -16, 4, 9, -27, 0, 2}) CHECK_FALSE(is_fundamental_discriminant(d));
}

TEST_CASE("divisors and valuations") {
  CHECK(divisors(1) == std::vector<std::int64_t>{1});
  CHECK(divisors(6) == std::vector<std::int64_t>{1, 2, 3, 6});
  CHECK(divisors(12) == std::vector<std::int64_t>{1, 2, 3, 4, 6, 12});
  CHECK(p_adic_valuation(8, 2) == 3);
  CHECK(p_adic_valuation(9, 3) == 2);
  CHECK(p_adic_valuation(7, 3) == 0);
  CHECK(divisor_count(12) == 6);
  CHECK(sum_of_divisor_powers(6, 3) == 1 + 8 + 27 + 216);
}

TEST_CASE("primality and factorization") {
  CHECK(is_prime(2));
  CHECK(is_prime(1000000007ULL));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(3215031751ULL));  // strong pseudoprime to bases 2,3,5,7
  CHECK(is_prime(18446744073709551557ULL));
  const auto f = factorize(-360);
  REQUIRE(f.size() == 3);
  CHECK(f[0].prime == 2);
  CHECK(f[0].exponent == 3);
  CHECK(f[2].prime == 5);
  CHECK(squarefree_kernel(-12) == -3);
}

TEST_CASE("modular square roots") {
  for (std::int64_t p : {2, 3, 5, 7, 13, 97}) {
    for (int e = 1; e <= 4; ++e) {
      const std::int64_t pe = ipow(p, e);
      if (pe > 20000) continue;
      for (std::int64_t v = -30; v <= 30; ++v) {
        std::vector<std::int64_t> brute;
        for (std::int64_t x = 0; x < pe; ++x) {
          if (mod_floor(x * x - v, pe) == 0) brute.push_back(x);
        }
        REQUIRE(sqrt_mod_prime_power(v, p, e) == brute);
      }
    }
  }
  CHECK(inverse_mod(3, 8) == 3);
  CHECK_THROWS_AS(inverse_mod(2, 8), InvalidArgument);
  CHECK_THROWS_AS(ipow(10, 19), InvalidArgument);
}
