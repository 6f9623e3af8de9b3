#pragma once

// Exact integer number theory used throughout the library.

#include <cstdint>
#include <utility>
#include <vector>

namespace magnetic {

/// d = conductor^2 * fundamental_part with fundamental_part a fundamental
/// discriminant (1 counts as fundamental).
struct Discriminant {
  std::int64_t value = 0;
  std::int64_t fundamental_part = 0;
  std::int64_t conductor = 0;
};

struct PrimePower {
  std::int64_t prime;
  int exponent;
};

/// Kronecker symbol (top / bottom), fully extended to bottom <= 0 and even
/// bottom.
int kronecker(std::int64_t top, std::int64_t bottom);

/// Jacobi symbol for odd positive bottom.
int jacobi(std::int64_t top, std::int64_t bottom);

int moebius(std::int64_t n);

/// Throws InvalidArgument unless d != 0 and d = 0, 1 mod 4.
Discriminant split_discriminant(std::int64_t d);

bool is_discriminant(std::int64_t d);
bool is_fundamental_discriminant(std::int64_t d);

std::vector<std::int64_t> divisors(std::int64_t n);

int p_adic_valuation(std::int64_t n, std::int64_t p);

/// Deterministic for all 64-bit inputs.
bool is_prime(std::uint64_t n);

/// Ascending prime factorization of |n|, n != 0.
std::vector<PrimePower> factorize(std::int64_t n);

std::int64_t squarefree_kernel(std::int64_t n);

std::int64_t gcd(std::int64_t a, std::int64_t b);

/// Non-negative residue of a mod m (m > 0).
inline std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

/// Inverse of a modulo m; throws InvalidArgument if gcd(a, m) != 1.
std::int64_t inverse_mod(std::int64_t a, std::int64_t m);

/// A square root of a modulo the odd prime p (p must not divide a and a must
/// be a quadratic residue); Tonelli-Shanks.
std::uint64_t sqrt_mod_prime(std::uint64_t a, std::uint64_t p);

/// All x in [0, p^e) with x^2 = value mod p^e.
std::vector<std::int64_t> sqrt_mod_prime_power(std::int64_t value, std::int64_t p, int e);

/// sigma_s(n) = sum of d^s over divisors d of n; exact for small results.
std::int64_t sum_of_divisor_powers(std::int64_t n, int s);

/// Number of divisors of n.
std::int64_t divisor_count(std::int64_t n);

/// Integer power, throws on overflow.
std::int64_t ipow(std::int64_t base, int exp);

}  // namespace magnetic
