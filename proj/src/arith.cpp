#include "magnetic/arith.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <limits>
#include <string>
#include <tuple>
#include <utility>

#include "magnetic/error.hpp"

namespace magnetic {

namespace {

int kronecker_two(std::int64_t top) {
  if (top % 2 == 0) return 0;
  const std::int64_t r = mod_floor(top, 8);
  return (r == 1 || r == 7) ? 1 : -1;
}

}  // namespace

std::int64_t gcd(std::int64_t a, std::int64_t b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b != 0) {
    const std::int64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

int jacobi(std::int64_t top, std::int64_t bottom) {
  if (bottom <= 0 || bottom % 2 == 0) {
    throw InvalidArgument("jacobi: bottom must be odd and positive");
  }
  std::int64_t a = mod_floor(top, bottom);
  std::int64_t n = bottom;
  int result = 1;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      const std::int64_t r = n % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

int kronecker(std::int64_t top, std::int64_t bottom) {
  if (bottom == 0) return (top == 1 || top == -1) ? 1 : 0;
  int result = 1;
  if (bottom < 0) {
    if (top < 0) result = -result;
    bottom = -bottom;
  }
  while (bottom % 2 == 0) {
    const int k2 = kronecker_two(top);
    if (k2 == 0) return 0;
    result *= k2;
    bottom /= 2;
  }
  if (bottom == 1) return result;
  return result * jacobi(top, bottom);
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1U) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1U;
  }
  return result;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  static constexpr std::array<std::uint64_t, 12> kBases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (const auto p : kBases) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  for (const auto a : kBases) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<PrimePower> factorize(std::int64_t n) {
  if (n == 0) throw InvalidArgument("factorize: zero has no factorization");
  std::uint64_t m = n < 0 ? static_cast<std::uint64_t>(-(n + 1)) + 1 : static_cast<std::uint64_t>(n);
  std::vector<PrimePower> out;
  for (std::uint64_t p = 2; p * p <= m; p += (p == 2 ? 1 : 2)) {
    if (m % p != 0) {
      // A prime cofactor ends trial division early.
      if (p > 1000 && (p & 1023U) == 1 && is_prime(m)) break;
      continue;
    }
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    out.push_back({static_cast<std::int64_t>(p), e});
  }
  if (m > 1) out.push_back({static_cast<std::int64_t>(m), 1});
  return out;
}

int moebius(std::int64_t n) {
  if (n < 1) throw InvalidArgument("moebius: n must be positive");
  int result = 1;
  for (const auto& pp : factorize(n)) {
    if (pp.exponent > 1) return 0;
    result = -result;
  }
  return result;
}

std::int64_t squarefree_kernel(std::int64_t n) {
  std::int64_t s = n < 0 ? -1 : 1;
  for (const auto& pp : factorize(n)) {
    if (pp.exponent % 2 == 1) s *= pp.prime;
  }
  return s;
}

bool is_discriminant(std::int64_t d) {
  const std::int64_t r = mod_floor(d, 4);
  return d != 0 && (r == 0 || r == 1);
}

bool is_fundamental_discriminant(std::int64_t d) {
  if (d == 1) return true;
  if (!is_discriminant(d)) return false;
  if (mod_floor(d, 4) == 1) return squarefree_kernel(d) == d;
  const std::int64_t m = d / 4;
  const std::int64_t r = mod_floor(m, 4);
  return (r == 2 || r == 3) && squarefree_kernel(m) == m;
}

Discriminant split_discriminant(std::int64_t d) {
  if (!is_discriminant(d)) {
    throw InvalidArgument("split_discriminant: " + std::to_string(d) +
                          " is not a nonzero integer = 0,1 mod 4");
  }
  const std::int64_t s = squarefree_kernel(d);
  std::int64_t m2 = d / s;  // perfect square
  std::int64_t m = 1;
  for (const auto& pp : factorize(m2)) m *= ipow(pp.prime, pp.exponent / 2);
  Discriminant out{d, s, m};
  if (mod_floor(s, 4) != 1) {
    out.fundamental_part = 4 * s;
    out.conductor = m / 2;
  }
  return out;
}

std::vector<std::int64_t> divisors(std::int64_t n) {
  if (n < 1) throw InvalidArgument("divisors: n must be positive");
  std::vector<std::int64_t> out{1};
  for (const auto& pp : factorize(n)) {
    const std::size_t size = out.size();
    std::int64_t power = 1;
    for (int e = 1; e <= pp.exponent; ++e) {
      power *= pp.prime;
      for (std::size_t i = 0; i < size; ++i) out.push_back(out[i] * power);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

int p_adic_valuation(std::int64_t n, std::int64_t p) {
  if (n == 0) throw InvalidArgument("p_adic_valuation: n must be nonzero");
  if (p < 2) throw InvalidArgument("p_adic_valuation: p must be prime");
  int e = 0;
  while (n % p == 0) {
    n /= p;
    ++e;
  }
  return e;
}

std::int64_t inverse_mod(std::int64_t a, std::int64_t m) {
  std::int64_t old_r = mod_floor(a, m), r = m;
  std::int64_t old_s = 1, s = 0;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
  }
  if (old_r != 1) throw InvalidArgument("inverse_mod: argument not invertible");
  return mod_floor(old_s, m);
}

std::uint64_t sqrt_mod_prime(std::uint64_t a, std::uint64_t p) {
  a %= p;
  if (p == 2) return a;
  if (p % 4 == 3) return pow_mod(a, (p + 1) / 4, p);
  std::uint64_t q = p - 1;
  int s = 0;
  while ((q & 1U) == 0) {
    q >>= 1U;
    ++s;
  }
  std::uint64_t z = 2;
  while (pow_mod(z, (p - 1) / 2, p) != p - 1) ++z;
  std::uint64_t c = pow_mod(z, q, p);
  std::uint64_t x = pow_mod(a, (q + 1) / 2, p);
  std::uint64_t t = pow_mod(a, q, p);
  int m = s;
  while (t != 1) {
    int i = 0;
    std::uint64_t t2 = t;
    while (t2 != 1) {
      t2 = mul_mod(t2, t2, p);
      ++i;
    }
    std::uint64_t b = c;
    for (int j = 0; j < m - i - 1; ++j) b = mul_mod(b, b, p);
    x = mul_mod(x, b, p);
    c = mul_mod(b, b, p);
    t = mul_mod(t, c, p);
    m = i;
  }
  return x;
}

std::vector<std::int64_t> sqrt_mod_prime_power(std::int64_t value, std::int64_t p, int e) {
  std::int64_t modulus = ipow(p, e);
  const std::int64_t target = mod_floor(value, modulus);
  std::vector<std::int64_t> roots;
  if (p != 2 && target % p != 0) {
    // Unit case: two roots or none, lifted by Newton iteration.
    if (jacobi(target % p, p) != 1) return roots;
    std::int64_t x = static_cast<std::int64_t>(sqrt_mod_prime(static_cast<std::uint64_t>(target % p),
                                                              static_cast<std::uint64_t>(p)));
    std::int64_t pk = p;
    for (int k = 1; k < e; ++k) {
      pk *= p;
      const auto xu = static_cast<std::uint64_t>(x);
      const auto pku = static_cast<std::uint64_t>(pk);
      const std::uint64_t f = (mul_mod(xu, xu, pku) + pku - static_cast<std::uint64_t>(mod_floor(target, pk))) % pku;
      const auto inv2x = static_cast<std::uint64_t>(inverse_mod(2 * x % pk, pk));
      x = static_cast<std::int64_t>((xu + pku - mul_mod(f, inv2x, pku)) % pku);
    }
    roots = {x, modulus - x};
    if (roots[0] > roots[1]) std::swap(roots[0], roots[1]);
    return roots;
  }
  // Ramified or p = 2: lift digit by digit.
  std::vector<std::int64_t> current;
  for (std::int64_t x = 0; x < p; ++x) {
    if (mod_floor(x * x - target, p) == 0) current.push_back(x);
  }
  std::int64_t pk = p;
  for (int k = 1; k < e; ++k) {
    const std::int64_t next = pk * p;
    std::vector<std::int64_t> lifted;
    for (const auto x : current) {
      for (std::int64_t t = 0; t < p; ++t) {
        const std::int64_t y = x + t * pk;
        const auto yu = static_cast<std::uint64_t>(y);
        if (mul_mod(yu, yu, static_cast<std::uint64_t>(next)) ==
            static_cast<std::uint64_t>(mod_floor(target, next))) {
          lifted.push_back(y);
        }
      }
    }
    current = std::move(lifted);
    pk = next;
    if (current.empty()) break;
  }
  std::sort(current.begin(), current.end());
  return current;
}

std::int64_t ipow(std::int64_t base, int exp) {
  std::int64_t result = 1;
  for (int i = 0; i < exp; ++i) {
    if (__builtin_mul_overflow(result, base, &result)) {
      throw InvalidArgument("ipow: overflow");
    }
  }
  return result;
}

std::int64_t sum_of_divisor_powers(std::int64_t n, int s) {
  std::int64_t total = 0;
  for (const auto d : divisors(n)) total += ipow(d, s);
  return total;
}

std::int64_t divisor_count(std::int64_t n) {
  std::int64_t count = 1;
  for (const auto& pp : factorize(n)) count *= pp.exponent + 1;
  return count;
}

}  // namespace magnetic
