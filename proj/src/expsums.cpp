#include "magnetic/expsums.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "magnetic/arith.hpp"
#include "magnetic/error.hpp"
#include "magnetic/qforms.hpp"

namespace magnetic {

ComplexBall unit_root(std::int64_t num, std::int64_t den, mpfr_prec_t prec) {
  if (den <= 0) throw InvalidArgument("unit_root: denominator must be positive");
  std::int64_t r = mod_floor(num, den);
  const std::int64_t g = gcd(r, den);
  if (g > 1) {
    r /= g;
    den /= g;
  }
  if (r == 0) return {Ball::from_int(1, prec), Ball::from_int(0, prec)};
  if (2 * r == den) return {Ball::from_int(-1, prec), Ball::from_int(0, prec)};
  if (4 * r == den) return {Ball::from_int(0, prec), Ball::from_int(1, prec)};
  if (4 * r == 3 * den) return {Ball::from_int(0, prec), Ball::from_int(-1, prec)};
  const Ball angle = Ball::pi(prec + 8).mul_si(2 * r).div_si(den);
  return {cos(angle).with_precision(prec), sin(angle).with_precision(prec)};
}

namespace {

// x mod m1 and y mod m2 (coprime) to the unique z mod m1 m2.
std::int64_t crt_pair(std::int64_t x, std::int64_t m1, std::int64_t y, std::int64_t m2, std::int64_t inv_m1) {
  const auto diff = static_cast<std::uint64_t>(mod_floor(y - x, m2));
  const std::uint64_t t = mul_mod(diff, static_cast<std::uint64_t>(inv_m1), static_cast<std::uint64_t>(m2));
  return x + m1 * static_cast<std::int64_t>(t);
}

// Combines per-prime-power root lists into roots mod the product; keeps b < limit.
void combine_roots(const std::vector<std::pair<std::int64_t, std::vector<std::int64_t>>>& local,
                   std::int64_t limit, std::vector<std::int64_t>& out) {
  out.assign(1, 0);
  std::int64_t modulus = 1;
  std::vector<std::int64_t> next;
  for (const auto& [pe, roots] : local) {
    const std::int64_t inv = modulus == 1 ? 0 : inverse_mod(modulus % pe, pe);
    next.clear();
    for (const auto x : out) {
      for (const auto y : roots) next.push_back(modulus == 1 ? y : crt_pair(x, modulus, y, pe, inv));
    }
    out.swap(next);
    modulus *= pe;
  }
  out.erase(std::remove_if(out.begin(), out.end(), [limit](std::int64_t b) { return b >= limit; }), out.end());
}

bool valid_pair(std::int64_t d, std::int64_t D) {
  if (d == 0 || D == 0) return false;
  std::int64_t prod = 0;
  if (__builtin_mul_overflow(d, D, &prod)) return false;
  return prod < 0 && is_discriminant(prod);
}

}  // namespace

std::vector<std::int64_t> square_roots_mod_4a(std::int64_t disc, std::int64_t a) {
  if (a < 1) throw InvalidArgument("square_roots_mod_4a: a must be positive");
  std::vector<std::pair<std::int64_t, std::vector<std::int64_t>>> local;
  for (const auto& pp : factorize(4 * a)) {
    auto roots = sqrt_mod_prime_power(disc, pp.prime, pp.exponent);
    if (roots.empty()) return {};
    local.emplace_back(ipow(pp.prime, pp.exponent), std::move(roots));
  }
  std::vector<std::int64_t> out;
  combine_roots(local, 2 * a, out);
  std::sort(out.begin(), out.end());
  return out;
}

void validate_salie(const SalieParams& p) {
  if (p.a < 1 || p.n < 1) throw InvalidArgument("salie_sum: a and n must be positive");
  if (!valid_pair(p.d, p.D)) {
    throw InvalidArgument("salie_sum: need d D < 0 with d D = 0 or 1 mod 4");
  }
  if (!is_fundamental_discriminant(p.D)) throw InvalidArgument("salie_sum: D must be fundamental");
  if (p.level < 1) throw InvalidArgument("salie_sum: level must be positive");
  if (p.level > 1) {
    if (p.D != 1) throw InvalidArgument("salie_sum: level > 1 is supported only for D = 1");
    if (p.a % p.level != 0) throw InvalidArgument("salie_sum: level must divide a");
    if (!p.residue || mod_floor(*p.residue * *p.residue - p.d * p.D, 4 * p.level) != 0) {
      throw InvalidArgument("salie_sum: residue^2 must equal d D mod 4 level");
    }
  }
}

namespace {

// (b, chi) pairs contributing to S_{a,d,D}.
std::vector<std::pair<std::int64_t, int>> salie_terms(const SalieParams& p) {
  validate_salie(p);
  const std::int64_t disc = p.d * p.D;
  std::vector<std::pair<std::int64_t, int>> terms;
  for (const auto b : square_roots_mod_4a(disc, p.a)) {
    if (p.level > 1 && mod_floor(b - *p.residue, 2 * p.level) != 0) continue;
    const QuadraticForm q{p.a, b, (b * b - disc) / (4 * p.a)};
    const int chi = genus_character(q, p.D);
    if (chi != 0) terms.emplace_back(b, chi);
  }
  return terms;
}

}  // namespace

ComplexBall salie_sum(const SalieParams& p, mpfr_prec_t prec) {
  const auto terms = salie_terms(p);
  if (p.level > 1) {
    ++salie_coverage().level_n_ball;
  } else {
    ++salie_coverage().level_one_ball;
  }
  ComplexBall sum(Ball::from_int(0, prec), Ball::from_int(0, prec));
  for (const auto& [b, chi] : terms) {
    const ComplexBall e = unit_root(p.n * b, 2 * p.a, prec);
    sum += chi > 0 ? e : e.mul_si(-1);
  }
  return sum;
}

Cyclotomic salie_sum_exact(const SalieParams& p) {
  const auto terms = salie_terms(p);
  ++salie_coverage().exact;
  Cyclotomic sum(4 * p.a);
  for (const auto& [b, chi] : terms) sum.add_root(chi, mod_floor(2 * p.n % (4 * p.a) * b, 4 * p.a));
  return sum;
}

namespace {

template <typename Visit>
void kloosterman_terms(std::int64_t m, std::int64_t n, std::int64_t a, Visit visit) {
  if (a < 1) throw InvalidArgument("kloosterman_plus: a must be positive");
  const std::int64_t mod = 4 * a;
  for (std::int64_t j = 1; j < mod; j += 2) {
    if (gcd(j, mod) != 1) continue;
    const int sym = kronecker(mod, j);
    if (sym == 0) continue;
    const std::int64_t jbar = inverse_mod(j, mod);
    const std::int64_t exponent = mod_floor(mod_floor(m, mod) * j + mod_floor(n, mod) * jbar, mod);
    // eps_j = i = zeta_{4a}^a when j = 3 mod 4
    visit(sym, j % 4 == 1 ? exponent : mod_floor(exponent + a, mod));
  }
}

}  // namespace

Cyclotomic kloosterman_plus_exact(std::int64_t m, std::int64_t n, std::int64_t a) {
  ++salie_coverage().exact;
  const std::int64_t mod = 4 * a;
  Cyclotomic sum(mod);
  kloosterman_terms(m, n, a, [&](int sym, std::int64_t e) { sum.add_root(sym, e); });
  // (1 - i)/4 (1 + (4/a))
  Cyclotomic factor(mod);
  const mpq_class scale(1 + kronecker(4, a), 4);
  factor.add_root(scale, 0);
  factor.add_root(-scale, a);
  return factor * sum;
}

ComplexBall kloosterman_plus(std::int64_t m, std::int64_t n, std::int64_t a, mpfr_prec_t prec) {
  ++salie_coverage().kloosterman;
  const std::int64_t mod = 4 * a;
  ComplexBall sum(Ball::from_int(0, prec), Ball::from_int(0, prec));
  kloosterman_terms(m, n, a, [&](int sym, std::int64_t e) {
    const ComplexBall z = unit_root(e, mod, prec);
    sum += sym > 0 ? z : z.mul_si(-1);
  });
  const long scale = 1 + kronecker(4, a);
  // (1 - i) z = (re + im) + i (im - re)
  ComplexBall out((sum.re + sum.im).mul_si(scale).div_si(4), (sum.im - sum.re).mul_si(scale).div_si(4));
  return out;
}

ComplexBall salie_via_kloosterman(std::int64_t a, std::int64_t d, std::int64_t D, std::int64_t n,
                                  mpfr_prec_t prec) {
  ComplexBall total(Ball::from_int(0, prec), Ball::from_int(0, prec));
  for (const auto m : divisors(gcd(n, a))) {
    const int chi = kronecker(D, m);
    if (chi == 0) continue;
    const ComplexBall k = kloosterman_plus(d, (n / m) * (n / m) * D, a / m, prec);
    const Ball s = sqrt(Ball::from_mpq(mpq_class(m, a), prec));
    total += k.scaled(s).mul_si(chi);
  }
  return total;
}

std::int64_t representation_count(std::int64_t disc, std::int64_t a) {
  if (a < 1) throw InvalidArgument("representation_count: a must be positive");
  const Discriminant split = split_discriminant(disc);
  std::int64_t count = 1;
  for (const auto& pp : factorize(a)) {
    const std::int64_t p = pp.prime;
    const int nu = pp.exponent;
    const int nf = p_adic_valuation(split.conductor, p);
    if (nu <= 2 * nf) {
      count *= ipow(p, nu / 2);
      continue;
    }
    const int chi = kronecker(split.fundamental_part, p);
    const int e = nu - 2 * nf - 1;
    const std::int64_t sign = e == 0 ? 1 : (chi == 0 ? 0 : (e % 2 == 0 ? 1 : chi));
    count *= ipow(p, nf) * sign * (1 + chi);
    if (count == 0) return 0;
  }
  return count;
}

std::int64_t representation_count_brute(std::int64_t disc, std::int64_t a) {
  if (a < 1) throw InvalidArgument("representation_count: a must be positive");
  std::int64_t count = 0;
  for (std::int64_t b = 0; b < 2 * a; ++b) {
    if (mod_floor(b * b - disc, 4 * a) == 0) ++count;
  }
  return count;
}

SalieCoverage& salie_coverage() {
  static SalieCoverage coverage;
  return coverage;
}

SquareRootSweep::SquareRootSweep(std::int64_t disc, std::int64_t a_max) : disc_(disc), a_max_(a_max) {
  if (a_max < 1) a_max_ = 1;
  if (a_max_ > (std::int64_t{1} << 31)) throw InvalidArgument("SquareRootSweep: a_max too large");
  const auto limit = static_cast<std::size_t>(a_max_);
  std::vector<bool> composite(limit + 1, false);
  for (std::size_t i = 2; i * i <= limit; ++i) {
    if (composite[i]) continue;
    for (std::size_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  for (std::size_t i = 3; i <= limit; i += 2) {
    if (composite[i]) continue;
    const auto p = static_cast<std::int64_t>(i);
    primes_.push_back(static_cast<std::uint32_t>(i));
    const std::int64_t r = mod_floor(disc, p);
    if (r == 0) {
      prime_roots_.push_back(0);
    } else if (jacobi(r, p) != 1) {
      prime_roots_.push_back(std::numeric_limits<std::uint32_t>::max());
    } else {
      prime_roots_.push_back(static_cast<std::uint32_t>(
          sqrt_mod_prime(static_cast<std::uint64_t>(r), static_cast<std::uint64_t>(p))));
    }
  }
}

std::int64_t SquareRootSweep::root_of_prime(std::int64_t p) const {
  const auto it = std::lower_bound(primes_.begin(), primes_.end(), static_cast<std::uint32_t>(p));
  const std::uint32_t r = prime_roots_[static_cast<std::size_t>(it - primes_.begin())];
  return r == std::numeric_limits<std::uint32_t>::max() ? -1 : static_cast<std::int64_t>(r);
}

void SquareRootSweep::run(std::int64_t a_min, std::int64_t step,
                          const std::function<void(std::int64_t, const std::vector<std::int64_t>&)>& visit) const {
  if (step < 1) throw InvalidArgument("SquareRootSweep: step must be positive");
  a_min = std::max<std::int64_t>(a_min, 1);
  const std::int64_t first = ((a_min + step - 1) / step) * step;
  if (first > a_max_) return;

  // Roots of disc modulo 2^e and modulo powers of primes dividing disc.
  std::map<std::pair<std::int64_t, int>, std::vector<std::int64_t>> ramified;
  auto local_roots = [&](std::int64_t p, int e) -> const std::vector<std::int64_t>& {
    const auto key = std::make_pair(p, e);
    auto it = ramified.find(key);
    if (it == ramified.end()) it = ramified.emplace(key, sqrt_mod_prime_power(disc_, p, e)).first;
    return it->second;
  };

  std::int64_t small_limit = 1;
  while ((small_limit + 1) * (small_limit + 1) <= a_max_) ++small_limit;
  const auto small_end = std::upper_bound(primes_.begin(), primes_.end(), static_cast<std::uint32_t>(small_limit));

  constexpr std::int64_t kBlock = std::int64_t{1} << 16;
  constexpr int kMaxFactors = 16;
  std::vector<std::int64_t> remaining;
  std::vector<std::array<std::pair<std::int64_t, int>, kMaxFactors>> factors;
  std::vector<int> factor_count;
  std::vector<std::pair<std::int64_t, std::vector<std::int64_t>>> local;
  std::vector<std::int64_t> roots;

  for (std::int64_t lo = first; lo <= a_max_; lo += kBlock * step) {
    const std::int64_t hi = std::min(a_max_, lo + (kBlock - 1) * step);
    const auto count = static_cast<std::size_t>((hi - lo) / step + 1);
    remaining.resize(count);
    factors.resize(count);
    factor_count.assign(count, 0);
    for (std::size_t i = 0; i < count; ++i) {
      std::int64_t a = lo + static_cast<std::int64_t>(i) * step;
      // Strip the power of two here; odd primes are sieved below.
      const int v2 = __builtin_ctzll(static_cast<unsigned long long>(a));
      remaining[i] = a >> v2;
      factors[i][0] = {2, v2 + 2};
      factor_count[i] = 1;
    }
    for (auto it = primes_.begin(); it != small_end; ++it) {
      const std::int64_t p = *it;
      // Indices k with p | lo + k step.
      std::size_t start = 0;
      std::size_t stride = 1;
      if (step % p == 0) {
        if (lo % p != 0) continue;
      } else {
        const std::int64_t inv = inverse_mod(step % p, p);
        start = static_cast<std::size_t>(mod_floor(mod_floor(-lo, p) * inv, p));
        stride = static_cast<std::size_t>(p);
      }
      for (std::size_t k = start; k < count; k += stride) {
        int e = 0;
        while (remaining[k] % p == 0) {
          remaining[k] /= p;
          ++e;
        }
        factors[k][static_cast<std::size_t>(factor_count[k]++)] = {p, e};
      }
    }
    for (std::size_t i = 0; i < count; ++i) {
      const std::int64_t a = lo + static_cast<std::int64_t>(i) * step;
      if (remaining[i] > 1) factors[i][static_cast<std::size_t>(factor_count[i]++)] = {remaining[i], 1};
      local.clear();
      bool empty = false;
      for (int f = 0; f < factor_count[i] && !empty; ++f) {
        const auto [p, e] = factors[i][static_cast<std::size_t>(f)];
        const std::int64_t pe = ipow(p, e);
        if (p == 2 || disc_ % p == 0) {
          const auto& r = local_roots(p, e);
          if (r.empty()) empty = true;
          else local.emplace_back(pe, r);
          continue;
        }
        const std::int64_t r0 = root_of_prime(p);
        if (r0 < 0) {
          empty = true;
        } else if (e == 1) {
          local.push_back({p, {r0, p - r0}});
        } else {
          local.emplace_back(pe, sqrt_mod_prime_power(disc_, p, e));
        }
      }
      if (empty) continue;
      combine_roots(local, 2 * a, roots);
      if (!roots.empty()) visit(a, roots);
    }
  }
}

}  // namespace magnetic
