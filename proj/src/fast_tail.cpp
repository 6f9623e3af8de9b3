#include "fast_tail.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "magnetic/arith.hpp"
#include "magnetic/error.hpp"
#include "magnetic/expsums.hpp"
#include "magnetic/qforms.hpp"

namespace magnetic::detail {

namespace {

constexpr double kUnit = 0x1p-53;
constexpr double kHalfPi = 1.5707963267948966192;

// Taylor polynomials on [0, pi/4]; the truncation error is below 2^-65.
void cos_sin_small(double psi, double& c, double& s) {
  const double y = psi * psi;
  double sc = 1.0 / 6402373705728000.0;  // 1/18!
  double ss = 1.0 / 121645100408832000.0;  // 1/19!
  static constexpr double kInvFact[] = {1.0, 1.0, 1.0 / 2, 1.0 / 6, 1.0 / 24, 1.0 / 120, 1.0 / 720,
                                        1.0 / 5040, 1.0 / 40320, 1.0 / 362880, 1.0 / 3628800,
                                        1.0 / 39916800, 1.0 / 479001600, 1.0 / 6227020800.0,
                                        1.0 / 87178291200.0, 1.0 / 1307674368000.0,
                                        1.0 / 20922789888000.0, 1.0 / 355687428096000.0};
  for (int j = 16; j >= 0; j -= 2) {
    sc = kInvFact[j] - y * sc;
    ss = kInvFact[j + 1] - y * ss;
  }
  c = sc;
  s = psi * ss;
}

int genus_fast(std::int64_t a, std::int64_t b, std::int64_t disc, std::int64_t D) {
  if (D == 1) return 1;
  if (gcd(a, D) == 1) return kronecker(D, a);
  const std::int64_t c = (b * b - disc) / (4 * a);
  if (gcd(c, D) == 1) return kronecker(D, c);
  return genus_character(QuadraticForm{a, b, c}, D);
}

}  // namespace

void cos_sin_pi_ratio(std::int64_t t, std::int64_t a, double& c, double& s) {
  // angle = (pi/2) (q + rem/a) with s2 = 2t = q a + rem
  const std::int64_t s2 = 2 * t;
  const std::int64_t q = s2 / a;
  const std::int64_t rem = s2 % a;
  const bool complement = 2 * rem > a;
  const std::int64_t num = complement ? a - rem : rem;
  double cc = 1, ss = 0;
  if (num != 0) cos_sin_small(kHalfPi * static_cast<double>(num) / static_cast<double>(a), cc, ss);
  if (complement) std::swap(cc, ss);
  switch (q & 3) {
    case 0: c = cc; s = ss; break;
    case 1: c = -ss; s = cc; break;
    case 2: c = -cc; s = -ss; break;
    default: c = ss; s = -cc; break;
  }
}

double bessel_ratio_series(double u, double nu, int& terms) {
  double term = 1, sum = 1;
  int j = 0;
  // successive ratios are below u / ((j+1)(nu+j+1)) <= 1/2 for u <= 1, nu >= 1/2
  while (true) {
    ++j;
    term *= u / (static_cast<double>(j) * (nu + j));
    sum += term;
    if (term < 0x1p-60 * sum || term == 0) break;
  }
  terms = j;
  return sum;
}

void run_fast_tail(const TailForm& form, std::vector<TailRange>& ranges) {
  if (ranges.empty()) return;
  const std::int64_t N = form.level;
  std::int64_t a_min = std::numeric_limits<std::int64_t>::max(), a_max = 0;
  for (const auto& r : ranges) {
    if (r.hi <= r.lo) continue;
    if (2.0 * static_cast<double>(r.lo) < r.x) throw InternalError("fast tail: range starts below x/2");
    a_min = std::min(a_min, r.lo + 1);
    a_max = std::max(a_max, r.hi);
  }
  if (a_max == 0) return;
  a_min = ((a_min + N - 1) / N) * N;

  const double nu = form.k - 0.5;
  struct Acc {
    double re = 0, im = 0;
    double mass = 0;          // sum of M_a
    double weighted = 0;      // sum of (2048 + r_a + k) M_a
    std::uint64_t count = 0;
  };
  std::vector<Acc> acc(ranges.size());
  std::vector<std::int64_t> bs;
  std::vector<long> coefs;
  salie_coverage().fast_kernel += 1;

  SquareRootSweep sweep(form.disc, a_max);
  sweep.run(a_min, N, [&](std::int64_t a, const std::vector<std::int64_t>& roots) {
    bs.clear();
    coefs.clear();
    long mass = 0;
    for (const auto b : roots) {
      const long w = N > 1 ? form.weight(b % (2 * N)) : 1;
      if (w == 0) continue;
      const int chi = genus_fast(a, b, form.disc, form.D);
      if (chi == 0) continue;
      bs.push_back(b);
      coefs.push_back(w * chi);
      mass += std::labs(w);
    }
    if (bs.empty()) return;
    const double inv = 1.0 / static_cast<double>(a);
    double ak = 1;
    for (int i = 0; i < form.k; ++i) ak *= inv;
    const std::int64_t mod = 2 * a;
    for (std::size_t idx = 0; idx < ranges.size(); ++idx) {
      const auto& r = ranges[idx];
      if (a <= r.lo || a > r.hi) continue;
      const double u = 0.25 * (r.x * inv) * (r.x * inv);
      int phi_terms = 0;
      const double phi = bessel_ratio_series(u, nu, phi_terms);
      const double scale = ak * phi;
      const std::int64_t nm = r.n % mod;
      double sre = 0, sim = 0;
      for (std::size_t i = 0; i < bs.size(); ++i) {
        double c, s;
        cos_sin_pi_ratio(nm * bs[i] % mod, a, c, s);
        if (form.need_re) sre += static_cast<double>(coefs[i]) * c;
        if (form.need_im) sim += static_cast<double>(coefs[i]) * s;
      }
      auto& ac = acc[idx];
      ac.re += sre * scale;
      ac.im += sim * scale;
      const double m = static_cast<double>(mass) * scale;
      ac.mass += m;
      ac.weighted += (2048.0 + static_cast<double>(bs.size()) + form.k + 4.0 * phi_terms) * m;
      ++ac.count;
    }
  });

  for (std::size_t idx = 0; idx < ranges.size(); ++idx) {
    auto& r = ranges[idx];
    const auto& ac = acc[idx];
    const double L = static_cast<double>(ac.count);
    r.re = form.need_re ? ac.re : 0;
    r.im = form.need_im ? ac.im : 0;
    r.terms = ac.count;
    // recursive summation: |error| <= L u (1 + 2 L u) sum |terms|, plus per-term error
    const double bound = kUnit * (ac.weighted + L * ac.mass) * (1 + 4 * L * kUnit);
    r.error = std::nextafter(bound * 1.01 + 1e-300, std::numeric_limits<double>::infinity());
  }
}

}  // namespace magnetic::detail
