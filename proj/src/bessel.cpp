#include "magnetic/bessel.hpp"

#include <algorithm>

#include "magnetic/error.hpp"

namespace magnetic {

namespace {

void require_order(int m) {
  if (m < 0 || m > 200) throw InvalidArgument("bessel: order index must lie in [0, 200]");
}

// a_j(m) = (m+j)! / (j! (m-j)! 2^j), exact.
mpq_class closed_form_coefficient(int m, int j) {
  mpz_class num, den, t;
  mpz_fac_ui(num.get_mpz_t(), static_cast<unsigned long>(m + j));
  mpz_fac_ui(den.get_mpz_t(), static_cast<unsigned long>(j));
  mpz_fac_ui(t.get_mpz_t(), static_cast<unsigned long>(m - j));
  den *= t;
  den <<= j;
  mpq_class out(num, den);
  out.canonicalize();
  return out;
}

Ball upper_point(const Ball& x) {
  const Mpfr hi = x.upper();
  return Ball::from_parts(hi, Mpfr(Ball::kRadiusBits));
}

}  // namespace

Ball gamma_half_integer_plus_one(int m, mpfr_prec_t prec) {
  mpz_class dbl(1);
  for (int i = 3; i <= 2 * m + 1; i += 2) dbl *= i;
  return sqrt(Ball::pi(prec)).mul_mpz(dbl).mul_2exp(-(m + 1));
}

Ball bessel_i_half_closed(int m, const Ball& x) {
  require_order(m);
  if (!x.is_positive()) throw InvalidArgument("bessel: argument must be positive");
  const mpfr_prec_t target = x.precision();
  const mpfr_prec_t work = target + 32 + 2 * m;
  const Ball xw = x.with_precision(std::max(work, x.precision()));
  const Ball inv = Ball::from_int(1, work) / xw;
  // Horner in 1/x for both polynomials.
  Ball plus = Ball::from_mpq(closed_form_coefficient(m, m), work);
  Ball minus = plus;
  for (int j = m - 1; j >= 0; --j) {
    const Ball c = Ball::from_mpq(closed_form_coefficient(m, j), work);
    plus = plus * inv + c;
    minus = minus * (-inv) + c;
  }
  Ball value = exp(xw) * minus;
  const Ball tail = exp(-xw) * plus;
  if ((m + 1) % 2 == 0) {
    value += tail;
  } else {
    value -= tail;
  }
  value = value / sqrt(Ball::pi(work).mul_2exp(1) * xw);
  return value.with_precision(target);
}

Ball bessel_i_half_series(int m, const Ball& x) {
  require_order(m);
  if (!x.is_positive()) throw InvalidArgument("bessel: argument must be positive");
  const mpfr_prec_t target = x.precision();
  const mpfr_prec_t work = target + 32 + 2 * m;
  const Ball xw = x.with_precision(std::max(work, x.precision()));
  const Ball half = xw.mul_2exp(-1);
  const Ball half_sq = half * half;
  const mpq_class nu(2 * m + 1, 2);
  // t_0 = (x/2)^nu / Gamma(nu+1)
  Ball term = pow_rational(half, nu) / gamma_half_integer_plus_one(m, work);
  Ball sum = term;
  const Ball y2 = upper_point(half_sq);
  for (long j = 1;; ++j) {
    // t_j = t_{j-1} (x/2)^2 / (j (nu + j)) with nu + j = (2m + 1 + 2j) / 2
    term = (term * half_sq).mul_si(2).div_si(j * (2 * m + 1 + 2 * j));
    sum += term;
    const Mpfr t_hi = abs(term).upper();
    const Mpfr s_lo = abs(sum).lower();
    if (mpfr_sgn(s_lo.get()) > 0 && mpfr_get_exp(t_hi.get()) < mpfr_get_exp(s_lo.get()) - work - 2) {
      // Later ratios are at most r; once r < 1/2 the rest is below 2 r t_j.
      const Ball r = y2.mul_si(2).div_si((j + 1) * (2 * m + 3 + 2 * j));
      const Mpfr r_hi = r.upper();
      if (mpfr_cmp_d(r_hi.get(), 0.5) < 0) {
        const Ball bound = upper_point(abs(term)) * r.mul_si(2);
        sum.add_error(bound.upper());
        break;
      }
    }
    if (j > 1000000) throw CertificationFailure("bessel series: no convergence");
  }
  return sum.with_precision(target);
}

Ball bessel_i_half(int m, const Ball& x) {
  const double mid = x.mid_double();
  if (mid >= 2.0 * m + 2.0) return bessel_i_half_closed(m, x);
  return bessel_i_half_series(m, x);
}

Ball bessel_upper_bound(int m, const Ball& y) {
  require_order(m);
  if (!y.is_positive()) throw InvalidArgument("bessel_upper_bound: argument must be positive");
  const Ball hi = upper_point(y);
  const Ball bound = pow_rational(hi.mul_2exp(-1), mpq_class(2 * m + 1, 2)) * exp(hi) /
                     gamma_half_integer_plus_one(m, y.precision());
  return upper_point(bound);
}

}  // namespace magnetic
