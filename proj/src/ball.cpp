#include "magnetic/ball.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include "magnetic/error.hpp"

namespace magnetic {

Mpfr::Mpfr(mpfr_prec_t prec) {
  mpfr_init2(value_, prec);
  mpfr_set_zero(value_, 1);
}

Mpfr::Mpfr(const Mpfr& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

Mpfr::Mpfr(Mpfr&& other) noexcept {
  // Swap in a minimal placeholder so the moved-from object stays valid.
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

Mpfr& Mpfr::operator=(const Mpfr& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

Mpfr& Mpfr::operator=(Mpfr&& other) noexcept {
  if (this != &other) mpfr_swap(value_, other.value_);
  return *this;
}

Mpfr::~Mpfr() { mpfr_clear(value_); }

namespace {

using Radius = Mpfr;

Radius make_radius() { return Radius(Ball::kRadiusBits); }

/// Upper bound of |x| in radius precision.
Radius abs_upper(const Mpfr& x) {
  Radius r = make_radius();
  mpfr_abs(r.get(), x.get(), MPFR_RNDU);
  return r;
}

Radius abs_lower(const Mpfr& x) {
  Radius r = make_radius();
  mpfr_abs(r.get(), x.get(), MPFR_RNDD);
  return r;
}

void raise_precision(Mpfr& x, mpfr_prec_t prec) {
  if (x.precision() < prec) mpfr_prec_round(x.get(), prec, MPFR_RNDN);  // exact
}

}  // namespace

Ball::Ball(mpfr_prec_t prec) : mid_(prec), rad_(kRadiusBits) {}

void Ball::account_rounding(int ternary) {
  if (ternary == 0) return;
  Radius err = make_radius();
  if (mpfr_zero_p(mid_.get())) {
    mpfr_set_ui_2exp(err.get(), 1, mpfr_get_emin(), MPFR_RNDU);
  } else {
    // |mid| < 2^exp, so one ulp is 2^(exp - prec).
    mpfr_set_ui_2exp(err.get(), 1, mpfr_get_exp(mid_.get()) - mid_.precision(), MPFR_RNDU);
  }
  mpfr_add(rad_.get(), rad_.get(), err.get(), MPFR_RNDU);
}

void Ball::add_error(const Mpfr& err) {
  Radius e = abs_upper(err);
  mpfr_add(rad_.get(), rad_.get(), e.get(), MPFR_RNDU);
}

void Ball::add_error(double err) {
  Radius e = make_radius();
  mpfr_set_d(e.get(), std::fabs(err), MPFR_RNDU);
  mpfr_add(rad_.get(), rad_.get(), e.get(), MPFR_RNDU);
}

Ball Ball::from_int(long value, mpfr_prec_t prec) {
  Ball b(prec);
  b.account_rounding(mpfr_set_si(b.mid_.get(), value, MPFR_RNDN));
  return b;
}

Ball Ball::from_mpz(const mpz_class& value, mpfr_prec_t prec) {
  Ball b(prec);
  b.account_rounding(mpfr_set_z(b.mid_.get(), value.get_mpz_t(), MPFR_RNDN));
  return b;
}

Ball Ball::from_mpq(const mpq_class& value, mpfr_prec_t prec) {
  Ball b(prec);
  b.account_rounding(mpfr_set_q(b.mid_.get(), value.get_mpq_t(), MPFR_RNDN));
  return b;
}

Ball Ball::from_double(double mid, double rad, mpfr_prec_t prec) {
  if (!std::isfinite(mid) || !std::isfinite(rad)) {
    throw InvalidArgument("Ball::from_double: non-finite input");
  }
  Ball b(std::max<mpfr_prec_t>(prec, 53));
  mpfr_set_d(b.mid_.get(), mid, MPFR_RNDN);  // exact at >= 53 bits
  mpfr_set_d(b.rad_.get(), std::fabs(rad), MPFR_RNDU);
  return prec < 53 ? b.with_precision(prec) : b;
}

Ball Ball::pi(mpfr_prec_t prec) {
  Ball b(prec);
  b.account_rounding(mpfr_const_pi(b.mid_.get(), MPFR_RNDN));
  return b;
}

Ball Ball::with_precision(mpfr_prec_t prec) const {
  Ball out(prec);
  mpfr_set(out.rad_.get(), rad_.get(), MPFR_RNDU);
  out.account_rounding(mpfr_set(out.mid_.get(), mid_.get(), MPFR_RNDN));
  return out;
}

double Ball::mid_double() const { return mpfr_get_d(mid_.get(), MPFR_RNDN); }

double Ball::rad_upper_double() const { return mpfr_get_d(rad_.get(), MPFR_RNDU); }

double Ball::rad_log2() const {
  if (mpfr_zero_p(rad_.get())) return -std::numeric_limits<double>::infinity();
  Radius l = make_radius();
  mpfr_log2(l.get(), rad_.get(), MPFR_RNDU);
  return mpfr_get_d(l.get(), MPFR_RNDU);
}

std::string Ball::mid_string(int digits) const {
  char* buffer = nullptr;
  mpfr_asprintf(&buffer, "%.*Rg", digits, mid_.get());
  std::string out(buffer);
  mpfr_free_str(buffer);
  return out;
}

std::string Ball::to_string(int digits) const {
  char* buffer = nullptr;
  mpfr_asprintf(&buffer, "[%.*Rg +/- %.3Rg]", digits, mid_.get(), rad_.get());
  std::string out(buffer);
  mpfr_free_str(buffer);
  return out;
}

Mpfr Ball::lower() const {
  Mpfr out(precision());
  mpfr_sub(out.get(), mid_.get(), rad_.get(), MPFR_RNDD);
  return out;
}

Mpfr Ball::upper() const {
  Mpfr out(precision());
  mpfr_add(out.get(), mid_.get(), rad_.get(), MPFR_RNDU);
  return out;
}

bool Ball::is_exact() const { return mpfr_zero_p(rad_.get()) != 0; }

bool Ball::is_finite() const {
  return mpfr_number_p(mid_.get()) != 0 && mpfr_number_p(rad_.get()) != 0;
}

bool Ball::contains_zero() const {
  return mpfr_cmpabs(mid_.get(), rad_.get()) <= 0;
}

bool Ball::contains(const mpz_class& value) const {
  Mpfr diff(precision() + static_cast<mpfr_prec_t>(mpz_sizeinbase(value.get_mpz_t(), 2)) + 8);
  mpfr_sub_z(diff.get(), mid_.get(), value.get_mpz_t(), MPFR_RNDA);
  return mpfr_cmpabs(diff.get(), rad_.get()) <= 0;
}

bool Ball::contains(const mpq_class& value) const {
  Mpfr diff(precision() + 64);
  mpfr_sub_q(diff.get(), mid_.get(), value.get_mpq_t(), MPFR_RNDA);
  return mpfr_cmpabs(diff.get(), rad_.get()) <= 0;
}

bool Ball::contains(const Ball& inner) const {
  const Mpfr lo = lower();
  const Mpfr hi = upper();
  const Mpfr ilo = inner.lower();
  const Mpfr ihi = inner.upper();
  return mpfr_lessequal_p(lo.get(), ilo.get()) && mpfr_lessequal_p(ihi.get(), hi.get());
}

bool Ball::overlaps(const Ball& other) const {
  const Mpfr lo = lower();
  const Mpfr hi = upper();
  const Mpfr olo = other.lower();
  const Mpfr ohi = other.upper();
  return mpfr_lessequal_p(lo.get(), ohi.get()) && mpfr_lessequal_p(olo.get(), hi.get());
}

bool Ball::is_positive() const {
  const Mpfr lo = lower();
  return mpfr_sgn(lo.get()) > 0;
}

bool Ball::is_negative() const {
  const Mpfr hi = upper();
  return mpfr_sgn(hi.get()) < 0;
}

bool Ball::certainly_less(const Ball& other) const {
  const Mpfr hi = upper();
  const Mpfr olo = other.lower();
  return mpfr_less_p(hi.get(), olo.get()) != 0;
}

bool Ball::certainly_less_or_equal(const Ball& other) const {
  const Mpfr hi = upper();
  const Mpfr olo = other.lower();
  return mpfr_lessequal_p(hi.get(), olo.get()) != 0;
}

std::optional<mpz_class> Ball::unique_integer() const {
  if (!is_finite() || mpfr_cmp_d(rad_.get(), 0.5) >= 0) return std::nullopt;
  mpz_class candidate;
  mpfr_get_z(candidate.get_mpz_t(), mid_.get(), MPFR_RNDN);
  if (!contains(candidate)) return std::nullopt;
  return candidate;
}

Ball Ball::operator-() const {
  Ball out(*this);
  mpfr_neg(out.mid_.get(), out.mid_.get(), MPFR_RNDN);
  return out;
}

Ball& Ball::operator+=(const Ball& other) {
  raise_precision(mid_, other.precision());
  mpfr_add(rad_.get(), rad_.get(), other.rad_.get(), MPFR_RNDU);
  account_rounding(mpfr_add(mid_.get(), mid_.get(), other.mid_.get(), MPFR_RNDN));
  return *this;
}

Ball& Ball::operator-=(const Ball& other) {
  raise_precision(mid_, other.precision());
  mpfr_add(rad_.get(), rad_.get(), other.rad_.get(), MPFR_RNDU);
  account_rounding(mpfr_sub(mid_.get(), mid_.get(), other.mid_.get(), MPFR_RNDN));
  return *this;
}

Ball& Ball::operator*=(const Ball& other) {
  raise_precision(mid_, other.precision());
  const Radius am = abs_upper(mid_);
  const Radius bm = abs_upper(other.mid_);
  Radius r = make_radius();
  Radius t = make_radius();
  mpfr_mul(r.get(), am.get(), other.rad_.get(), MPFR_RNDU);
  mpfr_mul(t.get(), bm.get(), rad_.get(), MPFR_RNDU);
  mpfr_add(r.get(), r.get(), t.get(), MPFR_RNDU);
  mpfr_mul(t.get(), rad_.get(), other.rad_.get(), MPFR_RNDU);
  mpfr_add(rad_.get(), r.get(), t.get(), MPFR_RNDU);
  account_rounding(mpfr_mul(mid_.get(), mid_.get(), other.mid_.get(), MPFR_RNDN));
  return *this;
}

Ball& Ball::operator/=(const Ball& other) {
  if (other.contains_zero()) throw InvalidArgument("Ball: division by a ball containing zero");
  raise_precision(mid_, other.precision());
  const Radius am = abs_upper(mid_);
  const Radius bm_hi = abs_upper(other.mid_);
  const Radius bm_lo = abs_lower(other.mid_);
  Radius num = make_radius();
  Radius t = make_radius();
  mpfr_mul(num.get(), am.get(), other.rad_.get(), MPFR_RNDU);
  mpfr_mul(t.get(), bm_hi.get(), rad_.get(), MPFR_RNDU);
  mpfr_add(num.get(), num.get(), t.get(), MPFR_RNDU);
  Radius den = make_radius();
  mpfr_sub(den.get(), bm_lo.get(), other.rad_.get(), MPFR_RNDD);
  mpfr_mul(den.get(), den.get(), bm_lo.get(), MPFR_RNDD);
  if (mpfr_sgn(den.get()) <= 0) throw InvalidArgument("Ball: division by a ball too close to zero");
  mpfr_div(rad_.get(), num.get(), den.get(), MPFR_RNDU);
  account_rounding(mpfr_div(mid_.get(), mid_.get(), other.mid_.get(), MPFR_RNDN));
  return *this;
}

Ball Ball::mul_si(long factor) const {
  Ball out(*this);
  mpfr_mul_ui(out.rad_.get(), out.rad_.get(), static_cast<unsigned long>(std::labs(factor)), MPFR_RNDU);
  out.account_rounding(mpfr_mul_si(out.mid_.get(), out.mid_.get(), factor, MPFR_RNDN));
  return out;
}

Ball Ball::div_si(long divisor) const {
  if (divisor == 0) throw InvalidArgument("Ball: division by zero");
  Ball out(*this);
  mpfr_div_ui(out.rad_.get(), out.rad_.get(), static_cast<unsigned long>(std::labs(divisor)), MPFR_RNDU);
  out.account_rounding(mpfr_div_si(out.mid_.get(), out.mid_.get(), divisor, MPFR_RNDN));
  return out;
}

Ball Ball::mul_mpz(const mpz_class& factor) const {
  return *this * Ball::from_mpz(factor, std::max<mpfr_prec_t>(
                                            precision(), static_cast<mpfr_prec_t>(mpz_sizeinbase(
                                                                 factor.get_mpz_t(), 2)) + 2));
}

Ball Ball::mul_2exp(long e) const {
  Ball out(*this);
  mpfr_mul_2si(out.mid_.get(), out.mid_.get(), e, MPFR_RNDN);
  mpfr_mul_2si(out.rad_.get(), out.rad_.get(), e, MPFR_RNDU);
  return out;
}

namespace {

using MpfrFn = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);

/// Ball from certified endpoints lo <= hi.
Ball from_endpoints(const Mpfr& lo, const Mpfr& hi, mpfr_prec_t prec) {
  Mpfr sum(std::max(lo.precision(), hi.precision()) + 1);
  mpfr_add(sum.get(), lo.get(), hi.get(), MPFR_RNDN);
  mpfr_div_2ui(sum.get(), sum.get(), 1, MPFR_RNDN);
  Mpfr mid(prec);
  mpfr_set(mid.get(), sum.get(), MPFR_RNDN);
  Radius d1 = make_radius();
  Radius d2 = make_radius();
  Mpfr t(std::max({prec, lo.precision(), hi.precision()}) + 2);
  mpfr_sub(t.get(), hi.get(), mid.get(), MPFR_RNDU);
  mpfr_set(d1.get(), t.get(), MPFR_RNDU);
  mpfr_sub(t.get(), mid.get(), lo.get(), MPFR_RNDU);
  mpfr_set(d2.get(), t.get(), MPFR_RNDU);
  if (mpfr_less_p(d1.get(), d2.get())) std::swap(d1, d2);
  if (mpfr_sgn(d1.get()) < 0) mpfr_set_zero(d1.get(), 1);
  return Ball::from_parts(mid, d1);
}

/// Image of x under an increasing function evaluated with directed rounding.
Ball increasing_image(const Ball& x, MpfrFn fn) {
  const mpfr_prec_t prec = x.precision();
  const Mpfr lo_in = x.lower();
  const Mpfr hi_in = x.upper();
  Mpfr lo(prec);
  Mpfr hi(prec);
  fn(lo.get(), lo_in.get(), MPFR_RNDD);
  fn(hi.get(), hi_in.get(), MPFR_RNDU);
  return from_endpoints(lo, hi, prec);
}

/// Image under a function with |f'| <= 1 everywhere.
Ball lipschitz_image(const Ball& x, MpfrFn fn) {
  Mpfr mid(x.precision());
  const int ternary = fn(mid.get(), x.mid().get(), MPFR_RNDN);
  Radius r = make_radius();
  mpfr_set(r.get(), x.rad().get(), MPFR_RNDU);
  if (ternary != 0) {
    Radius err = make_radius();
    if (mpfr_zero_p(mid.get())) {
      mpfr_set_ui_2exp(err.get(), 1, mpfr_get_emin(), MPFR_RNDU);
    } else {
      mpfr_set_ui_2exp(err.get(), 1, mpfr_get_exp(mid.get()) - mid.precision(), MPFR_RNDU);
    }
    mpfr_add(r.get(), r.get(), err.get(), MPFR_RNDU);
  }
  return Ball::from_parts(mid, r);
}

}  // namespace

Ball Ball::from_parts(const Mpfr& mid, const Mpfr& rad) {
  Ball out(mid.precision());
  mpfr_set(out.mid_.get(), mid.get(), MPFR_RNDN);
  mpfr_abs(out.rad_.get(), rad.get(), MPFR_RNDU);
  return out;
}

Ball abs(const Ball& x) {
  if (!x.contains_zero()) return x.is_negative() ? -x : x;
  Mpfr hi(x.precision());
  Mpfr t(x.precision());
  mpfr_abs(t.get(), x.mid().get(), MPFR_RNDU);
  mpfr_add(hi.get(), t.get(), x.rad().get(), MPFR_RNDU);
  Mpfr lo(x.precision());
  return from_endpoints(lo, hi, x.precision());
}

Ball sqrt(const Ball& x) {
  const Mpfr lo = x.lower();
  if (mpfr_sgn(lo.get()) < 0) throw InvalidArgument("sqrt: ball contains negative numbers");
  return increasing_image(x, mpfr_sqrt);
}

Ball exp(const Ball& x) { return increasing_image(x, mpfr_exp); }

Ball log(const Ball& x) {
  if (!x.is_positive()) throw InvalidArgument("log: ball contains nonpositive numbers");
  return increasing_image(x, mpfr_log);
}

Ball sinh(const Ball& x) { return increasing_image(x, mpfr_sinh); }

Ball cosh(const Ball& x) {
  if (x.is_positive()) return increasing_image(x, mpfr_cosh);
  if (x.is_negative()) return increasing_image(-x, mpfr_cosh);
  const mpfr_prec_t prec = x.precision();
  Mpfr hi_in(prec);
  Mpfr t(prec);
  mpfr_abs(t.get(), x.mid().get(), MPFR_RNDU);
  mpfr_add(hi_in.get(), t.get(), x.rad().get(), MPFR_RNDU);
  Mpfr hi(prec);
  mpfr_cosh(hi.get(), hi_in.get(), MPFR_RNDU);
  Mpfr lo(prec);
  mpfr_set_ui(lo.get(), 1, MPFR_RNDN);
  return from_endpoints(lo, hi, prec);
}

Ball cos(const Ball& x) { return lipschitz_image(x, mpfr_cos); }

Ball sin(const Ball& x) { return lipschitz_image(x, mpfr_sin); }

Ball pow_rational(const Ball& x, const mpq_class& exponent) {
  if (!x.is_positive()) throw InvalidArgument("pow_rational: base must be positive");
  if (exponent == 0) return Ball::from_int(1, x.precision());
  return exp(log(x) * Ball::from_mpq(exponent, x.precision()));
}

Ball hull(const Ball& a, const Ball& b) {
  const mpfr_prec_t prec = std::max(a.precision(), b.precision());
  Mpfr lo = a.lower();
  Mpfr hi = a.upper();
  const Mpfr blo = b.lower();
  const Mpfr bhi = b.upper();
  raise_precision(lo, prec);
  raise_precision(hi, prec);
  if (mpfr_less_p(blo.get(), lo.get())) mpfr_set(lo.get(), blo.get(), MPFR_RNDD);
  if (mpfr_greater_p(bhi.get(), hi.get())) mpfr_set(hi.get(), bhi.get(), MPFR_RNDU);
  return from_endpoints(lo, hi, prec);
}

}  // namespace magnetic
