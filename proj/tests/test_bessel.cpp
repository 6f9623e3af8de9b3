#include <cmath>

#include "doctest.h"
#include "magnetic/bessel.hpp"

using namespace magnetic;

namespace {

// Independent oracle: MPFR's real-argument power series via the half-integer
// recurrence from I_{-1/2} = sqrt(2/(pi x)) cosh x and I_{1/2} = sqrt(2/(pi x)) sinh x,
// evaluated at very high precision with no error tracking.
double oracle(int m, double x) {
  Mpfr s(2000), c(2000), f(2000), t(2000);
  mpfr_set_d(t.get(), x, MPFR_RNDN);
  mpfr_sinh(s.get(), t.get(), MPFR_RNDN);
  mpfr_cosh(c.get(), t.get(), MPFR_RNDN);
  mpfr_const_pi(f.get(), MPFR_RNDN);
  mpfr_mul(f.get(), f.get(), t.get(), MPFR_RNDN);
  mpfr_ui_div(f.get(), 2, f.get(), MPFR_RNDN);
  mpfr_sqrt(f.get(), f.get(), MPFR_RNDN);
  mpfr_mul(s.get(), s.get(), f.get(), MPFR_RNDN);  // I_{1/2}
  mpfr_mul(c.get(), c.get(), f.get(), MPFR_RNDN);  // I_{-1/2}
  // I_{nu+1} = I_{nu-1} - (2 nu / x) I_nu
  for (int j = 0; j < m; ++j) {
    Mpfr next(2000);
    mpfr_mul_ui(next.get(), s.get(), static_cast<unsigned long>(2 * j + 1), MPFR_RNDN);
    mpfr_div(next.get(), next.get(), t.get(), MPFR_RNDN);
    mpfr_sub(next.get(), c.get(), next.get(), MPFR_RNDN);
    c = s;
    s = next;
  }
  return mpfr_get_d(s.get(), MPFR_RNDN);
}

}  // namespace

TEST_CASE("I_{1/2}(1) and I_{3/2}(1)") {
  const Ball one = Ball::from_int(1, 128);
  const Ball i12 = bessel_i_half(0, one);
  CHECK(std::fabs(i12.mid_double() - 0.937674888245488) < 1e-14);
  const Ball expected = exp(-one).mul_si(2) / sqrt(Ball::pi(128).mul_si(2));
  CHECK(bessel_i_half(1, one).overlaps(expected));
  CHECK(bessel_i_half_closed(1, one).overlaps(expected));
  CHECK(bessel_i_half_series(1, one).overlaps(expected));
}

TEST_CASE("closed form and series agree with tight radii") {
  for (int m = 0; m <= 8; ++m) {
    for (const mpq_class& xq : {mpq_class(1, 10), mpq_class(1), mpq_class(10), mpq_class(100)}) {
      for (mpfr_prec_t p : {64, 256}) {
        const Ball xe = Ball::from_mpq(xq, p);
        const Ball a = bessel_i_half_closed(m, xe);
        const Ball b = bessel_i_half_series(m, xe);
        REQUIRE(a.overlaps(b));
        const Ball chosen = bessel_i_half(m, xe);
        // Relative radius within 2^(10-p).
        Mpfr bound(64);
        mpfr_abs(bound.get(), chosen.mid().get(), MPFR_RNDD);
        mpfr_mul_2si(bound.get(), bound.get(), 10 - p, MPFR_RNDD);
        REQUIRE(mpfr_lessequal_p(chosen.rad().get(), bound.get()));
        const double o = oracle(m, xq.get_d());
        REQUIRE(std::fabs(chosen.mid_double() - o) <= 1e-12 * std::fabs(o));
      }
    }
  }
}

TEST_CASE("small argument behaves like the leading series term") {
  for (int m = 0; m <= 6; ++m) {
    const Ball x = Ball::from_mpq(mpq_class(1, 1000), 128);
    const Ball lead = pow_rational(x.mul_2exp(-1), mpq_class(2 * m + 1, 2)) /
                      gamma_half_integer_plus_one(m, 128);
    const Ball v = bessel_i_half(m, x);
    const double rel = v.mid_double() / lead.mid_double();
    CHECK(rel > 1.0);
    CHECK(rel < 1.0 + 1e-6);
  }
}

TEST_CASE("series bound dominates I_nu") {
  for (int m = 0; m <= 8; ++m) {
    for (int xi : {1, 3, 10, 40, 150}) {
      const Ball y = Ball::from_int(xi, 128);
      const Ball v = bessel_i_half(m, y);
      const Ball b = bessel_upper_bound(m, y);
      CHECK(v.certainly_less_or_equal(b));
    }
  }
  // Monotone in the upper endpoint.
  const Ball narrow = Ball::from_double(5.0, 0.1, 128);
  const Ball wide = Ball::from_double(5.0, 0.5, 128);
  CHECK(bessel_upper_bound(1, narrow).certainly_less(bessel_upper_bound(1, wide)));
}
