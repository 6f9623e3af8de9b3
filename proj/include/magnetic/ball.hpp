#pragma once

// Arbitrary-precision real balls: an MPFR midpoint with an upward-rounded
// radius. Every operation returns a ball containing the exact image of all
// points in the operand balls.

#include <mpfr.h>

#include <gmpxx.h>

#include <optional>
#include <string>

namespace magnetic {

/// Owning wrapper around mpfr_t.
class Mpfr {
 public:
  explicit Mpfr(mpfr_prec_t prec = 64);
  Mpfr(const Mpfr& other);
  Mpfr(Mpfr&& other) noexcept;
  Mpfr& operator=(const Mpfr& other);
  Mpfr& operator=(Mpfr&& other) noexcept;
  ~Mpfr();

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }
  mpfr_prec_t precision() const { return mpfr_get_prec(value_); }

 private:
  mpfr_t value_;
};

class Ball {
 public:
  /// Bits carried by the radius; radii are always rounded upward.
  static constexpr mpfr_prec_t kRadiusBits = 30;

  Ball() : Ball(64) {}
  explicit Ball(mpfr_prec_t prec);

  static Ball from_int(long value, mpfr_prec_t prec);
  static Ball from_mpz(const mpz_class& value, mpfr_prec_t prec);
  static Ball from_mpq(const mpq_class& value, mpfr_prec_t prec);
  /// Exact double midpoint plus a radius (rounded up when stored).
  static Ball from_double(double mid, double rad, mpfr_prec_t prec);
  static Ball pi(mpfr_prec_t prec);
  /// Midpoint copied at its own precision; radius rounded up.
  static Ball from_parts(const Mpfr& mid, const Mpfr& rad);

  mpfr_prec_t precision() const { return mid_.precision(); }
  const Mpfr& mid() const { return mid_; }
  const Mpfr& rad() const { return rad_; }

  /// Widens the radius by a nonnegative amount.
  void add_error(const Mpfr& err);
  void add_error(double err);

  /// Rounds the midpoint to prec bits, accounting for the rounding.
  Ball with_precision(mpfr_prec_t prec) const;

  double mid_double() const;
  /// Upper bound on the radius as a double (+inf if not representable).
  double rad_upper_double() const;
  /// log2 of the radius, rounded up; -inf for an exact ball.
  double rad_log2() const;
  std::string mid_string(int digits = 30) const;
  std::string to_string(int digits = 20) const;

  /// Endpoints, rounded outward.
  Mpfr lower() const;
  Mpfr upper() const;

  bool is_exact() const;
  bool is_finite() const;
  bool contains_zero() const;
  bool contains(const mpz_class& value) const;
  bool contains(const mpq_class& value) const;
  bool contains(const Ball& inner) const;
  bool overlaps(const Ball& other) const;
  bool is_positive() const;
  bool is_negative() const;
  /// Certified strict comparisons: every point of *this vs every point of other.
  bool certainly_less(const Ball& other) const;
  bool certainly_less_or_equal(const Ball& other) const;

  /// The unique integer in the ball when the radius is below 1/2.
  std::optional<mpz_class> unique_integer() const;

  Ball operator-() const;
  Ball& operator+=(const Ball& other);
  Ball& operator-=(const Ball& other);
  Ball& operator*=(const Ball& other);
  Ball& operator/=(const Ball& other);

  friend Ball operator+(Ball lhs, const Ball& rhs) { return lhs += rhs; }
  friend Ball operator-(Ball lhs, const Ball& rhs) { return lhs -= rhs; }
  friend Ball operator*(Ball lhs, const Ball& rhs) { return lhs *= rhs; }
  friend Ball operator/(Ball lhs, const Ball& rhs) { return lhs /= rhs; }

  Ball mul_si(long factor) const;
  Ball div_si(long divisor) const;
  Ball mul_mpz(const mpz_class& factor) const;
  Ball mul_2exp(long e) const;

 private:
  friend Ball abs(const Ball& x);

  void account_rounding(int ternary);

  Mpfr mid_;
  Mpfr rad_;
};

Ball abs(const Ball& x);
/// Errors on balls containing negative numbers.
Ball sqrt(const Ball& x);
Ball exp(const Ball& x);
/// Errors on balls containing nonpositive numbers.
Ball log(const Ball& x);
Ball sinh(const Ball& x);
Ball cosh(const Ball& x);
Ball cos(const Ball& x);
Ball sin(const Ball& x);
/// x^(num/den) for a positive ball x.
Ball pow_rational(const Ball& x, const mpq_class& exponent);
/// Smallest ball covering both.
Ball hull(const Ball& a, const Ball& b);

}  // namespace magnetic
