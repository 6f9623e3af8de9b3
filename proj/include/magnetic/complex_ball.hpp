#pragma once

#include <cstdint>

#include "magnetic/ball.hpp"

namespace magnetic {

struct ComplexBall {
  Ball re;
  Ball im;

  ComplexBall() = default;
  explicit ComplexBall(mpfr_prec_t prec) : re(prec), im(prec) {}
  ComplexBall(Ball r, Ball i) : re(std::move(r)), im(std::move(i)) {}

  ComplexBall& operator+=(const ComplexBall& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  ComplexBall& operator-=(const ComplexBall& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  friend ComplexBall operator+(ComplexBall a, const ComplexBall& b) { return a += b; }
  friend ComplexBall operator-(ComplexBall a, const ComplexBall& b) { return a -= b; }
  friend ComplexBall operator*(const ComplexBall& a, const ComplexBall& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  ComplexBall scaled(const Ball& s) const { return {re * s, im * s}; }
  ComplexBall mul_si(long f) const { return {re.mul_si(f), im.mul_si(f)}; }

  bool overlaps(const ComplexBall& o) const { return re.overlaps(o.re) && im.overlaps(o.im); }
  bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }
};

/// e(num / den) = exp(2 pi i num / den), with the fraction reduced exactly
/// before evaluation.
ComplexBall unit_root(std::int64_t num, std::int64_t den, mpfr_prec_t prec);

}  // namespace magnetic
