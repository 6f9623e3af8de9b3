#pragma once

// Exact elements of Q(zeta_M) stored as coefficient vectors over zeta^0..zeta^(M-1).

#include <gmpxx.h>

#include <cstdint>
#include <vector>

namespace magnetic {

class Cyclotomic {
 public:
  explicit Cyclotomic(std::int64_t order);

  std::int64_t order() const { return order_; }

  /// Adds coef * zeta^exponent (exponent taken mod the order).
  void add_root(const mpq_class& coef, std::int64_t exponent);

  Cyclotomic& operator+=(const Cyclotomic& other);
  Cyclotomic& operator-=(const Cyclotomic& other);
  Cyclotomic operator*(const Cyclotomic& other) const;
  Cyclotomic scaled(const mpq_class& factor) const;

  /// Canonical remainder modulo the cyclotomic polynomial Phi_M.
  std::vector<mpq_class> reduced() const;
  bool is_zero() const;
  bool operator==(const Cyclotomic& other) const;

  /// Same element viewed in Q(zeta_{order * factor}).
  Cyclotomic lifted(std::int64_t factor) const;

  /// Real and imaginary parts as doubles (for diagnostics only).
  double real_approx() const;
  double imag_approx() const;

 private:
  std::int64_t order_;
  std::vector<mpq_class> coeffs_;
};

/// Integer coefficients of Phi_M, lowest degree first.
std::vector<mpz_class> cyclotomic_polynomial(std::int64_t m);

}  // namespace magnetic
