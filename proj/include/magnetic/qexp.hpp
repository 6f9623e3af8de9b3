#pragma once

// Exact truncated q-series over Q and the classical level-one expansions.

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <vector>

namespace magnetic {

/// sum_i coeffs[i] q^((leading + i) / scale), valid for exponents strictly below
/// truncation / scale. Exponents are integers in units of 1/scale.
class ExactSeries {
 public:
  ExactSeries() = default;
  ExactSeries(std::int64_t leading, std::vector<mpq_class> coeffs, std::int64_t truncation,
              std::int64_t scale = 1);

  static ExactSeries constant(const mpq_class& c, std::int64_t truncation, std::int64_t scale = 1);
  static ExactSeries monomial(const mpq_class& c, std::int64_t exponent, std::int64_t truncation,
                              std::int64_t scale = 1);

  std::int64_t leading_exponent() const { return leading_; }
  std::int64_t truncation_order() const { return truncation_; }
  std::int64_t scale() const { return scale_; }

  /// Coefficient of q^(exponent/scale); TruncationError at or past the
  /// truncation order, zero below the leading exponent.
  mpq_class coefficient(std::int64_t exponent) const;
  /// Same, asserting the result is an integer.
  mpz_class integer_coefficient(std::int64_t exponent) const;

  ExactSeries operator+(const ExactSeries& o) const;
  ExactSeries operator-(const ExactSeries& o) const;
  ExactSeries operator*(const ExactSeries& o) const;
  ExactSeries operator/(const ExactSeries& o) const;
  ExactSeries operator-() const;
  ExactSeries scaled(const mpq_class& c) const;
  ExactSeries pow(unsigned e) const;
  /// Reciprocal; the lowest stored coefficient must be nonzero.
  ExactSeries inverse() const;
  /// Drops everything at or above the new order (which may only shrink).
  ExactSeries truncated(std::int64_t truncation) const;

  bool has_integer_coefficients() const;

 private:
  void normalize();

  std::int64_t leading_ = 0;
  std::vector<mpq_class> coeffs_;
  std::int64_t truncation_ = 0;
  std::int64_t scale_ = 1;
};

/// Bernoulli number B_n (B_1 = -1/2).
mpq_class bernoulli(int n);

/// E_w = 1 - (2w / B_w) sum sigma_{w-1}(n) q^n, valid below q^order.
ExactSeries eisenstein(int weight, std::int64_t order);
/// (E4^3 - E6^2) / 1728.
ExactSeries delta(std::int64_t order);
/// E4^3 / Delta = q^-1 + 744 + ...
ExactSeries j_invariant(std::int64_t order);
/// q d/dq j.
ExactSeries j_prime(std::int64_t order);
/// sum (12/n) q^(n^2/24), scale 24, valid below q^order.
ExactSeries eta(std::int64_t order);
/// q^(-1/24) sum p(n) q^n, scale 24, valid below q^order.
ExactSeries eta_inverse(std::int64_t order);

/// p(n) by the pentagonal number recurrence.
mpz_class partition(std::int64_t n);

/// dim S_w for the full modular group.
int cusp_form_dimension(int weight);

/// Echelon basis q^m + O(q^(dim+1)), m = 1..dim, with integer coefficients.
std::vector<ExactSeries> miller_basis(int weight, std::int64_t order);

struct Relation {
  int weight = 0;
  std::vector<mpz_class> lambda;  // lambda[0] is lambda_1
};

/// Primitive relation supported on 1..dim+1 (lambda = (1) when dim = 0).
Relation find_relation(int weight);

/// Index (1-based) of the first Miller basis form not annihilated, or 0.
int relation_violation(const Relation& relation);

/// (f | T_m)(n) = sum_{d | (m, n)} d^(w-1) c(mn / d^2) for a coefficient getter c.
template <typename T, typename Coef, typename Scale>
T hecke_coefficient(const Coef& c, std::int64_t m, std::int64_t n, int weight, const Scale& scale_by) {
  T total = scale_by(c(m * n), mpz_class(1));
  for (std::int64_t d = 2; d <= m; ++d) {
    if (m % d != 0 || n % d != 0) continue;
    mpz_class w;
    mpz_ui_pow_ui(w.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(weight - 1));
    total += scale_by(c(m * n / (d * d)), w);
  }
  return total;
}

/// Hecke image by the divisor-sum formula; input must start at q^0 or later.
ExactSeries hecke_integral(const ExactSeries& f, std::int64_t m, int weight);
/// Same operator assembled from T_p, the prime-power recursion and multiplicativity.
ExactSeries hecke_by_recursion(const ExactSeries& f, std::int64_t m, int weight);

}  // namespace magnetic
