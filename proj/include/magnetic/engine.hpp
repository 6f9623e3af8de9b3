#pragma once

// Certified Fourier coefficients of the meromorphic forms f_{k,d,D} and their
// level-N analogues, computed from the Bessel/Salie expansion.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "magnetic/complex_ball.hpp"
#include "magnetic/qexp.hpp"

namespace magnetic {

/// Names one form: level 1 uses (k, d, D); level N > 1 uses D = 1 and an
/// integer combination sum_r weight_r f_{k,d,r}.
struct FormSpec {
  int k = 2;
  std::int64_t d = -3;
  std::int64_t D = 1;
  std::int64_t level = 1;
  std::vector<std::pair<std::int64_t, long>> residues;  // (r mod 2N, weight)

  static FormSpec level_one(int k, std::int64_t d, std::int64_t D = 1);
  /// sum_r (12/r) f_{k,d,r} at level 6, or f_{k,d,r0} - f_{k,d,-r0} at level 8.
  static FormSpec all_signed(int k, std::int64_t d, std::int64_t level);

  /// Throws InvalidArgument naming the violated condition.
  void validate() const;
  std::string key() const;
  std::string describe() const;
  /// Combined weight of the residue class b mod 2N.
  long weight_of(std::int64_t b) const;
  /// True when the weights satisfy w(-r) = w(r); then every coefficient is real.
  bool is_symmetric() const;
  bool is_antisymmetric() const;
  int weight() const { return 2 * k; }
};

/// C_{k,d,D} = ((k-1)! / (2 pi)^k) * |d|^(k-1/2) or * l^(2k-1) |D|^(k-1/2).
Ball normalizing_constant(const FormSpec& spec, mpfr_prec_t prec);

struct EngineOptions {
  std::optional<long> precision_bits;   // overrides the automatic starting precision
  int max_rounds = 6;
  long cutoff_multiplier = 1;           // scales every chosen cutoff
  long precision_multiplier = 1;        // scales every starting precision
  std::int64_t fast_tail_threshold = 3000;  // kernel switches to doubles above this many terms
  long test_perturbation = 0;           // added to certified integers (negative controls only)
  bool use_memo = true;
};

struct Certificate {
  std::int64_t cutoff = 0;        // A: last a summed explicitly
  std::int64_t ball_limit = 0;    // a <= ball_limit evaluated in ball arithmetic
  long precision_bits = 0;
  double truncation_bound = 0;    // bound on the omitted a > A, after the prefactor
  double kernel_error = 0;        // rounding bound of the double-precision range
  double radius = 0;              // final radius (max over real/imaginary part)
  int rounds = 0;
};

struct CoefficientValue {
  std::int64_t n = 0;
  ComplexBall ball;
  bool certified = false;
  mpz_class real;
  mpz_class imag;
  Certificate certificate;

  bool is_real() const { return imag == 0; }
  /// "123", "-4i", "3+5i" when certified; otherwise "mid +/- rad".
  std::string value_string() const;
};

/// Raw coefficient balls with radius at most `target_radius[n-1]` where
/// achievable; no integrality claim.
std::vector<CoefficientValue> coefficient_balls(const FormSpec& spec, std::int64_t n_max,
                                                const std::vector<double>& target_radius,
                                                const EngineOptions& options = {});

/// Certified integers when dim S_2k = 0 or `assert_integral`; otherwise balls.
/// Throws CertificationFailure if an integer cannot be certified.
std::vector<CoefficientValue> coefficient_block(const FormSpec& spec, std::int64_t n_max,
                                                const EngineOptions& options = {},
                                                bool assert_integral = false);
CoefficientValue coefficient(const FormSpec& spec, std::int64_t n, const EngineOptions& options = {});

struct CuspCorrection {
  std::vector<CoefficientValue> corrected;  // n = 1..n_max, all certified
  std::vector<Ball> weights;                // g = sum_m weights[m-1] * M_m (Miller basis)
  std::string description;
};

/// Subtracts the cusp form matching the first dim S_2k coefficients.
CuspCorrection cusp_correction(const FormSpec& spec, std::int64_t n_max, const EngineOptions& options = {});

/// Integer combination of level-one forms: sum weight * f_{k,delta,D}.
using FamilyCombination = std::map<std::int64_t, mpz_class>;  // delta -> weight

/// sum_m lambda_m f_{k,d,D} | T_m expanded through the T_p action on the family.
FamilyCombination hecke_family(int k, std::int64_t d, std::int64_t D, const Relation& relation);

struct HeckeResult {
  std::vector<CoefficientValue> coefficients;  // family route, certified
  std::vector<mpz_class> series_route;         // same integers from the series route
  FamilyCombination family;
};

/// Coefficients of the Hecke translate, computed by both routes and compared;
/// InternalError on disagreement, InvalidArgument for an invalid relation.
HeckeResult hecke_translate(const FormSpec& base, const Relation& relation, std::int64_t n_max,
                            const EngineOptions& options = {});

/// Case change for fundamental d0, D: f_{k, l^2 d0, D} as a combination of f_{k, delta, d0}.
struct WeightedSpec {
  FormSpec spec;
  mpz_class weight;
};
std::vector<WeightedSpec> case_change_expand(int k, std::int64_t l, std::int64_t d0, std::int64_t D);

/// Divisibility consequences of the divisor-sum shape: n^(k-1) | c(n) and the
/// refined n1^(2k-1) n2^(k-1) | c(n). Returns an empty string on success.
std::string divisor_sum_crosscheck(int k, std::int64_t d, std::int64_t D, std::int64_t n, const mpz_class& c);

/// Drops every memoized coefficient.
void clear_engine_memo();

}  // namespace magnetic
