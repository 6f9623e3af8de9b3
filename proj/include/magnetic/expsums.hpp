#pragma once

// Salie sums, plus-space Kloosterman sums and representation counts.

#include <atomic>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "magnetic/complex_ball.hpp"
#include "magnetic/cyclotomic.hpp"

namespace magnetic {

/// Parameters of S_{a,d,D}(n), optionally restricted to level | a and
/// b = residue mod 2 level.
struct SalieParams {
  std::int64_t a = 1;
  std::int64_t d = 0;
  std::int64_t D = 1;
  std::int64_t n = 1;
  std::int64_t level = 1;
  std::optional<std::int64_t> residue;
};

/// All b in [0, 2a) with b^2 = disc mod 4a.
std::vector<std::int64_t> square_roots_mod_4a(std::int64_t disc, std::int64_t a);

/// Validates params (throws InvalidArgument).
void validate_salie(const SalieParams& p);

ComplexBall salie_sum(const SalieParams& p, mpfr_prec_t prec);

/// Exact value in Q(zeta_{4a}).
Cyclotomic salie_sum_exact(const SalieParams& p);

/// K+(m, n, a) = ((1-i)/4)(1 + (4/a)) sum_{j mod* 4a} (4a/j) eps_j e((m j + n jbar)/4a),
/// eps_j = 1 for j = 1 mod 4 and i for j = 3 mod 4.
ComplexBall kloosterman_plus(std::int64_t m, std::int64_t n, std::int64_t a, mpfr_prec_t prec);

/// Exact value in Q(zeta_{4a}).
Cyclotomic kloosterman_plus_exact(std::int64_t m, std::int64_t n, std::int64_t a);

/// Right-hand side sum_{m | (n,a)} (D/m) sqrt(m/a) K+(d, n^2 D/m^2, a/m).
ComplexBall salie_via_kloosterman(std::int64_t a, std::int64_t d, std::int64_t D, std::int64_t n,
                                  mpfr_prec_t prec);

/// r*_disc(a) = #{b mod 2a : b^2 = disc mod 4a} from the local product formula.
std::int64_t representation_count(std::int64_t disc, std::int64_t a);
std::int64_t representation_count_brute(std::int64_t disc, std::int64_t a);

/// Usage counters for the distinct Salie code paths.
struct SalieCoverage {
  std::atomic<std::uint64_t> level_one_ball{0};
  std::atomic<std::uint64_t> level_n_ball{0};
  std::atomic<std::uint64_t> exact{0};
  std::atomic<std::uint64_t> kloosterman{0};
  std::atomic<std::uint64_t> fast_kernel{0};
};
SalieCoverage& salie_coverage();

/// Enumerates square roots of disc modulo 4a for a = step, 2 step, ... up to a_max
/// in increasing order, factoring a with a segmented sieve. Memory stays
/// proportional to sqrt(a_max) plus the prime table.
class SquareRootSweep {
 public:
  SquareRootSweep(std::int64_t disc, std::int64_t a_max);

  /// Calls visit(a, roots) for every multiple a of step in [a_min, a_max]
  /// that has at least one root; roots are the b in [0, 2a), unsorted.
  void run(std::int64_t a_min, std::int64_t step,
           const std::function<void(std::int64_t, const std::vector<std::int64_t>&)>& visit) const;

 private:
  std::int64_t root_of_prime(std::int64_t p) const;

  std::int64_t disc_;
  std::int64_t a_max_;
  std::vector<std::uint32_t> primes_;      // all primes <= a_max
  std::vector<std::uint32_t> prime_roots_; // sqrt(disc) mod p, or UINT32_MAX if none
};

}  // namespace magnetic
