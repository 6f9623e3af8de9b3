#pragma once

// Double-precision evaluation of the far part of the coefficient series, with
// an a-priori rounding bound. Internal to the engine.

#include <cstdint>
#include <functional>
#include <vector>

namespace magnetic::detail {

struct TailRange {
  std::int64_t n = 1;
  double x = 0;              // pi n sqrt|disc|, rounded to nearest
  std::int64_t lo = 0;       // exclusive; must satisfy lo >= x/2
  std::int64_t hi = 0;       // inclusive
  // Outputs: sum over lo < a <= hi of S_a(n) a^-k phi(x^2 / 4a^2).
  double re = 0;
  double im = 0;
  double error = 0;          // bound on |computed - exact| for each part
  std::uint64_t terms = 0;
};

struct TailForm {
  std::int64_t disc = 0;     // d D
  std::int64_t D = 1;
  std::int64_t level = 1;
  int k = 2;
  bool need_re = true;
  bool need_im = false;
  std::function<long(std::int64_t)> weight;  // weight of the class b mod 2 level
};

/// cos(pi t / a) and sin(pi t / a) for 0 <= t < 2a, each within 40 ulp-units of 2^-53.
void cos_sin_pi_ratio(std::int64_t t, std::int64_t a, double& c, double& s);

/// sum_j u^j / (j! prod_{i<=j} (nu + i)) for 0 <= u <= 1, with the number of
/// terms used returned through `terms`.
double bessel_ratio_series(double u, double nu, int& terms);

void run_fast_tail(const TailForm& form, std::vector<TailRange>& ranges);

}  // namespace magnetic::detail
