#pragma once

// Positive definite integral binary quadratic forms.

#include <cstdint>
#include <optional>
#include <vector>

namespace magnetic {

/// a x^2 + b x y + c y^2
struct QuadraticForm {
  std::int64_t a = 0;
  std::int64_t b = 0;
  std::int64_t c = 0;

  std::int64_t discriminant() const { return b * b - 4 * a * c; }
  std::int64_t evaluate(std::int64_t x, std::int64_t y) const { return a * x * x + b * x * y + c * y * y; }
  bool operator==(const QuadraticForm&) const = default;
};

struct ClassRepresentative {
  QuadraticForm form;
  int stabilizer_order = 1;
};

/// Forms [a, b, (b^2 - disc)/4a] with level | a, 0 < a <= a_max and b running
/// over (-a, a] with b^2 = disc mod 4a. With level > 1 the b range is
/// [0, 2a) and b is further restricted to b = residue mod 2 level.
std::vector<QuadraticForm> enumerate_infinity_reps(std::int64_t disc, std::int64_t a_max,
                                                   std::int64_t level = 1,
                                                   std::optional<std::int64_t> residue = std::nullopt);

/// chi_D(Q): 0 if gcd(a, b, c, D) > 1, else (D / n) for a value n = Q(x, y)
/// coprime to D.
int genus_character(const QuadraticForm& q, std::int64_t D);

/// Same, but with the represented value chosen from the `skip`-th coprime
/// value found; used to test independence of the choice.
int genus_character_with_choice(const QuadraticForm& q, std::int64_t D, int skip);

/// Gaussian reduction to |b| <= a <= c, b >= 0 when |b| = a or a = c.
ClassRepresentative reduce_form(const QuadraticForm& q);

}  // namespace magnetic
