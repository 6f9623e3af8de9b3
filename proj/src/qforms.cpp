#include "magnetic/qforms.hpp"

#include <cstdlib>
#include <string>

#include "magnetic/arith.hpp"
#include "magnetic/error.hpp"

namespace magnetic {

std::vector<QuadraticForm> enumerate_infinity_reps(std::int64_t disc, std::int64_t a_max, std::int64_t level,
                                                   std::optional<std::int64_t> residue) {
  if (disc >= 0) throw InvalidArgument("enumerate_infinity_reps: discriminant must be negative");
  if (!is_discriminant(disc)) throw InvalidArgument("enumerate_infinity_reps: discriminant must be 0 or 1 mod 4");
  if (level < 1) throw InvalidArgument("enumerate_infinity_reps: level must be positive");
  if (level > 1) {
    if (!residue) throw InvalidArgument("enumerate_infinity_reps: level > 1 needs a residue");
    if (mod_floor(*residue * *residue - disc, 4 * level) != 0) {
      throw InvalidArgument("enumerate_infinity_reps: residue^2 must equal the discriminant mod 4 level");
    }
  }
  std::vector<QuadraticForm> out;
  for (std::int64_t a = level; a <= a_max; a += level) {
    const std::int64_t lo = level > 1 ? 0 : -a + 1;
    const std::int64_t hi = level > 1 ? 2 * a - 1 : a;
    for (std::int64_t b = lo; b <= hi; ++b) {
      if (mod_floor(b * b - disc, 4 * a) != 0) continue;
      if (level > 1 && mod_floor(b - *residue, 2 * level) != 0) continue;
      out.push_back({a, b, (b * b - disc) / (4 * a)});
    }
  }
  return out;
}

int genus_character_with_choice(const QuadraticForm& q, std::int64_t D, int skip) {
  if (!is_fundamental_discriminant(D)) {
    throw InvalidArgument("genus_character: D = " + std::to_string(D) + " is not fundamental");
  }
  const std::int64_t disc = q.discriminant();
  if (disc % D != 0 || !is_discriminant(disc / D)) {
    throw InvalidArgument("genus_character: D must divide the discriminant with a discriminant cofactor");
  }
  if (D == 1) return 1;
  if (gcd(gcd(q.a, q.b), gcd(q.c, D)) > 1) return 0;
  if (skip == 0) {
    // Q(1,0) = a and Q(0,1) = c are the cheapest represented values.
    if (gcd(q.a, D) == 1) return kronecker(D, q.a);
    if (gcd(q.c, D) == 1) return kronecker(D, q.c);
  }
  const std::int64_t bound = 2 * std::llabs(D);
  int found = 0;
  for (std::int64_t r = 0; r <= bound; ++r) {
    // Walk the square shell max(|x|,|y|) = r so small values come first.
    for (std::int64_t x = -r; x <= r; ++x) {
      for (std::int64_t y = -r; y <= r; ++y) {
        if (std::llabs(x) != r && std::llabs(y) != r) continue;
        const std::int64_t n = q.evaluate(x, y);
        if (n == 0 || gcd(n, D) != 1) continue;
        if (found++ == skip) return kronecker(D, n);
      }
    }
  }
  throw InternalError("genus_character: no represented value coprime to D");
}

int genus_character(const QuadraticForm& q, std::int64_t D) { return genus_character_with_choice(q, D, 0); }

ClassRepresentative reduce_form(const QuadraticForm& q) {
  if (q.a <= 0 || q.discriminant() >= 0) throw InvalidArgument("reduce_form: form must be positive definite");
  std::int64_t a = q.a, b = q.b, c = q.c;
  for (;;) {
    if (b > a || b <= -a) {
      // Translate b into (-a, a] by x -> x + k y.
      const std::int64_t nb = mod_floor(b + a - 1, 2 * a) - a + 1;
      const std::int64_t k = (nb - b) / (2 * a);
      c = a * k * k + b * k + c;
      b = nb;
    }
    if (a > c) {
      std::swap(a, c);
      b = -b;
      continue;
    }
    break;
  }
  if (a == c && b < 0) b = -b;
  ClassRepresentative out{{a, b, c}, 1};
  if (a == b && b == c) out.stabilizer_order = 3;
  else if (b == 0 && a == c) out.stabilizer_order = 2;
  return out;
}

}  // namespace magnetic
