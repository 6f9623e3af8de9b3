#include <random>

#include "doctest.h"
#include "magnetic/arith.hpp"
#include "magnetic/error.hpp"
#include "magnetic/expsums.hpp"
#include "magnetic/qforms.hpp"

using namespace magnetic;

TEST_CASE("enumerate_infinity_reps examples") {
  CHECK(enumerate_infinity_reps(-3, 1) == std::vector<QuadraticForm>{{1, 1, 1}});
  CHECK(enumerate_infinity_reps(-4, 1) == std::vector<QuadraticForm>{{1, 0, 1}});
  CHECK(enumerate_infinity_reps(-3, 0).empty());
  CHECK_THROWS_AS(enumerate_infinity_reps(5, 3), InvalidArgument);
  CHECK_THROWS_AS(enumerate_infinity_reps(-23, 12, 6, 2), InvalidArgument);
  const auto level6 = enumerate_infinity_reps(-23, 60, 6, 1);
  for (const auto& q : level6) {
    CHECK(q.a % 6 == 0);
    CHECK(mod_floor(q.b - 1, 12) == 0);
    CHECK(q.discriminant() == -23);
  }
}

TEST_CASE("enumeration counts match representation numbers") {
  for (std::int64_t disc = -400; disc < 0; ++disc) {
    if (!is_discriminant(disc)) continue;
    const auto forms = enumerate_infinity_reps(disc, 60);
    std::vector<std::int64_t> per_a(61, 0);
    for (const auto& q : forms) {
      REQUIRE(q.discriminant() == disc);
      ++per_a[static_cast<std::size_t>(q.a)];
    }
    for (std::int64_t a = 1; a <= 60; ++a) REQUIRE(per_a[static_cast<std::size_t>(a)] == representation_count(disc, a));
  }
}

TEST_CASE("genus character examples") {
  CHECK(genus_character({2, 1, 3}, 1) == 1);
  CHECK(genus_character({1, 1, 1}, -3) == 1);
  CHECK(genus_character({2, 1, 3}, -23) == 1);
  CHECK(genus_character({3, 3, 1}, -3) == 1);
  CHECK(genus_character({3, 0, 3}, -3) == 0);
  CHECK_THROWS_AS(genus_character({1, 1, 1}, -12), InvalidArgument);
}

TEST_CASE("genus character does not depend on the represented value") {
  std::mt19937_64 rng(3);
  const std::int64_t fundamentals[] = {-3, -4, -7, -8, 5, 8, 12, 13, -23, -24, 17, 21};
  int tested = 0;
  while (tested < 100) {
    const std::int64_t D = fundamentals[rng() % 12];
    const std::int64_t d = std::uniform_int_distribution<std::int64_t>(-60, 60)(rng);
    if (d == 0 || !is_discriminant(d) || d * D >= 0) continue;
    const std::int64_t disc = d * D;
    const std::int64_t a = std::uniform_int_distribution<std::int64_t>(1, 40)(rng);
    const auto roots = square_roots_mod_4a(disc, a);
    if (roots.empty()) continue;
    const std::int64_t b = roots[rng() % roots.size()];
    const QuadraticForm q{a, b, (b * b - disc) / (4 * a)};
    const int base = genus_character(q, D);
    for (int skip = 0; skip < 5; ++skip) REQUIRE(genus_character_with_choice(q, D, skip) == base);
    ++tested;
  }
}

TEST_CASE("reduce_form") {
  auto r = reduce_form({1, 1, 1});
  CHECK(r.form == QuadraticForm{1, 1, 1});
  CHECK(r.stabilizer_order == 3);
  r = reduce_form({1, 0, 1});
  CHECK(r.stabilizer_order == 2);
  r = reduce_form({2, 2, 3});
  CHECK(r.form == QuadraticForm{2, 2, 3});
  CHECK(r.stabilizer_order == 1);
  CHECK(reduce_form({7, 9, 3}).form.discriminant() == 81 - 84);
  CHECK(reduce_form({7, 9, 3}).form == QuadraticForm{1, 1, 1});
  CHECK_THROWS_AS(reduce_form({1, 3, 1}), InvalidArgument);
  for (const auto& q : enumerate_infinity_reps(-20, 30)) {
    const auto r1 = reduce_form(q);
    const auto& f = r1.form;
    REQUIRE(f.discriminant() == -20);
    REQUIRE(std::llabs(f.b) <= f.a);
    REQUIRE(f.a <= f.c);
    REQUIRE(reduce_form(f).form == f);
  }
}
