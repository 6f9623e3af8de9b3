#include "doctest.h"
#include "magnetic/engine.hpp"
#include "magnetic/error.hpp"

using namespace magnetic;

namespace {

// (f|T_m)(n) = sum_{e | (m, n)} e^(2k-1) c(mn/e^2), directly from a coefficient list.
mpz_class hecke_oracle(const std::vector<CoefficientValue>& c, int k, std::int64_t m, std::int64_t n) {
  mpz_class s = 0;
  for (std::int64_t e = 1; e <= std::min(m, n); ++e) {
    if (m % e != 0 || n % e != 0) continue;
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), e, 2 * k - 1);
    s += p * c[m * n / (e * e) - 1].real;
  }
  return s;
}

}  // namespace

TEST_CASE("hecke family for the weight 12 relation") {
  const Relation rel{12, {24, 1}};
  const auto fam = hecke_family(6, -3, 1, rel);
  REQUIRE(fam.size() == 2);
  CHECK(fam.at(-12) == 1);
  CHECK(fam.at(-3) == -8);
}

TEST_CASE("translate values by both routes") {
  const auto res = hecke_translate(FormSpec::level_one(6, -3), find_relation(12), 4);
  const std::vector<mpz_class> expected{15360, mpz_class("53320089600"), mpz_class("27304305972940800"),
                                        mpz_class("6890347995128848711680")};
  REQUIRE(res.coefficients.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(res.coefficients[i].certified);
    CHECK(res.coefficients[i].real == expected[i]);
    CHECK(res.series_route[i] == expected[i]);
  }
}

TEST_CASE("translate with T_2 against a direct Hecke oracle") {
  // weight 6 and 10 have no cusp forms, so every relation is valid; odd k
  // exercises the (delta/p) term of the family action
  for (const int k : {3, 5}) {
    const FormSpec spec = FormSpec::level_one(k, -3);
    const auto base = coefficient_block(spec, 12);
    const auto res = hecke_translate(spec, Relation{2 * k, {0, 1}}, 6);
    for (std::int64_t n = 1; n <= 6; ++n) {
      CAPTURE(k);
      CAPTURE(n);
      CHECK(res.coefficients[n - 1].real == hecke_oracle(base, k, 2, n));
    }
  }
}

TEST_CASE("T_1 is the identity") {
  const auto res = hecke_translate(FormSpec::level_one(4, -3), Relation{8, {1}}, 3);
  CHECK(res.coefficients[0].real == -8);
  CHECK(res.coefficients[1].real == 26688);
  CHECK(res.coefficients[2].real == -25264224);
}

TEST_CASE("invalid relations are rejected") {
  CHECK_THROWS_AS(hecke_translate(FormSpec::level_one(6, -3), Relation{12, {1, 1}}, 1), InvalidArgument);
}

TEST_CASE("case change") {
  const auto items = case_change_expand(2, 2, 1, -3);
  REQUIRE(items.size() == 2);
  CHECK(items[0].spec.d == -12);
  CHECK(items[0].weight == 1);
  CHECK(items[1].spec.d == -3);
  CHECK(items[1].weight == -4);
  const auto lhs = coefficient_block(FormSpec::level_one(2, 4, -3), 5);
  const auto a = coefficient_block(items[0].spec, 5);
  const auto b = coefficient_block(items[1].spec, 5);
  for (std::size_t i = 0; i < 5; ++i) CHECK(lhs[i].real == a[i].real - 4 * b[i].real);
}

TEST_CASE("cusp correction is stable under doubled precision and cutoff") {
  for (const int k : {6, 8}) {
    const auto base = cusp_correction(FormSpec::level_one(k, -3), 6);
    EngineOptions opts;
    opts.use_memo = false;
    opts.precision_multiplier = 2;
    opts.cutoff_multiplier = 2;
    const auto twice = cusp_correction(FormSpec::level_one(k, -3), 6, opts);
    for (std::size_t i = 0; i < 6; ++i) {
      CHECK(base.corrected[i].certificate.radius < 0.5);
      CHECK(base.corrected[i].real == twice.corrected[i].real);
    }
  }
}

TEST_CASE("divisor-sum crosscheck reports violations") {
  CHECK(divisor_sum_crosscheck(4, -3, 1, 3, mpz_class(-25264224)).empty());
  CHECK_FALSE(divisor_sum_crosscheck(4, -3, 1, 2, mpz_class(26689)).empty());
  // 3^7 must divide c(3) for f_{4,-3,1}; 27 * 9 = 243 satisfies n^3 but not 3^7
  CHECK_FALSE(divisor_sum_crosscheck(4, -3, 1, 3, mpz_class(243)).empty());
}
