#include <random>

#include "doctest.h"
#include "magnetic/arith.hpp"
#include "magnetic/error.hpp"
#include "magnetic/qexp.hpp"

using namespace magnetic;

namespace {

// sigma_3 directly, for the E4 oracle.
mpz_class sigma3(std::int64_t n) {
  mpz_class s = 0;
  for (std::int64_t d = 1; d <= n; ++d) {
    if (n % d == 0) s += mpz_class(d) * d * d;
  }
  return s;
}

// Partitions of n into parts <= k, by recursion.
std::int64_t count_partitions(std::int64_t n, std::int64_t k) {
  if (n == 0) return 1;
  if (n < 0 || k == 0) return 0;
  return count_partitions(n - k, k) + count_partitions(n, k - 1);
}

}  // namespace

TEST_CASE("bernoulli numbers") {
  CHECK(bernoulli(0) == 1);
  CHECK(bernoulli(1) == mpq_class(-1, 2));
  CHECK(bernoulli(2) == mpq_class(1, 6));
  CHECK(bernoulli(4) == mpq_class(-1, 30));
  CHECK(bernoulli(12) == mpq_class(-691, 2730));
  CHECK(bernoulli(7) == 0);
}

TEST_CASE("eisenstein series") {
  const auto e4 = eisenstein(4, 20);
  CHECK(e4.coefficient(0) == 1);
  CHECK(e4.coefficient(1) == 240);
  CHECK(e4.coefficient(2) == 2160);
  for (int n = 1; n < 20; ++n) CHECK(e4.coefficient(n) == 240 * sigma3(n));
  CHECK(eisenstein(6, 5).coefficient(1) == -504);
  CHECK(eisenstein(12, 3).coefficient(0) == 1);
  CHECK_THROWS_AS(eisenstein(5, 3), InvalidArgument);
  CHECK_THROWS_AS(eisenstein(2, 3), InvalidArgument);
  CHECK_THROWS_AS(e4.coefficient(20), TruncationError);
}

TEST_CASE("delta and j") {
  const auto d = delta(200);
  CHECK(d.has_integer_coefficients());
  CHECK(d.coefficient(0) == 0);
  CHECK(d.coefficient(1) == 1);
  CHECK(d.coefficient(2) == -24);
  CHECK(d.coefficient(3) == 252);
  CHECK(d.leading_exponent() <= 1);
  const auto j = j_invariant(10);
  CHECK(j.coefficient(-1) == 1);
  CHECK(j.coefficient(0) == 744);
  CHECK(j.coefficient(1) == 196884);
  CHECK(j.coefficient(2) == 21493760);
  CHECK_THROWS_AS(j.coefficient(10), TruncationError);
  const auto e4 = eisenstein(4, 30);
  const auto lhs = j_invariant(30) * delta(30);
  for (int n = 0; n < lhs.truncation_order(); ++n) CHECK(lhs.coefficient(n) == e4.pow(3).coefficient(n));
  const auto jp = j_prime(5);
  CHECK(jp.coefficient(-1) == -1);
  CHECK(jp.coefficient(2) == 2 * 21493760);
}

TEST_CASE("eta and partitions") {
  CHECK(partition(0) == 1);
  CHECK(partition(5) == 7);
  CHECK(partition(24) == 1575);
  CHECK(partition(47) == 124754);
  for (int n = 0; n <= 40; ++n) CHECK(partition(n) == count_partitions(n, n));
  const auto e = eta(200);
  const auto ei = eta_inverse(200);
  CHECK(e.scale() == 24);
  CHECK(e.coefficient(1) == 1);
  CHECK(e.coefficient(25) == -1);
  const auto one = e * ei;
  CHECK(one.coefficient(0) == 1);
  for (std::int64_t x = 1; x < one.truncation_order(); ++x) REQUIRE(one.coefficient(x) == 0);
  for (std::int64_t n = 0; n < 200; ++n) REQUIRE(ei.coefficient(24 * n - 1) == partition(n));
}

TEST_CASE("miller basis and relations") {
  const auto b12 = miller_basis(12, 10);
  REQUIRE(b12.size() == 1);
  const auto d = delta(10);
  for (int n = 0; n < 10; ++n) CHECK(b12[0].coefficient(n) == d.coefficient(n));
  const auto b16 = miller_basis(16, 5);
  CHECK(b16[0].coefficient(2) == 216);
  CHECK_THROWS_AS(miller_basis(8, 5), InvalidArgument);
  for (int w : {24, 36, 48}) {
    const auto b = miller_basis(w, 12);
    const int dim = cusp_form_dimension(w);
    REQUIRE(static_cast<int>(b.size()) == dim);
    for (int m = 1; m <= dim; ++m) {
      REQUIRE(b[static_cast<std::size_t>(m - 1)].has_integer_coefficients());
      for (int i = 1; i <= dim; ++i) REQUIRE(b[static_cast<std::size_t>(m - 1)].coefficient(i) == (i == m ? 1 : 0));
    }
  }
  CHECK(find_relation(8).lambda == std::vector<mpz_class>{1});
  CHECK(find_relation(12).lambda == std::vector<mpz_class>{24, 1});
  CHECK(find_relation(16).lambda == std::vector<mpz_class>{-216, 1});
  for (int w = 4; w <= 60; w += 2) CHECK(relation_violation(find_relation(w)) == 0);
  CHECK(relation_violation(Relation{12, {1}}) == 1);
}

TEST_CASE("hecke operators") {
  const auto d = delta(40);
  const auto t2 = hecke_integral(d, 2, 12);
  CHECK(t2.coefficient(1) == -24);
  for (int n = 1; n < t2.truncation_order(); ++n) CHECK(t2.coefficient(n) == -24 * d.coefficient(n));
  const auto t1 = hecke_integral(d, 1, 12);
  for (int n = 0; n < 40; ++n) CHECK(t1.coefficient(n) == d.coefficient(n));
  CHECK_THROWS_AS(hecke_integral(d, 2, 12).coefficient(20), TruncationError);

  std::mt19937_64 rng(9);
  std::vector<mpq_class> c(200);
  for (auto& x : c) x = static_cast<long>(rng() % 2001) - 1000;
  const ExactSeries f(0, c, 200);
  for (std::int64_t m = 1; m <= 12; ++m) {
    const auto a = hecke_integral(f, m, 12);
    const auto b = hecke_by_recursion(f, m, 12);
    const std::int64_t t = std::min(a.truncation_order(), b.truncation_order());
    REQUIRE(t >= 200 / m - 1);
    for (std::int64_t n = 0; n < t; ++n) REQUIRE(a.coefficient(n) == b.coefficient(n));
  }
  // T_4 = T_2 T_2 - 2^11 on the monomial q.
  const ExactSeries q = ExactSeries::monomial(1, 1, 50);
  const auto lhs = hecke_integral(hecke_integral(q, 2, 12), 2, 12) - q.scaled(2048);
  CHECK(lhs.coefficient(1) == hecke_integral(q, 4, 12).coefficient(1));
}
