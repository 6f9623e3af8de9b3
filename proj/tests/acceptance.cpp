// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "magnetic/engine.hpp"
#include "magnetic/verify.hpp"

using namespace magnetic;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

mpz_class product(int sign, const std::vector<std::pair<const char*, unsigned>>& factors) {
  mpz_class out = sign;
  for (const auto& [p, e] : factors) {
    mpz_class pe;
    mpz_pow_ui(pe.get_mpz_t(), mpz_class(p).get_mpz_t(), e);
    out *= pe;
  }
  return out;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string first_failure(const SuiteReport& r) {
  for (const auto& c : r.cases) {
    if (!c.pass) return c.description + ": expected " + c.expected + ", got " + c.computed;
  }
  return "";
}

Outcome from_suite(const SuiteReport& r) {
  const std::string f = first_failure(r);
  return {r.overall && !r.cases.empty(),
          f.empty() ? std::to_string(r.cases.size()) + " cases in " + std::to_string(r.runtime_seconds) + " s" : f};
}

Outcome criterion_f4_table() {
  const std::vector<mpz_class> expected{
      product(-1, {{"2", 3}}),
      product(1, {{"2", 6}, {"3", 1}, {"139", 1}}),
      product(-1, {{"2", 5}, {"3", 7}, {"19", 2}}),
      product(1, {{"2", 9}, {"11", 1}, {"2701693", 1}}),
      product(-1, {{"2", 4}, {"3", 1}, {"5", 3}, {"281", 1}, {"881", 1}, {"4889", 1}}),
      product(1, {{"2", 8}, {"3", 8}, {"17", 1}, {"47", 1}, {"2241181", 1}}),
      product(-1, {{"2", 6}, {"7", 3}, {"2719", 1}, {"18970105159", 1}}),
      product(1, {{"2", 12}, {"3", 1}, {"5", 2}, {"1295477040593987", 1}}),
      product(-1, {{"2", 3}, {"3", 14}, {"19", 1}, {"182694956615167", 1}}),
      product(1, {{"2", 7}, {"3", 2}, {"5", 3}, {"295642982601336076331", 1}}),
      product(-1, {{"2", 5}, {"3", 1}, {"7", 1}, {"11", 3}, {"4057", 1}, {"20107", 1}, {"181052802473957", 1}}),
      product(1, {{"2", 11}, {"3", 7}, {"43", 1}, {"20724160121281042379621", 1}}),
      product(-1, {{"2", 4}, {"13", 3}, {"73", 1}, {"79", 1}, {"2551", 1}, {"2280777977195403472231", 1}})};
  const auto t0 = std::chrono::steady_clock::now();
  const auto vals = coefficient_block(FormSpec::level_one(4, -3), 13);
  const double t = seconds_since(t0);
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (!vals[i].certified || vals[i].real != expected[i]) {
      return {false, "c(" + std::to_string(i + 1) + ") = " + vals[i].value_string() + ", expected " + expected[i].get_str()};
    }
  }
  return {t < 30, "n = 1..13 exact, " + std::to_string(t) + " s (limit 30 s)"};
}

Outcome criterion_f23_table() {
  const std::vector<const char*> expected{
      "1", "2", "3", "4", "-196880", "6", "-42790629", "8", "9", "-393760", "1582436878077", "12",
      "285420848487502", "-85581258", "-590640", "16", "-8658073941610362614", "18",
      "-1472066917939200724860", "-787520"};
  const auto t0 = std::chrono::steady_clock::now();
  const auto vals = coefficient_block(FormSpec::all_signed(2, -23, 6), 20);
  const double t = seconds_since(t0);
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (!vals[i].certified || vals[i].real != mpz_class(expected[i]) || vals[i].imag != 0) {
      return {false, "c(" + std::to_string(i + 1) + ") = " + vals[i].value_string() + ", expected " + expected[i]};
    }
  }
  return {t < 300, "n = 1..20 exact, " + std::to_string(t) + " s (limit 300 s)"};
}

Outcome criterion_translate() {
  const std::vector<const char*> table{"1", "3471360", "1777624086780", "448590364266201088",
                                       "78199299812183544918750", "10856758910771768587996372992"};
  const Relation rel = find_relation(12);
  if (rel.lambda != std::vector<mpz_class>{24, 1}) return {false, "relation for S_12 is not (24,1)"};
  const auto h = hecke_translate(FormSpec::level_one(6, -3), rel, 6);
  for (std::size_t i = 0; i < table.size(); ++i) {
    const mpz_class e = mpz_class(table[i]) * 15360;
    if (!h.coefficients[i].certified || h.coefficients[i].real != e) return {false, "family route differs at n = " + std::to_string(i + 1)};
    if (h.series_route[i] != e) return {false, "series route differs at n = " + std::to_string(i + 1)};
  }
  return {true, "n = 1..6 equal 15360 * table by family and series routes"};
}

Outcome criterion_cusp_soundness() {
  std::string detail;
  for (const int k : {6, 8}) {
    const auto base = cusp_correction(FormSpec::level_one(k, -3), 8);
    EngineOptions doubled;
    doubled.use_memo = false;
    doubled.precision_multiplier = 2;
    doubled.cutoff_multiplier = 2;
    const auto again = cusp_correction(FormSpec::level_one(k, -3), 8, doubled);
    double worst = 0;
    for (std::size_t i = 0; i < 8; ++i) {
      const auto& v = base.corrected[i];
      worst = std::max(worst, v.certificate.radius);
      if (!v.certified || !(v.certificate.radius < 0.5)) {
        return {false, "k = " + std::to_string(k) + " c(" + std::to_string(i + 1) + ") not certified"};
      }
      if (!again.corrected[i].certified || again.corrected[i].real != v.real) {
        return {false, "k = " + std::to_string(k) + " c(" + std::to_string(i + 1) + ") changed under doubling"};
      }
    }
    detail += "k = " + std::to_string(k) + " max radius " + std::to_string(worst) + "; ";
  }
  return {true, detail + "doubled precision and cutoff reproduce the integers"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"f[k=4,d=-3,D=1] table n <= 13", criterion_f4_table},
      {"F_{-23} table n <= 20", criterion_f23_table},
      {"Hecke translate (24,1) at k = 6, both routes", criterion_translate},
      {"divisibility n^(k-1) | c(n) and refined 3-power splits",
       [] { return from_suite(suite_divisibility()); }},
      {"sign law (-1)^(k+ndD) c(n) > 0, n <= 25", [] { return from_suite(suite_signs()); }},
      {"divisor-sum formulas for F_{-23}, p(24), p(47)", [] { return from_suite(suite_partition_j()); }},
      {"eta-quotient identities n <= 30", [] { return from_suite(suite_eta_quotients(30)); }},
      {"exponential-sum identities and bounds", [] { return from_suite(suite_exponential_sums()); }},
      {"Bessel inequalities and the (0.20, 0.21) ratio", [] { return from_suite(suite_bessel_bounds()); }},
      {"cusp-corrected k = 6, 8 certify and are stable", criterion_cusp_soundness},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("%s criterion %zu: %s (%s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
