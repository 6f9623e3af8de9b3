#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <string>

#include "doctest.h"
#include "magnetic/magnetic.h"

namespace {

std::string cell(const mgf_table* t, size_t i) {
  mgf_row r;
  REQUIRE(mgf_table_row(t, i, &r) == MGF_OK);
  return r.value;
}

}  // namespace

TEST_CASE("version and defaults") {
  CHECK(std::string(mgf_version()).size() > 0);
  mgf_options o;
  mgf_options_default(&o);
  CHECK(o.precision_bits == 0);
  CHECK(o.precision_multiplier == 1);
  CHECK(o.cutoff_multiplier == 1);
  CHECK(o.max_rounds >= 1);
  CHECK(o.test_perturbation == 0);
}

TEST_CASE("coefficients through the C interface") {
  mgf_form* f = nullptr;
  REQUIRE(mgf_form_new(4, -3, 1, &f) == MGF_OK);
  REQUIRE(mgf_form_validate(f) == MGF_OK);
  mgf_table* t = nullptr;
  REQUIRE(mgf_coefficients(f, 3, 0, nullptr, nullptr, &t) == MGF_OK);
  CHECK(mgf_table_size(t) == 3);
  CHECK(mgf_table_certified(t) == 1);
  CHECK(cell(t, 0) == "-8");
  CHECK(cell(t, 2) == "-25264224");
  mgf_row r;
  CHECK(mgf_table_row(t, 3, &r) == MGF_ERR_INVALID_ARGUMENT);
  mgf_table_free(t);
  mgf_form_free(f);
}

TEST_CASE("level-N form and translate") {
  mgf_form* f = nullptr;
  REQUIRE(mgf_form_new(2, -23, 1, &f) == MGF_OK);
  REQUIRE(mgf_form_all_signed(f, 6) == MGF_OK);
  mgf_table* t = nullptr;
  REQUIRE(mgf_coefficients(f, 5, 0, nullptr, nullptr, &t) == MGF_OK);
  CHECK(cell(t, 4) == "-196880");
  mgf_table_free(t);
  mgf_form_free(f);

  REQUIRE(mgf_form_new(6, -3, 1, &f) == MGF_OK);
  REQUIRE(mgf_translate(f, "auto", 1, nullptr, &t) == MGF_OK);
  CHECK(cell(t, 0) == "15360");
  CHECK(std::string(mgf_table_note(t)).find("(24,1)") != std::string::npos);
  mgf_table_free(t);
  CHECK(mgf_translate(f, "1,1", 1, nullptr, &t) == MGF_ERR_INVALID_ARGUMENT);
  CHECK(std::string(mgf_last_error()).find("cusp form 1") != std::string::npos);
  CHECK(mgf_translate(f, "x", 1, nullptr, &t) == MGF_ERR_INVALID_ARGUMENT);
  mgf_form_free(f);
}

TEST_CASE("invalid arguments map to status codes") {
  mgf_form* f = nullptr;
  REQUIRE(mgf_form_new(4, -2, 1, &f) == MGF_OK);
  CHECK(mgf_form_validate(f) == MGF_ERR_INVALID_ARGUMENT);
  CHECK(std::string(mgf_last_error()).size() > 0);
  mgf_table* t = nullptr;
  CHECK(mgf_coefficients(f, 1, 0, nullptr, nullptr, &t) == MGF_ERR_INVALID_ARGUMENT);
  CHECK(mgf_coefficients(nullptr, 1, 0, nullptr, nullptr, &t) == MGF_ERR_INVALID_ARGUMENT);
  mgf_form_free(f);
  char* s = nullptr;
  CHECK(mgf_jcoeff(-2, &s) == MGF_ERR_INVALID_ARGUMENT);
  CHECK(mgf_partition(-1, &s) == MGF_ERR_INVALID_ARGUMENT);
  mgf_report* rep = nullptr;
  CHECK(mgf_verify("nope", nullptr, &rep) == MGF_ERR_INVALID_ARGUMENT);
}

TEST_CASE("scalars and a report") {
  char* s = nullptr;
  REQUIRE(mgf_partition(24, &s) == MGF_OK);
  CHECK(std::string(s) == "1575");
  mgf_string_free(s);
  REQUIRE(mgf_jcoeff(1, &s) == MGF_OK);
  CHECK(std::string(s) == "196884");
  mgf_string_free(s);
  mgf_report* rep = nullptr;
  REQUIRE(mgf_verify("bessel", nullptr, &rep) == MGF_OK);
  CHECK(mgf_report_passed(rep) == 1);
  CHECK(mgf_report_case_count(rep) > 0);
  CHECK(mgf_report_failure_count(rep) == 0);
  CHECK(std::string(mgf_report_json(rep)).find("\"suite\"") != std::string::npos);
  mgf_report_free(rep);
}

TEST_CASE("cache round trip through the C interface") {
  const std::string path = std::string(P_tmpdir) + "/magnetic_capi_cache.jsonl";
  std::remove(path.c_str());
  mgf_form* f = nullptr;
  REQUIRE(mgf_form_new(3, -3, 1, &f) == MGF_OK);
  mgf_table* a = nullptr;
  mgf_table* b = nullptr;
  REQUIRE(mgf_coefficients(f, 4, 0, nullptr, path.c_str(), &a) == MGF_OK);
  REQUIRE(mgf_coefficients(f, 4, 0, nullptr, path.c_str(), &b) == MGF_OK);
  for (size_t i = 0; i < 4; ++i) {
    mgf_row x, y;
    mgf_table_row(a, i, &x);
    mgf_table_row(b, i, &y);
    CHECK(std::string(x.value) == y.value);
    CHECK(x.certified == y.certified);
    CHECK(x.precision_bits == y.precision_bits);
    CHECK(x.cutoff == y.cutoff);
  }
  mgf_table_free(a);
  mgf_table_free(b);
  mgf_form_free(f);
  std::remove(path.c_str());
}
