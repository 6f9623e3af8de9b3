#pragma once

// Verification suites: each binds engine output to a published value, an
// independent oracle, or an exact identity, and reports case by case.

#include <optional>
#include <string>
#include <vector>

#include "magnetic/engine.hpp"

namespace magnetic {

struct CaseResult {
  std::string description;
  std::string expected;
  std::string computed;
  std::string source;  // "reference table", "oracle", "identity", "definition"
  bool pass = false;
};

struct SuiteReport {
  std::string suite;
  std::vector<CaseResult> cases;
  bool overall = true;
  double runtime_seconds = 0;

  void add(CaseResult c);
};

struct DivisibilitySubject {
  FormSpec spec;
  std::optional<Relation> relation;  // Hecke translate when set
  std::int64_t n_max = 25;
};

/// f_{4,-3,1} table (n <= 13), F_{-23} table (n <= 20), the k = 6 translate (n <= 6).
SuiteReport suite_reference_tables(const EngineOptions& options = {});
/// n^(k-1) | c(n) and the refined n1^(2k-1) n2^(k-1) split.
SuiteReport suite_divisibility(const std::vector<DivisibilitySubject>& subjects, const EngineOptions& options = {});
SuiteReport suite_divisibility(const EngineOptions& options = {});
/// (-1)^(k + n d D) c(n) > 0.
SuiteReport suite_signs(const std::vector<FormSpec>& specs, std::int64_t n_max, const EngineOptions& options = {});
SuiteReport suite_signs(const EngineOptions& options = {});
/// Partition and j-coefficient formulas for F_{-23}, plus p(24) and p(47).
SuiteReport suite_partition_j(const EngineOptions& options = {});
/// Salie-Kloosterman identity, representation counts, Salie bound.
SuiteReport suite_exponential_sums();
/// Bessel monotonicity inequalities.
SuiteReport suite_bessel_bounds();
/// Case-change expansions evaluated on both sides.
SuiteReport suite_case_change(const EngineOptions& options = {});
/// Level-one forms against the eta/Eisenstein quotients, n <= n_max.
SuiteReport suite_eta_quotients(std::int64_t n_max = 30, const EngineOptions& options = {});
/// One case per Salie code path, from the process-wide usage counters.
SuiteReport suite_coverage();

/// Suite names accepted by run_suites, in execution order (without "all").
std::vector<std::string> suite_names();
/// Runs one named suite, or every suite followed by the coverage check for "all".
/// Throws InvalidArgument for unknown names.
std::vector<SuiteReport> run_suites(const std::string& name, const EngineOptions& options = {});

/// {suite, cases: [{description, expected, computed, verdict, source}], overall, runtime_seconds}
std::string report_json(const SuiteReport& report);
/// A single object for one report, an array for several.
std::string reports_json(const std::vector<SuiteReport>& reports);

}  // namespace magnetic
