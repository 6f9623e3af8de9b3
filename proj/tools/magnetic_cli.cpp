// Command-line front end over the C interface.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "magnetic/magnetic.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

int exit_for(mgf_status s) { return s == MGF_ERR_INVALID_ARGUMENT ? kExitUsage : kExitFailure; }

int report_error(mgf_status s) {
  std::cerr << "error: " << mgf_last_error() << "\n";
  return exit_for(s);
}

struct FormArgs {
  int k = 0;
  std::int64_t d = 0;
  std::int64_t D = 1;
  std::int64_t level = 1;
  std::vector<std::string> residues;
  std::vector<long> signs;
};

struct EngineArgs {
  long precision_bits = 0;
  long perturb = 0;
  long precision_multiplier = 1;
  long cutoff_multiplier = 1;
};

void add_form_options(CLI::App* app, FormArgs& f) {
  app->add_option("--k", f.k, "half the weight (k >= 2)")->required();
  app->add_option("--d", f.d, "discriminant d = 0,1 mod 4")->required();
  app->add_option("--D", f.D, "fundamental discriminant D with dD < 0")->required();
}

void add_engine_options(CLI::App* app, EngineArgs& e) {
  app->add_option("--precision-bits", e.precision_bits,
                  "starting precision in bits (default: automatic, or $MAGNETIC_PRECISION_BITS)");
  // negative control for harness tests; deliberately undocumented
  app->add_option("--test-perturbation", e.perturb)->group("");
  app->add_option("--precision-multiplier", e.precision_multiplier)->group("");
  app->add_option("--cutoff-multiplier", e.cutoff_multiplier)->group("");
}

mgf_options make_options(const EngineArgs& e) {
  mgf_options o;
  mgf_options_default(&o);
  o.precision_bits = e.precision_bits;
  if (o.precision_bits == 0) {
    if (const char* env = std::getenv("MAGNETIC_PRECISION_BITS")) {
      try {
        o.precision_bits = std::stol(env);
      } catch (const std::exception&) {
        throw CLI::ValidationError("MAGNETIC_PRECISION_BITS", "must be an integer");
      }
    }
  }
  o.test_perturbation = e.perturb;
  o.precision_multiplier = e.precision_multiplier;
  o.cutoff_multiplier = e.cutoff_multiplier;
  return o;
}

// Builds the form handle; returns an exit code on failure.
std::optional<int> build_form(const FormArgs& f, mgf_form** out) {
  mgf_status s = mgf_form_new(f.k, f.d, f.D, out);
  if (s != MGF_OK) return report_error(s);
  const bool all_signed = f.residues.size() == 1 && f.residues.front() == "all-signed";
  if (all_signed) {
    s = mgf_form_all_signed(*out, f.level);
    if (s != MGF_OK) return report_error(s);
  } else {
    if ((s = mgf_form_set_level(*out, f.level)) != MGF_OK) return report_error(s);
    if (!f.signs.empty() && f.signs.size() != f.residues.size()) {
      std::cerr << "error: --sign must be given once per --r\n";
      return kExitUsage;
    }
    for (std::size_t i = 0; i < f.residues.size(); ++i) {
      std::int64_t r = 0;
      try {
        std::size_t used = 0;
        r = std::stoll(f.residues[i], &used);
        if (used != f.residues[i].size()) throw std::invalid_argument("r");
      } catch (const std::exception&) {
        std::cerr << "error: --r must be an integer or all-signed (got '" << f.residues[i] << "')\n";
        return kExitUsage;
      }
      const long sign = f.signs.empty() ? 1 : f.signs[i];
      if ((s = mgf_form_add_residue(*out, r, sign)) != MGF_OK) return report_error(s);
    }
  }
  if ((s = mgf_form_validate(*out)) != MGF_OK) return report_error(s);
  return std::nullopt;
}

void print_table(const mgf_table* table, const std::string& format, const std::string& form) {
  const std::size_t rows = mgf_table_size(table);
  if (format == "json") {
    nlohmann::ordered_json out;
    out["form"] = form;
    out["rows"] = nlohmann::json::array();
    for (std::size_t i = 0; i < rows; ++i) {
      mgf_row r;
      mgf_table_row(table, i, &r);
      out["rows"].push_back(nlohmann::ordered_json{{"n", r.n},
                                                   {"value", r.value},
                                                   {"certified", r.certified != 0},
                                                   {"precision_bits", r.precision_bits},
                                                   {"cutoff", r.cutoff}});
    }
    std::cout << out.dump(2) << "\n";
    return;
  }
  std::cout << "n,value,certified,precision_bits,cutoff\n";
  for (std::size_t i = 0; i < rows; ++i) {
    mgf_row r;
    mgf_table_row(table, i, &r);
    std::cout << r.n << "," << r.value << "," << (r.certified ? "true" : "false") << "," << r.precision_bits << ","
              << r.cutoff << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified Fourier coefficients of meromorphic modular forms attached to quadratic forms"};
  app.require_subcommand(1);

  FormArgs form;
  EngineArgs engine;
  std::int64_t n_max = 0;
  std::string format = "csv";
  bool correct_cusp = false;
  std::string cache_path;
  auto* coeffs = app.add_subcommand("coeffs", "certified coefficients c(1..nmax)");
  add_form_options(coeffs, form);
  coeffs->add_option("--level", form.level, "level N (default 1)");
  coeffs->add_option("--r", form.residues, "residue class r mod 2N (repeatable), or all-signed");
  coeffs->add_option("--sign", form.signs, "weight of the matching --r (repeatable, default 1)");
  coeffs->add_option("--nmax", n_max, "largest n")->required();
  coeffs->add_flag("--correct-cusp", correct_cusp, "subtract the cusp form matching the first coefficients");
  coeffs->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  coeffs->add_option("--cache", cache_path, "JSON-lines coefficient cache (single process only)");
  add_engine_options(coeffs, engine);

  FormArgs tform;
  EngineArgs tengine;
  std::int64_t t_nmax = 0;
  std::string lambda;
  std::string t_format = "csv";
  auto* translate = app.add_subcommand("translate", "Hecke translate sum lambda_m f|T_m");
  add_form_options(translate, tform);
  translate->add_option("--lambda", lambda, "relation as 'l1,l2,...' or auto")->required();
  translate->add_option("--nmax", t_nmax, "largest n")->required();
  translate->add_option("--format", t_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  add_engine_options(translate, tengine);

  std::string suite;
  std::string report_path;
  EngineArgs vengine;
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", suite,
                     "paper-tables | divisibility | signs | partition-j | exp-sums | bessel | case-change | "
                     "eta-quotients | coverage | all")
      ->required();
  verify->add_option("--report", report_path, "write the JSON report here");
  add_engine_options(verify, vengine);

  std::int64_t pn = 0;
  auto* partition = app.add_subcommand("partition", "partition number p(n)");
  partition->add_option("--n", pn, "n >= 0")->required();

  std::int64_t jn = 0;
  auto* jcoeff = app.add_subcommand("jcoeff", "coefficient of q^n in j");
  jcoeff->add_option("--n", jn, "n >= -1")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*coeffs || *translate) {
      const bool is_coeffs = static_cast<bool>(*coeffs);
      const auto opts = make_options(is_coeffs ? engine : tengine);
      mgf_form* f = nullptr;
      if (auto code = build_form(is_coeffs ? form : tform, &f)) {
        mgf_form_free(f);
        return *code;
      }
      mgf_table* table = nullptr;
      const mgf_status s = is_coeffs ? mgf_coefficients(f, n_max, correct_cusp ? 1 : 0, &opts,
                                                        cache_path.empty() ? nullptr : cache_path.c_str(), &table)
                                     : mgf_translate(f, lambda.c_str(), t_nmax, &opts, &table);
      const std::string description = mgf_form_describe(f);
      mgf_form_free(f);
      if (s != MGF_OK) return report_error(s);
      print_table(table, is_coeffs ? format : t_format, description);
      const std::string note = mgf_table_note(table);
      if (!note.empty()) std::cerr << note << "\n";
      const bool ok = mgf_table_certified(table) != 0;
      mgf_table_free(table);
      if (!ok) {
        std::cerr << "error: some values could not be certified as integers";
        if (is_coeffs && !correct_cusp) std::cerr << " (try --correct-cusp if cusp forms exist in this weight)";
        std::cerr << "\n";
        return kExitFailure;
      }
      return kExitOk;
    }
    if (*verify) {
      const auto opts = make_options(vengine);
      mgf_report* report = nullptr;
      const mgf_status s = mgf_verify(suite.c_str(), &opts, &report);
      if (s != MGF_OK) return report_error(s);
      const auto parsed = nlohmann::json::parse(mgf_report_json(report));
      const auto list = parsed.is_array() ? parsed : nlohmann::json::array({parsed});
      for (const auto& r : list) {
        std::cout << r["suite"].get<std::string>() << ": " << r["overall"].get<std::string>() << " ("
                  << r["cases"].size() << " cases, " << r["runtime_seconds"].get<double>() << " s)\n";
        for (const auto& c : r["cases"]) {
          if (c["verdict"] == "fail") {
            std::cout << "  FAIL " << c["description"].get<std::string>() << ": expected "
                      << c["expected"].get<std::string>() << ", computed " << c["computed"].get<std::string>()
                      << "\n";
          }
        }
      }
      if (!report_path.empty()) {
        std::ofstream out(report_path);
        if (!out) {
          std::cerr << "error: cannot write " << report_path << "\n";
          mgf_report_free(report);
          return kExitFailure;
        }
        out << mgf_report_json(report) << "\n";
      }
      const bool ok = mgf_report_passed(report) != 0;
      mgf_report_free(report);
      return ok ? kExitOk : kExitFailure;
    }
    char* text = nullptr;
    const mgf_status s = *partition ? mgf_partition(pn, &text) : mgf_jcoeff(jn, &text);
    if (s != MGF_OK) return report_error(s);
    std::cout << text << "\n";
    mgf_string_free(text);
    return kExitOk;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
