#include "magnetic/magnetic.h"

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <memory>
#include <new>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "engine_detail.hpp"
#include "magnetic/engine.hpp"
#include "magnetic/error.hpp"
#include "magnetic/qexp.hpp"
#include "magnetic/records.hpp"
#include "magnetic/verify.hpp"

struct mgf_form {
  magnetic::FormSpec spec;
  std::string description;
};

struct mgf_table {
  std::vector<magnetic::CoefficientRecord> rows;
  std::string note;
};

struct mgf_report {
  std::vector<magnetic::SuiteReport> reports;
  std::string json;
};

namespace {

thread_local std::string last_error;

template <typename F>
mgf_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return MGF_OK;
  } catch (const magnetic::InvalidArgument& e) {
    last_error = e.what();
    return MGF_ERR_INVALID_ARGUMENT;
  } catch (const magnetic::CertificationFailure& e) {
    last_error = e.what();
    return MGF_ERR_CERTIFICATION;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return MGF_ERR_OUT_OF_MEMORY;
  } catch (const std::filesystem::filesystem_error& e) {
    last_error = e.what();
    return MGF_ERR_IO;
  } catch (const magnetic::InternalError& e) {
    last_error = e.what();
    return MGF_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return MGF_ERR_INTERNAL;
  }
}

magnetic::EngineOptions engine_options(const mgf_options* o) {
  magnetic::EngineOptions out;
  if (!o) return out;
  if (o->precision_bits < 0) throw magnetic::InvalidArgument("precision_bits must be nonnegative");
  if (o->precision_multiplier < 1 || o->cutoff_multiplier < 1 || o->max_rounds < 1) {
    throw magnetic::InvalidArgument("multipliers and max_rounds must be at least 1");
  }
  if (o->precision_bits > 0) out.precision_bits = o->precision_bits;
  out.precision_multiplier = o->precision_multiplier;
  out.cutoff_multiplier = o->cutoff_multiplier;
  out.max_rounds = o->max_rounds;
  out.test_perturbation = o->test_perturbation;
  return out;
}

bool plain_options(const magnetic::EngineOptions& o) {
  return o.precision_multiplier == 1 && o.cutoff_multiplier == 1 && o.test_perturbation == 0;
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

magnetic::Relation parse_lambda(const std::string& text, int k) {
  if (text == "auto") return magnetic::find_relation(2 * k);
  magnetic::Relation r;
  r.weight = 2 * k;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      r.lambda.emplace_back(static_cast<long>(v));
    } catch (const std::exception&) {
      throw magnetic::InvalidArgument("lambda must be a comma-separated list of integers or 'auto' (got '" + text + "')");
    }
  }
  if (r.lambda.empty()) throw magnetic::InvalidArgument("lambda must not be empty");
  return r;
}

}  // namespace

extern "C" {

const char* mgf_version(void) { return "0.1.0"; }

const char* mgf_last_error(void) { return last_error.c_str(); }

void mgf_options_default(mgf_options* options) {
  if (!options) return;
  options->precision_bits = 0;
  options->precision_multiplier = 1;
  options->cutoff_multiplier = 1;
  options->max_rounds = 6;
  options->test_perturbation = 0;
}

mgf_status mgf_form_new(int k, int64_t d, int64_t D, mgf_form** out) {
  return guarded([&] {
    if (!out) throw magnetic::InvalidArgument("null output handle");
    auto* f = new mgf_form;
    f->spec.k = k;
    f->spec.d = d;
    f->spec.D = D;
    *out = f;
  });
}

mgf_status mgf_form_set_level(mgf_form* form, int64_t level) {
  return guarded([&] {
    if (!form) throw magnetic::InvalidArgument("null form");
    form->spec.level = level;
  });
}

mgf_status mgf_form_add_residue(mgf_form* form, int64_t r, long weight) {
  return guarded([&] {
    if (!form) throw magnetic::InvalidArgument("null form");
    form->spec.residues.emplace_back(r, weight);
  });
}

mgf_status mgf_form_all_signed(mgf_form* form, int64_t level) {
  return guarded([&] {
    if (!form) throw magnetic::InvalidArgument("null form");
    if (form->spec.D != 1) throw magnetic::InvalidArgument("FormSpec: level > 1 requires D = 1");
    form->spec = magnetic::FormSpec::all_signed(form->spec.k, form->spec.d, level);
  });
}

mgf_status mgf_form_validate(const mgf_form* form) {
  return guarded([&] {
    if (!form) throw magnetic::InvalidArgument("null form");
    form->spec.validate();
  });
}

const char* mgf_form_describe(mgf_form* form) {
  if (!form) return "";
  form->description = form->spec.describe();
  return form->description.c_str();
}

void mgf_form_free(mgf_form* form) { delete form; }

mgf_status mgf_coefficients(const mgf_form* form, int64_t n_max, int correct_cusp, const mgf_options* options,
                            const char* cache_path, mgf_table** out) {
  return guarded([&] {
    if (!form || !out) throw magnetic::InvalidArgument("null handle");
    if (n_max < 0) throw magnetic::InvalidArgument("nmax must be nonnegative");
    const auto& spec = form->spec;
    spec.validate();
    const auto opts = engine_options(options);
    const int dim = magnetic::cusp_form_dimension(2 * spec.k);
    const bool corrected = correct_cusp != 0 && dim > 0;
    if (corrected && spec.level != 1) throw magnetic::InvalidArgument("cusp correction needs a level-one form");
    const bool expect_certified = dim == 0 || corrected;
    auto table = std::make_unique<mgf_table>();

    std::optional<magnetic::CoefficientCache> cache;
    if (cache_path && *cache_path && plain_options(opts)) cache.emplace(cache_path);
    std::vector<std::optional<magnetic::CoefficientRecord>> hits(static_cast<std::size_t>(n_max));
    bool missing = false;
    for (int64_t n = 1; n <= n_max; ++n) {
      if (cache) {
        magnetic::CoefficientRecord probe = magnetic::CoefficientRecord::from_value(spec, corrected, {});
        probe.n = n;
        auto rec = cache->find(probe.key());
        if (rec && (rec->certified || !expect_certified) &&
            (!opts.precision_bits || rec->precision_bits >= *opts.precision_bits)) {
          hits[n - 1] = rec;
          continue;
        }
      }
      missing = true;
    }

    std::vector<magnetic::CoefficientValue> values;
    if (missing) {
      if (corrected) {
        const auto cc = magnetic::cusp_correction(spec, n_max, opts);
        values = cc.corrected;
        table->note = cc.description;
      } else if (expect_certified) {
        values = magnetic::coefficient_balls(spec, n_max, std::vector<double>(n_max, 0.4), opts);
        for (auto& v : values) magnetic::detail::certify_integer(v, opts);
      } else {
        values = magnetic::coefficient_block(spec, n_max, opts);
        table->note = "S_" + std::to_string(2 * spec.k) + " has dimension " + std::to_string(dim) +
                      "; raw coefficients are not integers until a cusp form is subtracted";
      }
    }
    for (int64_t n = 1; n <= n_max; ++n) {
      if (hits[n - 1]) {
        table->rows.push_back(*hits[n - 1]);
        continue;
      }
      auto rec = magnetic::CoefficientRecord::from_value(spec, corrected, values[n - 1]);
      if (cache) cache->store(rec);
      table->rows.push_back(std::move(rec));
    }
    *out = table.release();
  });
}

mgf_status mgf_translate(const mgf_form* form, const char* lambda, int64_t n_max, const mgf_options* options,
                         mgf_table** out) {
  return guarded([&] {
    if (!form || !out || !lambda) throw magnetic::InvalidArgument("null handle");
    if (n_max < 0) throw magnetic::InvalidArgument("nmax must be nonnegative");
    form->spec.validate();
    const auto relation = parse_lambda(lambda, form->spec.k);
    const auto result = magnetic::hecke_translate(form->spec, relation, n_max, engine_options(options));
    auto table = std::make_unique<mgf_table>();
    std::ostringstream note;
    note << "lambda = (";
    for (std::size_t i = 0; i < relation.lambda.size(); ++i) note << (i ? "," : "") << relation.lambda[i].get_str();
    note << "); translate =";
    bool first = true;
    for (const auto& [delta, mu] : result.family) {
      note << (first ? " " : " + ") << mu.get_str() << "*f[k=" << form->spec.k << ",d=" << delta
           << ",D=" << form->spec.D << "]";
      first = false;
    }
    table->note = note.str();
    for (const auto& v : result.coefficients) {
      table->rows.push_back(magnetic::CoefficientRecord::from_value(form->spec, false, v));
    }
    *out = table.release();
  });
}

size_t mgf_table_size(const mgf_table* table) { return table ? table->rows.size() : 0; }

mgf_status mgf_table_row(const mgf_table* table, size_t index, mgf_row* out) {
  return guarded([&] {
    if (!table || !out) throw magnetic::InvalidArgument("null handle");
    if (index >= table->rows.size()) throw magnetic::InvalidArgument("row index out of range");
    const auto& r = table->rows[index];
    out->n = r.n;
    out->value = r.value.c_str();
    out->certified = r.certified ? 1 : 0;
    out->precision_bits = r.precision_bits;
    out->cutoff = r.cutoff;
  });
}

const char* mgf_table_note(const mgf_table* table) { return table ? table->note.c_str() : ""; }

int mgf_table_certified(const mgf_table* table) {
  if (!table) return 0;
  for (const auto& r : table->rows) {
    if (!r.certified) return 0;
  }
  return 1;
}

void mgf_table_free(mgf_table* table) { delete table; }

mgf_status mgf_verify(const char* suite, const mgf_options* options, mgf_report** out) {
  return guarded([&] {
    if (!suite || !out) throw magnetic::InvalidArgument("null handle");
    auto report = std::make_unique<mgf_report>();
    report->reports = magnetic::run_suites(suite, engine_options(options));
    report->json = magnetic::reports_json(report->reports);
    *out = report.release();
  });
}

int mgf_report_passed(const mgf_report* report) {
  if (!report) return 0;
  for (const auto& r : report->reports) {
    if (!r.overall) return 0;
  }
  return 1;
}

const char* mgf_report_json(const mgf_report* report) { return report ? report->json.c_str() : ""; }

size_t mgf_report_case_count(const mgf_report* report) {
  size_t n = 0;
  if (report) {
    for (const auto& r : report->reports) n += r.cases.size();
  }
  return n;
}

size_t mgf_report_failure_count(const mgf_report* report) {
  size_t n = 0;
  if (report) {
    for (const auto& r : report->reports) {
      for (const auto& c : r.cases) n += c.pass ? 0 : 1;
    }
  }
  return n;
}

void mgf_report_free(mgf_report* report) { delete report; }

mgf_status mgf_partition(int64_t n, char** out) {
  return guarded([&] {
    if (!out) throw magnetic::InvalidArgument("null output");
    if (n < 0) throw magnetic::InvalidArgument("partition: n must be nonnegative");
    if (n > 1000000) throw magnetic::InvalidArgument("partition: n must not exceed 10^6");
    *out = copy_string(magnetic::partition(n).get_str());
  });
}

mgf_status mgf_jcoeff(int64_t n, char** out) {
  return guarded([&] {
    if (!out) throw magnetic::InvalidArgument("null output");
    if (n < -1) throw magnetic::InvalidArgument("jcoeff: n must be at least -1");
    if (n > 20000) throw magnetic::InvalidArgument("jcoeff: n must not exceed 20000");
    *out = copy_string(magnetic::j_invariant(n + 1).integer_coefficient(n).get_str());
  });
}

void mgf_string_free(char* s) { std::free(s); }

}  // extern "C"
