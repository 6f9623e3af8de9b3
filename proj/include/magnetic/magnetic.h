#ifndef MAGNETIC_MAGNETIC_H
#define MAGNETIC_MAGNETIC_H

/* C interface to the magnetic coefficient engine. All handles are opaque and
 * owned by the caller; strings returned through handles live as long as the
 * handle. Functions returning mgf_status leave a message for mgf_last_error()
 * (per thread) when they fail. */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define MGF_API __declspec(dllexport)
#else
#define MGF_API __attribute__((visibility("default")))
#endif

typedef enum mgf_status {
  MGF_OK = 0,
  MGF_ERR_INVALID_ARGUMENT = 1, /* violated precondition; message names it */
  MGF_ERR_CERTIFICATION = 2,    /* escalation limit reached */
  MGF_ERR_INTERNAL = 3,         /* internal consistency check failed */
  MGF_ERR_IO = 4,               /* cache or report file problem */
  MGF_ERR_OUT_OF_MEMORY = 5
} mgf_status;

typedef struct mgf_form mgf_form;
typedef struct mgf_table mgf_table;
typedef struct mgf_report mgf_report;

typedef struct mgf_options {
  long precision_bits;       /* starting precision; 0 selects it automatically */
  long precision_multiplier; /* >= 1 */
  long cutoff_multiplier;    /* >= 1 */
  int max_rounds;            /* escalation rounds, >= 1 */
  long test_perturbation;    /* added to certified integers; negative controls only */
} mgf_options;

typedef struct mgf_row {
  int64_t n;
  const char* value;      /* exact integer ("a+bi" for Gaussian) when certified, else ball */
  int certified;
  long precision_bits;
  int64_t cutoff;
} mgf_row;

MGF_API const char* mgf_version(void);
MGF_API const char* mgf_last_error(void);
MGF_API void mgf_options_default(mgf_options* options);

/* Forms. Level-one forms need only k, d, D. */
MGF_API mgf_status mgf_form_new(int k, int64_t d, int64_t D, mgf_form** out);
MGF_API mgf_status mgf_form_set_level(mgf_form* form, int64_t level);
MGF_API mgf_status mgf_form_add_residue(mgf_form* form, int64_t r, long weight);
/* Fixed combinations: sum (12/r) f_r at level 6, f_{r0} - f_{-r0} at level 8. */
MGF_API mgf_status mgf_form_all_signed(mgf_form* form, int64_t level);
MGF_API mgf_status mgf_form_validate(const mgf_form* form);
MGF_API const char* mgf_form_describe(mgf_form* form);
MGF_API void mgf_form_free(mgf_form* form);

/* Coefficients n = 1..n_max. With correct_cusp the cusp form matching the
 * first dim S_2k coefficients is subtracted. cache_path may be NULL. */
MGF_API mgf_status mgf_coefficients(const mgf_form* form, int64_t n_max, int correct_cusp,
                                    const mgf_options* options, const char* cache_path, mgf_table** out);
/* Hecke translate sum lambda_m f|T_m; lambda is "24,1" style or "auto". */
MGF_API mgf_status mgf_translate(const mgf_form* form, const char* lambda, int64_t n_max,
                                 const mgf_options* options, mgf_table** out);
MGF_API size_t mgf_table_size(const mgf_table* table);
MGF_API mgf_status mgf_table_row(const mgf_table* table, size_t index, mgf_row* out);
/* Describes the correction or translate used ("" if none). */
MGF_API const char* mgf_table_note(const mgf_table* table);
/* 1 when every row is certified. */
MGF_API int mgf_table_certified(const mgf_table* table);
MGF_API void mgf_table_free(mgf_table* table);

/* Suites: paper-tables, divisibility, signs, partition-j, exp-sums, bessel,
 * case-change, eta-quotients, coverage, or all. */
MGF_API mgf_status mgf_verify(const char* suite, const mgf_options* options, mgf_report** out);
MGF_API int mgf_report_passed(const mgf_report* report);
MGF_API const char* mgf_report_json(const mgf_report* report);
MGF_API size_t mgf_report_case_count(const mgf_report* report);
MGF_API size_t mgf_report_failure_count(const mgf_report* report);
MGF_API void mgf_report_free(mgf_report* report);

/* Exact scalars as decimal strings; free with mgf_string_free. */
MGF_API mgf_status mgf_partition(int64_t n, char** out);
MGF_API mgf_status mgf_jcoeff(int64_t n, char** out);
MGF_API void mgf_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* MAGNETIC_MAGNETIC_H */
