/* okkit: Newton-Okounkov bodies, toric degenerations and gradient-Hamiltonian
 * flows. C interface over opaque handles.
 *
 * Every fallible call returns an okkit_status; on failure okkit_last_error()
 * describes the problem (thread-local, valid until the next failing call on
 * the same thread). Strings returned through char** are heap-allocated and
 * released with okkit_free. Complex points are interleaved (re, im) arrays. */
#ifndef OKKIT_OKKIT_H
#define OKKIT_OKKIT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define OKKIT_API __declspec(dllexport)
#else
#define OKKIT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum okkit_status {
  OKKIT_OK = 0,
  OKKIT_E_DIMENSION,
  OKKIT_E_PARSE,
  OKKIT_E_UNDEFINED_VALUATION,
  OKKIT_E_INCONCLUSIVE_VALUATION,
  OKKIT_E_EVALUATION,
  OKKIT_E_NOT_IN_SEMIGROUP,
  OKKIT_E_EMPTY_SEMIGROUP,
  OKKIT_E_INSUFFICIENT_SAMPLES,
  OKKIT_E_UNSUPPORTED,
  OKKIT_E_NO_PROJECTION,
  OKKIT_E_INCONSISTENT_PROJECTION,
  OKKIT_E_FAMILY_CONSTRUCTION,
  OKKIT_E_TOO_LARGE,
  OKKIT_E_CHART,
  OKKIT_E_INVALID_SCALE,
  OKKIT_E_SINGULAR_POINT,
  OKKIT_E_CRITICAL_POINT,
  OKKIT_E_RETRACTION_DIVERGED,
  OKKIT_E_STEP_LIMIT,
  OKKIT_E_DEGENERATE_FORM,
  OKKIT_E_UNKNOWN_ENTRY,
  OKKIT_E_VERIFICATION,
  OKKIT_E_USAGE,
  OKKIT_E_ARGUMENT = 100, /* null handle or pointer */
  OKKIT_E_IO,
  OKKIT_E_INTERNAL
} okkit_status;

typedef struct okkit_entry okkit_entry;
typedef struct okkit_flow_batch okkit_flow_batch;
typedef struct okkit_check_report okkit_check_report;

typedef struct okkit_flow_options {
  double epsilon;
  double delta;
  double rtol;
  double atol;
  double retraction_tol;
  int retraction_max_iter;
  long max_steps;
  double alpha;
  double max_step;
  double fd_step;
} okkit_flow_options;

typedef enum okkit_check_status { OKKIT_CHECK_PASS = 0, OKKIT_CHECK_FAIL = 1, OKKIT_CHECK_SKIP = 2 } okkit_check_status;

OKKIT_API const char* okkit_version(void);
OKKIT_API const char* okkit_last_error(void);
OKKIT_API const char* okkit_status_name(okkit_status status);
/* Nonzero for failures of numerical quality (as opposed to bad input). */
OKKIT_API int okkit_status_is_numerical(okkit_status status);
OKKIT_API void okkit_free(void* p);

/* Built-in catalog. */
OKKIT_API size_t okkit_catalog_size(void);
OKKIT_API okkit_status okkit_catalog_name(size_t index, const char** name, const char** description);

/* Entries: every expected field is re-derived on load. */
OKKIT_API okkit_status okkit_entry_load(const char* name, okkit_entry** out);
OKKIT_API okkit_status okkit_entry_load_file(const char* path, okkit_entry** out);
OKKIT_API void okkit_entry_free(okkit_entry* entry);
OKKIT_API const char* okkit_entry_name(const okkit_entry* entry);
OKKIT_API size_t okkit_entry_rank(const okkit_entry* entry);
OKKIT_API size_t okkit_entry_ambient_size(const okkit_entry* entry);
OKKIT_API int okkit_entry_extended(const okkit_entry* entry);
/* Draws count intrinsic points (count * ambient_size complex values). */
OKKIT_API okkit_status okkit_entry_sample(const okkit_entry* entry, uint64_t seed, size_t count, double* points);

/* Body and family. */
OKKIT_API okkit_status okkit_body_json(const okkit_entry* entry, char** json);
/* points: count * rank reals drawn as a scatter; may be null. */
OKKIT_API okkit_status okkit_body_svg(const okkit_entry* entry, const double* points, size_t count, char** svg);
OKKIT_API okkit_status okkit_body_contains(const okkit_entry* entry, const double* x, double* violation);
OKKIT_API okkit_status okkit_family_json(const okkit_entry* entry, char** json);
/* Fiber equations at t, complex coefficients as [re, im]. */
OKKIT_API okkit_status okkit_fiber_json(const okkit_entry* entry, double t_re, double t_im, char** json);

/* Quotient slicing. rows: nrows x (rank + 1) integers, or null for the
 * entry's own homomorphism. bound <= 0 picks the default level bound. The
 * JSON carries the commutation residual over `samples` random points. */
OKKIT_API okkit_status okkit_slice_json(const okkit_entry* entry, const long* rows, size_t nrows, long bound,
                                        size_t samples, uint64_t seed, char** json);
/* Largest |lambda(1, mu(x)) - mu_H(x)| over random samples. */
OKKIT_API okkit_status okkit_slice_commutation(const okkit_entry* entry, const long* rows, size_t nrows,
                                               size_t samples, uint64_t seed, double* residual);

/* Flow. Options start from the entry's defaults. */
OKKIT_API okkit_status okkit_flow_options_default(const okkit_entry* entry, okkit_flow_options* out);
OKKIT_API okkit_status okkit_flow_run(const okkit_entry* entry, const okkit_flow_options* options, size_t samples,
                                      uint64_t seed, okkit_flow_batch** out);
OKKIT_API void okkit_flow_batch_free(okkit_flow_batch* batch);
OKKIT_API size_t okkit_flow_batch_size(const okkit_flow_batch* batch);
OKKIT_API size_t okkit_flow_batch_succeeded(const okkit_flow_batch* batch);
/* F receives rank values when the sample succeeded; status receives the
 * sample's failure code or OKKIT_OK. */
OKKIT_API okkit_status okkit_flow_batch_sample(const okkit_flow_batch* batch, size_t index, okkit_status* status,
                                               double* F, double* convergence);
OKKIT_API okkit_status okkit_flow_batch_trajectories_csv(const okkit_flow_batch* batch, char** csv);
OKKIT_API okkit_status okkit_flow_batch_summary_csv(const okkit_flow_batch* batch, char** csv);
OKKIT_API okkit_status okkit_flow_batch_diagnostics_json(const okkit_flow_batch* batch, char** json);
OKKIT_API okkit_status okkit_flow_batch_svg(const okkit_flow_batch* batch, char** svg);

/* Single-point evaluations; x holds ambient_size complex values. */
OKKIT_API okkit_status okkit_flow_eval(const okkit_entry* entry, const okkit_flow_options* options, const double* x,
                                       double* F, double* convergence);
OKKIT_API okkit_status okkit_poisson_bracket(const okkit_entry* entry, const okkit_flow_options* options,
                                             const double* x, size_t i, size_t j, double* out);
/* u, v: 2 * rank real coefficients in the fiber frame at the start point. */
OKKIT_API okkit_status okkit_symplectic_residual(const okkit_entry* entry, const okkit_flow_options* options,
                                                 const double* x, const double* u, const double* v, double* out);

/* Invariant suite. */
OKKIT_API okkit_status okkit_check_run(const okkit_entry* entry, uint64_t seed, int extended,
                                       okkit_check_report** out);
OKKIT_API void okkit_check_report_free(okkit_check_report* report);
OKKIT_API size_t okkit_check_report_size(const okkit_check_report* report);
OKKIT_API okkit_status okkit_check_report_row(const okkit_check_report* report, size_t index, const char** name,
                                              okkit_check_status* status, const char** detail);
OKKIT_API int okkit_check_report_passed(const okkit_check_report* report);
OKKIT_API okkit_status okkit_check_report_table(const okkit_check_report* report, char** table);

#ifdef __cplusplus
}
#endif

#endif /* OKKIT_OKKIT_H */
