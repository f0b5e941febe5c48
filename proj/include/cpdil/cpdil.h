/* C interface to the cpdil library.
 *
 * Objects are opaque handles released with the matching *_free function.
 * Every fallible call returns a cpd_status; on failure the message of the
 * most recent error on the calling thread is available from
 * cpd_last_error(). Strings returned through char** are owned by the caller
 * and released with cpd_string_free. Strings returned as const char* stay
 * valid as long as the handle they came from.
 */
#ifndef CPDIL_H
#define CPDIL_H

#include <stddef.h>

#if defined(_WIN32)
#define CPD_API __declspec(dllexport)
#else
#define CPD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cpd_status {
  CPD_OK = 0,
  CPD_ERR_NON_SQUARE = 1,
  CPD_ERR_NOT_HERMITIAN = 2,
  CPD_ERR_DIMENSION_MISMATCH = 3,
  CPD_ERR_NOT_PSD = 4,
  CPD_ERR_NOT_COMMUTING = 5,
  CPD_ERR_NOT_CP = 6,
  CPD_ERR_NOT_CONTRACTIVE = 7,
  CPD_ERR_ARITY_MISMATCH = 8,
  CPD_ERR_NOT_UNITAL = 9,
  CPD_ERR_NOT_PROJECTION = 10,
  CPD_ERR_NOT_IN_ALGEBRA = 11,
  CPD_ERR_NOT_MARKOV = 12,
  CPD_ERR_NOT_MINIMAL = 13,
  CPD_ERR_NOT_UNITALIZATION = 14,
  CPD_ERR_NOT_A_DILATION = 15,
  CPD_ERR_NOT_UNITARY = 16,
  CPD_ERR_NOT_UNITAL_FAMILY = 17,
  CPD_ERR_CROSS_COMMUTATION_FAILURE = 18,
  CPD_ERR_NOT_CONTRACTION = 19,
  CPD_ERR_NOT_CONJUGATION_FORM = 20,
  CPD_ERR_IO = 21,
  CPD_ERR_SCHEMA = 22,
  CPD_ERR_INVALID_ARGUMENT = 23,
  CPD_ERR_INTERNAL = 100
} cpd_status;

typedef struct cpd_tolerance {
  double abs;
  double rel;
} cpd_tolerance;

typedef struct cpd_semigroup cpd_semigroup;
typedef struct cpd_certificate cpd_certificate;
typedef struct cpd_report cpd_report;

CPD_API const char* cpd_version(void);
CPD_API cpd_tolerance cpd_default_tolerance(void);
CPD_API const char* cpd_status_name(cpd_status status);
CPD_API const char* cpd_last_error(void);
CPD_API void cpd_string_free(char* s);

/* Semigroup files. `tol` may be NULL: the file tolerance (or the default)
 * is then used for the construction checks. */
CPD_API cpd_status cpd_semigroup_load(const char* path, const cpd_tolerance* tol, cpd_semigroup** out);
CPD_API cpd_status cpd_semigroup_save(const cpd_semigroup* g, const char* path);
CPD_API void cpd_semigroup_free(cpd_semigroup* g);
CPD_API size_t cpd_semigroup_dim(const cpd_semigroup* g);
CPD_API size_t cpd_semigroup_arity(const cpd_semigroup* g);
/* 1 and fills *out when the file carried a tolerance, 0 otherwise. */
CPD_API int cpd_semigroup_file_tolerance(const cpd_semigroup* g, cpd_tolerance* out);
CPD_API cpd_status cpd_semigroup_unitalize(const cpd_semigroup* g, cpd_tolerance tol, cpd_semigroup** out);

CPD_API cpd_status cpd_certificate_load(const char* path, cpd_tolerance tol, cpd_certificate** out);
CPD_API cpd_status cpd_certificate_save(const cpd_certificate* c, const char* path);
CPD_API void cpd_certificate_free(cpd_certificate* c);
CPD_API size_t cpd_certificate_h_dim(const cpd_certificate* c);
CPD_API size_t cpd_certificate_k_dim(const cpd_certificate* c);
CPD_API cpd_status cpd_certificate_set_horizon(cpd_certificate* c, const size_t* horizon, size_t len);

/* Verification suites. Each produces a report even when checks fail; a
 * non-OK status means the inputs were rejected. */
CPD_API cpd_status cpd_verify_law(const cpd_semigroup* g, const size_t* box, size_t len, cpd_tolerance tol,
                                  cpd_report** out);
CPD_API cpd_status cpd_verify_markov(const cpd_semigroup* g, cpd_tolerance tol, cpd_report** out);
/* Requires a Markov semigroup (CPD_ERR_NOT_MARKOV otherwise). */
CPD_API cpd_status cpd_verify_unital_equivalence(const cpd_certificate* c, const cpd_semigroup* g,
                                                 cpd_tolerance tol, cpd_report** out);
CPD_API cpd_status cpd_verify_dilation(const cpd_certificate* c, const cpd_semigroup* g, cpd_tolerance tol,
                                       cpd_report** out);
CPD_API cpd_status cpd_verify_strong(const cpd_certificate* c, const cpd_semigroup* g, cpd_tolerance tol,
                                     cpd_report** out);
CPD_API cpd_status cpd_verify_minimal(const cpd_certificate* c, const cpd_semigroup* g, cpd_tolerance tol,
                                      cpd_report** out);
/* Corner restriction of a dilation `cu` of `gu` = unitalize(`g`). On success
 * *restricted (if not NULL) receives the certificate for g. */
CPD_API cpd_status cpd_verify_corner(const cpd_semigroup* g, const cpd_semigroup* gu, const cpd_certificate* cu,
                                     cpd_tolerance tol, cpd_report** out, cpd_certificate** restricted);

CPD_API const char* cpd_report_suite(const cpd_report* r);
CPD_API int cpd_report_overall(const cpd_report* r);
CPD_API size_t cpd_report_check_count(const cpd_report* r);
CPD_API cpd_status cpd_report_check(const cpd_report* r, size_t i, const char** name, double* residual,
                                    double* threshold, int* pass);
CPD_API size_t cpd_report_note_count(const cpd_report* r);
CPD_API const char* cpd_report_note(const cpd_report* r, size_t i);
CPD_API cpd_status cpd_report_to_json(const cpd_report* r, char** out);
CPD_API cpd_status cpd_report_save(const cpd_report* r, const char* path);
CPD_API void cpd_report_free(cpd_report* r);

/* Demos: "parrott", "markov6", "schaffer", "tower", "cross". */
CPD_API size_t cpd_demo_count(void);
CPD_API const char* cpd_demo_name(size_t i);
CPD_API cpd_status cpd_demo_run(const char* name, const char* out_dir, cpd_tolerance tol, cpd_report** out);
CPD_API cpd_status cpd_export_gallery(const char* out_dir, cpd_tolerance tol, cpd_report** out);

#ifdef __cplusplus
}
#endif

#endif /* CPDIL_H */
