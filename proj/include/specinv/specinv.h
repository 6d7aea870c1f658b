/*
 * specinv C API.
 *
 * Every object crosses the boundary as an opaque handle owned by the caller
 * and released with its matching *_free function. Every call returns a
 * specinv_status; on failure specinv_last_error() describes what went wrong
 * (thread-local, valid until the next failing call on the same thread).
 * Strings returned through char** are heap-allocated and released with
 * specinv_string_free.
 */
#ifndef SPECINV_H
#define SPECINV_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(SPECINV_BUILDING_LIBRARY)
#    define SPECINV_API __declspec(dllexport)
#  else
#    define SPECINV_API __declspec(dllimport)
#  endif
#else
#  define SPECINV_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum specinv_status {
  SPECINV_OK = 0,
  SPECINV_ERR_NUMERICAL = 1,     /* integrator, bracketing, contour or root-count failure */
  SPECINV_ERR_INVALID_INPUT = 2, /* malformed document, bad argument, unreadable file */
  SPECINV_ERR_INTERNAL = 3
} specinv_status;

typedef struct specinv_tolerances {
  double eig_tol;
  double residual_tol;
  double cluster_radius;
  double match_tol;
} specinv_tolerances;

typedef struct specinv_box {
  double re_min, re_max, im_min, im_max;
} specinv_box;

typedef struct specinv_potential specinv_potential;
typedef struct specinv_polynomial specinv_polynomial;
typedef struct specinv_spectrum specinv_spectrum;
typedef struct specinv_reconstruction specinv_reconstruction;
typedef struct specinv_report_list specinv_report_list;
typedef struct specinv_uniqueness specinv_uniqueness;
typedef struct specinv_comparison specinv_comparison;

SPECINV_API const char* specinv_version(void);
SPECINV_API const char* specinv_last_error(void);
SPECINV_API void specinv_string_free(char* s);
SPECINV_API void specinv_tolerances_default(specinv_tolerances* out);

/* Potentials q(x) on [0, 1] */
SPECINV_API specinv_status specinv_potential_constant(double c, specinv_potential** out);
SPECINV_API specinv_status specinv_potential_cosine(double amplitude, double frequency, specinv_potential** out);
SPECINV_API specinv_status specinv_potential_grid(const double* nodes, const double* values, size_t n,
                                                  specinv_potential** out);
SPECINV_API specinv_status specinv_potential_poly(const double* coeffs, size_t n, specinv_potential** out);
SPECINV_API specinv_status specinv_potential_parse(const char* json, specinv_potential** out);
SPECINV_API specinv_status specinv_potential_load(const char* path, specinv_potential** out);
SPECINV_API specinv_status specinv_potential_to_json(const specinv_potential* q, char** out);
SPECINV_API specinv_status specinv_potential_eval(const specinv_potential* q, double x, double* out);
SPECINV_API void specinv_potential_free(specinv_potential* q);

/* Neumann problems -y'' + q y = lambda y, y'(0) = y'(1) = 0 */
SPECINV_API specinv_status specinv_shoot_miss(const specinv_potential* q, double lambda,
                                              const specinv_tolerances* tol, double* out);
SPECINV_API specinv_status specinv_eigenvalue_count_below(const specinv_potential* q, double mu, int* out);
SPECINV_API specinv_status specinv_neumann_eigenvalues(const specinv_potential* q, int count,
                                                       const specinv_tolerances* tol, specinv_spectrum** out);
SPECINV_API specinv_status specinv_free_spectrum_verdict(const specinv_spectrum* s, double tol, int* out);
SPECINV_API specinv_status specinv_rayleigh_mean_gap(const specinv_potential* q, const specinv_tolerances* tol,
                                                     double* lambda0, double* mean_q);

/* Boundary polynomials A(lambda) */
SPECINV_API specinv_status specinv_polynomial_create(const double* re, const double* im, size_t n,
                                                     specinv_polynomial** out);
SPECINV_API specinv_status specinv_polynomial_random(int degree, double bound, uint64_t seed,
                                                     specinv_polynomial** out);
SPECINV_API int specinv_polynomial_degree(const specinv_polynomial* p);
SPECINV_API specinv_status specinv_polynomial_coeff(const specinv_polynomial* p, int k, double* re, double* im);
SPECINV_API specinv_status specinv_polynomial_eval(const specinv_polynomial* p, double re, double im,
                                                   double* out_re, double* out_im);
SPECINV_API specinv_status specinv_polynomial_max_abs_diff(const specinv_polynomial* p,
                                                           const specinv_polynomial* q, double* out);
SPECINV_API void specinv_polynomial_free(specinv_polynomial* p);

/* Characteristic determinant and its zeros */
SPECINV_API specinv_status specinv_delta(const specinv_polynomial* a, double re, double im, double* out_re,
                                         double* out_im);
SPECINV_API specinv_status specinv_delta_scaled(const specinv_polynomial* a, double re, double im,
                                                double* out_re, double* out_im);
SPECINV_API specinv_status specinv_delta_deriv(const specinv_polynomial* a, double re, double im,
                                               double* out_re, double* out_im);
SPECINV_API specinv_status specinv_count_zeros(const specinv_polynomial* a, const specinv_box* box,
                                               const specinv_tolerances* tol, int* out);
SPECINV_API specinv_status specinv_det_roots(const specinv_polynomial* a, const specinv_box* box, int max_roots,
                                             const specinv_tolerances* tol, specinv_spectrum** out);

/* Spectra: sorted (value, multiplicity) entries; residual is 0 unless the
 * spectrum came from specinv_det_roots. */
SPECINV_API specinv_status specinv_spectrum_create(const double* re, const double* im, const int* multiplicity,
                                                   size_t n, double cluster_radius, specinv_spectrum** out);
SPECINV_API specinv_status specinv_spectrum_parse(const char* json, specinv_spectrum** out);
SPECINV_API specinv_status specinv_spectrum_load(const char* path, specinv_spectrum** out);
SPECINV_API specinv_status specinv_spectrum_to_json(const specinv_spectrum* s, char** out);
SPECINV_API specinv_status specinv_spectrum_save(const specinv_spectrum* s, const char* path);
SPECINV_API size_t specinv_spectrum_size(const specinv_spectrum* s);
SPECINV_API specinv_status specinv_spectrum_entry(const specinv_spectrum* s, size_t i, double* re, double* im,
                                                  int* multiplicity, double* residual);
SPECINV_API specinv_status specinv_spectra_match(const specinv_spectrum* a, const specinv_spectrum* b, double tol,
                                                 int* out);
SPECINV_API void specinv_spectrum_free(specinv_spectrum* s);

/* Reconstruction of a_0..a_s from s+1 nonzero determinant zeros. The nodes
 * are the s+1 smallest-modulus nonzero entries of the spectrum. */
SPECINV_API specinv_status specinv_rhs_value(double re, double im, double* out_re, double* out_im);
SPECINV_API specinv_status specinv_vandermonde_solve(const double* node_re, const double* node_im,
                                                     const double* val_re, const double* val_im, size_t n,
                                                     specinv_polynomial** out);
SPECINV_API specinv_status specinv_condition_estimate(const double* node_re, const double* node_im, size_t n,
                                                      double* out);
SPECINV_API specinv_status specinv_reconstruct(int degree, const specinv_spectrum* eigs,
                                               const specinv_tolerances* tol, specinv_reconstruction** out);
SPECINV_API specinv_status specinv_reconstruction_coefficients(const specinv_reconstruction* r,
                                                               specinv_polynomial** out);
SPECINV_API double specinv_reconstruction_condition(const specinv_reconstruction* r);
SPECINV_API specinv_status specinv_reconstruction_to_json(const specinv_reconstruction* r, char** out);
SPECINV_API void specinv_reconstruction_free(specinv_reconstruction* r);

/* Experiments */
typedef struct specinv_experiment {
  uint64_t seed;
  int degree_min;
  int degree_max;
  double coeff_bound;
  specinv_box box;
  specinv_tolerances tol;
  int trials;
  int max_roots;
  int threads;
} specinv_experiment;

SPECINV_API void specinv_experiment_default(specinv_experiment* out);
/* Round trip for one given polynomial. */
SPECINV_API specinv_status specinv_roundtrip(const specinv_polynomial* a, const specinv_experiment* cfg,
                                             specinv_report_list** out);
/* cfg->trials seeded random polynomials. */
SPECINV_API specinv_status specinv_roundtrip_suite(const specinv_experiment* cfg, specinv_report_list** out);
SPECINV_API size_t specinv_report_count(const specinv_report_list* r);
SPECINV_API specinv_status specinv_report_metrics(const specinv_report_list* r, size_t i, double* max_coeff_error,
                                                  double* condition);
/* One report object for a single trial, an array of them otherwise. */
SPECINV_API specinv_status specinv_report_to_json(const specinv_report_list* r, char** out);
SPECINV_API specinv_status specinv_report_to_csv(const specinv_report_list* r, char** out);
/* Parses one report document and re-emits it canonically. */
SPECINV_API specinv_status specinv_report_parse(const char* json, specinv_report_list** out);
SPECINV_API void specinv_report_list_free(specinv_report_list* r);

SPECINV_API specinv_status specinv_uniqueness_probe(const specinv_polynomial* a, const specinv_polynomial* b,
                                                    const specinv_experiment* cfg, specinv_uniqueness** out);
SPECINV_API int specinv_uniqueness_passed(const specinv_uniqueness* u);
SPECINV_API int specinv_uniqueness_spectra_match(const specinv_uniqueness* u);
SPECINV_API specinv_status specinv_uniqueness_to_json(const specinv_uniqueness* u, char** out);
SPECINV_API void specinv_uniqueness_free(specinv_uniqueness* u);

SPECINV_API specinv_status specinv_compare_neumann(const specinv_potential* a, const specinv_potential* b,
                                                   int count, double tol, const specinv_tolerances* tolerances,
                                                   specinv_comparison** out);
SPECINV_API int specinv_comparison_match(const specinv_comparison* c);
SPECINV_API int specinv_comparison_zero_potential(const specinv_comparison* c);
SPECINV_API specinv_status specinv_comparison_to_json(const specinv_comparison* c, char** out);
SPECINV_API void specinv_comparison_free(specinv_comparison* c);

#ifdef __cplusplus
}
#endif

#endif /* SPECINV_H */
