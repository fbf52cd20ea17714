/*
 * funkgeo C API.
 *
 * Every function returns an fg_status; on failure a thread-local message is
 * available from fg_last_error(). Objects are opaque handles owned by the
 * caller and released with the matching *_free function.
 */
#ifndef FUNKGEO_FUNKGEO_H
#define FUNKGEO_FUNKGEO_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  define FG_API __declspec(dllexport)
#else
#  define FG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fg_status {
  FG_OK = 0,
  FG_ERR_INVALID_ARGUMENT = 1,
  FG_ERR_COINCIDENT_POINTS = 2,
  FG_ERR_ANTIPODAL_POINTS = 3,
  FG_ERR_NOT_ON_LINE = 4,
  FG_ERR_UNSUPPORTED_DIMENSION = 5,
  FG_ERR_NUMERICALLY_UNSTABLE = 6,
  FG_ERR_LATTICE_POINT = 7,
  FG_ERR_NOT_HALF_LATTICE = 8,
  FG_ERR_NO_PREIMAGE = 9,
  FG_ERR_ILL_CONDITIONED = 10,
  FG_ERR_CAP_EXCEEDED = 11,
  FG_ERR_INSUFFICIENT_GEODESICS = 12,
  FG_ERR_NON_FINITE = 13,
  FG_ERR_BUFFER_TOO_SMALL = 14,
  FG_ERR_INTERNAL = 99
} fg_status;

typedef struct fg_report fg_report;
typedef struct fg_root_system fg_root_system;
typedef struct fg_operator fg_operator;

FG_API const char* fg_version(void);
FG_API const char* fg_status_string(fg_status status);
/* Message of the last failed call on this thread ("" if none). */
FG_API const char* fg_last_error(void);

/* ------------------------------------------------------------- experiments */

/* Parameters of one experiment. Zero-valued optional fields (quad,
 * geodesics, tol) select the command's default. */
typedef struct fg_params {
  uint64_t seed;
  const char* family; /* roots check: A B C D BC E6 E7 E8 F4 G2 */
  int rank;
  const char* space;  /* roots midpoint: S CP HP OP Q */
  int lmax;
  int circles;
  int quad;
  int n;
  int degree;
  int geodesics;
  double radius;
  double margin;
  int trials;
  int samples;
  double tol;       /* geometric / pairing tolerance */
  double tol_ratio; /* relative rank threshold */
  int want_csv;
} fg_params;

FG_API void fg_params_init(fg_params* params);

/* Runs "<command> <subcommand>" (e.g. "cpn", "rank") and returns its report.
 * A report whose invariants fail is still FG_OK; see fg_report_passed. */
FG_API fg_status fg_run(const char* command, const char* subcommand,
                        const fg_params* params, fg_report** out);

FG_API const char* fg_report_json(const fg_report* report);
/* NULL when no CSV was requested or the command has none. */
FG_API const char* fg_report_csv(const fg_report* report);
FG_API int fg_report_passed(const fg_report* report);
FG_API void fg_report_free(fg_report* report);

/* ------------------------------------------------------------ root systems */

FG_API fg_status fg_root_system_create(const char* family, int rank,
                                       fg_root_system** out);
FG_API void fg_root_system_free(fg_root_system* rs);
FG_API int fg_root_system_rank(const fg_root_system* rs);
FG_API size_t fg_root_system_size(const fg_root_system* rs);
FG_API size_t fg_root_system_highest(const fg_root_system* rs);
FG_API int fg_root_system_is_positive(const fg_root_system* rs, size_t index);
/* Copies root `index` into coords[0..rank). */
FG_API fg_status fg_root_system_root(const fg_root_system* rs, size_t index,
                                     double* coords, size_t len);
/* X_a = 2*pi*a/<a,a>; `length` may be NULL. */
FG_API fg_status fg_root_system_dual_vector(const fg_root_system* rs, size_t index,
                                            double* coords, size_t len,
                                            double* length);
/* Positive roots a with 2<a,Y>/pi odd. Writes at most `cap` indices and the
 * full count to *count; FG_ERR_BUFFER_TOO_SMALL if cap < count. */
FG_API fg_status fg_root_system_odd_roots(const fg_root_system* rs,
                                          const double* y, size_t len, double tol,
                                          size_t* indices, size_t cap, size_t* count);
/* {family, rank, roots, positive, highest} */
FG_API fg_status fg_root_system_json(const fg_root_system* rs, fg_report** out);

/* --------------------------------------------------------------- operators */

/* Funk transform of real spherical harmonics up to lmax over `circles`
 * random great circles, K-point trapezoid rule. */
FG_API fg_status fg_sphere_operator_create(int lmax, int circles, int quad,
                                           uint64_t seed, fg_operator** out);
/* Funk transform of the orthonormal bidegree-(D,D) basis on CP^n over
 * `geodesics` random shortest closed geodesics. */
FG_API fg_status fg_cp_operator_create(int n, int degree, int geodesics, int quad,
                                       uint64_t seed, fg_operator** out);
FG_API void fg_operator_free(fg_operator* op);
FG_API size_t fg_operator_rows(const fg_operator* op);
FG_API size_t fg_operator_cols(const fg_operator* op);
FG_API double fg_operator_entry(const fg_operator* op, size_t row, size_t col);
/* Singular values, non-increasing; writes min(rows, cols) values. */
FG_API fg_status fg_operator_singular_values(const fg_operator* op, double* out,
                                             size_t cap, size_t* count);
/* Numerical rank at the relative threshold tol_ratio. */
FG_API fg_status fg_operator_rank(const fg_operator* op, double tol_ratio, int* rank,
                                  int* kernel_dim);
/* x = argmin |A x - b|^2 + reg |x|^2; b has `rows` entries, x has `cols`. */
FG_API fg_status fg_operator_solve(const fg_operator* op, const double* b, size_t b_len,
                                   double reg, double* x, size_t x_len);

#ifdef __cplusplus
}
#endif

#endif /* FUNKGEO_FUNKGEO_H */
