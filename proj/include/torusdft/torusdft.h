#ifndef TORUSDFT_H
#define TORUSDFT_H

/*
 * C interface to the torus DFT core: spectral eigensolves of
 * -Laplace + v on the 2*pi circle for distributional potentials
 * (Fourier part + weighted Dirac deltas), determinant densities, the
 * single-particle density-to-potential inversion, and the experiment
 * runner.
 *
 * Conventions:
 *   - Handles are opaque; every *_free accepts NULL.
 *   - Functions return TDFT_OK (0) on success; on failure the handle /
 *     string outputs are untouched and tdft_last_error() carries a
 *     thread-local message.
 *   - Strings returned through char** are NUL-terminated, allocated by
 *     the library, and released with tdft_string_free().
 *   - Eigenvalue and orbital indices are 0-based (index 0 = ground
 *     state); report documents use 1-based labels.
 *   - JSON/CSV schemas are documented in the project README.
 */

#include <stddef.h>

#if defined(_WIN32)
#define TDFT_API __declspec(dllexport)
#else
#define TDFT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tdft_status {
  TDFT_OK = 0,
  TDFT_ERR_INVALID_ARGUMENT = 1, /* bad sizes, indices, null pointers */
  TDFT_ERR_PARSE = 2,            /* malformed JSON/CSV input */
  TDFT_ERR_DOMAIN = 3,           /* outside the admissible class (realness,
                                    open shell, non-member density, ...) */
  TDFT_ERR_NUMERIC = 4           /* solver failure */
} tdft_status;

typedef struct tdft_potential tdft_potential;
typedef struct tdft_solution tdft_solution;
typedef struct tdft_density tdft_density;

TDFT_API const char* tdft_status_name(tdft_status status);
TDFT_API const char* tdft_last_error(void);
TDFT_API void tdft_string_free(char* text);

/* --- potentials --- */

TDFT_API tdft_status tdft_potential_from_json(const char* json_text,
                                              tdft_potential** out);
TDFT_API tdft_status tdft_potential_to_json(const tdft_potential* v,
                                            char** json_out);
TDFT_API void tdft_potential_free(tdft_potential* v);

/* H^-1 norm of the cutoff-M truncation (deltas folded at M). */
TDFT_API tdft_status tdft_potential_dual_norm(const tdft_potential* v, int cutoff,
                                              double* out);

/* Constant-adjusted H^-1 distance at cutoff M; offset is the subtracted
 * constant. */
TDFT_API tdft_status tdft_potential_distance(const tdft_potential* v,
                                             const tdft_potential* w, int cutoff,
                                             double* adjusted, double* offset);

/* --- eigensolves --- */

TDFT_API tdft_status tdft_solve(const tdft_potential* v, int K,
                                tdft_solution** out);
TDFT_API void tdft_solution_free(tdft_solution* sol);
TDFT_API tdft_status tdft_solution_size(const tdft_solution* sol, int* out);
TDFT_API tdft_status tdft_solution_eigenvalue(const tdft_solution* sol, int index,
                                              double* out);
TDFT_API tdft_status tdft_solution_gap(const tdft_solution* sol, double* out);
TDFT_API tdft_status tdft_solution_to_json(const tdft_solution* sol, char** out);
TDFT_API tdft_status tdft_solution_to_csv(const tdft_solution* sol, char** out);

/* --- densities --- */

TDFT_API tdft_status tdft_slater_density(const tdft_solution* sol,
                                         const int* orbitals, int count,
                                         tdft_density** out);
/* Aufbau filling; uniform determinant mixture when the Fermi level is
 * degenerate. */
TDFT_API tdft_status tdft_ground_density(const tdft_solution* sol, int particles,
                                         tdft_density** out);
TDFT_API tdft_status tdft_density_from_json(const char* json_text,
                                            tdft_density** out);
/* CSV columns x,rho over a uniform grid; cutoff <= 0 picks the widest
 * band the grid resolves. */
TDFT_API tdft_status tdft_density_from_csv(const char* csv_text, int particles,
                                           int cutoff, tdft_density** out);
TDFT_API tdft_status tdft_density_to_json(const tdft_density* rho, char** out);
TDFT_API tdft_status tdft_density_to_csv(const tdft_density* rho, char** out);
TDFT_API void tdft_density_free(tdft_density* rho);

/* Admissibility report (integral, positivity, H^1 norm of sqrt);
 * "member_of_DN" carries the verdict. Report-only: never fails on a
 * non-member density. */
TDFT_API tdft_status tdft_density_validate(const tdft_density* rho, int particles,
                                           char** report_json);

/* --- inversion and scans --- */

/* Single-particle map rho -> (sqrt(rho))''/sqrt(rho); fails with
 * TDFT_ERR_DOMAIN when rho is not strictly positive or not admissible. */
TDFT_API tdft_status tdft_ks_invert(const tdft_density* rho,
                                    tdft_potential** v_out, char** report_json);

TDFT_API tdft_status tdft_hk_roundtrip(const tdft_potential* v, int K, double tol,
                                       char** report_json);

TDFT_API tdft_status tdft_hk_scan(unsigned long long seed, int pairs,
                                  int particles, int K, double min_separation,
                                  char** report_json);

/* Experiment runner. Experiments: positivity, gap, courant, excited-delta,
 * delta-oracle, gns, klmn. params_json keys (all optional):
 *   seed, count, K, kmax, epsilon, trials, alphas (array),
 *   k (excited-delta), potential (potential JSON for excited-delta).
 * samples_csv may be NULL when the per-sample table is not wanted. */
TDFT_API tdft_status tdft_lab_run(const char* experiment, const char* params_json,
                                  char** report_json, char** samples_csv);

#ifdef __cplusplus
}
#endif

#endif /* TORUSDFT_H */
