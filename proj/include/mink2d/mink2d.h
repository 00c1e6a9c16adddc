/* mink2d C API: numerical toolkit for 2-D Minkowski planes.
 *
 * All handles are opaque. Every fallible call returns a mink2d_status; on
 * failure mink2d_last_error() holds a message for the calling thread.
 * Strings returned through char** are owned by the caller and released with
 * mink2d_string_free().
 */
#ifndef MINK2D_H
#define MINK2D_H

#include <stdint.h>

#if defined(_WIN32)
#if defined(MINK2D_BUILDING)
#define MINK2D_API __declspec(dllexport)
#else
#define MINK2D_API __declspec(dllimport)
#endif
#else
#define MINK2D_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mink2d_status {
  MINK2D_OK = 0,
  MINK2D_ERR_INVALID_ARGUMENT = 1,
  MINK2D_ERR_NON_SMOOTH = 2,
  MINK2D_ERR_NOT_STRICTLY_CONVEX = 3,
  MINK2D_ERR_CONVERGENCE = 4,
  MINK2D_ERR_DEGENERATE = 5,
  MINK2D_ERR_IO = 6,
  MINK2D_ERR_VERIFICATION = 7,
  MINK2D_ERR_INTERNAL = 8
} mink2d_status;

/* Tristate results of classification. */
enum { MINK2D_NO = 0, MINK2D_YES = 1, MINK2D_INDETERMINATE = 2 };

/* Lipschitz verdicts. */
enum { MINK2D_BOUNDED = 0, MINK2D_DIVERGING = 1, MINK2D_VERDICT_INDETERMINATE = 2 };

typedef struct mink2d_norm mink2d_norm;
typedef struct mink2d_param mink2d_param;

MINK2D_API const char* mink2d_version(void);
MINK2D_API const char* mink2d_last_error(void);
MINK2D_API const char* mink2d_status_name(mink2d_status status);
MINK2D_API void mink2d_string_free(char* s);

/* ---- norms ---------------------------------------------------------- */

/* JSON spec: {"family":"euclidean"|"lp"|"polygon"|"trig_perturbed_circle", ...}. */
MINK2D_API mink2d_status mink2d_norm_from_json(const char* json, mink2d_norm** out);
/* Gauge supplied by the caller; must be positive, homogeneous and symmetric. */
typedef double (*mink2d_gauge_fn)(double x, double y, void* user);
MINK2D_API mink2d_status mink2d_norm_custom(mink2d_gauge_fn gauge, void* user, const char* label, mink2d_norm** out);
MINK2D_API void mink2d_norm_free(mink2d_norm* norm);

MINK2D_API const char* mink2d_norm_label(const mink2d_norm* norm);
MINK2D_API mink2d_status mink2d_norm_eval(const mink2d_norm* norm, double x, double y, double* out);
MINK2D_API mink2d_status mink2d_norm_boundary_point(const mink2d_norm* norm, double angle, double out[2]);
MINK2D_API mink2d_status mink2d_norm_classify(const mink2d_norm* norm, int* smooth, int* strictly_convex);

/* ---- natural parameterization -------------------------------------- */

/* Fails with MINK2D_ERR_NON_SMOOTH for spheres with corners; the message
 * names the corner angle. */
MINK2D_API mink2d_status mink2d_param_build(const mink2d_norm* norm, int grid_size, mink2d_param** out);
MINK2D_API void mink2d_param_free(mink2d_param* param);

MINK2D_API double mink2d_param_half_length(const mink2d_param* param);
MINK2D_API int mink2d_param_grid_size(const mink2d_param* param);
MINK2D_API mink2d_status mink2d_param_r(const mink2d_param* param, double s, double out[2]);
MINK2D_API mink2d_status mink2d_param_r_prime(const mink2d_param* param, double s, double out[2]);

/* ---- phase shift ----------------------------------------------------- */

MINK2D_API mink2d_status mink2d_phase(const mink2d_param* param, double s, double* phi);
MINK2D_API mink2d_status mink2d_supercurvature(const mink2d_param* param, double s, double* P, double* T);
MINK2D_API mink2d_status mink2d_phase_derivative(const mink2d_param* param, double s, double h, double* out);

/* ---- distance expansion ---------------------------------------------- */

/* Fields in CSV column order: b,a,s,d,x,y,u,v,rho,tau,nu1_closed,nu1_fd,
 * nu2_closed,nu2_fd,mu2_closed,mu2_fd,phi_prime_rec. */
MINK2D_API mink2d_status mink2d_expansion(const mink2d_param* param, double b, double s, double out[17]);

/* ---- diagnostics ------------------------------------------------------ */

/* quotients must hold n_scales values. */
MINK2D_API mink2d_status mink2d_lipschitz_scan(const mink2d_param* param, double s, int n_scales, double* quotients,
                                               int* verdict);

/* ---- emitted artifacts (CSV / SVG / JSON text) ----------------------- */

MINK2D_API mink2d_status mink2d_samples_csv(const mink2d_param* param, char** csv);
MINK2D_API mink2d_status mink2d_sphere_svg(const mink2d_param* param, char** svg);
MINK2D_API mink2d_status mink2d_phase_report(const mink2d_param* param, int grid_size, char** csv, char** svg);
MINK2D_API mink2d_status mink2d_expansion_sweep(const mink2d_param* param, double s, int n_chords, char** csv);
/* LipschitzScan CSV over a uniform grid plus the absolute-smoothness proxy summary. */
MINK2D_API mink2d_status mink2d_diagnose(const mink2d_param* param, int grid_size, int n_scales, char** csv,
                                         char** summary);

/* Parses an isometry spec ({"kind":"param"|"linear"|"samples",...}) from the
 * sphere of `source` to the sphere of `target` and runs the Mazur-Ulam check.
 * Sample files resolve against base_dir (may be NULL). *pass is 1 or 0. */
MINK2D_API mink2d_status mink2d_isometry_report(const mink2d_param* source, const mink2d_param* target,
                                                const char* spec_json, const char* base_dir, uint64_t seed,
                                                char** json, int* pass);

/* ---- acceptance suite ------------------------------------------------- */

typedef void (*mink2d_progress_fn)(int id, const char* name, int pass, const char* detail, double seconds, void* user);

/* summary: one "PASS|FAIL [k] name: detail" line per criterion.
 * serialized: summary plus all artifacts (deterministic for a given seed). */
MINK2D_API mink2d_status mink2d_run_suite(uint64_t seed, mink2d_progress_fn progress, void* user, char** summary,
                                          char** serialized, int* all_pass);

#ifdef __cplusplus
}
#endif

#endif /* MINK2D_H */
