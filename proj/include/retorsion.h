/* C interface to the torsion calculus library.
 *
 * Conventions:
 *   - every function returns an rt_status; outputs go through pointers
 *   - char** outputs receive a malloc'd NUL-terminated string; release with
 *     rt_string_free
 *   - on failure the output pointers are untouched and rt_last_error()
 *     returns a message for the calling thread
 *   - models are opaque handles, created from geometry JSON and released
 *     with rt_model_free; they are immutable and safe to share across threads
 */

#ifndef RETORSION_H
#define RETORSION_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rt_status {
    RT_OK = 0,
    RT_ERR_INVALID_ARGUMENT = 1,
    RT_ERR_PARSE = 2,
    RT_ERR_COMPUTE = 3,
    RT_ERR_UNSUPPORTED = 4
} rt_status;

typedef struct rt_model rt_model;

/* Library version as "major.minor.patch". Static storage; do not free. */
const char* rt_version(void);

/* Message for the most recent failure on this thread. Static storage. */
const char* rt_last_error(void);

/* Release a string returned through a char** output. NULL is fine. */
void rt_string_free(char* s);

/* ---- models ---------------------------------------------------------- */

/* Build a spectral model from a geometry descriptor:
 *   {"kind":"circle","length":L,"holonomy":h}   (holonomy optional)
 *   {"kind":"interval","length":L,"bc":"relative"|"absolute"}
 *   {"kind":"torus","lengths":[l1,...]}
 *   {"kind":"product","factors":[...]}          (two or more)
 *   {"kind":"truncated","eigenvalues":{"0":[[lambda,mult],...]},"betti":[...]}
 *   {"kind":"point"}
 * Unknown keys and out-of-range values are rejected. */
rt_status rt_model_from_json(const char* geometry_json, rt_model** out);

void rt_model_free(rt_model* m);

rt_status rt_model_dim(const rt_model* m, int* out);

/* Canonical descriptor, name, dimension, Betti numbers, Euler
 * characteristic, volume; fixed key order and float formatting. */
rt_status rt_model_info_json(const rt_model* m, char** out);

/* Heat trace of the degree-k Laplacian at time t > 0, kernel included. */
rt_status rt_model_heat_trace(const rt_model* m, int degree, double t, double* out);

/* Alternating sum of heat traces; equals the Euler characteristic. */
rt_status rt_model_supertrace(const rt_model* m, double t, double* out);

/* ---- zeta and torsion ------------------------------------------------ */

/* Continued zeta value in one degree. Fails within 1e-9 of a pole and
 * outside the strip the trace expansions reach. */
rt_status rt_zeta_eval(const rt_model* m, int degree, double s, double tol, double* out);

/* Kernel-adjusted behaviour at s = 0: residue (0 for these models), value,
 * derivative. Any output pointer may be NULL. */
rt_status rt_zeta_at_zero(const rt_model* m, int degree, double tol, double* value,
                          double* deriv, double* pole);

/* Values at the given points plus the s = 0 jet and the pole list, as JSON.
 * s_values may be NULL when n_values is 0. */
rt_status rt_zeta_report_json(const rt_model* m, int degree, const double* s_values,
                              int n_values, double tol, char** out);

/* Per-degree zeta data, log T, T, and the sign convention, as JSON. */
rt_status rt_torsion_json(const rt_model* m, char** out);

/* CSV with columns t, trace, partial_sum, residual on the given grid
 * (positive, ascending; empty gives the header only). */
rt_status rt_trace_table_csv(const rt_model* m, int degree, const double* grid, int n,
                             char** out);

/* ---- regularized integrals ------------------------------------------- */

/* Run one regularized integral from a JSON request:
 *   {"expr": "...", "at_zero": {"terms":[[alpha,k,c],...], "remainder": r},
 *    "at_infinity": {...}, "split"?: x, "tolerance"?: t}
 * where alpha is an integer or a "p/q" string, and an expansion may declare
 * "exp_small": true instead of a remainder order. Returns
 * {"value": v, "error_estimate": e, "converged": b}. */
rt_status rt_regint_run_json(const char* request_json, char** out);

/* ---- index sets ------------------------------------------------------ */

/* Text-level index set operations. op is one of "eunion", "union", "msum",
 * "shift", "pushforward"; sets are written "{(p/q,k),...}; cutoff=C" (the
 * cutoff suffix is optional on input); pushforward takes two triples
 * "E10|E11|E01". */
rt_status rt_indexset_op(const char* op, const char* const* args, int nargs, char** out);

/* ---- gluing and the verification suite ------------------------------- */

/* Cut-circle gluing report {left, right, glued, chi_factor, ratio,
 * tolerance} for the circle of length 2L cut into two intervals. */
rt_status rt_glue_circle_json(double length, double tolerance, char** out);

/* Run the whole verification battery. The JSON carries no timings, so the
 * output is byte-stable; *failures receives the number of failed criteria
 * (pass NULL if not wanted). */
rt_status rt_suite_json(char** out, int* failures);

#ifdef __cplusplus
}
#endif

#endif /* RETORSION_H */
