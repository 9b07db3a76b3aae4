/*
 * C API for the forward-Brillouin-scattering phonon heralding simulator.
 *
 * All objects are opaque handles created and destroyed through this
 * interface; every fallible call returns an fbs_status, with a
 * human-readable message available from fbs_last_error() on the same
 * thread.
 */
#ifndef FBS_H
#define FBS_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define FBS_API __declspec(dllexport)
#else
#define FBS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fbs_status {
    FBS_OK = 0,
    FBS_ERR_INVALID_ARGUMENT = 1, /* bad parameter or config value */
    FBS_ERR_NUMERIC = 2,          /* integrator/quadrature failure */
    FBS_ERR_IO = 3,               /* file read/write failure */
    FBS_ERR_CHECK_FAILED = 4,     /* experiment ran, in-run assertions failed */
    FBS_ERR_INTERNAL = 5
} fbs_status;

typedef struct fbs_config fbs_config;
typedef struct fbs_experiment fbs_experiment;
typedef struct fbs_result fbs_result;

FBS_API const char* fbs_version(void);

/* Message for the most recent error on this thread; never NULL. */
FBS_API const char* fbs_last_error(void);

/* ---- configuration ---------------------------------------------------- */

/* Default configuration: g = 1, gamma = 0, n_max = 30, trunc_tol = 1e-12. */
FBS_API fbs_status fbs_config_create(fbs_config** out);

/* Flat key-value config file: `key = value` lines, '#' comments. */
FBS_API fbs_status fbs_config_load(const char* path, fbs_config** out);

/* Keys: g, gamma, omega_p, Omega, n_max, trunc_tol, suppressed_modes. */
FBS_API fbs_status fbs_config_set(fbs_config* cfg, const char* key,
                                  const char* value);

FBS_API int fbs_config_n_max(const fbs_config* cfg);
FBS_API void fbs_config_destroy(fbs_config* cfg);

/* ---- direct queries --------------------------------------------------- */

/* Smallest truncation whose Poisson tail (mean gt_max^2) is below tol. */
FBS_API fbs_status fbs_choose_n_max(double gt_max, double trunc_tol, int* out);

/* Closed-form herald probabilities at dimensionless time gt. Fills
 * probs[0..len-1] with P_j for phonon number j (len at most n_max + 1);
 * no_click, if non-NULL, receives the remainder. */
FBS_API fbs_status fbs_herald_probabilities(const fbs_config* cfg, double gt,
                                            double* probs, size_t len,
                                            double* no_click);

/* ---- experiments ------------------------------------------------------ */

/* Experiment names: fig3, oracle-check, glauber-check, herald-mc,
 * stopband, tomography. */
FBS_API fbs_status fbs_experiment_create(const char* name,
                                         fbs_experiment** out);
FBS_API fbs_status fbs_experiment_set_config_file(fbs_experiment* exp,
                                                  const char* path);
FBS_API fbs_status fbs_experiment_set_output_dir(fbs_experiment* exp,
                                                 const char* dir);
FBS_API fbs_status fbs_experiment_set_seed(fbs_experiment* exp,
                                           uint64_t seed);

/* Repeatable key=value override; also accepts dt, gt, and trials. */
FBS_API fbs_status fbs_experiment_set_override(fbs_experiment* exp,
                                               const char* key,
                                               const char* value);

/* Runs the experiment and writes its output files plus a manifest.
 * Returns FBS_OK when all in-run assertions pass, FBS_ERR_CHECK_FAILED
 * when the run completed but an assertion failed (the result handle is
 * still produced in both cases). */
FBS_API fbs_status fbs_experiment_run(fbs_experiment* exp, fbs_result** out);
FBS_API void fbs_experiment_destroy(fbs_experiment* exp);

FBS_API int fbs_result_passed(const fbs_result* res);
FBS_API const char* fbs_result_summary(const fbs_result* res);
FBS_API size_t fbs_result_output_count(const fbs_result* res);
FBS_API const char* fbs_result_output_path(const fbs_result* res, size_t i);
FBS_API void fbs_result_destroy(fbs_result* res);

#ifdef __cplusplus
}
#endif

#endif /* FBS_H */
