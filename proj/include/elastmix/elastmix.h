/* C interface to the elastmix experiment runner.
 *
 * Objects are opaque and owned by the caller once created; release them with
 * the matching destroy function. Every fallible call returns an
 * elastmix_status; on failure elastmix_last_error() describes the problem
 * (the message is per thread and valid until the next failing call).
 */
#ifndef ELASTMIX_ELASTMIX_H
#define ELASTMIX_ELASTMIX_H

#include <stddef.h>

#if defined(_WIN32)
#define ELASTMIX_API __declspec(dllexport)
#else
#define ELASTMIX_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum elastmix_status {
  ELASTMIX_OK = 0,
  ELASTMIX_INVALID_ARGUMENT = 1,
  ELASTMIX_SOLVER_FAILURE = 2,
  ELASTMIX_IO_ERROR = 3,
  ELASTMIX_INTERNAL_ERROR = 4
} elastmix_status;

typedef struct elastmix_config elastmix_config;
typedef struct elastmix_result elastmix_result;

/* One row of the summary table. Optional fields carry a has_ flag. */
typedef struct elastmix_row {
  int level;
  double h;
  long ndof;
  const char* estimator; /* static string */
  double eta;
  double theta;
  int has_err;
  double err;
  int has_effectivity;
  double effectivity;
  int has_rate;
  double rate;
} elastmix_row;

ELASTMIX_API const char* elastmix_version(void);
ELASTMIX_API const char* elastmix_last_error(void);
ELASTMIX_API const char* elastmix_solver_backend(void);

/* Defaults: problem p1, pair q2q1, mu 100, nu 0.4, levels 2..6,
 * estimators residual,stokes,poisson, no output directory, no element map. */
ELASTMIX_API elastmix_status elastmix_config_create(elastmix_config** out);
ELASTMIX_API void elastmix_config_destroy(elastmix_config* config);

ELASTMIX_API elastmix_status elastmix_config_set_problem(elastmix_config* config, const char* id);
/* "q2q1" or "q2p1". */
ELASTMIX_API elastmix_status elastmix_config_set_pair(elastmix_config* config, const char* pair);
ELASTMIX_API elastmix_status elastmix_config_set_mu(elastmix_config* config, double mu);
ELASTMIX_API elastmix_status elastmix_config_set_nu(elastmix_config* config, double nu);
ELASTMIX_API elastmix_status elastmix_config_set_levels(elastmix_config* config, const int* levels, size_t count);
/* Names: residual, elasticity, modified, stokes, poisson. */
ELASTMIX_API elastmix_status elastmix_config_set_estimators(elastmix_config* config, const char* const* names,
                                                            size_t count);
ELASTMIX_API elastmix_status elastmix_config_set_output_dir(elastmix_config* config, const char* dir);
ELASTMIX_API elastmix_status elastmix_config_set_element_map(elastmix_config* config, int enabled);
/* Checks the whole configuration without running it. */
ELASTMIX_API elastmix_status elastmix_config_validate(const elastmix_config* config);

/* Runs the sweep. When an output directory is set the CSV and JSON files are
 * written before returning. */
ELASTMIX_API elastmix_status elastmix_run(const elastmix_config* config, elastmix_result** out);
ELASTMIX_API void elastmix_result_destroy(elastmix_result* result);

ELASTMIX_API size_t elastmix_result_row_count(const elastmix_result* result);
ELASTMIX_API elastmix_status elastmix_result_row(const elastmix_result* result, size_t index, elastmix_row* out);
ELASTMIX_API double elastmix_result_total_ms(const elastmix_result* result);
/* Largest relative residual over all global solves. */
ELASTMIX_API double elastmix_result_max_residual(const elastmix_result* result);

/* Copies the summary CSV / JSON text into buf (NUL terminated, truncated to
 * capacity). *needed receives the full length including the terminator. */
ELASTMIX_API elastmix_status elastmix_result_summary_csv(const elastmix_result* result, char* buf, size_t capacity,
                                                         size_t* needed);
ELASTMIX_API elastmix_status elastmix_result_summary_json(const elastmix_result* result, char* buf, size_t capacity,
                                                          size_t* needed);

#ifdef __cplusplus
}
#endif

#endif /* ELASTMIX_ELASTMIX_H */
