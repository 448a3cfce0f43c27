/* C interface to the run-up library. Every handle is opaque and owned by the
 * caller once created; functions returning runup_status leave details of the
 * last failure in runup_last_error() (per thread). */
#ifndef RUNUP_RUNUP_H
#define RUNUP_RUNUP_H

#include <stddef.h>

#if defined(_WIN32)
#define RUNUP_API __declspec(dllexport)
#else
#define RUNUP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum runup_status {
  RUNUP_OK = 0,
  RUNUP_ERR_INVALID_ARGUMENT = 1,
  RUNUP_ERR_CONFIG = 2,
  RUNUP_ERR_BREAKING = 3,
  RUNUP_ERR_CONVERGENCE = 4,
  RUNUP_ERR_RANGE = 5,
  RUNUP_ERR_IO = 6,
  RUNUP_ERR_INTERNAL = 7
} runup_status;

typedef struct runup_config runup_config;
typedef struct runup_ic runup_ic;
typedef struct runup_series runup_series;
typedef struct runup_outputs runup_outputs;

RUNUP_API const char* runup_version(void);
RUNUP_API const char* runup_last_error(void);
/* Process exit code for a status: 0 ok, 2 configuration or input problems,
 * 3 breaking, 4 numerical failures. */
RUNUP_API int runup_exit_code(runup_status status);

/* Run configuration. Keys are the command-line flag names without dashes. */
RUNUP_API runup_status runup_config_create(runup_config** out);
RUNUP_API void runup_config_destroy(runup_config* config);
/* Replaces the configuration by parsing command-line style arguments
 * (program name excluded). */
RUNUP_API runup_status runup_config_parse(runup_config* config, int argc, const char* const* argv);
RUNUP_API runup_status runup_config_set(runup_config* config, const char* key, const char* value);
RUNUP_API runup_status runup_config_validate(const runup_config* config);
RUNUP_API const char* runup_config_mode(const runup_config* config);
RUNUP_API const char* runup_config_output_dir(const runup_config* config);

/* Initial displacement eta0 and velocity u0 on x. */
RUNUP_API runup_status runup_ic_create(size_t n, const double* x, const double* eta0,
                                       const double* u0, runup_ic** out);
/* Built-in cases "gaussian", "soliton", "nwave" with the shoreward velocity. */
RUNUP_API runup_status runup_ic_builtin_case(const char* name, double amplitude, size_t n,
                                           double x_min, double x_max, double bay_m,
                                           runup_ic** out);
RUNUP_API size_t runup_ic_size(const runup_ic* ic);
RUNUP_API runup_status runup_ic_copy(const runup_ic* ic, double* x, double* eta0, double* u0);
RUNUP_API void runup_ic_destroy(runup_ic* ic);

/* Shoreline run-up R on t. */
RUNUP_API runup_status runup_series_create(size_t n, const double* t, const double* R,
                                           runup_series** out);
RUNUP_API size_t runup_series_size(const runup_series* series);
RUNUP_API runup_status runup_series_copy(const runup_series* series, double* t, double* R);
RUNUP_API void runup_series_destroy(runup_series* series);

RUNUP_API runup_status runup_forward(const runup_config* config, const runup_ic* ic,
                                     runup_series** out);
RUNUP_API runup_status runup_inverse(const runup_config* config, const runup_series* R,
                                     runup_ic** out);
/* Fits R and reports min(1 + R'') over its t-range. */
RUNUP_API runup_status runup_breaking_check(const runup_config* config, const runup_series* R,
                                            double* min_jacobian, double* t_at_min,
                                            int* breaking);

/* Runs the configured mode, reading and generating inputs as configured. */
RUNUP_API runup_status runup_execute(const runup_config* config, runup_outputs** out);
/* Writes the result files; dir NULL uses the configured output directory.
 * `count` (optional) receives the number of files written. */
RUNUP_API runup_status runup_outputs_write(const runup_outputs* outputs, const char* dir,
                                           size_t* count);
RUNUP_API size_t runup_outputs_diagnostic_count(const runup_outputs* outputs);
RUNUP_API runup_status runup_outputs_diagnostic(const runup_outputs* outputs, size_t index,
                                                const char** name, double* value);
RUNUP_API int runup_outputs_breaking(const runup_outputs* outputs);
RUNUP_API void runup_outputs_destroy(runup_outputs* outputs);

#ifdef __cplusplus
}
#endif

#endif
