#ifndef GAEXPLAIN_GAEXPLAIN_H
#define GAEXPLAIN_GAEXPLAIN_H

/*
 * C interface to gaexplain: a bitstring GA on benchmark problems, an RBF
 * epsilon-SVR surrogate trained on its archived evaluations, and single-bit
 * probing of that surrogate around the GA's best solution.
 *
 * Conventions
 *  - Every fallible call returns a gx_status. On failure, gx_last_error()
 *    returns a message for the calling thread, valid until its next call.
 *  - Objects are opaque handles created by *_create / *_run / *_load and
 *    released with the matching *_destroy. Destroying NULL is a no-op.
 *  - Bitstrings cross the boundary as arrays of uint8_t holding 0 or 1.
 *  - Strings returned through const char* are owned by the handle and stay
 *    valid until it is destroyed.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(GAEXPLAIN_BUILDING_LIBRARY)
#    define GX_API __declspec(dllexport)
#  else
#    define GX_API __declspec(dllimport)
#  endif
#else
#  define GX_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gx_status {
  GX_OK = 0,
  GX_ERR_INVALID_ARGUMENT = 1,
  GX_ERR_CONFIG = 2,
  GX_ERR_PARSE = 3,
  GX_ERR_DEGENERATE_DATA = 4,
  GX_ERR_EMPTY_TRAINING_SET = 5,
  GX_ERR_IO = 6,
  GX_ERR_RUN_FAILED = 7,
  GX_ERR_INTERNAL = 8,
  GX_ERR_PREDICTOR = 9
} gx_status;

GX_API const char* gx_last_error(void);
GX_API const char* gx_status_name(gx_status status);
GX_API const char* gx_version(void);

/* ---- experiment configuration ------------------------------------------ */

typedef struct gx_config gx_config;

/* Defaults: checkerboard1d, n=100, pop=100, gens=100, mut 0.01, xover 0.95,
 * tournament 5, 1 elite, seed 1, train "all", 1 repeat, out "out". */
GX_API gx_status gx_config_create(gx_config** out);
GX_API void gx_config_destroy(gx_config* config);
/* Replaces the configuration with a JSON document read from `path`. */
GX_API gx_status gx_config_load_json(gx_config* config, const char* path);
GX_API gx_status gx_config_parse_json(gx_config* config, const char* json_text);
/* Single override; `key` is a CLI flag name without dashes ("mut-rate"). */
GX_API gx_status gx_config_set(gx_config* config, const char* key, const char* value);
GX_API gx_status gx_config_validate(const gx_config* config);
GX_API size_t gx_config_repeats(const gx_config* config);
/* Writes the JSON document into buf (NUL-terminated, truncated to cap) and
 * the full length excluding NUL into *needed. buf may be NULL when cap is 0. */
GX_API gx_status gx_config_to_json(const gx_config* config, char* buf, size_t cap,
                                   size_t* needed);

/* ---- GA runs ------------------------------------------------------------ */

typedef struct gx_ga_result gx_ga_result;

/* One GA repeat (seed = base seed + run_index) of the configured problem. */
GX_API gx_status gx_ga_run(const gx_config* config, size_t run_index, gx_ga_result** out);
GX_API void gx_ga_result_destroy(gx_ga_result* result);
GX_API double gx_ga_result_best_fitness(const gx_ga_result* result);
GX_API size_t gx_ga_result_genome_length(const gx_ga_result* result);
/* Copies the best genome into bits[0..cap). Returns the genome length. */
GX_API size_t gx_ga_result_best_genome(const gx_ga_result* result, uint8_t* bits, size_t cap);
GX_API size_t gx_ga_result_generations(const gx_ga_result* result);
/* Best fitness after `generation`; NaN past the last generation. */
GX_API double gx_ga_result_history(const gx_ga_result* result, size_t generation);
GX_API size_t gx_ga_result_archive_rows(const gx_ga_result* result);

/* ---- full pipeline ------------------------------------------------------ */

typedef struct gx_experiment gx_experiment;

/* Runs every repeat. With write_outputs != 0, writes probe CSVs, models, mean
 * importance CSV/SVG and summary.csv into the configured output directory. */
GX_API gx_status gx_experiment_run(const gx_config* config, int write_outputs,
                                   gx_experiment** out);
GX_API void gx_experiment_destroy(gx_experiment* experiment);
GX_API size_t gx_experiment_runs(const gx_experiment* experiment);
GX_API size_t gx_experiment_ranges(const gx_experiment* experiment);
/* Out-of-range indices give NULL, NaN or 0 below. */
/* Label of training range `range` ("first", "all" or "LO..HI"). */
GX_API const char* gx_experiment_range_label(const gx_experiment* experiment, size_t range);
GX_API double gx_experiment_best_fitness(const gx_experiment* experiment, size_t run);
GX_API size_t gx_experiment_train_rows(const gx_experiment* experiment, size_t run, size_t range);
/* Copies up to cap importance values; returns the vector length. */
GX_API size_t gx_experiment_importance(const gx_experiment* experiment, size_t run, size_t range,
                                       double* values, size_t cap);
GX_API size_t gx_experiment_mean_importance(const gx_experiment* experiment, size_t range,
                                            double* values, size_t cap);
GX_API size_t gx_experiment_file_count(const gx_experiment* experiment);
GX_API const char* gx_experiment_file(const gx_experiment* experiment, size_t index);

/* ---- problems ----------------------------------------------------------- */

typedef struct gx_problem gx_problem;

/* Builds the problem the configuration describes (reads or generates CNF). */
GX_API gx_status gx_problem_from_config(const gx_config* config, gx_problem** out);
GX_API void gx_problem_destroy(gx_problem* problem);
GX_API size_t gx_problem_genome_length(const gx_problem* problem);
GX_API gx_status gx_problem_evaluate(const gx_problem* problem, const uint8_t* bits, size_t n,
                                     double* fitness);

/* Writes a seeded uniform random 3-CNF formula as DIMACS. */
GX_API gx_status gx_cnf_generate_file(uint64_t seed, size_t num_vars, size_t num_clauses,
                                      const char* path);

/* ---- surrogate ---------------------------------------------------------- */

typedef struct gx_svr_model gx_svr_model;

typedef struct gx_svr_params {
  double c;          /* > 0, default 1.0 */
  double epsilon;    /* >= 0, default 0.1 */
  double gamma;      /* <= 0 selects 1 / (d * Var(X)); default 0 */
  double tolerance;  /* > 0, default 1e-3 */
  size_t max_iterations; /* 0 selects 10 * rows; capped at 200000 */
} gx_svr_params;

GX_API gx_svr_params gx_svr_default_params(void);
/* inputs is row-major, rows * features bytes of 0/1. */
GX_API gx_status gx_svr_train(const uint8_t* inputs, size_t rows, size_t features,
                              const double* targets, const gx_svr_params* params,
                              gx_svr_model** out);
GX_API void gx_svr_destroy(gx_svr_model* model);
GX_API int gx_svr_converged(const gx_svr_model* model);
GX_API size_t gx_svr_support_vector_count(const gx_svr_model* model);
GX_API double gx_svr_gamma(const gx_svr_model* model);
GX_API double gx_svr_intercept(const gx_svr_model* model);
GX_API gx_status gx_svr_predict(const gx_svr_model* model, const uint8_t* bits, size_t n,
                                double* out);
GX_API gx_status gx_svr_save(const gx_svr_model* model, const char* path);
GX_API gx_status gx_svr_load(const char* path, gx_svr_model** out);

/* ---- probing ------------------------------------------------------------ */

/* Returns 0 on success and writes the prediction for bits[0..n) to *out. */
typedef int (*gx_predictor_fn)(void* user, const uint8_t* bits, size_t n, double* out);

/* Signed single-bit importance of `seed` under `predictor`: n + 1 predictor
 * calls. importance must hold n values; baseline may be NULL. */
GX_API gx_status gx_probe(const uint8_t* seed, size_t n, gx_predictor_fn predictor, void* user,
                          double* importance, double* baseline);

/* Reads a probe or mean-importance CSV and writes an SVG bar chart. */
GX_API gx_status gx_plot_csv(const char* csv_path, const char* svg_path, const char* title);

#ifdef __cplusplus
}
#endif

#endif /* GAEXPLAIN_GAEXPLAIN_H */
