/* evoc: cultural-evolution simulator, C API.
 *
 * All functions returning evoc_status leave a human-readable message in
 * evoc_last_error() on failure. Handles are opaque; every *_new/_load has a
 * matching *_free. Strings returned through char** out-parameters are owned
 * by the caller and released with evoc_string_free().
 */
#ifndef EVOC_H
#define EVOC_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define EVOC_API __declspec(dllexport)
#else
#define EVOC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum evoc_status {
  EVOC_OK = 0,
  EVOC_ERR_IO = 1,      /* file missing or unreadable/unwritable */
  EVOC_ERR_PARSE = 2,   /* malformed data file */
  EVOC_ERR_CONFIG = 3,  /* invalid configuration value or combination */
  EVOC_ERR_INVALID = 4, /* bad argument (null handle, unknown key, ...) */
} evoc_status;

EVOC_API const char* evoc_version(void);

/* Thread-local message for the most recent failure; "" when none. */
EVOC_API const char* evoc_last_error(void);

EVOC_API void evoc_string_free(char* s);

/* ---- template sets & fitness ---- */

typedef struct evoc_template_set evoc_template_set;

EVOC_API evoc_status evoc_template_set_load(const char* path, evoc_template_set** out);
EVOC_API evoc_status evoc_template_set_parse(const char* text, evoc_template_set** out);
EVOC_API void evoc_template_set_free(evoc_template_set* ts);
EVOC_API size_t evoc_template_set_size(const evoc_template_set* ts);
EVOC_API const char* evoc_template_set_id(const evoc_template_set* ts);

/* sub_action is the compact six-token form, e.g. "01-110-1". */
EVOC_API evoc_status evoc_sub_action_fitness(const evoc_template_set* ts, const char* sub_action,
                                             int* out_fitness);

/* Exhaustive 729-row landscape CSV (sub_action,fitness,is_optimal). */
EVOC_API evoc_status evoc_landscape_write_csv(const evoc_template_set* ts, const char* out_path);

/* Maximal sub-actions as a comma-separated string. */
EVOC_API evoc_status evoc_landscape_argmax(const evoc_template_set* ts, char** out_argmax);
EVOC_API evoc_status evoc_landscape_max(const evoc_template_set* ts, int* out_max);

/* Checks the set against a constraints file; the report is always
 * produced, out_all_hard_passed says whether every hard check held. */
EVOC_API evoc_status evoc_validate(const evoc_template_set* ts, const char* constraints_path,
                                   char** out_report, int* out_all_hard_passed);

/* ---- single runs ---- */

typedef struct evoc_run_config evoc_run_config;

EVOC_API evoc_run_config* evoc_run_config_new(void);
EVOC_API void evoc_run_config_free(evoc_run_config* cfg);
EVOC_API evoc_status evoc_run_config_load_file(evoc_run_config* cfg, const char* path);

/* Keys use the config-file names: "society.seed", "society.chaining",
 * "cf.b", "run.ff1", "run.trace", ... */
EVOC_API evoc_status evoc_run_config_set(evoc_run_config* cfg, const char* key,
                                         const char* value);

/* Runs one simulation. Metrics go to metrics_path, or to *out_metrics_csv
 * when metrics_path is NULL (pass NULL for whichever you do not want).
 * Trace and action-dump files are written when configured. */
EVOC_API evoc_status evoc_run_simulation(const evoc_run_config* cfg, const char* metrics_path,
                                         char** out_metrics_csv);

/* ---- batch experiments ---- */

typedef struct evoc_experiment evoc_experiment;

EVOC_API evoc_experiment* evoc_experiment_new(void);
EVOC_API void evoc_experiment_free(evoc_experiment* exp);
EVOC_API evoc_status evoc_experiment_load_file(evoc_experiment* exp, const char* path);
EVOC_API evoc_status evoc_experiment_set(evoc_experiment* exp, const char* key,
                                         const char* value);

/* Runs every configured condition and writes per-condition CSVs, the two
 * SVG charts and summary.txt into the configured output directory. */
EVOC_API evoc_status evoc_experiment_run(const evoc_experiment* exp);

/* Regenerates the SVG charts from per-condition CSVs already in dir. */
EVOC_API evoc_status evoc_plot_directory(const char* dir);

#ifdef __cplusplus
}
#endif

#endif /* EVOC_H */
