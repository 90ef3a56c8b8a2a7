/* ocam — ownership-contribution alignment and technical-debt-density
 * mining toolkit. C API of the shared library; all functionality the
 * CLI uses goes through this surface.
 *
 * Conventions:
 *   - functions return ocam_status; OCAM_OK is 0
 *   - strings returned through char** are heap-allocated by the
 *     library and must be released with ocam_string_free()
 *   - on failure, ocam_last_error() returns a thread-local message
 */
#ifndef OCAM_OCAM_H
#define OCAM_OCAM_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  define OCAM_API __declspec(dllexport)
#else
#  define OCAM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ocam_status {
    OCAM_OK = 0,
    OCAM_ERR_INVALID_ARGUMENT = 1,
    OCAM_ERR_PARSE = 2,
    OCAM_ERR_IO = 3,
    OCAM_ERR_DATA = 4,
    OCAM_ERR_UNDEFINED = 5,   /* statistic undefined for this input */
    OCAM_ERR_REJECTED = 6,    /* strict mode: records were rejected */
    OCAM_ERR_INTERNAL = 7
} ocam_status;

OCAM_API const char* ocam_version(void);
OCAM_API const char* ocam_status_name(ocam_status status);

/* Thread-local message describing the most recent failure. */
OCAM_API const char* ocam_last_error(void);

OCAM_API void ocam_string_free(char* s);

/* ---- run orchestration ------------------------------------------- */

/* Opaque handle holding a parsed, validated run configuration. */
typedef struct ocam_run ocam_run;

/* config_json: the run configuration document (see README). */
OCAM_API ocam_status ocam_run_create(const char* config_json, ocam_run** out_run);
OCAM_API void ocam_run_destroy(ocam_run* run);

/* Parses the configured inputs and writes the normalized event store.
 * diagnostics_json_out (optional) receives the ingest summary. In
 * strict mode, rejected records yield OCAM_ERR_REJECTED (the store and
 * summary are still written). */
OCAM_API ocam_status ocam_run_ingest(ocam_run* run, char** diagnostics_json_out);

/* Runs metrics + statistics over the normalized store and writes
 * reports and plot data. summary_json_out (optional) receives the
 * per-component summary. */
OCAM_API ocam_status ocam_run_analyze(ocam_run* run, char** summary_json_out);

/* Renders an existing report.json into "json", "csv", "markdown" or
 * "all" under out_dir. */
OCAM_API ocam_status ocam_render_report(const char* report_json_path, const char* format,
                                        const char* out_dir, char** summary_json_out);

/* Generates a synthetic input fileset from a scenario document. */
OCAM_API ocam_status ocam_synth_generate(const char* scenario_json, const char* out_dir,
                                         char** manifest_json_out);

/* Oracle-equivalence suite; OCAM_OK only if every check passed. */
OCAM_API ocam_status ocam_selftest(char** results_json_out);

/* ---- statistics kernel ------------------------------------------- */

typedef struct ocam_describe_result {
    int64_t n;
    double mean;
    double std_dev;   /* valid only when has_std != 0 */
    int has_std;
    double min;
    double max;
} ocam_describe_result;

typedef struct ocam_kendall_result {
    double tau_b;
    double p_value;   /* two-sided */
    int64_t n;
    int64_t concordant;
    int64_t discordant;
    int64_t ties_x;   /* tied pairs within x */
    int64_t ties_y;
} ocam_kendall_result;

typedef struct ocam_mwu_result {
    double u_statistic;
    double p_value;   /* two-sided */
    int64_t n1;
    int64_t n2;
    int exact;        /* 1 = exact enumeration, 0 = normal approximation */
} ocam_mwu_result;

typedef struct ocam_sw_result {
    double w_statistic;
    double p_value;
    int64_t n;
} ocam_sw_result;

OCAM_API ocam_status ocam_describe(const double* xs, size_t n, ocam_describe_result* out);

OCAM_API ocam_status ocam_kendall_tau_b(const double* xs, const double* ys, size_t n,
                                        ocam_kendall_result* out);

/* method: 0 = automatic, 1 = exact, 2 = normal approximation */
OCAM_API ocam_status ocam_mann_whitney_u(const double* xs, size_t n1, const double* ys,
                                         size_t n2, int method, ocam_mwu_result* out);

OCAM_API ocam_status ocam_shapiro_wilk(const double* xs, size_t n, ocam_sw_result* out);

/* Returns a static label: "Very Weak", "Weak", "Moderate", "Strong". */
OCAM_API ocam_status ocam_classify_magnitude(double tau_b, const char** label_out);

/* Week bucket of an ISO-8601 timestamp relative to an epoch Monday
 * ("YYYY-MM-DD"); weeks are 1-based. */
OCAM_API ocam_status ocam_week_of(const char* timestamp_iso, const char* epoch_date,
                                  int64_t* week_out);

#ifdef __cplusplus
}
#endif

#endif /* OCAM_OCAM_H */
