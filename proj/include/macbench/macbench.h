/*
 * macbench — medium-access technique workbench.
 *
 * C89-compatible interface over the C++ core. Conventions:
 *   - Opaque handles; every handle returned by a create, generate or run
 *     call is owned by the caller and released with the matching destroy.
 *   - Functions returning macbench_status report failures through the return
 *     code; macbench_last_error() describes the most recent failure of the
 *     calling thread.
 *   - char* results are malloc'd and released with macbench_string_free().
 *   - All times in the analytic/simulation entry points are dimensionless
 *     multiples of one packet transmission time; frame-timing entry points
 *     use seconds and bits.
 */
#ifndef MACBENCH_H
#define MACBENCH_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define MACBENCH_API __declspec(dllexport)
#else
#define MACBENCH_API __attribute__((visibility("default")))
#endif

typedef enum macbench_status {
    MACBENCH_OK = 0,
    MACBENCH_ERR_INVALID_ARGUMENT = 1, /* bad handle, field, or value */
    MACBENCH_ERR_DOMAIN = 2,           /* input outside a relation's domain */
    MACBENCH_ERR_LOGIC = 3,            /* internal contract violation */
    MACBENCH_ERR_IO = 4,               /* file could not be written */
    MACBENCH_ERR_UNKNOWN = 5
} macbench_status;

/* Library version string ("major.minor.patch"). */
MACBENCH_API const char* macbench_version(void);

/* Message for the calling thread's most recent failure; never NULL. */
MACBENCH_API const char* macbench_last_error(void);

MACBENCH_API void macbench_string_free(char* s);

/* ------------------------------------------------------------------ */
/* Techniques and curve relations                                      */

typedef enum macbench_technique {
    MACBENCH_PURE_ALOHA = 0,
    MACBENCH_SLOTTED_ALOHA = 1,
    MACBENCH_CSMA_1P = 2,
    MACBENCH_CSMA_CA = 3,
    MACBENCH_TDMA = 4,
    MACBENCH_FDMA = 5
} macbench_technique;

typedef enum macbench_relation {
    MACBENCH_D_VS_G = 0, /* delay vs offered load */
    MACBENCH_T_VS_G = 1, /* throughput vs offered load */
    MACBENCH_D_VS_T = 2  /* delay vs throughput */
} macbench_relation;

MACBENCH_API const char* macbench_technique_name(macbench_technique t);
MACBENCH_API const char* macbench_relation_name(macbench_relation r);

/* Accept snake_case or kebab-case spellings. */
MACBENCH_API macbench_status macbench_technique_from_name(const char* name,
                                                          macbench_technique* out);
MACBENCH_API macbench_status macbench_relation_from_name(const char* name,
                                                         macbench_relation* out);

/* ------------------------------------------------------------------ */
/* Closed-form relations                                               */

typedef struct macbench_params macbench_params; /* analytic parameter set */

typedef enum macbench_param_field {
    MACBENCH_PARAM_N_NODES = 0,        /* station count N (integer-valued) */
    MACBENCH_PARAM_PKT_LEN = 1,        /* L */
    MACBENCH_PARAM_CYCLE_LEN = 2,      /* C */
    MACBENCH_PARAM_QUEUE_OCC = 3,      /* q in [0,1) */
    MACBENCH_PARAM_NORM_PROP_DELAY = 4,/* a */
    MACBENCH_PARAM_RETRANS_WINDOW = 5  /* K */
} macbench_param_field;

MACBENCH_API macbench_params* macbench_params_create(void); /* documented defaults */
MACBENCH_API void macbench_params_destroy(macbench_params* p);
MACBENCH_API macbench_status macbench_params_set(macbench_params* p,
                                                 macbench_param_field field,
                                                 double value);
MACBENCH_API macbench_status macbench_params_get(const macbench_params* p,
                                                 macbench_param_field field,
                                                 double* out);

/* 1 when x lies inside the (technique, relation) domain, else 0. */
MACBENCH_API int macbench_in_domain(macbench_technique t, macbench_relation r,
                                    double x, const macbench_params* p);

/* Single point of a relation. Out-of-domain x fails with MACBENCH_ERR_DOMAIN. */
MACBENCH_API macbench_status macbench_eval(macbench_technique t, macbench_relation r,
                                           double x, const macbench_params* p,
                                           double* out);

typedef struct macbench_curve macbench_curve;

/* Samples the relation over the inclusive grid lo, lo+step, ..., hi.
 * Out-of-domain grid values are skipped and counted. */
MACBENCH_API macbench_status macbench_curve_generate(macbench_technique t,
                                                     macbench_relation r, double lo,
                                                     double hi, double step,
                                                     const macbench_params* p,
                                                     macbench_curve** out);
MACBENCH_API void macbench_curve_destroy(macbench_curve* c);
MACBENCH_API size_t macbench_curve_size(const macbench_curve* c);
MACBENCH_API macbench_status macbench_curve_point(const macbench_curve* c, size_t i,
                                                  double* x, double* y);
MACBENCH_API int macbench_curve_skipped(const macbench_curve* c);
/* 1 when the curve is the as-printed CSMA delay-vs-load proxy. */
MACBENCH_API int macbench_curve_as_printed(const macbench_curve* c);
/* CSV document: header "technique,relation,x,y" plus one row per point. */
MACBENCH_API char* macbench_curve_csv(const macbench_curve* c);

/* ------------------------------------------------------------------ */
/* Frame-component timing                                              */

typedef struct macbench_frame_timing macbench_frame_timing;

typedef enum macbench_frame_field {
    MACBENCH_FRAME_DATA_RATE = 0,       /* bits per second */
    MACBENCH_FRAME_N_OVERHEAD_BITS = 1,
    MACBENCH_FRAME_N_ACK_BITS = 2,
    MACBENCH_FRAME_N_SYNC_BITS = 3,
    MACBENCH_FRAME_N_DATA_BITS = 4,
    MACBENCH_FRAME_GUARD_TIME = 5,      /* seconds */
    MACBENCH_FRAME_TURNAROUND_TIME = 6, /* optional override, seconds */
    MACBENCH_FRAME_IFS_TIME = 7,        /* optional override, seconds */
    MACBENCH_FRAME_BACKOFF_SLOTS = 8,
    MACBENCH_FRAME_BACKOFF_SLOT_TIME = 9,
    MACBENCH_FRAME_RTS_TIME = 10,
    MACBENCH_FRAME_CTS_TIME = 11,
    MACBENCH_FRAME_IDLE_TIME = 12,
    MACBENCH_FRAME_SLOT_BOUNDARY_WAIT = 13,
    MACBENCH_FRAME_QUEUE_TIME = 14,
    MACBENCH_FRAME_PAYLOAD_BYTES = 15
} macbench_frame_field;

MACBENCH_API macbench_frame_timing* macbench_frame_timing_create(void);
MACBENCH_API void macbench_frame_timing_destroy(macbench_frame_timing* ft);
MACBENCH_API macbench_status macbench_frame_timing_set(macbench_frame_timing* ft,
                                                       macbench_frame_field field,
                                                       double value);
/* Clears the turnaround/ifs overrides back to their derived defaults. */
MACBENCH_API macbench_status macbench_frame_timing_unset(macbench_frame_timing* ft,
                                                         macbench_frame_field field);

typedef struct macbench_breakdown macbench_breakdown;

MACBENCH_API macbench_status macbench_frame_delay(macbench_technique t,
                                                  const macbench_frame_timing* ft,
                                                  macbench_breakdown** out);
MACBENCH_API void macbench_breakdown_destroy(macbench_breakdown* b);
MACBENCH_API size_t macbench_breakdown_size(const macbench_breakdown* b);
MACBENCH_API const char* macbench_breakdown_component_name(const macbench_breakdown* b,
                                                           size_t i);
MACBENCH_API macbench_status macbench_breakdown_component_value(
    const macbench_breakdown* b, size_t i, double* out);
MACBENCH_API macbench_status macbench_breakdown_total(const macbench_breakdown* b,
                                                      double* out);

/* Payload bits delivered per second for a frame of the given total delay. */
MACBENCH_API macbench_status macbench_throughput_from_delay(double payload_bytes,
                                                            double total_delay_s,
                                                            double* out);

typedef struct macbench_ranking macbench_ranking;

/* Orders the five techniques by frame-level throughput (descending). */
MACBENCH_API macbench_status macbench_rank_techniques(const macbench_frame_timing* ft,
                                                      macbench_ranking** out);
MACBENCH_API void macbench_ranking_destroy(macbench_ranking* r);
MACBENCH_API size_t macbench_ranking_size(const macbench_ranking* r);
MACBENCH_API macbench_status macbench_ranking_entry(const macbench_ranking* r,
                                                    size_t i, macbench_technique* t,
                                                    double* total_delay_s,
                                                    double* throughput_bps);

/* Full frame-timing report: "technique,component,seconds" rows, then
 * "technique,total_s,throughput_bps" rows, then "rank,technique,throughput_bps"
 * rows, as three blank-line-separated CSV sections. */
MACBENCH_API macbench_status macbench_timing_csv(const macbench_frame_timing* ft,
                                                 char** out);

/* ------------------------------------------------------------------ */
/* Simulation                                                          */

typedef struct macbench_sim_config macbench_sim_config;

typedef enum macbench_sim_field {
    MACBENCH_SIM_OFFERED_LOAD_G = 0,
    MACBENCH_SIM_NORM_PROP_DELAY_A = 1,
    MACBENCH_SIM_N_STATIONS = 2,      /* 0 = technique default */
    MACBENCH_SIM_PKT_LEN = 3,
    MACBENCH_SIM_RETRANS_WINDOW_K = 4,
    MACBENCH_SIM_RTS_CTS_ENABLED = 5, /* 0 or 1 */
    MACBENCH_SIM_BACKOFF_WINDOW_SLOTS = 6,
    MACBENCH_SIM_BACKOFF_SLOT_TIME = 7,
    MACBENCH_SIM_RTS_TIME = 8,
    MACBENCH_SIM_CTS_TIME = 9,
    MACBENCH_SIM_STOP_PACKETS = 10,
    MACBENCH_SIM_WARMUP_FRACTION = 11,
    MACBENCH_SIM_MAX_SIM_TIME = 12
} macbench_sim_field;

MACBENCH_API macbench_sim_config* macbench_sim_config_create(void);
MACBENCH_API void macbench_sim_config_destroy(macbench_sim_config* c);
MACBENCH_API macbench_status macbench_sim_config_set_technique(macbench_sim_config* c,
                                                               macbench_technique t);
MACBENCH_API macbench_status macbench_sim_config_set_seed(macbench_sim_config* c,
                                                          uint64_t seed);
MACBENCH_API macbench_status macbench_sim_config_set(macbench_sim_config* c,
                                                     macbench_sim_field field,
                                                     double value);
MACBENCH_API macbench_status macbench_sim_config_get(const macbench_sim_config* c,
                                                     macbench_sim_field field,
                                                     double* out);

typedef struct macbench_metrics macbench_metrics;

typedef enum macbench_metric_field {
    MACBENCH_METRIC_ATTEMPTED = 0,
    MACBENCH_METRIC_SUCCEEDED = 1,
    MACBENCH_METRIC_COLLIDED = 2,
    MACBENCH_METRIC_RTS_COLLIDED = 3,
    MACBENCH_METRIC_IN_FLIGHT_AT_STOP = 4,
    MACBENCH_METRIC_SIM_DURATION = 5,
    MACBENCH_METRIC_THROUGHPUT_S = 6,
    MACBENCH_METRIC_REALIZED_G = 7,
    MACBENCH_METRIC_MEAN_DELAY = 8,
    MACBENCH_METRIC_DELAY_STDDEV = 9,
    MACBENCH_METRIC_CI_LO = 10,
    MACBENCH_METRIC_CI_HI = 11,
    MACBENCH_METRIC_DELAY_SAMPLES = 12,
    MACBENCH_METRIC_CHANNEL_BUSY_TIME = 13,
    MACBENCH_METRIC_CHANNEL_SUCCESS_TIME = 14
} macbench_metric_field;

/* Runs one simulation; identical config+seed always produces identical
 * metrics. trace_path may be NULL; otherwise the event trace is written
 * there, one "time<TAB>kind<TAB>station<TAB>detail" line per event. */
MACBENCH_API macbench_status macbench_simulate(const macbench_sim_config* c,
                                               const char* trace_path,
                                               macbench_metrics** out);
MACBENCH_API void macbench_metrics_destroy(macbench_metrics* m);
/* Counters are exact below 2^53, far above any supported run length. */
MACBENCH_API macbench_status macbench_metrics_get(const macbench_metrics* m,
                                                  macbench_metric_field field,
                                                  double* out);
MACBENCH_API const char* macbench_metrics_status(const macbench_metrics* m);
MACBENCH_API const char* macbench_metrics_warning(const macbench_metrics* m);
/* CSV document: header "technique,g,attempted,succeeded,collided,
 * throughput_s,mean_delay,ci_lo,ci_hi,seed" plus the single data row. */
MACBENCH_API char* macbench_metrics_csv(const macbench_metrics* m);

/* ------------------------------------------------------------------ */
/* Sweeps                                                              */

typedef struct macbench_sweep_spec macbench_sweep_spec;

MACBENCH_API macbench_sweep_spec* macbench_sweep_spec_create(void);
MACBENCH_API void macbench_sweep_spec_destroy(macbench_sweep_spec* s);
MACBENCH_API macbench_status macbench_sweep_spec_add_technique(macbench_sweep_spec* s,
                                                               macbench_technique t);
MACBENCH_API macbench_status macbench_sweep_spec_set_grid(macbench_sweep_spec* s,
                                                          double lo, double hi,
                                                          double step);
MACBENCH_API macbench_status macbench_sweep_spec_set_replications(
    macbench_sweep_spec* s, int replications);
MACBENCH_API macbench_status macbench_sweep_spec_set_base_seed(macbench_sweep_spec* s,
                                                               uint64_t seed);
/* Borrowed handles to the spec's embedded simulation template and analytic
 * parameters; valid while the spec lives, never destroyed by the caller. */
MACBENCH_API macbench_sim_config* macbench_sweep_spec_sim(macbench_sweep_spec* s);
MACBENCH_API macbench_params* macbench_sweep_spec_params(macbench_sweep_spec* s);

typedef struct macbench_sweep_table macbench_sweep_table;

typedef enum macbench_sweep_column {
    MACBENCH_SWEEP_G = 0,
    MACBENCH_SWEEP_S_ANALYTIC = 1,
    MACBENCH_SWEEP_S_SIM_MEAN = 2,
    MACBENCH_SWEEP_S_CI_LO = 3,
    MACBENCH_SWEEP_S_CI_HI = 4,
    MACBENCH_SWEEP_D_ANALYTIC = 5,
    MACBENCH_SWEEP_D_SIM_MEAN = 6,
    MACBENCH_SWEEP_D_CI_LO = 7,
    MACBENCH_SWEEP_D_CI_HI = 8,
    MACBENCH_SWEEP_N_REPLICATIONS = 9
} macbench_sweep_column;

MACBENCH_API macbench_status macbench_run_sweep(const macbench_sweep_spec* s,
                                                macbench_sweep_table** out);
MACBENCH_API void macbench_sweep_table_destroy(macbench_sweep_table* t);
MACBENCH_API size_t macbench_sweep_table_rows(const macbench_sweep_table* t);
MACBENCH_API macbench_status macbench_sweep_table_technique(
    const macbench_sweep_table* t, size_t row, macbench_technique* out);
MACBENCH_API macbench_status macbench_sweep_table_cell(const macbench_sweep_table* t,
                                                       size_t row,
                                                       macbench_sweep_column column,
                                                       double* out);
MACBENCH_API size_t macbench_sweep_table_diagnostics(const macbench_sweep_table* t);
MACBENCH_API const char* macbench_sweep_table_diagnostic(const macbench_sweep_table* t,
                                                         size_t i);
/* CSV document with the sweep-table schema (header plus one row per cell). */
MACBENCH_API char* macbench_sweep_table_csv(const macbench_sweep_table* t);

/* column: 0 = throughput pair, 1 = delay pair. */
MACBENCH_API macbench_status macbench_max_relative_error(const macbench_sweep_table* t,
                                                         int column, double* value,
                                                         size_t* row_index);

typedef struct macbench_ranking_report macbench_ranking_report;

/* Ranks all techniques of the spec at load g by simulated throughput and by
 * simulated delay; requires the spec to cover pure_aloha, slotted_aloha,
 * csma_ca, tdma and fdma. */
MACBENCH_API macbench_status macbench_reproduce_conclusion(
    const macbench_sweep_spec* s, double g, macbench_ranking_report** out);
MACBENCH_API void macbench_ranking_report_destroy(macbench_ranking_report* r);
MACBENCH_API size_t macbench_ranking_report_size(const macbench_ranking_report* r);
/* ordering: 0 = by throughput (descending), 1 = by delay (ascending). */
MACBENCH_API macbench_status macbench_ranking_report_entry(
    const macbench_ranking_report* r, int ordering, size_t i,
    macbench_technique* technique, double* value);
/* which: 0 = throughput, 1 = delay, 2 = both. Returns 0/1, -1 on bad input. */
MACBENCH_API int macbench_ranking_report_tdma_first(const macbench_ranking_report* r,
                                                    int which);
/* Human-readable report with both orderings and the rank-1 verdicts. */
MACBENCH_API char* macbench_ranking_report_text(const macbench_ranking_report* r);

/* ------------------------------------------------------------------ */
/* Reproducibility helpers                                             */

/* The sweep's documented seed-mixing chain, exposed so external tooling can
 * reproduce any single replication. */
MACBENCH_API uint64_t macbench_derive_seed(uint64_t base_seed, uint64_t technique,
                                           uint64_t g_index, uint64_t replication);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* MACBENCH_H */
