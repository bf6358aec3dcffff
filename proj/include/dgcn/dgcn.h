/*
 * dgcn.h - C interface to the double-layer group-dependent combat network
 * simulator.
 *
 * All objects are opaque handles created and destroyed through this API.
 * Every fallible call returns a dgcn_status; on failure a description of the
 * last error on the calling thread is available from dgcn_last_error().
 */
#ifndef DGCN_H
#define DGCN_H

#include <stddef.h>
#include <stdint.h>

#if defined(DGCN_BUILDING_LIBRARY)
#define DGCN_API __attribute__((visibility("default")))
#else
#define DGCN_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dgcn_status {
  DGCN_OK = 0,
  DGCN_ERR_INVALID_ARGUMENT = 1, /* null handle/pointer, unknown mode name */
  DGCN_ERR_CONFIG = 2,           /* invalid configuration or parameters */
  DGCN_ERR_STRUCTURE = 3,        /* network violates a structural invariant */
  DGCN_ERR_FORMAT = 4,           /* unparseable network file or CSV */
  DGCN_ERR_IO = 5,               /* file could not be opened or written */
  DGCN_ERR_INTERNAL = 6
} dgcn_status;

typedef struct dgcn_config dgcn_config;
typedef struct dgcn_network dgcn_network;

/* One scored scenario. String fields are NUL-terminated. */
typedef struct dgcn_row {
  char family[8];
  char mode[8];
  double f;
  uint64_t seed;
  double r;
  double huge_ratio;
  double links_ratio;
  uint32_t rounds;
  uint32_t failed_nodes;
} dgcn_row;

/* Receives one failure-log entry: cause is "attack", "isolation",
 * "dependency" or "overload". */
typedef void (*dgcn_failure_fn)(uint32_t round, uint32_t node, const char* cause, void* user);

DGCN_API const char* dgcn_version(void);
DGCN_API const char* dgcn_last_error(void);
DGCN_API const char* dgcn_status_name(dgcn_status status);

/* ---- configuration ---------------------------------------------------- */

/* Defaults: ER family, 50/40/30/30 functional nodes, 100 physical nodes,
 * group size 5, tau 0.8, IDA, f = 0:0.05:0.4, 300 repetitions. */
DGCN_API dgcn_status dgcn_config_new(dgcn_config** out);
DGCN_API dgcn_status dgcn_config_load(const char* path, dgcn_config** out);
/* Dotted key, e.g. "cascade.tau". Unknown keys fail with DGCN_ERR_CONFIG. */
DGCN_API dgcn_status dgcn_config_set(dgcn_config* config, const char* key, const char* value);
DGCN_API dgcn_status dgcn_config_validate(const dgcn_config* config);
DGCN_API void dgcn_config_free(dgcn_config* config);

/* ---- networks --------------------------------------------------------- */

/* Generates with the config's generator family (regenerating on an empty
 * baseline, exactly as a sweep repetition with this seed would). */
DGCN_API dgcn_status dgcn_network_generate(const dgcn_config* config, uint64_t seed, dgcn_network** out);
DGCN_API dgcn_status dgcn_network_load(const char* path, dgcn_network** out);
DGCN_API dgcn_status dgcn_network_save(const dgcn_network* network, const char* path);
DGCN_API dgcn_status dgcn_network_counts(const dgcn_network* network, uint32_t* functional_nodes,
                                         uint32_t* physical_nodes, uint32_t* group_size);
/* Baseline number of combat-effectiveness links (config selects the
 * communication-hop rule). */
DGCN_API dgcn_status dgcn_network_links(const dgcn_network* network, const dgcn_config* config, int64_t* links);
DGCN_API void dgcn_network_free(dgcn_network* network);

/* ---- single scenarios ------------------------------------------------- */

/* Attack `network` with `mode` (one of RSPA ISPA RSFA ISFA RDA IDA) at ratio
 * f, run the cascade and score it. `seed` keys the attack and overload
 * streams. `on_failure` may be NULL. */
DGCN_API dgcn_status dgcn_network_attack(const dgcn_network* network, const dgcn_config* config, const char* mode,
                                         double f, uint64_t seed, dgcn_failure_fn on_failure, void* user,
                                         dgcn_row* out);

/* Generate from `seed` and attack: the row a sweep would produce for the
 * repetition with this seed. */
DGCN_API dgcn_status dgcn_run(const dgcn_config* config, const char* mode, double f, uint64_t seed,
                              dgcn_failure_fn on_failure, void* user, dgcn_row* out);

/* Writes one CSV line (no newline) in the sweep's result format. Returns the
 * length that the full line needs, like snprintf. */
DGCN_API size_t dgcn_row_format(const dgcn_row* row, char* buffer, size_t size);
DGCN_API const char* dgcn_result_header(void);

/* ---- batch ------------------------------------------------------------ */

/* Runs the full experiment. Writes raw rows to csv_path and per-key means to
 * summary_path (may be NULL to skip). workers = 0 uses every core. */
DGCN_API dgcn_status dgcn_sweep(const dgcn_config* config, unsigned workers, const char* csv_path,
                                const char* summary_path, size_t* rows_written);

/* Aggregates a result CSV into a plot-ready series table; optionally renders
 * an SVG chart (svg_path may be NULL). */
DGCN_API dgcn_status dgcn_report(const char* csv_path, const char* table_path, const char* svg_path,
                                 size_t* series_count);

#ifdef __cplusplus
}
#endif

#endif /* DGCN_H */
