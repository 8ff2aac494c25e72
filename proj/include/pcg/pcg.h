/*
 * C interface to the pairwise compatibility graph workbench.
 *
 * Objects are opaque handles owned by the caller and released with the
 * matching *_free function. Every fallible call returns a pcg_status; on
 * failure pcg_last_error() describes the problem (thread-local, valid until
 * the next call on the same thread). Strings returned through char** are
 * heap-allocated and released with pcg_string_free().
 *
 * Rational quantities cross the boundary as "p/q" strings ("p" when integral).
 */
#ifndef PCG_PCG_H
#define PCG_PCG_H

#include <stddef.h>
#include <stdint.h>

#if defined(PCG_BUILDING_LIBRARY)
#define PCG_API __attribute__((visibility("default")))
#else
#define PCG_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  PCG_OK = 0,
  PCG_ERROR_INVALID_ARGUMENT = 1,
  PCG_ERROR_PARSE = 2,
  PCG_ERROR_OUT_OF_RANGE = 3,
  PCG_ERROR_VERIFICATION = 4,
  PCG_ERROR_IO = 5,
  PCG_ERROR_STATE = 6, /* corrupt or mismatched checkpoint */
  PCG_ERROR_INTERNAL = 99
} pcg_status;

typedef struct pcg_graph pcg_graph;
typedef struct pcg_graph_list pcg_graph_list;
typedef struct pcg_witness pcg_witness;
typedef struct pcg_sweep pcg_sweep;
typedef struct pcg_db_report pcg_db_report;

PCG_API const char* pcg_last_error(void);
PCG_API const char* pcg_status_name(pcg_status status);
PCG_API void pcg_string_free(char* s);

/* ---- graphs ------------------------------------------------------------ */

PCG_API pcg_status pcg_graph_from_graph6(const char* text, pcg_graph** out);
PCG_API pcg_status pcg_graph_wheel(int order, pcg_graph** out);
PCG_API pcg_graph* pcg_graph_clone(const pcg_graph* g);
PCG_API void pcg_graph_free(pcg_graph* g);

PCG_API int pcg_graph_order(const pcg_graph* g);
PCG_API int pcg_graph_edge_count(const pcg_graph* g);
PCG_API int pcg_graph_adjacent(const pcg_graph* g, int u, int v);
PCG_API int pcg_graph_is_connected(const pcg_graph* g);
PCG_API pcg_status pcg_graph_to_graph6(const pcg_graph* g, char** out);
/* Canonically relabeled copy; two graphs are isomorphic iff their canonical graph6 strings match. */
PCG_API pcg_status pcg_graph_canonical(const pcg_graph* g, pcg_graph** out);
PCG_API pcg_status pcg_graph_isomorphic(const pcg_graph* a, const pcg_graph* b, int* out);

/* Connected graphs of the given order (1..7), one canonical graph per class, sorted by code. */
PCG_API pcg_status pcg_enumerate_connected(int order, pcg_graph_list** out);
PCG_API size_t pcg_graph_list_size(const pcg_graph_list* list);
PCG_API const pcg_graph* pcg_graph_list_at(const pcg_graph_list* list, size_t index);
PCG_API void pcg_graph_list_free(pcg_graph_list* list);

/* ---- witnesses --------------------------------------------------------- */

/* A witness record: graph, tree, thresholds, leaf labeling (one JSON line). */
PCG_API pcg_status pcg_witness_from_json(const char* json, pcg_witness** out);
PCG_API pcg_status pcg_witness_read_file(const char* path, pcg_witness** out);
PCG_API pcg_status pcg_witness_to_json(const pcg_witness* w, char** out);
PCG_API pcg_status pcg_witness_write_file(const pcg_witness* w, const char* path);
PCG_API void pcg_witness_free(pcg_witness* w);

PCG_API int pcg_witness_leaf_count(const pcg_witness* w);
PCG_API pcg_status pcg_witness_d_min(const pcg_witness* w, char** out);
PCG_API pcg_status pcg_witness_d_max(const pcg_witness* w, char** out);
/* The graph the record claims to certify. */
PCG_API pcg_status pcg_witness_graph(const pcg_witness* w, pcg_graph** out);
/* Graph produced by the tree and thresholds under the record's labeling. */
PCG_API pcg_status pcg_witness_extract(const pcg_witness* w, pcg_graph** out);
/* *ok = labeled equality with g (or the record's own graph when g is NULL).
   report_json, if non-NULL, receives the per-pair breakdown. */
PCG_API pcg_status pcg_witness_verify(const pcg_witness* w, const pcg_graph* g, int* ok, char** report_json);
/* 1 if the tree is a caterpillar, 2 if it is already a reduced centipede, 0 otherwise. */
PCG_API int pcg_witness_tree_kind(const pcg_witness* w);

PCG_API pcg_status pcg_witness_integerize(const pcg_witness* w, pcg_witness** out);
PCG_API pcg_status pcg_witness_normalize(const pcg_witness* w, pcg_witness** out);

typedef struct {
  char separation[64]; /* L; empty string when the graph has no non-edges */
  int zero_edge_count; /* N */
  char epsilon[64];
  char d_max_new[64];
  int already_reduced;
} pcg_transform_report;

/* Caterpillar -> reduced centipede rewrite. leaf_order may be NULL to use the
   record's "leaf_order" field, or failing that the tree's leaf order. */
PCG_API pcg_status pcg_witness_to_reduced_centipede(const pcg_witness* w, const int* leaf_order, size_t leaf_count,
                                                    pcg_witness** out, pcg_transform_report* report);

/* ---- forward sweep ----------------------------------------------------- */

typedef struct {
  int order;
  int max_weight;
  int workers;                /* >= 1 */
  uint64_t checkpoint_every;  /* weight-vector indices between checkpoints; 0 = only at the end */
  const char* checkpoint_path; /* may be NULL */
  int resume;                 /* resume from checkpoint_path if it exists */
  int skip_mirrors;           /* normally 1 */
  int fingerprint_filter;     /* normally 1 */
  uint64_t block_size;        /* 0 = default */
} pcg_sweep_config;

typedef struct {
  int weight; /* round in progress, or the round just finished when round_finished */
  uint64_t block;
  size_t covered;
  size_t targets;
  uint64_t vectors_examined;
  uint64_t threshold_pairs;
  uint64_t canonicalizations;
  int round_finished;
} pcg_sweep_progress;

typedef void (*pcg_progress_fn)(const pcg_sweep_progress* progress, void* user);

PCG_API void pcg_sweep_config_init(pcg_sweep_config* config);

/* targets may be NULL for every connected class of the configured order. */
PCG_API pcg_status pcg_sweep_run(const pcg_sweep_config* config, const pcg_graph_list* targets,
                                 pcg_progress_fn progress, void* user, pcg_sweep** out);
PCG_API void pcg_sweep_free(pcg_sweep* s);
PCG_API void pcg_sweep_summary(const pcg_sweep* s, pcg_sweep_progress* out);
PCG_API int pcg_sweep_exhausted(const pcg_sweep* s);
PCG_API int pcg_sweep_resumed(const pcg_sweep* s);
PCG_API pcg_status pcg_sweep_uncovered(const pcg_sweep* s, pcg_graph_list** out);
/* Smallest weight bound whose round completed coverage, or 0. */
PCG_API int pcg_sweep_completing_weight(const pcg_sweep* s);
PCG_API pcg_status pcg_sweep_write_database(const pcg_sweep* s, const char* path);

/* ---- backward search --------------------------------------------------- */

typedef enum {
  PCG_TOPOLOGIES_ALL = 0,
  PCG_TOPOLOGIES_NON_CENTIPEDE = 1,
  PCG_TOPOLOGIES_CENTIPEDE_ONLY = 2
} pcg_topology_set;

typedef struct {
  int max_weight;
  pcg_topology_set topologies;
  int use_fixed_thresholds;
  const char* d_min; /* used when use_fixed_thresholds */
  const char* d_max;
} pcg_search_config;

PCG_API void pcg_search_config_init(pcg_search_config* config);
PCG_API size_t pcg_topology_count(int leaves);

/* *out is NULL when the bounded search is exhausted. If non-NULL,
   vectors_examined receives the number of weight vectors tried and
   topology_is_caterpillar whether the witness tree is a caterpillar. */
PCG_API pcg_status pcg_search_for_graph(const pcg_graph* g, const pcg_search_config* config, pcg_witness** out,
                                        uint64_t* vectors_examined, int* topology_is_caterpillar);

/* ---- databases --------------------------------------------------------- */

PCG_API pcg_status pcg_database_verify(const char* path, int order, pcg_db_report** out);
PCG_API size_t pcg_db_report_total(const pcg_db_report* r);
PCG_API size_t pcg_db_report_passed(const pcg_db_report* r);
PCG_API size_t pcg_db_report_failure_count(const pcg_db_report* r);
/* line (1-based), key and reason of failure i; pointers valid while r lives. */
PCG_API void pcg_db_report_failure(const pcg_db_report* r, size_t i, size_t* line, const char** key,
                                   const char** reason);
PCG_API size_t pcg_db_report_warning_count(const pcg_db_report* r);
PCG_API const char* pcg_db_report_warning(const pcg_db_report* r, size_t i);
PCG_API void pcg_db_report_free(pcg_db_report* r);

PCG_API pcg_status pcg_database_export_csv(const char* database_path, const char* csv_path, size_t* rows);

#ifdef __cplusplus
}
#endif

#endif /* PCG_PCG_H */
