/* C interface to the k-truss minimization library.
 *
 * Objects are opaque handles released with the matching *_free call. Every
 * fallible function returns a ktm_status; on failure ktm_last_error()
 * describes the problem (thread-local, valid until the next call on the
 * same thread). Strings returned through char** are owned by the caller
 * and released with ktm_string_free. Vertex labels are the labels of the
 * input file, never internal ids.
 */
#ifndef KTM_KTM_H
#define KTM_KTM_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(KTM_BUILDING_LIBRARY)
#    define KTM_API __declspec(dllexport)
#  else
#    define KTM_API __declspec(dllimport)
#  endif
#else
#  define KTM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ktm_status {
  KTM_OK = 0,
  KTM_ERR_ARGUMENT = 1,
  KTM_ERR_IO = 2,
  KTM_ERR_PARSE = 3,
  KTM_ERR_CONTRACT = 4,
  KTM_ERR_EXACT_CAP = 5,
  KTM_ERR_EMPTY_TRUSS = 6,
  KTM_ERR_INTERNAL = 7
} ktm_status;

typedef enum ktm_algorithm {
  KTM_ALG_EXACT = 0,
  KTM_ALG_SUPPORT = 1,
  KTM_ALG_BASELINE = 2,
  KTM_ALG_GP_EDGE = 3,
  KTM_ALG_UP_EDGE = 4
} ktm_algorithm;

typedef enum ktm_format { KTM_FORMAT_JSON = 0, KTM_FORMAT_CSV = 1, KTM_FORMAT_HUMAN = 2 } ktm_format;

typedef struct ktm_graph ktm_graph;
typedef struct ktm_edge_list ktm_edge_list;
typedef struct ktm_report ktm_report;

typedef struct ktm_stats {
  uint64_t vertices;
  uint64_t edges;
  uint64_t triangles;
  int32_t max_support;
  int32_t max_trussness;
} ktm_stats;

typedef struct ktm_solver_config {
  int32_t k;
  int32_t b;
  ktm_algorithm algorithm;
  uint32_t threads;            /* 0: all hardware threads */
  int32_t full_index_rebuild;  /* up_edge: rebuild the group index every iteration */
  uint64_t exact_cap;          /* 0: library default */
} ktm_solver_config;

typedef struct ktm_iteration {
  int64_t u;
  int64_t v;
  int64_t followers;
  uint64_t candidates_total;
  uint64_t candidates_evaluated;
  double time_ms;
} ktm_iteration;

typedef struct ktm_totals {
  int64_t followers_total;
  int32_t b_effective;
  uint64_t initial_truss_edges;
  uint64_t final_truss_edges;
  uint32_t warning_count;
} ktm_totals;

KTM_API const char* ktm_version(void);
KTM_API const char* ktm_last_error(void);
KTM_API const char* ktm_status_name(ktm_status status);
KTM_API void ktm_string_free(char* s);

KTM_API ktm_status ktm_algorithm_from_name(const char* name, ktm_algorithm* out);
KTM_API const char* ktm_algorithm_name(ktm_algorithm alg);
KTM_API void ktm_solver_config_init(ktm_solver_config* cfg);

/* Graph ingestion (edge-list text). */
KTM_API ktm_status ktm_graph_load_file(const char* path, ktm_graph** out);
KTM_API ktm_status ktm_graph_load_text(const char* text, size_t length, ktm_graph** out);
KTM_API void ktm_graph_free(ktm_graph* g);
KTM_API uint64_t ktm_graph_vertex_count(const ktm_graph* g);
KTM_API uint64_t ktm_graph_edge_count(const ktm_graph* g);

KTM_API ktm_status ktm_graph_stats(const ktm_graph* g, ktm_stats* out);

/* Edge lists: T_k edges (value = support inside T_k) or the full
 * decomposition (value = trussness). Sorted by (u, v) label. */
KTM_API ktm_status ktm_truss_edges(const ktm_graph* g, int32_t k, ktm_edge_list** out);
KTM_API ktm_status ktm_decompose(const ktm_graph* g, ktm_edge_list** out);
KTM_API size_t ktm_edge_list_size(const ktm_edge_list* list);
KTM_API ktm_status ktm_edge_list_get(const ktm_edge_list* list, size_t i, int64_t* u, int64_t* v, int32_t* value);
KTM_API void ktm_edge_list_free(ktm_edge_list* list);

/* Minimization. An empty T_k is not an error: the report has zero
 * iterations and an "empty truss" warning. */
KTM_API ktm_status ktm_minimize(const ktm_graph* g, const ktm_solver_config* cfg, ktm_report** out);
KTM_API void ktm_report_free(ktm_report* r);
KTM_API size_t ktm_report_iteration_count(const ktm_report* r);
KTM_API ktm_status ktm_report_iteration(const ktm_report* r, size_t i, ktm_iteration* out);
KTM_API ktm_status ktm_report_totals(const ktm_report* r, ktm_totals* out);
KTM_API const char* ktm_report_warning(const ktm_report* r, size_t i);
/* KTM_FORMAT_JSON or KTM_FORMAT_HUMAN. */
KTM_API ktm_status ktm_report_render(const ktm_report* r, ktm_format format, int include_timing, char** out);

/* Support groups and truss groups of T_k as JSON. */
KTM_API ktm_status ktm_groups_json(const ktm_graph* g, int32_t k, char** out);

/* Benchmark matrix, rendered as CSV with the fixed header
 * "k,b,algorithm,rep,followers_total,time_ms,candidates_evaluated". */
KTM_API ktm_status ktm_bench_csv(const ktm_graph* g, const int32_t* ks, size_t k_count, const int32_t* bs,
                                 size_t b_count, const ktm_algorithm* algorithms, size_t algorithm_count,
                                 int32_t repetitions, uint32_t threads, uint64_t exact_cap, int include_timing,
                                 char** out);

#ifdef __cplusplus
}
#endif

#endif /* KTM_KTM_H */
