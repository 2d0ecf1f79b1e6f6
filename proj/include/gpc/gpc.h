#ifndef GPC_GPC_H
#define GPC_GPC_H

/* C interface to the GPC engine. All strings are UTF-8 and NUL-terminated.
 * Strings returned through char** out-parameters belong to the caller and
 * are released with gpc_string_free. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define GPC_API __declspec(dllexport)
#else
#define GPC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gpc_status {
  GPC_OK = 0,
  GPC_ERR_PARSE = 1,
  GPC_ERR_TYPE = 2,
  GPC_ERR_GRAPH = 3,
  GPC_ERR_RESOURCE = 4,
  GPC_ERR_IO = 5,
  GPC_ERR_INVALID_ARGUMENT = 6,
  GPC_ERR_ORACLE_MISMATCH = 7,
  GPC_ERR_INTERNAL = 8
} gpc_status;

typedef enum gpc_collect_mode {
  GPC_COLLECT_GROUPING = 0,
  GPC_COLLECT_DYNAMIC = 1,
  GPC_COLLECT_SYNTACTIC = 2
} gpc_collect_mode;

typedef struct gpc_options {
  gpc_collect_mode collect_mode;
  int64_t max_len; /* < 0: automatic bound */
  uint64_t max_answers;
  int lenient_unify;
  int oracle; /* cross-check against the brute-force oracle */
} gpc_options;

typedef struct gpc_graph gpc_graph;
typedef struct gpc_result gpc_result;

/* Defaults: grouping, automatic bound, 100000 answers, strict, no oracle. */
GPC_API gpc_options gpc_default_options(void);

/* JSON diagnostic for the last failing call on this thread, or "" if none.
 * Valid until the next call on the same thread. */
GPC_API const char* gpc_last_error(void);

GPC_API void gpc_string_free(char* s);

GPC_API gpc_status gpc_graph_from_json(const char* json_text, gpc_graph** out);
GPC_API gpc_status gpc_graph_from_file(const char* path, gpc_graph** out);
GPC_API void gpc_graph_free(gpc_graph* g);
GPC_API size_t gpc_graph_node_count(const gpc_graph* g);
GPC_API size_t gpc_graph_edge_count(const gpc_graph* g);

/* Type-checks a pattern, query or rule set (detected from the text) and
 * writes the inferred schema as JSON. Rule sets report one schema per rule
 * as a JSON array. */
GPC_API gpc_status gpc_check(const char* text, char** schema_json);

/* Evaluates a query or rule set. Input starting with "#nre" or "#c2rpq" is
 * translated first. */
GPC_API gpc_status gpc_run(const gpc_graph* g, const char* text, const gpc_options* options,
                           gpc_result** out);

/* Raw pattern evaluation: every (path, assignment) up to the length bound. */
GPC_API gpc_status gpc_match(const gpc_graph* g, const char* pattern_text,
                             const gpc_options* options, gpc_result** out);

/* GPC+ text for an input with a "#nre" or "#c2rpq" header line. */
GPC_API gpc_status gpc_translate(const char* text, char** gpc_text);

/* Canonically ordered NDJSON lines. */
GPC_API size_t gpc_result_count(const gpc_result* r);
GPC_API const char* gpc_result_line(const gpc_result* r, size_t i);
/* {"answer_count","elapsed_ms","mode","bound_used","truncated"} */
GPC_API const char* gpc_result_report(const gpc_result* r);
GPC_API void gpc_result_free(gpc_result* r);

#ifdef __cplusplus
}
#endif

#endif
