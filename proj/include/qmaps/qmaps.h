#ifndef QMAPS_QMAPS_H
#define QMAPS_QMAPS_H

#include <stddef.h>
#include <stdint.h>

#if defined(QMAPS_BUILDING)
#define QM_API __attribute__((visibility("default")))
#else
#define QM_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qm_status {
  QM_OK = 0,
  QM_ERR_ARG = 1,      /* parameter missing or out of range */
  QM_ERR_IO = 2,       /* output directory or file not writable, input not readable */
  QM_ERR_PARSE = 3,    /* malformed map, SAW or JSON text */
  QM_ERR_INTERNAL = 4,
  QM_ERR_UNKNOWN_COMMAND = 5
} qm_status;

typedef struct qm_map qm_map;

QM_API const char* qm_version(void);
/* Message for the last failing call on this thread; empty if none. */
QM_API const char* qm_last_error(void);
QM_API void qm_string_free(char* s);

/* Exact counts as decimal strings; free with qm_string_free. */
QM_API qm_status qm_count_maps(long n, long p, char** out);
QM_API qm_status qm_partition_function(long p, char** out);

QM_API qm_status qm_map_parse(const char* text, qm_map** out);
QM_API void qm_map_free(qm_map* m);
QM_API qm_status qm_map_serialize(const qm_map* m, char** out);
QM_API int qm_map_half_edges(const qm_map* m);
QM_API int qm_map_vertices(const qm_map* m);
QM_API int qm_map_faces(const qm_map* m);
/* Boundary map -> map with a marked SAW of b backward and f forward steps; the SAW is
   appended to the serialization as a "saw" line. */
QM_API qm_status qm_zip(const qm_map* boundary, int b, int f, qm_map** out);
/* Inverse of qm_zip; the map must carry a SAW. */
QM_API qm_status qm_unzip(const qm_map* with_saw, qm_map** out);

/* Runs one CLI command. config_json is a JSON object of parameters (NULL for defaults).
   Artifacts go to out_dir; the summary JSON is returned in *summary if non-NULL. */
QM_API qm_status qm_run(const char* command, const char* config_json, const char* out_dir, char** summary);
/* NULL-terminated list of command names; static storage. */
QM_API const char* const* qm_commands(void);

#ifdef __cplusplus
}
#endif

#endif
