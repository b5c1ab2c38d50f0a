#ifndef GRAPHCOVER_H
#define GRAPHCOVER_H

/* Generated by cbindgen from graphcover-ffi. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum GcStatus {
  GC_STATUS_OK = 0,
  GC_STATUS_NULL_POINTER = 1,
  GC_STATUS_INVALID_UTF8 = 2,
  GC_STATUS_INVALID_GRAPH = 3,
  GC_STATUS_PARSE = 4,
  GC_STATUS_UNKNOWN_GRAPH = 5,
  GC_STATUS_MALFORMED_PROJECTION = 6,
  GC_STATUS_UNSUPPORTED = 7,
  GC_STATUS_PRECONDITION = 8,
  GC_STATUS_CAP_EXCEEDED = 9,
  GC_STATUS_ANOMALY = 10,
  GC_STATUS_PANIC = 11,
} GcStatus;

typedef enum GcVerdict {
  GC_VERDICT_NOT_STRONGER = 0,
  GC_VERDICT_STRONGER = 1,
  GC_VERDICT_UNKNOWN = 2,
} GcVerdict;

// Opaque graph handle.
typedef struct GcGraph GcGraph;

// Opaque projection handle; owns copies of both graphs.
typedef struct GcProjection GcProjection;

// Message for the last failed call on this thread, or NULL after a
// success. Valid until the next call on the same thread.
const char *gc_last_error_message(void);

// Parses `.mg` text into a new graph.
//
// # Safety
// `text` must be a NUL-terminated string and `out` writable.
enum GcStatus gc_graph_parse(const char *text, struct GcGraph **out);

// Looks up a catalog graph such as `"Petersen"` or `"W(0,1,1,0,2)"`.
//
// # Safety
// `name` must be a NUL-terminated string and `out` writable.
enum GcStatus gc_graph_catalog(const char *name, struct GcGraph **out);

// # Safety
// `g` must come from this library and not be used afterwards. NULL is ignored.
void gc_graph_free(struct GcGraph *g);

// # Safety
// `g` must be a live handle; the output pointers writable.
enum GcStatus gc_graph_counts(const struct GcGraph *g, size_t *vertices, size_t *edges);

// Serializes to `.mg`; release the result with `gc_string_free`.
//
// # Safety
// `g` must be a live handle and `out` writable.
enum GcStatus gc_graph_to_mg(const struct GcGraph *g, char **out);

// # Safety
// `s` must come from this library and not be used afterwards. NULL is ignored.
void gc_string_free(char *s);

// Exhaustive search for a (semi-)covering projection `g -> h`. On success
// `*out` is a new projection, or NULL when none exists.
//
// # Safety
// `g` and `h` must be live handles and `out` writable.
enum GcStatus gc_find_cover(const struct GcGraph *g,
                            const struct GcGraph *h,
                            bool semi,
                            struct GcProjection **out);

// Checks every covering rule; `*ok` is false if any is violated.
//
// # Safety
// `p` must be a live handle and `ok` writable.
enum GcStatus gc_projection_verify(const struct GcProjection *p, bool semi, bool *ok);

// # Safety
// `p` must be a live handle and `out` writable.
enum GcStatus gc_projection_fold(const struct GcProjection *p, size_t *out);

// Certificate text (`v src dst` and `e src dst` lines).
//
// # Safety
// `p` must be a live handle and `out` writable.
enum GcStatus gc_projection_certificate(const struct GcProjection *p, char **out);

// # Safety
// `p` must come from this library and not be used afterwards. NULL is ignored.
void gc_projection_free(struct GcProjection *p);

// Chromatic index, or -1 when the graph has a loop.
//
// # Safety
// `g` must be a live handle and `out` writable.
enum GcStatus gc_chromatic_index(const struct GcGraph *g, int64_t *out);

// # Safety
// `g` must be a live handle and `out` writable.
enum GcStatus gc_has_perfect_matching(const struct GcGraph *g, bool *out);

// Decides whether `a` is stronger than `b`, searching witnesses with at
// most `budget` vertices. When `witness` is not NULL it receives the
// refuting witness as `.mg` text, or NULL if there is none.
//
// # Safety
// `a` and `b` must be live handles, `out` writable, `witness` NULL or writable.
enum GcStatus gc_decide_stronger(const struct GcGraph *a,
                                 const struct GcGraph *b,
                                 size_t budget,
                                 enum GcVerdict *out,
                                 char **witness);

#endif  /* GRAPHCOVER_H */
