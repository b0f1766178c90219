#ifndef SEPACK_H
#define SEPACK_H

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes. Zero is success.
typedef enum SepackError {
  SEPACK_ERROR_OK = 0,
  SEPACK_ERROR_NULL_POINTER = 1,
  SEPACK_ERROR_INVALID_UTF8 = 2,
  SEPACK_ERROR_PARSE = 3,
  SEPACK_ERROR_INVALID_ARGUMENT = 4,
  SEPACK_ERROR_NOT_SUBCUBIC = 5,
  SEPACK_ERROR_SEQUENCE = 6,
  SEPACK_ERROR_COLORING = 7,
  SEPACK_ERROR_TOO_LARGE = 8,
  SEPACK_ERROR_OUT_OF_RANGE = 9,
  SEPACK_ERROR_PANIC = 10,
} SepackError;

// Which route produced a pipeline colouring.
typedef enum SepackMethod {
  SEPACK_METHOD_PIPELINE = 0,
  // The exact solver took over after every pipeline attempt failed.
  SEPACK_METHOD_FALLBACK = 1,
} SepackMethod;

// Answer of a solver call.
typedef enum SepackStatus {
  SEPACK_STATUS_SAT = 0,
  SEPACK_STATUS_UNSAT = 1,
  // Budget exhausted before a decision.
  SEPACK_STATUS_UNKNOWN = 2,
  // Pipeline and its exact fallback both gave up.
  SEPACK_STATUS_FAIL = 3,
} SepackStatus;

// Opaque edge colouring handle.
typedef struct SepackColoring SepackColoring;

// Opaque graph handle.
typedef struct SepackGraph SepackGraph;

// Opaque packing sequence handle.
typedef struct SepackSequence SepackSequence;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null if none.
// The pointer stays valid until the next failing call on the same thread.
const char *sepack_last_error(void);

// Library version as a static NUL-terminated string.
const char *sepack_version(void);

// Builds a graph on `n` vertices from `m` pairs stored flat in `pairs`
// (`2 * m` entries).
//
// # Safety
// `pairs` must point to `2 * m` readable values unless `m` is zero.
enum SepackError sepack_graph_from_edges(size_t n,
                                         const size_t *pairs,
                                         size_t m,
                                         struct SepackGraph **out);

// Parses one graph6 line.
//
// # Safety
// `line` must be a NUL-terminated string.
enum SepackError sepack_graph_from_graph6(const char *line, struct SepackGraph **out);

// Parses an edge list: one `u v` pair per line, `#` comments allowed.
//
// # Safety
// `body` must be a NUL-terminated string.
enum SepackError sepack_graph_from_edge_list(const char *body, struct SepackGraph **out);

// One of the built-in named graphs, such as `petersen` or `subdivided_k33`.
//
// # Safety
// `name` must be a NUL-terminated string.
enum SepackError sepack_graph_named(const char *name, struct SepackGraph **out);

// A seeded random connected cubic graph on `n` vertices.
//
// # Safety
// `out` must be a valid pointer.
enum SepackError sepack_graph_random_cubic(size_t n, uint64_t seed, struct SepackGraph **out);

// # Safety
// `g` must be null or a handle from this library not yet freed.
void sepack_graph_free(struct SepackGraph *g);

// Vertex count, or 0 for a null handle.
//
// # Safety
// `g` must be null or a live handle.
size_t sepack_graph_vertex_count(const struct SepackGraph *g);

// Edge count, or 0 for a null handle.
//
// # Safety
// `g` must be null or a live handle.
size_t sepack_graph_edge_count(const struct SepackGraph *g);

// Endpoints of edge `e`.
//
// # Safety
// `g` must be a live handle; `u` and `v` valid pointers.
enum SepackError sepack_graph_edge(const struct SepackGraph *g, size_t e, size_t *u, size_t *v);

// Line-graph distance between two edges. `*reachable` is false, and
// `*distance` untouched, when they lie in different components.
//
// # Safety
// `g` must be a live handle; `distance` and `reachable` valid pointers.
enum SepackError sepack_graph_edge_distance(const struct SepackGraph *g,
                                            size_t e1,
                                            size_t e2,
                                            size_t *distance,
                                            bool *reachable);

// Parses a sequence such as `1^2,2^4` or `1,1,2`.
//
// # Safety
// `spec` must be a NUL-terminated string.
enum SepackError sepack_sequence_parse(const char *spec, struct SepackSequence **out);

// Builds a sequence from `len` non-decreasing positive values.
//
// # Safety
// `values` must point to `len` readable values unless `len` is zero.
enum SepackError sepack_sequence_new(const uint32_t *values,
                                     size_t len,
                                     struct SepackSequence **out);

// Number of classes, or 0 for a null handle.
//
// # Safety
// `s` must be null or a live handle.
size_t sepack_sequence_len(const struct SepackSequence *s);

// # Safety
// `s` must be null or a handle from this library not yet freed.
void sepack_sequence_free(struct SepackSequence *s);

// Wraps a class-per-edge assignment of length `len`.
//
// # Safety
// `classes` must point to `len` readable values unless `len` is zero.
enum SepackError sepack_coloring_new(const size_t *classes,
                                     size_t len,
                                     struct SepackColoring **out);

// Number of coloured edges, or 0 for a null handle.
//
// # Safety
// `c` must be null or a live handle.
size_t sepack_coloring_len(const struct SepackColoring *c);

// Copies the class of every edge into `buf`, which holds `cap` entries.
// Fails with `InvalidArgument` if `cap` is smaller than the edge count.
//
// # Safety
// `c` must be a live handle; `buf` must have room for `cap` values.
enum SepackError sepack_coloring_classes(const struct SepackColoring *c, size_t *buf, size_t cap);

// # Safety
// `c` must be null or a handle from this library not yet freed.
void sepack_coloring_free(struct SepackColoring *c);

// Counts pairs of same-class edges that are too close. Zero means valid.
//
// # Safety
// All handles must be live; `violations` a valid pointer.
enum SepackError sepack_verify(const struct SepackGraph *g,
                               const struct SepackSequence *s,
                               const struct SepackColoring *c,
                               size_t *violations);

// Exact search with a node budget (0 means the library default).
// `coloring` may be null; otherwise it receives a new handle on `Sat` and
// null on any other status. `nodes` may be null.
//
// # Safety
// `g` and `s` must be live handles; `status` a valid pointer.
enum SepackError sepack_solve_exact(const struct SepackGraph *g,
                                    const struct SepackSequence *s,
                                    uint64_t budget,
                                    enum SepackStatus *status,
                                    uint64_t *nodes,
                                    struct SepackColoring **coloring);

// Runs the two-matching construction for `(1^2,2^4)` with default settings.
// `method` and `coloring` may be null; `coloring` receives null on `Fail`.
//
// # Safety
// `g` must be a live handle; `status` a valid pointer.
enum SepackError sepack_solve_pipeline(const struct SepackGraph *g,
                                       uint64_t seed,
                                       enum SepackStatus *status,
                                       enum SepackMethod *method,
                                       struct SepackColoring **coloring);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SEPACK_H */
