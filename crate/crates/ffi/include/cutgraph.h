#ifndef CUTGRAPH_H
#define CUTGRAPH_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Result code of every fallible call.
 */
typedef enum CgStatus {
  CG_STATUS_OK = 0,
  CG_STATUS_NULL_ARGUMENT = 1,
  CG_STATUS_INVALID_INPUT = 2,
  CG_STATUS_BUDGET_EXCEEDED = 3,
  CG_STATUS_NOT_FOUND = 4,
  CG_STATUS_PANIC = 5,
} CgStatus;

/**
 * Opaque cut graph handle. Edge and vertex ids refer to the mesh it was
 * computed on.
 */
typedef struct CgCutGraph CgCutGraph;

/**
 * Opaque mesh handle.
 */
typedef struct CgMesh CgMesh;

typedef struct CgInvariants {
  size_t vertices;
  size_t edges;
  size_t faces;
  int64_t chi;
  bool orientable;
  int64_t genus;
  size_t boundaries;
} CgInvariants;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer
 * stays valid until the next call into the library on this thread.
 */
const char *cg_last_error(void);

/**
 * Parses NUL-terminated OFF text. Weights are unit, or euclidean when
 * `euclidean` is set.
 *
 * # Safety
 * `text` must be null or a NUL-terminated string; `out` must be null or
 * writable.
 */
enum CgStatus cg_mesh_from_off(const char *text, bool euclidean, struct CgMesh **out);

/**
 * Replaces all edge weights. `weights` holds one entry per edge id.
 *
 * # Safety
 * `weights` must point to `len` readable doubles.
 */
enum CgStatus cg_mesh_set_weights(struct CgMesh *mesh, const double *weights, size_t len);

/**
 * Endpoints of edge `e`.
 *
 * # Safety
 * `mesh` must be a live handle; `u` and `v` writable.
 */
enum CgStatus cg_mesh_edge(const struct CgMesh *mesh, size_t e, size_t *u, size_t *v);

/**
 * # Safety
 * `mesh` must be a live handle; `out` writable.
 */
enum CgStatus cg_mesh_invariants(const struct CgMesh *mesh, struct CgInvariants *out);

/**
 * # Safety
 * `mesh` must be null or a handle not yet freed.
 */
void cg_mesh_free(struct CgMesh *mesh);

/**
 * Weight of the shortest non-separating (or essential) cycle. Returns
 * `CG_STATUS_NOT_FOUND` when the surface has none.
 *
 * # Safety
 * `mesh` must be a live handle; `weight` writable.
 */
enum CgStatus cg_shortest_cycle(const struct CgMesh *mesh,
                                uint64_t seed,
                                bool essential,
                                double *weight);

/**
 * Greedy approximate minimum cut graph.
 *
 * # Safety
 * `mesh` must be a live handle; `out` writable.
 */
enum CgStatus cg_approx_cut_graph(const struct CgMesh *mesh,
                                  uint64_t seed,
                                  bool essential,
                                  struct CgCutGraph **out);

/**
 * Exact minimum cut graph; fails with `CG_STATUS_BUDGET_EXCEEDED` on
 * meshes with more than `max_edges` edges.
 *
 * # Safety
 * `mesh` must be a live handle; `out` writable.
 */
enum CgStatus cg_exact_cut_graph(const struct CgMesh *mesh,
                                 uint64_t seed,
                                 size_t max_edges,
                                 struct CgCutGraph **out);

/**
 * Builds a cut graph handle from edge ids, for checking with
 * [`cg_is_cut_graph`].
 *
 * # Safety
 * `edges` must point to `len` readable ids (or be null when `len` is 0).
 */
enum CgStatus cg_cut_graph_from_edges(const struct CgMesh *mesh,
                                      const size_t *edges,
                                      size_t len,
                                      struct CgCutGraph **out);

/**
 * # Safety
 * Both handles must be live; `result` writable.
 */
enum CgStatus cg_is_cut_graph(const struct CgMesh *mesh,
                              const struct CgCutGraph *graph,
                              bool *result);

/**
 * Total weight, or NaN for a null handle.
 *
 * # Safety
 * `graph` must be null or a live handle.
 */
double cg_cut_graph_weight(const struct CgCutGraph *graph);

/**
 * Number of edges, or 0 for a null handle.
 *
 * # Safety
 * `graph` must be null or a live handle.
 */
size_t cg_cut_graph_edge_count(const struct CgCutGraph *graph);

/**
 * Copies up to `cap` edge ids in increasing order and returns the number
 * of edges in the graph.
 *
 * # Safety
 * `graph` must be a live handle; `ids` must have room for `cap` entries.
 */
size_t cg_cut_graph_edges(const struct CgCutGraph *graph, size_t *ids, size_t cap);

/**
 * The cut graph as JSON `{vertices, edges, totalWeight}`; free the string
 * with [`cg_string_free`].
 *
 * # Safety
 * Both handles must be live; `out` writable.
 */
enum CgStatus cg_cut_graph_to_json(const struct CgMesh *mesh,
                                   const struct CgCutGraph *graph,
                                   char **out);

/**
 * # Safety
 * `graph` must be null or a handle not yet freed.
 */
void cg_cut_graph_free(struct CgCutGraph *graph);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void cg_string_free(char *s);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* CUTGRAPH_H */
