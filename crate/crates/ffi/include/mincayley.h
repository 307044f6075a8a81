#ifndef MINCAYLEY_H
#define MINCAYLEY_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes shared by every fallible function.
 */
typedef enum McStatus {
  MC_STATUS_OK = 0,
  MC_STATUS_NULL_POINTER = 1,
  MC_STATUS_INVALID_UTF8 = 2,
  MC_STATUS_PARSE = 3,
  /**
   * A size guard was exceeded (group order, clique size, ...).
   */
  MC_STATUS_GUARD = 4,
  MC_STATUS_INVALID = 5,
  /**
   * A structural precondition does not hold for the input.
   */
  MC_STATUS_PRECONDITION = 6,
  /**
   * The time or node budget ran out before an exact answer.
   */
  MC_STATUS_BUDGET = 7,
  MC_STATUS_IO = 8,
  /**
   * A Rust panic was caught at the boundary.
   */
  MC_STATUS_INTERNAL = 9,
} McStatus;

/**
 * Opaque simple undirected graph.
 */
typedef struct McGraph McGraph;

/**
 * Opaque finite group.
 */
typedef struct McGroup McGroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer
 * stays valid until the next call into this library on the same thread.
 */
const char *mc_last_error_message(void);

/**
 * Library version as a static string.
 */
const char *mc_version(void);

/**
 * Builds a group from a spec such as `dicyclic:32` or `prod:(cyclic:2)x(cyclic:4)`.
 *
 * # Safety
 * `spec` must be a nul-terminated string and `out_group` a writable pointer.
 */
enum McStatus mc_group_new(const char *spec, struct McGroup **out_group);

/**
 * # Safety
 * `group` must come from [`mc_group_new`] and not be freed twice. Null is ignored.
 */
void mc_group_free(struct McGroup *group);

/**
 * Order of the group, or 0 for a null handle.
 *
 * # Safety
 * `group` must be null or a live handle.
 */
size_t mc_group_order(const struct McGroup *group);

/**
 * Cayley graph of `group` for a comma separated list of elements in the
 * group's own notation, e.g. `"(1,0),(0,1)"`.
 *
 * # Safety
 * `group` must be a live handle, `gens` a nul-terminated string and
 * `out_graph` a writable pointer.
 */
enum McStatus mc_cayley_graph(const struct McGroup *group,
                              const char *gens,
                              struct McGraph **out_graph);

/**
 * Reads a graph from the JSON edge-list format used by the CLI.
 *
 * # Safety
 * `json` must be a nul-terminated string and `out_graph` a writable pointer.
 */
enum McStatus mc_graph_from_json(const char *json, struct McGraph **out_graph);

/**
 * # Safety
 * `graph` must come from this library and not be freed twice. Null is ignored.
 */
void mc_graph_free(struct McGraph *graph);

/**
 * # Safety
 * `graph` must be null or a live handle.
 */
size_t mc_graph_vertex_count(const struct McGraph *graph);

/**
 * # Safety
 * `graph` must be null or a live handle.
 */
size_t mc_graph_edge_count(const struct McGraph *graph);

/**
 * Serializes the graph as JSON. Release the string with [`mc_string_free`].
 *
 * # Safety
 * `graph` must be a live handle and `out_json` a writable pointer.
 */
enum McStatus mc_graph_to_json(const struct McGraph *graph, char **out_json);

/**
 * # Safety
 * `s` must come from this library and not be freed twice. Null is ignored.
 */
void mc_string_free(char *s);

/**
 * Exact chromatic number within `time_limit_secs`.
 *
 * On success `*lower == *upper == chi`, and if `coloring` is not null it
 * receives one color per vertex (it must hold `mc_graph_vertex_count`
 * entries). When the budget runs out the call returns `Budget` and still
 * writes the proven bounds.
 *
 * # Safety
 * `graph` must be a live handle, `lower` and `upper` writable, and
 * `coloring` null or valid for `mc_graph_vertex_count(graph)` writes.
 */
enum McStatus mc_chromatic_number(const struct McGraph *graph,
                                  double time_limit_secs,
                                  size_t *lower,
                                  size_t *upper,
                                  size_t *coloring);

/**
 * Clique number of the graph.
 *
 * # Safety
 * `graph` must be a live handle and `omega` writable.
 */
enum McStatus mc_clique_number(const struct McGraph *graph, size_t *omega);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MINCAYLEY_H */
