/* C interface to the graphnorm invariants library. */

#ifndef GRAPHNORM_H
#define GRAPHNORM_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code returned by every fallible entry point.
 */
typedef enum GnStatus {
  GN_OK = 0,
  /**
   * A required pointer argument was null.
   */
  GN_ERR_NULL = 1,
  /**
   * Input text was not valid UTF-8.
   */
  GN_ERR_UTF8 = 2,
  /**
   * Input text was not valid JSON.
   */
  GN_ERR_PARSE = 3,
  /**
   * JSON was well formed but violated the document schema.
   */
  GN_ERR_SCHEMA = 4,
  /**
   * The graph does not present a composite manifold.
   */
  GN_ERR_NOT_COMPOSITE = 5,
  /**
   * The twisted complex failed the acyclicity requirement.
   */
  GN_ERR_NOT_ACYCLIC = 6,
  /**
   * The character modulus was smaller than 2.
   */
  GN_ERR_BAD_MODULUS = 7,
  /**
   * Value counts or class data did not match the graph.
   */
  GN_ERR_VALIDATION = 8,
  /**
   * An internal invariant failed; the operation was abandoned safely.
   */
  GN_ERR_PANIC = 9,
} GnStatus;

/**
 * Opaque handle to a parsed decorated graph.
 */
typedef struct GnGraph GnGraph;

/**
 * Norm comparison, mirroring the library report. `torsion_width` is
 * meaningful only when `acyclic` is true.
 */
typedef struct GnNormReport {
  int64_t thurston;
  int64_t torsion_width;
  bool equal;
  bool acyclic;
} GnNormReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, empty after a
 * success. Borrowed; valid until the next library call on this thread.
 */
const char *gn_last_error_message(void);

/**
 * Parses a graph document (JSON, UTF-8, nul-terminated) into a new
 * handle. On success stores the handle in `out`; the caller owns it and
 * must release it with `gn_graph_free`.
 *
 * # Safety
 * `json` must point to a nul-terminated string and `out` to writable
 * pointer storage.
 */
enum GnStatus gn_graph_parse(const char *json, struct GnGraph **out);

/**
 * Releases a handle from `gn_graph_parse`. Null is ignored.
 *
 * # Safety
 * `graph` must be null or a pointer returned by `gn_graph_parse` that
 * has not been freed already.
 */
void gn_graph_free(struct GnGraph *graph);

/**
 * Number of blocks in the graph.
 *
 * # Safety
 * `graph` must be a live handle; `out` must be writable.
 */
enum GnStatus gn_graph_block_count(const struct GnGraph *graph, uint32_t *out);

/**
 * Number of gluing tori in the graph.
 *
 * # Safety
 * `graph` must be a live handle; `out` must be writable.
 */
enum GnStatus gn_graph_torus_count(const struct GnGraph *graph, uint32_t *out);

/**
 * Whether the graph presents a composite manifold (reduced, connected,
 * all block surfaces of negative Euler characteristic).
 *
 * # Safety
 * `graph` must be a live handle; `out` must be writable.
 */
enum GnStatus gn_graph_is_composite(const struct GnGraph *graph, bool *out);

/**
 * First Betti number of the presented manifold.
 *
 * # Safety
 * `graph` must be a live handle; `out` must be writable.
 */
enum GnStatus gn_graph_first_betti(const struct GnGraph *graph, uint64_t *out);

/**
 * Smallest modulus d >= 2 coprime to every fibre-intersection number.
 * Fails with `GnErrValidation` when no such modulus exists (some
 * intersection number is zero).
 *
 * # Safety
 * `graph` must be a live handle; `out` must be writable.
 */
enum GnStatus gn_graph_smallest_modulus(const struct GnGraph *graph, int64_t *out);

/**
 * Thurston norm of the class with the given fibre values, one per block
 * in ascending block-id order.
 *
 * # Safety
 * `graph` must be a live handle, `fibre_values` must point to `len`
 * integers, and `out` must be writable.
 */
enum GnStatus gn_thurston_norm(const struct GnGraph *graph,
                               const int64_t *fibre_values,
                               uintptr_t len,
                               int64_t *out);

/**
 * Thurston norm, twisted-torsion width, and their comparison for the
 * class with fibre values `sigma` and the mod-`modulus` character with
 * fibre residues `alpha` (both one value per block, ascending block-id
 * order). Acyclicity failure is reported in the result, not as an error.
 *
 * # Safety
 * `graph` must be a live handle, the two arrays must hold `sigma_len`
 * and `alpha_len` integers, and `out` must be writable.
 */
enum GnStatus gn_norm_report(const struct GnGraph *graph,
                             const int64_t *sigma,
                             uintptr_t sigma_len,
                             int64_t modulus,
                             const int64_t *alpha,
                             uintptr_t alpha_len,
                             struct GnNormReport *out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* GRAPHNORM_H */
