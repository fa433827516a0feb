#ifndef FSTS_H
#define FSTS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum FstsStatus {
  FSTS_STATUS_OK = 0,
  FSTS_STATUS_NULL_POINTER = 1,
  FSTS_STATUS_INVALID_ARGUMENT = 2,
  FSTS_STATUS_PARSE_ERROR = 3,
  FSTS_STATUS_PRECONDITION = 4,
  FSTS_STATUS_INFEASIBLE = 5,
  FSTS_STATUS_INTERNAL = 6,
} FstsStatus;

/**
 * Opaque hypergraph handle.
 */
typedef struct FstsHypergraph FstsHypergraph;

typedef struct FstsCodegreeStats {
  size_t min_codegree;
  /**
   * Only meaningful when `has_essential` is true (non-empty shadow).
   */
  size_t essential_min_codegree;
  bool has_essential;
  size_t shadow_size;
} FstsCodegreeStats;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. The pointer is
 * valid until the next call into this library on the same thread.
 */
const char *fsts_last_error(void);

/**
 * Builds an `r`-uniform hypergraph on `n` vertices from `edge_count` edges
 * stored row-major in `edges` (`edge_count * r` vertex ids).
 *
 * # Safety
 * `edges` must point to `edge_count * r` readable `u32`s (or be null when
 * `edge_count` is 0) and `out` must be writable.
 */
enum FstsStatus fsts_hypergraph_new(size_t r,
                                    size_t n,
                                    const uint32_t *edges,
                                    size_t edge_count,
                                    struct FstsHypergraph **out);

/**
 * Parses the `.hg` text format.
 *
 * # Safety
 * `text` must be a nul-terminated string and `out` writable.
 */
enum FstsStatus fsts_hypergraph_parse(const char *text, struct FstsHypergraph **out);

/**
 * # Safety
 * `h` must come from this library and not be used afterwards. Null is
 * ignored.
 */
void fsts_hypergraph_free(struct FstsHypergraph *h);

/**
 * # Safety
 * `h` must be a live handle or null (which yields 0).
 */
size_t fsts_hypergraph_vertex_count(const struct FstsHypergraph *h);

/**
 * # Safety
 * `h` must be a live handle or null (which yields 0).
 */
size_t fsts_hypergraph_edge_count(const struct FstsHypergraph *h);

/**
 * # Safety
 * `h` must be a live handle and `out` writable.
 */
enum FstsStatus fsts_hypergraph_codegree(const struct FstsHypergraph *h,
                                         struct FstsCodegreeStats *out);

/**
 * The weighting `w_H` as `{"edges": [...], "weights": ["p/q", ...]}`.
 *
 * # Safety
 * `h` must be a live handle and `out_json` writable.
 */
enum FstsStatus fsts_weighting_json(const struct FstsHypergraph *h, char **out_json);

/**
 * Pair degrees and ordered-weight signs of `w_H` as JSON; `verdict` is set
 * to whether `w_H` is a perfect fractional Steiner triple system.
 *
 * # Safety
 * `h` must be a live handle; `out_json` and `verdict` writable.
 */
enum FstsStatus fsts_nonnegativity_json(const struct FstsHypergraph *h,
                                        char **out_json,
                                        bool *verdict);

/**
 * Solves the fractional Steiner system LP. Returns `Ok` when feasible and
 * `Infeasible` otherwise; in both cases `out_json` receives the outcome
 * with its witness or certificate.
 *
 * # Safety
 * `h` must be a live handle and `out_json` writable.
 */
enum FstsStatus fsts_lp_solve_json(const struct FstsHypergraph *h,
                                   bool all_tuples,
                                   char **out_json);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void fsts_string_free(char *s);

/**
 * The root `x*` of `8x³ - 22x² + 10x - 1` on `[0, 1/6]`, to within `tol`.
 *
 * # Safety
 * `out` must be writable.
 */
enum FstsStatus fsts_root_xstar(double tol, double *out);

/**
 * # Safety
 * `out` must be writable.
 */
enum FstsStatus fsts_w5_eval(double d, double f, double *out);

/**
 * # Safety
 * `f` and `value` must be writable.
 */
enum FstsStatus fsts_maximize_p5(double d, double *f, double *value);

/**
 * # Safety
 * `e0`, `f` and `value` must be writable.
 */
enum FstsStatus fsts_maximize_p4(double d, double *e0, double *f, double *value);

/**
 * Writes the maximizer as `e0, e, f, q0, q, p, r0, r` into `point`.
 *
 * # Safety
 * `point` must have room for 8 doubles and `value` must be writable.
 */
enum FstsStatus fsts_maximize_p3(double d, uint64_t seed, double *point, double *value);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FSTS_H */
