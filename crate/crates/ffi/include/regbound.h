#ifndef REGBOUND_H
#define REGBOUND_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum RbStatus {
  RB_STATUS_OK = 0,
  RB_STATUS_NULL_POINTER = 1,
  RB_STATUS_INVALID_PARAMETER = 2,
  RB_STATUS_INFEASIBLE = 3,
  RB_STATUS_BUDGET_EXCEEDED = 4,
  RB_STATUS_GRAPH6 = 5,
  RB_STATUS_NOT_REGULAR = 6,
  RB_STATUS_DISCONNECTED = 7,
  RB_STATUS_UNKNOWN_NAME = 8,
  RB_STATUS_BUFFER_TOO_SMALL = 9,
  RB_STATUS_INVALID_UTF8 = 10,
  RB_STATUS_INTERNAL = 11,
  RB_STATUS_PANIC = 12,
} RbStatus;

typedef enum RbMethod {
  RB_METHOD_LINEAR = 0,
  RB_METHOD_TWO_TERM = 1,
  RB_METHOD_NTERM = 2,
  RB_METHOD_MACHINE = 3,
  RB_METHOD_BEST = 4,
} RbMethod;

/**
 * A certified vertex bound.
 */
typedef struct RbBound RbBound;

/**
 * A simple undirected graph.
 */
typedef struct RbGraph RbGraph;

/**
 * Fixed-size view of a certificate.
 */
typedef struct RbCertificate {
  uint32_t k;
  double z;
  /**
   * Method actually used, as an [`RbMethod`] value; `Best` resolves to one
   * of the others. Downshift certificates report as `Nterm`.
   */
  uint32_t method;
  /**
   * Index of the shifted certificate, 0 when not applicable.
   */
  uint32_t m;
  /**
   * Shift, NaN when not applicable.
   */
  double s;
  double m1;
  double m2;
  double c0;
  double vertex_bound;
  uint64_t vertex_bound_int;
  /**
   * Number of coefficients returned by [`rb_bound_coeffs`].
   */
  size_t coeff_count;
} RbCertificate;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Valid until the
 * next failing call on the same thread.
 */
const char *rb_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *rb_version(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, freed at most once.
 */
void rb_string_free(char *s);

/**
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum RbStatus rb_graph_from_graph6(const char *text, struct RbGraph **out);

/**
 * Looks up a named graph such as `"petersen"`, `"K5"` or `"circulant(7;1,2)"`.
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` a valid pointer.
 */
enum RbStatus rb_graph_from_atlas(const char *name, struct RbGraph **out);

/**
 * # Safety
 * `g` must be null or a handle from this library, freed at most once.
 */
void rb_graph_free(struct RbGraph *g);

/**
 * Number of vertices, or 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live handle.
 */
size_t rb_graph_vertex_count(const struct RbGraph *g);

/**
 * Adjacency eigenvalues in decreasing order. `*len` is always set to the
 * vertex count; fails with `BufferTooSmall` when `cap` is less.
 *
 * # Safety
 * `g` must be a live handle, `buf` valid for `cap` writes, `len` valid.
 */
enum RbStatus rb_graph_spectrum(const struct RbGraph *g, double *buf, size_t cap, size_t *len);

/**
 * Second largest adjacency eigenvalue of a connected graph.
 *
 * # Safety
 * `g` must be a live handle and `out` valid.
 */
enum RbStatus rb_graph_mu1(const struct RbGraph *g, double *out);

/**
 * graph6 text of the graph; release with [`rb_string_free`].
 *
 * # Safety
 * `g` must be a live handle and `out` valid.
 */
enum RbStatus rb_graph_to_graph6(const struct RbGraph *g, char **out);

/**
 * Certified bound on the vertex count of a connected `k`-regular graph with
 * second eigenvalue at most `z`. `terms` and `seed` only affect `Nterm` and
 * `Best`; pass 0 for the defaults.
 *
 * # Safety
 * `out` must be valid.
 */
enum RbStatus rb_bound_compute(uint32_t k,
                               double z,
                               enum RbMethod method,
                               size_t terms,
                               uint64_t seed,
                               struct RbBound **out);

/**
 * # Safety
 * `b` must be a live handle and `out` valid.
 */
enum RbStatus rb_bound_summary(const struct RbBound *b, struct RbCertificate *out);

/**
 * Coefficients `a_0, a_1, ...` of the certificate `sum a_j V_j`.
 *
 * # Safety
 * `b` must be a live handle, `buf` valid for `cap` writes, `len` valid.
 */
enum RbStatus rb_bound_coeffs(const struct RbBound *b, double *buf, size_t cap, size_t *len);

/**
 * # Safety
 * `b` must be null or a handle from this library, freed at most once.
 */
void rb_bound_free(struct RbBound *b);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* REGBOUND_H */
