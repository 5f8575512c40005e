#ifndef INSCRIBED_TRI_H
#define INSCRIBED_TRI_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum ItStatus {
  IT_STATUS_OK = 0,
  IT_STATUS_NULL_POINTER = 1,
  IT_STATUS_INVALID_ARGUMENT = 2,
  IT_STATUS_DEGENERATE = 3,
  IT_STATUS_INFEASIBLE_SHAPE = 4,
  IT_STATUS_NO_BRACKET = 5,
  IT_STATUS_REFINE_FAILED = 6,
  IT_STATUS_HYPOTHESIS_VIOLATION = 7,
  IT_STATUS_PARSE = 8,
  IT_STATUS_NUMERICAL = 9,
  IT_STATUS_BUFFER_TOO_SMALL = 10,
  IT_STATUS_PANIC = 99,
} ItStatus;

// Opaque closed polyline.
typedef struct ItCurve ItCurve;

// Opaque list of triangles.
typedef struct ItTriangleList ItTriangleList;

// Solver knobs; obtain defaults from [`it_options_default`].
typedef struct ItOptions {
  size_t grid_size;
  double residual_tol;
  double singular_tol;
  size_t max_iterations;
} ItOptions;

// Triangle angles in degrees at the base vertex o and at p, q.
typedef struct ItShape {
  double theta_o_deg;
  double theta_p_deg;
  double theta_q_deg;
} ItShape;

// One triangle. Parameters refer to the curve the solver was given, with
// the base vertex at `base_param`.
typedef struct ItTriangle {
  double base_param;
  double t_p;
  double t_q;
  double residual_r;
  double residual_r_prime;
} ItTriangle;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static NUL-terminated string.
const char *it_version(void);

// Message for the most recent failure on this thread (empty if none).
const char *it_last_error_message(void);

struct ItOptions it_options_default(void);

// Builds a curve from `count` vertices of dimension `dim`, stored row-major
// in `coords` (`count * dim` doubles).
//
// # Safety
// `coords` must point to `count * dim` readable doubles; `out` must be writable.
enum ItStatus it_curve_from_points(const double *coords,
                                   size_t count,
                                   size_t dim,
                                   struct ItCurve **out);

// Builds a curve from curve JSON or a `gen:name,key=value,...` shorthand.
//
// # Safety
// `text` must be a NUL-terminated string; `out` must be writable.
enum ItStatus it_curve_parse(const char *text, struct ItCurve **out);

// # Safety
// `curve` must be NULL or a handle from this library not yet freed.
void it_curve_free(struct ItCurve *curve);

// Dimension of the ambient space, or 0 for NULL.
//
// # Safety
// `curve` must be NULL or a live handle.
size_t it_curve_dimension(const struct ItCurve *curve);

// Number of distinct vertices, or 0 for NULL.
//
// # Safety
// `curve` must be NULL or a live handle.
size_t it_curve_vertex_count(const struct ItCurve *curve);

// Writes `γ(t)` (parameter taken mod 1) into `out[0..dim]`.
//
// # Safety
// `curve` must be a live handle and `out` must hold `len` doubles.
enum ItStatus it_curve_eval(const struct ItCurve *curve, double t, double *out, size_t len);

// Triangles similar to `shape` with vertex o = γ(base_param). `opts` may be NULL.
//
// # Safety
// `curve` and `shape` must be valid; `out` must be writable.
enum ItStatus it_solve_similar(const struct ItCurve *curve,
                               const struct ItShape *shape,
                               double base_param,
                               const struct ItOptions *opts,
                               struct ItTriangleList **out);

// An equilateral triangle with vertex o = γ(base_param), as a one-element list.
//
// # Safety
// `curve` must be valid; `out` must be writable; `opts` may be NULL.
enum ItStatus it_solve_equilateral(const struct ItCurve *curve,
                                   double base_param,
                                   const struct ItOptions *opts,
                                   struct ItTriangleList **out);

// Number of triangles, or 0 for NULL.
//
// # Safety
// `list` must be NULL or a live handle.
size_t it_triangles_len(const struct ItTriangleList *list);

// # Safety
// `list` must be a live handle and `out` writable.
enum ItStatus it_triangles_get(const struct ItTriangleList *list,
                               size_t index,
                               struct ItTriangle *out);

// Coordinates of vertex `which` (0 = o, 1 = p, 2 = q) of triangle `index`.
//
// # Safety
// `list` must be a live handle and `out` must hold `len` doubles.
enum ItStatus it_triangles_vertex(const struct ItTriangleList *list,
                                  size_t index,
                                  uint32_t which,
                                  double *out,
                                  size_t len);

// # Safety
// `list` must be NULL or a handle not yet freed.
void it_triangles_free(struct ItTriangleList *list);

// Strong monotonicity of γ(base_param) on the window of half-width `epsilon`.
//
// # Safety
// `curve` must be valid and `out` writable.
enum ItStatus it_check_strong_monotone(const struct ItCurve *curve,
                                       double base_param,
                                       double epsilon,
                                       size_t samples,
                                       bool *out);

// Sweep invariant at parameter `t` (relative to the base point). Sets
// `*singular` to 1 when the curve meets the candidate sphere, in which case
// `*winding` is left untouched.
//
// # Safety
// All pointers must be valid; `opts` may be NULL.
enum ItStatus it_sphere_winding(const struct ItCurve *curve,
                                const struct ItShape *shape,
                                double base_param,
                                double t,
                                const struct ItOptions *opts,
                                int64_t *winding,
                                bool *singular);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* INSCRIBED_TRI_H */
