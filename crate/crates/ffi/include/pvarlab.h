#ifndef PVARLAB_H
#define PVARLAB_H

/* Generated by cbindgen from the pvarlab-ffi crate; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible function.
 */
typedef enum PvlStatus {
  PVL_STATUS_OK = 0,
  PVL_STATUS_NULL_POINTER = 1,
  PVL_STATUS_INVALID_ARGUMENT = 2,
  PVL_STATUS_P_MUST_EXCEED_ONE = 3,
  PVL_STATUS_MISALIGNED = 4,
  PVL_STATUS_ORACLE_LIMIT = 5,
  PVL_STATUS_CAP_EXCEEDED = 6,
  PVL_STATUS_SHAPE_MISMATCH = 7,
  PVL_STATUS_BUFFER_TOO_SMALL = 8,
  PVL_STATUS_PANIC = 9,
} PvlStatus;

/**
 * Opaque one-dimensional periodic grid.
 */
typedef struct PvlGrid1 PvlGrid1;

/**
 * Opaque two-dimensional periodic grid (row-major samples).
 */
typedef struct PvlGrid2 PvlGrid2;

/**
 * Certified enclosure `[lo, hi]` of a truncated integral over
 * `[u_min, u_max] x [v_min, v_max]`; the `v` bounds are NaN for
 * one-dimensional integrals.
 */
typedef struct PvlEnclosure {
  double lo;
  double hi;
  double u_min;
  double u_max;
  double v_min;
  double v_max;
  double p;
} PvlEnclosure;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Creates a grid from `len` samples (copied). `len` must be at least 2.
 */
enum PvlStatus pvl_grid1_new(const double *data, size_t len, struct PvlGrid1 **out);

/**
 * Releases a grid; null is ignored.
 */
void pvl_grid1_free(struct PvlGrid1 *grid);

/**
 * Number of samples of a grid (0 for null).
 */
size_t pvl_grid1_len(const struct PvlGrid1 *grid);

/**
 * Creates a `rows x cols` grid from row-major samples (copied).
 */
enum PvlStatus pvl_grid2_new(const double *data, size_t rows, size_t cols, struct PvlGrid2 **out);

/**
 * Releases a grid; null is ignored.
 */
void pvl_grid2_free(struct PvlGrid2 *grid);

/**
 * Writes the shape of a grid.
 */
enum PvlStatus pvl_grid2_shape(const struct PvlGrid2 *grid, size_t *rows, size_t *cols);

/**
 * Cyclic p-variation `v_p(g)` (exact dynamic program).
 */
enum PvlStatus pvl_pvar(const struct PvlGrid1 *grid, double p, double *out);

/**
 * `v_p(g)` by exhaustive enumeration (at most 18 samples).
 */
enum PvlStatus pvl_pvar_oracle(const struct PvlGrid1 *grid, double p, double *out);

/**
 * Vitali variation over the finest net (exact at p = 1).
 */
enum PvlStatus pvl_vitali_finest(const struct PvlGrid2 *grid, double p, double *out);

/**
 * Certified lower bound of the Vitali variation by coordinate ascent.
 */
enum PvlStatus pvl_vitali_ascent(const struct PvlGrid2 *grid,
                                 double p,
                                 size_t max_sweeps,
                                 double *out);

/**
 * Vitali variation by exhaustive enumeration (at most 7 x 7).
 */
enum PvlStatus pvl_vitali_oracle(const struct PvlGrid2 *grid, double p, double *out);

/**
 * Modulus `omega(g; k/N)_p` for `k = 0..=N` into `out` (length `N + 1`).
 */
enum PvlStatus pvl_modulus_1d(const struct PvlGrid1 *grid, double p, double *out, size_t out_len);

/**
 * Isotropic modulus of a 2D grid for `k = 0..=max(M, N)` into `out`.
 */
enum PvlStatus pvl_modulus_iso(const struct PvlGrid2 *grid, double p, double *out, size_t out_len);

/**
 * Mixed modulus `omega(f; k/M, l/N)_p`, row-major over `k = 0..=M`,
 * `l = 0..=N` (length `(M + 1)(N + 1)`). `cap = 0` selects the default cap.
 */
enum PvlStatus pvl_modulus_mixed(const struct PvlGrid2 *grid,
                                 double p,
                                 size_t cap,
                                 double *out,
                                 size_t out_len);

/**
 * Enclosure of `J_p(g)` for a 1D grid (p > 1).
 */
enum PvlStatus pvl_integral_j_1d(const struct PvlGrid1 *grid, double p, struct PvlEnclosure *out);

/**
 * Enclosures of `J_p` (isotropic modulus), `K_p` and `I_p` of a 2D grid
 * (p > 1). Any of the out-pointers may be null to skip that integral.
 */
enum PvlStatus pvl_integrals(const struct PvlGrid2 *grid,
                             double p,
                             size_t cap,
                             struct PvlEnclosure *j,
                             struct PvlEnclosure *k,
                             struct PvlEnclosure *i);

/**
 * `W_p(f) = v_p(phi_p[f]) + v_p(psi_p[f])`.
 */
enum PvlStatus pvl_w_p(const struct PvlGrid2 *grid, double p, double *out);

/**
 * Static, NUL-terminated description of a status code.
 */
const char *pvl_status_message(enum PvlStatus status);

/**
 * Library version as a static NUL-terminated string.
 */
const char *pvl_version(void);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* PVARLAB_H */
