#ifndef TWISTOR_H
#define TWISTOR_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes.
typedef enum TwistorStatus {
  TWISTOR_STATUS_OK = 0,
  TWISTOR_STATUS_NULL_POINTER = 1,
  // The matrix is not an orthogonal complex structure of the reference
  // orientation.
  TWISTOR_STATUS_NOT_IN_Z = 2,
  // Zero homogeneous coordinates or an otherwise unusable argument.
  TWISTOR_STATUS_INVALID_ARGUMENT = 3,
  // The search budget ran out; the best iterate is still returned.
  TWISTOR_STATUS_NO_CONVERGENCE = 4,
  TWISTOR_STATUS_INTERNAL = 5,
} TwistorStatus;

// Opaque handle to a validated structure.
typedef struct TwistorAcs TwistorAcs;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Validates a row-major 6×6 vector-action matrix.
//
// # Safety
// `matrix` points to 36 readable doubles; `out` is writable.
enum TwistorStatus twistor_acs_from_matrix(const double *matrix, struct TwistorAcs **out);

// Structure of the ℂP³ point with homogeneous coordinates given as four
// (re, im) pairs.
//
// # Safety
// `coords` points to 8 readable doubles; `out` is writable.
enum TwistorStatus twistor_acs_from_cp3(const double *coords, struct TwistorAcs **out);

// Haar-distributed structure, reproducible from `seed`.
//
// # Safety
// `out` is writable.
enum TwistorStatus twistor_acs_random(uint64_t seed, struct TwistorAcs **out);

// The integrable structure induced by the Hopf identification.
//
// # Safety
// `out` is writable.
enum TwistorStatus twistor_acs_hopf(struct TwistorAcs **out);

// The factor-swapping structure that attains the maximal norm.
//
// # Safety
// `out` is writable.
enum TwistorStatus twistor_acs_ank_reference(struct TwistorAcs **out);

// Copies a handle.
//
// # Safety
// `acs` is a live handle; `out` is writable.
enum TwistorStatus twistor_acs_clone(const struct TwistorAcs *acs, struct TwistorAcs **out);

// Releases a handle. Null is ignored.
//
// # Safety
// `acs` is null or a live handle not used afterwards.
void twistor_acs_free(struct TwistorAcs *acs);

// Row-major vector-action matrix into `out[36]`.
//
// # Safety
// `acs` is a live handle; `out` holds 36 doubles.
enum TwistorStatus twistor_acs_matrix(const struct TwistorAcs *acs, double *out);

// # Safety
// `acs` is a live handle; `out` is writable.
enum TwistorStatus twistor_acs_nijenhuis_norm(const struct TwistorAcs *acs, double *out);

// # Safety
// `acs` is a live handle; `out` is writable.
enum TwistorStatus twistor_acs_is_integrable(const struct TwistorAcs *acs, double tol, bool *out);

// # Safety
// `acs` is a live handle; `out` is writable.
enum TwistorStatus twistor_acs_is_ank(const struct TwistorAcs *acs, double tol, bool *out);

// Unit-normalized homogeneous coordinates as four (re, im) pairs in `out[8]`.
//
// # Safety
// `acs` is a live handle; `out` holds 8 doubles.
enum TwistorStatus twistor_acs_to_cp3(const struct TwistorAcs *acs, double *out);

// Barycentric tetrahedron coordinates `|z_k|² / ‖z‖²` in `out[4]`.
//
// # Safety
// `acs` is a live handle; `out` holds 4 doubles.
enum TwistorStatus twistor_acs_tetra(const struct TwistorAcs *acs, double *out);

// The calibrated maximum of the Nijenhuis norm.
double twistor_max_norm(void);

// Extremum search over `restarts` seeded starts. On `Ok` or
// `NoConvergence` the best structure and its norm are written out.
//
// # Safety
// `best_value` and `best` are writable.
enum TwistorStatus twistor_search(bool maximize_norm,
                                  uint64_t seed,
                                  uintptr_t restarts,
                                  uintptr_t max_iters,
                                  double *best_value,
                                  struct TwistorAcs **best);

// Static description of a status code.
const char *twistor_status_message(enum TwistorStatus status);

// Detail text of the last failure on this thread, copied into `buf`
// (truncated, always NUL-terminated when `len > 0`). Returns the full
// length excluding the terminator.
//
// # Safety
// `buf` is null or holds `len` writable bytes.
uintptr_t twistor_last_error(char *buf, uintptr_t len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TWISTOR_H */
