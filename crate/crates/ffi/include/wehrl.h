#ifndef WEHRL_H
#define WEHRL_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum WehrlStatus {
  WEHRL_STATUS_OK = 0,
  WEHRL_STATUS_NULL_POINTER = 1,
  WEHRL_STATUS_PARSE = 2,
  WEHRL_STATUS_DIMENSION = 3,
  WEHRL_STATUS_INVALID_STATE = 4,
  WEHRL_STATUS_NOT_VACUUM = 5,
  WEHRL_STATUS_INVALID_ARGUMENT = 6,
  WEHRL_STATUS_PANIC = 7,
} WehrlStatus;

// Opaque coherent frame handle.
typedef struct WehrlFrame WehrlFrame;

// Opaque group handle.
typedef struct WehrlGroup WehrlGroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Parses a group such as `"Z4xZ2"`. On success `*out` owns a new handle.
enum WehrlStatus wehrl_group_parse(const char *spec, struct WehrlGroup **out);

// `|G|`, or 0 for a null handle.
size_t wehrl_group_order(const struct WehrlGroup *group);

void wehrl_group_free(struct WehrlGroup *group);

// The vacuum frame of the subgroup generated by `generators` (e.g.
// `"2,0;0,1"`; empty for the trivial subgroup, null for `H = G`).
enum WehrlStatus wehrl_frame_vacuum(const struct WehrlGroup *group,
                                    const char *generators,
                                    struct WehrlFrame **out);

// A frame with an arbitrary unit fiducial of `dim = |G|` complex entries.
enum WehrlStatus wehrl_frame_from_fiducial(const struct WehrlGroup *group,
                                           const double *fiducial,
                                           size_t dim,
                                           struct WehrlFrame **out);

// Hilbert space dimension `|G|`, or 0 for a null handle.
size_t wehrl_frame_dim(const struct WehrlFrame *frame);

void wehrl_frame_free(struct WehrlFrame *frame);

// Writes the Husimi function of a pure state into `out`, which must hold
// `dim²` doubles, indexed `g_index·|G| + λ_index`.
enum WehrlStatus wehrl_husimi_pure(const struct WehrlFrame *frame,
                                   const double *psi,
                                   size_t dim,
                                   double *out,
                                   size_t out_len);

// Wehrl entropy (nats) of a pure state.
enum WehrlStatus wehrl_entropy_pure(const struct WehrlFrame *frame,
                                    const double *psi,
                                    size_t dim,
                                    double *out);

// Wehrl entropy (nats) of a density matrix given as `dim²` row-major
// complex entries.
enum WehrlStatus wehrl_entropy_density(const struct WehrlFrame *frame,
                                       const double *rho,
                                       size_t dim,
                                       double *out);

// Von Neumann entropy (nats) of a density matrix.
enum WehrlStatus wehrl_von_neumann_entropy(const double *rho, size_t dim, double *out);

// Minimizes the Wehrl entropy over pure states with the default settings
// and the given seed. `best_state` may be null; otherwise it receives
// `dim` interleaved complex amplitudes.
enum WehrlStatus wehrl_minimize(const struct WehrlFrame *frame,
                                uint64_t seed,
                                double *best_entropy,
                                double *overlap,
                                double *best_state,
                                size_t dim);

// The message of the last failed call on this thread, or null. The caller
// owns the returned string and releases it with [`wehrl_string_free`].
char *wehrl_last_error_message(void);

void wehrl_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WEHRL_H */
