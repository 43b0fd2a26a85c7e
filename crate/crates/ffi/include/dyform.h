#ifndef DYFORM_H
#define DYFORM_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum DyStatus {
  DY_STATUS_OK = 0,
  DY_STATUS_NULL_POINTER = 1,
  DY_STATUS_USAGE = 2,
  DY_STATUS_DOMAIN = 3,
  DY_STATUS_INVALID_FIELD = 4,
  DY_STATUS_PRECISION = 5,
  DY_STATUS_OVERFLOW = 6,
  DY_STATUS_PANIC = 7,
} DyStatus;

// The residue field `GF(2^f)`.
typedef struct DyField DyField;

// The Galois ring `GR(2^m, f)`.
typedef struct DyRing DyRing;

// Conductor bookkeeping for one rank. `|γ| = gamma_base^gamma_exponent`.
typedef struct DyConductor {
  uint64_t artin_rs;
  uint64_t swan_ad;
  uint64_t artin_ad;
  uint64_t gamma_base;
  uint64_t gamma_exponent;
} DyConductor;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or NULL. Valid until
// the next failing call on the same thread.
const char *dy_last_error(void);

// Library version as a static NUL-terminated string.
const char *dy_version(void);

// Builds `GF(2^f)`. `modulus = 0` selects the default irreducible
// polynomial; otherwise it is the bit pattern of a degree-`f` polynomial.
//
// # Safety
// `out` must be valid for writes.
enum DyStatus dy_field_new(uint32_t f, uint64_t modulus, struct DyField **out);

// # Safety
// `field` must be NULL or a handle from [`dy_field_new`] not yet freed.
void dy_field_free(struct DyField *field);

// Field cardinality `q`, or 0 for a NULL handle.
//
// # Safety
// `field` must be NULL or a live handle.
uint32_t dy_field_q(const struct DyField *field);

// `g^k` for the canonical generator `g`, as a bit pattern.
//
// # Safety
// `field` must be a live handle; `out` valid for writes.
enum DyStatus dy_field_gen_pow(const struct DyField *field, uint64_t k, uint32_t *out);

// `ψ(x) = (-1)^{Tr(x)}`.
//
// # Safety
// `field` must be a live handle; `out` valid for writes.
enum DyStatus dy_psi(const struct DyField *field, uint32_t x, int32_t *out);

// `Kl^N_x`. Fails with `Overflow` if the value does not fit 64 bits.
//
// # Safety
// `field` must be a live handle; `out` valid for writes.
enum DyStatus dy_kloosterman(const struct DyField *field, uint32_t big_n, uint32_t x, int64_t *out);

// Builds `GR(2^m, f)` over `field`.
//
// # Safety
// `field` must be a live handle; `out` valid for writes.
enum DyStatus dy_ring_new(const struct DyField *field, uint32_t m, struct DyRing **out);

// # Safety
// `ring` must be NULL or a handle from [`dy_ring_new`] not yet freed.
void dy_ring_free(struct DyRing *ring);

// Compares the twisted character at `g_u`, the symplectic character at
// `h_u` and `Kl^{n+1}_{au}`. `holds` receives whether all agree and `h_u`
// is a norm of `g_u`; `value` receives `Kl^{n+1}_{au}`.
//
// # Safety
// `ring` must be a live handle; `holds` and `value` valid for writes.
enum DyStatus dy_endoscopy_check(const struct DyRing *ring,
                                 uint32_t n,
                                 uint32_t u,
                                 uint32_t a,
                                 bool *holds,
                                 int64_t *value);

// Conductor and γ-factor data for rank `n` over a residue field of size `q`.
//
// # Safety
// `out` must be valid for writes.
enum DyStatus dy_conductor(uint64_t n, uint64_t q, struct DyConductor *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DYFORM_H */
