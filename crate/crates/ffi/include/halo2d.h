#ifndef HALO2D_H
#define HALO2D_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes returned by every fallible function.
typedef enum Halo2dStatus {
  HALO2D_STATUS_OK = 0,
  HALO2D_STATUS_NULL_POINTER = 1,
  HALO2D_STATUS_INVALID_ARGUMENT = 2,
  HALO2D_STATUS_DOMAIN = 3,
  HALO2D_STATUS_NUMERICAL = 4,
  HALO2D_STATUS_CONTRACT = 5,
  HALO2D_STATUS_BUFFER_TOO_SMALL = 6,
  HALO2D_STATUS_NO_SCATTERING_LENGTH = 7,
  HALO2D_STATUS_PANIC = 8,
} Halo2dStatus;

// Two-body potential handle.
typedef struct Halo2dPotential Halo2dPotential;

// Three-body levels handle.
typedef struct Halo2dSpectrum Halo2dSpectrum;

// Channel table handle.
typedef struct Halo2dTable Halo2dTable;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static NUL-terminated string.
const char *halo2d_version(void);

// Copies the last error message of this thread into `buf` (NUL-terminated,
// truncated to `cap`). Returns the full message length.
//
// # Safety
// `buf` must point to `cap` writable bytes, or be null with `cap` = 0.
uintptr_t halo2d_last_error(char *buf, uintptr_t cap);

// Gaussian pair V(r) = [S1·e^{−r²/2b²} + S2·e^{−2r²/b²}]/(2b²).
//
// # Safety
// `out` must be a valid pointer to a handle slot.
enum Halo2dStatus halo2d_potential_gaussian(double b,
                                            double s1,
                                            double s2,
                                            struct Halo2dPotential **out);

// Contact interaction with 2D scattering length `a`.
//
// # Safety
// `out` must be a valid pointer to a handle slot.
enum Halo2dStatus halo2d_potential_zero_range(double a, struct Halo2dPotential **out);

// # Safety
// `p` must come from a `halo2d_potential_*` constructor and not be freed yet.
void halo2d_potential_free(struct Halo2dPotential *p);

// V(r).
//
// # Safety
// `p` must be a live handle and `v` a valid pointer.
enum Halo2dStatus halo2d_potential_evaluate(const struct Halo2dPotential *p, double r, double *v);

// Pair bound energies, ascending. `len` receives the count even when the
// buffer is too small.
//
// # Safety
// `p` must be a live handle; `buf` must hold `cap` doubles; `len` valid.
enum Halo2dStatus halo2d_pair_energies(const struct Halo2dPotential *p,
                                       double *buf,
                                       uintptr_t cap,
                                       uintptr_t *len);

// 2D scattering length.
//
// # Safety
// `p` must be a live handle and `a` a valid pointer.
enum Halo2dStatus halo2d_scattering_length(const struct Halo2dPotential *p, double *a);

// The lowest `count` hyperangular eigenvalues at `rho`, spurious mode
// included, on the default grid.
//
// # Safety
// `p` must be a live handle; `buf` must hold `count` doubles.
enum Halo2dStatus halo2d_angular_eigenvalues(const struct Halo2dPotential *p,
                                             double rho,
                                             uintptr_t count,
                                             double *buf);

// n-th (1-based) zero-range eigenvalue at ρ/a.
//
// # Safety
// `out` must be a valid pointer.
enum Halo2dStatus halo2d_zero_range_lambda(double rho_over_a, uintptr_t n, double *out);

// Lowest three-dimensional zero-range eigenvalue at ρ/a.
//
// # Safety
// `out` must be a valid pointer.
enum Halo2dStatus halo2d_efimov3d_lowest(double rho_over_a, double *out);

// Channel table on a log grid with `per_decade` points per decade.
// Zero-range potentials give the single-channel table.
//
// # Safety
// `p` must be a live handle and `out` a valid handle slot.
enum Halo2dStatus halo2d_table_build(const struct Halo2dPotential *p,
                                     double rho_min,
                                     double rho_max,
                                     uintptr_t per_decade,
                                     uintptr_t channels,
                                     struct Halo2dTable **out);

// # Safety
// `t` must come from [`halo2d_table_build`] and not be freed yet.
void halo2d_table_free(struct Halo2dTable *t);

// Lowest pair energy of the table, or 0.
//
// # Safety
// `t` must be a live handle and `out` a valid pointer.
enum Halo2dStatus halo2d_table_threshold(const struct Halo2dTable *t, double *out);

// Three-body levels in the energy window (e_min, e_max).
//
// # Safety
// `t` must be a live handle and `out` a valid handle slot.
enum Halo2dStatus halo2d_spectrum_solve(const struct Halo2dTable *t,
                                        double e_min,
                                        double e_max,
                                        struct Halo2dSpectrum **out);

// # Safety
// `s` must come from [`halo2d_spectrum_solve`] and not be freed yet.
void halo2d_spectrum_free(struct Halo2dSpectrum *s);

// Number of levels; 0 for a null handle.
//
// # Safety
// `s` must be a live handle or null.
uintptr_t halo2d_spectrum_len(const struct Halo2dSpectrum *s);

// Energy, excitation index and √⟨ρ²⟩ of level `i`.
//
// # Safety
// `s` must be a live handle; the out pointers must be valid.
enum Halo2dStatus halo2d_spectrum_level(const struct Halo2dSpectrum *s,
                                        uintptr_t i,
                                        double *e3,
                                        uintptr_t *nodes,
                                        double *rms_rho);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HALO2D_H */
