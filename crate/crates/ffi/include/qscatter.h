/* C ABI for the qscatter quaternionic scattering library. */

#ifndef QSCATTER_H
#define QSCATTER_H

/* Generated by cbindgen from qscatter-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible entry point.
 */
typedef enum {
  /**
   * Success.
   */
  QSC_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  QSC_STATUS_NULL_POINTER = 1,
  /**
   * Arguments violate a structural precondition (duplicate ell,
   * non-canonical angle, bad quadrature order, ...).
   */
  QSC_STATUS_INVALID_ARGUMENT = 2,
  /**
   * Numeric domain error (non-positive argument, saturated mode,
   * singular matching denominator, ...).
   */
  QSC_STATUS_DOMAIN_ERROR = 3,
} QscStatus;

/**
 * Opaque scattering model handle.
 */
typedef struct QscModel QscModel;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a NUL-terminated static string.
 */
const char *qsc_version(void);

/**
 * Allocate an empty model with wave number `k`. Returns null when k is not
 * a positive finite number. Add channels with [`qsc_model_add_mode`].
 */
QscModel *qsc_model_new(double k);

/**
 * Build a rigid-sphere model. `ell_max < 0` selects the default cutoff
 * ceil(kR) + 8; `clamp_saturated != 0` clamps saturated modes instead of
 * failing.
 *
 * # Safety
 * `out` must be a valid pointer to a `*mut QscModel` slot.
 */
QscStatus qsc_model_new_hard_sphere(double k,
                                    double radius,
                                    int64_t ell_max,
                                    double xi,
                                    int32_t clamp_saturated,
                                    QscModel **out);

/**
 * Add one partial-wave channel (delta, theta, xi all radians; theta in
 * [-pi/2, pi/2]; ell must be unused).
 *
 * # Safety
 * `model` must be a live handle from a constructor.
 */
QscStatus qsc_model_add_mode(QscModel *model,
                             uint32_t ell,
                             double delta,
                             double theta_pol,
                             double xi);

/**
 * Release a model handle. Null is a no-op.
 *
 * # Safety
 * `model` must be null or a handle not freed before.
 */
void qsc_model_free(QscModel *model);

/**
 * Number of channels in the model.
 *
 * # Safety
 * `model` and `out` must be valid.
 */
QscStatus qsc_model_mode_count(const QscModel *model, uintptr_t *out);

/**
 * Closed-form total cross section.
 *
 * # Safety
 * `model` and `out` must be valid.
 */
QscStatus qsc_total_cross_section(const QscModel *model, double *out);

/**
 * Total cross section of the same model with every theta zeroed (the
 * one-channel complex limit).
 *
 * # Safety
 * `model` and `out` must be valid.
 */
QscStatus qsc_complex_limit_cross_section(const QscModel *model, double *out);

/**
 * Scattering amplitude F(theta) as four components (w, x, y, z).
 *
 * # Safety
 * `model` must be valid; `out` must point to at least 4 doubles.
 */
QscStatus qsc_amplitude(const QscModel *model, double theta, double *out);

/**
 * Differential cross section sigma(theta) = |F(theta)|^2.
 *
 * # Safety
 * `model` and `out` must be valid.
 */
QscStatus qsc_differential_cross_section(const QscModel *model, double theta, double *out);

/**
 * Forward-amplitude cross-section relation (see the library notes on its
 * dimensions).
 *
 * # Safety
 * `model` and `out` must be valid.
 */
QscStatus qsc_optical_cross_section(const QscModel *model, uint32_t quad_order, double *out);

/**
 * Net probability flux of the asymptotic wave through the sphere of
 * radius r.
 *
 * # Safety
 * `model` and `out` must be valid.
 */
QscStatus qsc_flux_integral(const QscModel *model, double r, uint32_t quad_order, double *out);

/**
 * Rigid-sphere phase shift delta_ell at x = kR.
 *
 * # Safety
 * `out` must be valid.
 */
QscStatus qsc_hard_sphere_phase_shift(uint32_t ell, double k_r, double *out);

/**
 * Rigid-sphere polarization angle Theta_ell at x = kR; fails with
 * `DomainError` when |y_ell(kR)| < 1 (saturated mode).
 *
 * # Safety
 * `out` must be valid.
 */
QscStatus qsc_hard_sphere_polarization_angle(uint32_t ell, double k_r, double *out);

/**
 * Spherical Bessel function of the first kind j_ell(x).
 *
 * # Safety
 * `out` must be valid.
 */
QscStatus qsc_sph_bessel_j(uint32_t ell, double x, double *out);

/**
 * Spherical Bessel function of the second kind y_ell(x).
 *
 * # Safety
 * `out` must be valid.
 */
QscStatus qsc_sph_bessel_y(uint32_t ell, double x, double *out);

/**
 * Matching constant Gamma^(0) for the mode (ell, delta, theta, xi) at
 * radius a.
 *
 * # Safety
 * `out` must be valid.
 */
QscStatus qsc_gamma0(uint32_t ell,
                     double delta,
                     double theta_pol,
                     double xi,
                     double k,
                     double a,
                     double *out);

/**
 * Phase shift from the matching constants; the standard one-channel
 * inversion when gamma1_mag = 0.
 *
 * # Safety
 * `out` must be valid.
 */
QscStatus qsc_delta_from_gamma(double gamma0,
                               double gamma1_mag,
                               double k,
                               double a,
                               uint32_t ell,
                               double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QSCATTER_H */
