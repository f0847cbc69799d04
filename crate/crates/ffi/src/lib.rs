//! C ABI over the qscatter library: opaque model handles, status codes, and
//! plain-double observables, so other languages can bind without touching
//! Rust types. The header is generated into `include/qscatter.h` at build
//! time.
//!
//! Conventions: every function that can fail returns a [`QscStatus`] and
//! writes its result through out-pointers; handles come from the `*_new*`
//! constructors and must be released with [`qsc_model_free`]. Quaternions
//! cross the boundary as `double[4]` in (w, x, y, z) component order, the
//! coefficients of (1, i, j, k).

use std::os::raw::c_char;

use qscatter::error::Error;
use qscatter::hard_sphere::{self, HardSphereConfig, SaturationPolicy};
use qscatter::matching;
use qscatter::optical;
use qscatter::partial_wave::{self, ModeParams, ScatteringModel};
use qscatter::special::{self, QuadratureRule};

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QscStatus {
    /// Success.
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// Arguments violate a structural precondition (duplicate ell,
    /// non-canonical angle, bad quadrature order, ...).
    InvalidArgument = 2,
    /// Numeric domain error (non-positive argument, saturated mode,
    /// singular matching denominator, ...).
    DomainError = 3,
}

fn status_of(e: &Error) -> QscStatus {
    match e {
        Error::InvalidModel(_) => QscStatus::InvalidArgument,
        _ => QscStatus::DomainError,
    }
}

/// Opaque scattering model handle.
pub struct QscModel {
    inner: ScatteringModel,
}

/// Library version as a NUL-terminated static string.
#[unsafe(no_mangle)]
pub extern "C" fn qsc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Allocate an empty model with wave number `k`. Returns null when k is not
/// a positive finite number. Add channels with [`qsc_model_add_mode`].
#[unsafe(no_mangle)]
pub extern "C" fn qsc_model_new(k: f64) -> *mut QscModel {
    match ScatteringModel::new(k, Vec::new()) {
        Ok(inner) => Box::into_raw(Box::new(QscModel { inner })),
        Err(_) => std::ptr::null_mut(),
    }
}

/// Build a rigid-sphere model. `ell_max < 0` selects the default cutoff
/// ceil(kR) + 8; `clamp_saturated != 0` clamps saturated modes instead of
/// failing.
///
/// # Safety
/// `out` must be a valid pointer to a `*mut QscModel` slot.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn qsc_model_new_hard_sphere(
    k: f64,
    radius: f64,
    ell_max: i64,
    xi: f64,
    clamp_saturated: i32,
    out: *mut *mut QscModel,
) -> QscStatus {
    if out.is_null() {
        return QscStatus::NullPointer;
    }
    let config = match HardSphereConfig::new(k, radius) {
        Ok(c) => c,
        Err(e) => return status_of(&e),
    };
    let mut config = config.with_xi(xi).with_saturation(if clamp_saturated != 0 {
        SaturationPolicy::Clamp
    } else {
        SaturationPolicy::Reject
    });
    if ell_max >= 0 {
        if ell_max > special::MAX_ELL as i64 {
            return QscStatus::InvalidArgument;
        }
        config = config.with_ell_max(ell_max as u32);
    }
    match hard_sphere::build_model(&config) {
        Ok(built) => {
            unsafe {
                *out = Box::into_raw(Box::new(QscModel { inner: built.model }));
            }
            QscStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Add one partial-wave channel (delta, theta, xi all radians; theta in
/// [-pi/2, pi/2]; ell must be unused).
///
/// # Safety
/// `model` must be a live handle from a constructor.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn qsc_model_add_mode(
    model: *mut QscModel,
    ell: u32,
    delta: f64,
    theta_pol: f64,
    xi: f64,
) -> QscStatus {
    let Some(handle) = (unsafe { model.as_mut() }) else {
        return QscStatus::NullPointer;
    };
    let mode = match ModeParams::new(ell, delta, theta_pol, xi) {
        Ok(m) => m,
        Err(e) => return status_of(&e),
    };
    let mut modes = handle.inner.modes().to_vec();
    modes.push(mode);
    match ScatteringModel::new(handle.inner.k(), modes) {
        Ok(inner) => {
            handle.inner = inner;
            QscStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Release a model handle. Null is a no-op.
///
/// # Safety
/// `model` must be null or a handle not freed before.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn qsc_model_free(model: *mut QscModel) {
    if !model.is_null() {
        drop(unsafe { Box::from_raw(model) });
    }
}

/// Number of channels in the model.
///
/// # Safety
/// `model` and `out` must be valid.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn qsc_model_mode_count(model: *const QscModel, out: *mut usize) -> QscStatus {
    let Some(handle) = (unsafe { model.as_ref() }) else {
        return QscStatus::NullPointer;
    };
    if out.is_null() {
        return QscStatus::NullPointer;
    }
    unsafe { *out = handle.inner.modes().len() };
    QscStatus::Ok
}

/// Closed-form total cross section.
///
/// # Safety
/// `model` and `out` must be valid.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn qsc_total_cross_section(
    model: *const QscModel,
    out: *mut f64,
) -> QscStatus {
    let Some(handle) = (unsafe { model.as_ref() }) else {
        return QscStatus::NullPointer;
    };
    if out.is_null() {
        return QscStatus::NullPointer;
    }
    unsafe { *out = partial_wave::total_cross_section(&handle.inner) };
    QscStatus::Ok
}

/// Total cross section of the same model with every theta zeroed (the
/// one-channel complex limit).
///
/// # Safety
/// `model` and `out` must be valid.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn qsc_complex_limit_cross_section(
    model: *const QscModel,
    out: *mut f64,
) -> QscStatus {
    let Some(handle) = (unsafe { model.as_ref() }) else {
        return QscStatus::NullPointer;
    };
    if out.is_null() {
        return QscStatus::NullPointer;
    }
    unsafe { *out = partial_wave::total_cross_section(&handle.inner.zeroed_polarization()) };
    QscStatus::Ok
}

/// Scattering amplitude F(theta) as four components (w, x, y, z).
///
/// # Safety
/// `model` must be valid; `out` must point to at least 4 doubles.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn qsc_amplitude(
    model: *const QscModel,
    theta: f64,
    out: *mut f64,
) -> QscStatus {
    let Some(handle) = (unsafe { model.as_ref() }) else {
        return QscStatus::NullPointer;
    };
    if out.is_null() {
        return QscStatus::NullPointer;
    }
    let f = partial_wave::amplitude(&handle.inner, theta);
    let components = f.components();
    unsafe { std::ptr::copy_nonoverlapping(components.as_ptr(), out, 4) };
    QscStatus::Ok
}

/// Differential cross section sigma(theta) = |F(theta)|^2.
///
/// # Safety
/// `model` and `out` must be valid.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn qsc_differential_cross_section(
    model: *const QscModel,
    theta: f64,
    out: *mut f64,
) -> QscStatus {
    let Some(handle) = (unsafe { model.as_ref() }) else {
        return QscStatus::NullPointer;
    };
    if out.is_null() {
        return QscStatus::NullPointer;
    }
    unsafe { *out = partial_wave::differential_cross_section(&handle.inner, theta) };
    QscStatus::Ok
}

fn rule_for(quad_order: u32) -> Option<QuadratureRule> {
    if (2..=4096).contains(&quad_order) {
        Some(QuadratureRule::gauss_legendre(quad_order as usize))
    } else {
        None
    }
}

/// Forward-amplitude cross-section relation (see the library notes on its
/// dimensions).
///
/// # Safety
/// `model` and `out` must be valid.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn qsc_optical_cross_section(
    model: *const QscModel,
    quad_order: u32,
    out: *mut f64,
) -> QscStatus {
    let Some(handle) = (unsafe { model.as_ref() }) else {
        return QscStatus::NullPointer;
    };
    if out.is_null() {
        return QscStatus::NullPointer;
    }
    let Some(rule) = rule_for(quad_order) else {
        return QscStatus::InvalidArgument;
    };
    unsafe { *out = optical::optical_cross_section(&handle.inner, &rule) };
    QscStatus::Ok
}

/// Net probability flux of the asymptotic wave through the sphere of
/// radius r.
///
/// # Safety
/// `model` and `out` must be valid.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn qsc_flux_integral(
    model: *const QscModel,
    r: f64,
    quad_order: u32,
    out: *mut f64,
) -> QscStatus {
    let Some(handle) = (unsafe { model.as_ref() }) else {
        return QscStatus::NullPointer;
    };
    if out.is_null() {
        return QscStatus::NullPointer;
    }
    let Some(rule) = rule_for(quad_order) else {
        return QscStatus::InvalidArgument;
    };
    match optical::flux_integral(&handle.inner, r, &rule) {
        Ok(flux) => {
            unsafe { *out = flux };
            QscStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Rigid-sphere phase shift delta_ell at x = kR.
///
/// # Safety
/// `out` must be valid.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn qsc_hard_sphere_phase_shift(
    ell: u32,
    k_r: f64,
    out: *mut f64,
) -> QscStatus {
    if out.is_null() {
        return QscStatus::NullPointer;
    }
    match hard_sphere::phase_shift(ell, k_r) {
        Ok(v) => {
            unsafe { *out = v };
            QscStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Rigid-sphere polarization angle Theta_ell at x = kR; fails with
/// `DomainError` when |y_ell(kR)| < 1 (saturated mode).
///
/// # Safety
/// `out` must be valid.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn qsc_hard_sphere_polarization_angle(
    ell: u32,
    k_r: f64,
    out: *mut f64,
) -> QscStatus {
    if out.is_null() {
        return QscStatus::NullPointer;
    }
    match hard_sphere::polarization_angle(ell, k_r) {
        Ok(v) => {
            unsafe { *out = v };
            QscStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Spherical Bessel function of the first kind j_ell(x).
///
/// # Safety
/// `out` must be valid.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn qsc_sph_bessel_j(ell: u32, x: f64, out: *mut f64) -> QscStatus {
    if out.is_null() {
        return QscStatus::NullPointer;
    }
    match special::sph_bessel_j(ell, x) {
        Ok(v) => {
            unsafe { *out = v };
            QscStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Spherical Bessel function of the second kind y_ell(x).
///
/// # Safety
/// `out` must be valid.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn qsc_sph_bessel_y(ell: u32, x: f64, out: *mut f64) -> QscStatus {
    if out.is_null() {
        return QscStatus::NullPointer;
    }
    match special::sph_bessel_y(ell, x) {
        Ok(v) => {
            unsafe { *out = v };
            QscStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Matching constant Gamma^(0) for the mode (ell, delta, theta, xi) at
/// radius a.
///
/// # Safety
/// `out` must be valid.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn qsc_gamma0(
    ell: u32,
    delta: f64,
    theta_pol: f64,
    xi: f64,
    k: f64,
    a: f64,
    out: *mut f64,
) -> QscStatus {
    if out.is_null() {
        return QscStatus::NullPointer;
    }
    let mode = match ModeParams::new(ell, delta, theta_pol, xi) {
        Ok(m) => m,
        Err(e) => return status_of(&e),
    };
    match matching::gamma0(&mode, k, a) {
        Ok(v) => {
            unsafe { *out = v };
            QscStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Phase shift from the matching constants; the standard one-channel
/// inversion when gamma1_mag = 0.
///
/// # Safety
/// `out` must be valid.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn qsc_delta_from_gamma(
    gamma0: f64,
    gamma1_mag: f64,
    k: f64,
    a: f64,
    ell: u32,
    out: *mut f64,
) -> QscStatus {
    if out.is_null() {
        return QscStatus::NullPointer;
    }
    match matching::delta_from_gamma(gamma0, gamma1_mag, k, a, ell) {
        Ok(v) => {
            unsafe { *out = v };
            QscStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}
