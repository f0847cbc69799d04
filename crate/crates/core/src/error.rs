//! Error type shared by the numerical modules.

use thiserror::Error;

/// Errors raised by the scattering library.
///
/// Variants that concern a single partial wave carry the offending `ell`
/// so callers (and the CLI exit path) can name the mode.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument that must be strictly positive was not.
    #[error("{name} must be positive, got {value}")]
    NonPositive { name: &'static str, value: f64 },

    /// Partial-wave order above the supported maximum.
    #[error("ell = {ell} exceeds the supported maximum {max}")]
    EllTooLarge { ell: u32, max: u32 },

    /// Argument outside the function domain (e.g. |x| > 1 for P_ell).
    #[error("{name} = {value} is outside the domain {domain}")]
    OutOfDomain {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },

    /// Quaternion inverse of a (numerically) zero quaternion.
    #[error("cannot invert a quaternion of zero norm")]
    ZeroNorm,

    /// A matching denominator fell below threshold relative to its terms.
    #[error("singular matching denominator for ell = {ell}")]
    SingularMatching { ell: u32 },

    /// Gamma1 is 0/0 at exact hard-sphere parameters; no limit is assigned.
    #[error("gamma1 is degenerate (0/0) at hard-sphere parameters for ell = {ell}")]
    DegenerateGamma1 { ell: u32 },

    /// The radial wave vanishes at the requested matching point.
    #[error("radial wave vanishes at r = {r}; log-derivative undefined")]
    UnmatchablePoint { r: f64 },

    /// |y_ell(kR)| < 1: sin(Theta) = 1/y_ell has no real solution.
    #[error(
        "no real polarization angle for ell = {ell}: |y_ell(kR)| = {y_abs} < 1 \
         (quaternionically saturated mode)"
    )]
    Saturated { ell: u32, y_abs: f64 },

    /// Model-level validation failure (duplicate ell, bad angle range, ...).
    #[error("invalid model: {0}")]
    InvalidModel(String),
}

pub type Result<T> = std::result::Result<T, Error>;
