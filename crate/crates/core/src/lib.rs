//! Elastic quantum scattering over quaternion-valued wave functions.
//!
//! The crate builds scattering observables from per-mode angle triples
//! (delta, Theta, xi): the unitary coefficients weighting each partial wave,
//! the quaternionic scattering amplitude and cross sections, boundary
//! matching constants with an independent numeric oracle, the rigid-sphere
//! worked model, and flux/forward-amplitude consistency experiments.
//!
//! The `qscatter` binary exposes the same machinery as CSV-emitting
//! subcommands; see the repository README for the model file grammar and
//! column schemas.

// validation uses `!(x > 0.0)` so that NaN fails the check
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod hard_sphere;
pub mod matching;
pub mod optical;
pub mod partial_wave;
pub mod quaternion;
pub mod special;

pub use error::{Error, Result};
pub use quaternion::Quaternion;
