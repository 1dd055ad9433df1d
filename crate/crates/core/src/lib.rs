//! Two-state quantum walk on the line whose rotation coin is replaced by a
//! "kick" `H = diag(1, -1)` at `m` equally spaced times.
//!
//! Three independent routes describe the walk:
//!
//! * [`evolve`] iterates the position-space recursion directly,
//! * [`spectral`] diagonalizes the one-step operator in quasi-momentum and
//!   rebuilds amplitudes and long-time moments from the eigen-expansion,
//! * [`limitlaw`] evaluates the closed-form weak limits (Konno density
//!   components plus an atom at the origin when the walk localizes).
//!
//! [`verify`] compares them against each other.
//!
//! ```
//! use kickwalk::{compare, make_params, up_state, CompareOptions, LimitCase};
//!
//! let (alpha, beta) = up_state();
//! let params = make_params(std::f64::consts::FRAC_PI_4, 50, 2, 3, alpha, beta)?;
//! let report = compare(&params, LimitCase::Kicked { m: 2, n: 3 }, &CompareOptions::default())?;
//! assert!(report.ks_distance < 0.1);
//! # Ok::<(), kickwalk::Error>(())
//! ```

pub mod error;
pub mod evolve;
pub mod limitlaw;
pub mod quad;
pub mod spectral;
pub mod verify;
pub mod walk;

pub use error::{Error, Result};
pub use evolve::{evolve_to, is_kick_time, probabilities, step, AmplitudeField, DistTable};
pub use limitlaw::{
    band_edge_value, delta_weight, konno_density, law_cdf, limit_law, weight, Component, LimitLaw,
    WeightContext, WeightKind,
};
pub use spectral::{
    eigensystem, k_amplitude, kick_coefficients, limit_moment, reconstruct_field, EigenSystem,
    KickCoefficients,
};
pub use verify::{
    compare, ks_distance, localization_mass, rescaled_empirical_cdf, CompareOptions,
    ComparisonReport, EmpiricalCdf,
};
pub use walk::{
    coin_matrices, make_params, symmetric_state, up_state, CoinSet, LimitCase, Mat2, Spinor,
    WalkParams,
};
