//! Quantum mechanics on the cylinder phase space S¹×ℝ.
//!
//! The crate is organised bottom-up: [`specfun`] supplies theta, Bessel and
//! elliptic functions; [`circlespace`] models quasi-periodic wavefunctions in a
//! fixed sector δ; [`mincs`] and [`zakcs`] build the two coherent-state
//! families; [`ladder`] and [`evolve`] act on them. [`e2action`] holds the
//! classical side of the Euclidean group.
//!
//! Units: ħ = 1 and unit radius, so `C = cos φ`, `S = sin φ` and the
//! dimensionless angular momentum has eigenvalues `n + δ`.

pub mod circlespace;
pub mod e2action;
pub mod evolve;
pub mod ladder;
pub mod mincs;
pub mod quad;
pub mod specfun;
pub mod zakcs;

mod error;

pub use error::Error;

pub use num_complex::Complex64;

/// Shorthand for results carrying [`Error`].
pub type Result<T> = std::result::Result<T, Error>;
