//! Weak-measurement simulation for spin-1/2 ensembles.
//!
//! A system is pre-selected in `|Ψin⟩`, coupled to a one-dimensional Gaussian
//! pointer through `exp{iλQ̂Â}`, and post-selected on `|Ψfin⟩`. The conditional
//! pointer momentum then shifts by `λ·Re(A_w)` where
//! `A_w = ⟨Ψfin|Â|Ψin⟩ / ⟨Ψfin|Ψin⟩` is the weak value, which may lie outside
//! the eigenvalue range of `Â`.
//!
//! The crate provides
//! - exact 2×2 spin algebra ([`spin`]): weak values, expectation values,
//!   rotations, the orthogonal decomposition `Â|Ψ⟩ = Ā|Ψ⟩ + ΔA|Ψ⊥⟩`;
//! - grid pointer states ([`pointer`]): exact joint evolution, Q↔P transforms,
//!   post-selection, and the analytic weak-value pointer approximation;
//! - the three measurement protocols ([`protocols`]): per-particle Monte Carlo
//!   readout, single-trial collective coupling, and the collective
//!   total-momentum readout with relative-position corrections;
//! - regime analysis of the weak-value approximation ([`validity`]);
//! - scenario-file parsing and deterministic result emission ([`scenario`],
//!   [`report`]).
//!
//! Everything is a pure function over immutable values; runs are bit
//! deterministic for a fixed seed.

pub mod error;
pub mod pointer;
pub mod protocols;
pub mod report;
pub mod scenario;
pub mod spin;
pub mod validity;

pub use error::{Error, Result};

/// Complex amplitude type used throughout (ħ = 1, dimensionless).
pub type C64 = num_complex::Complex64;
