//! Topological index pairings computed from finite matrices.
//!
//! The central object is the spectral localizer of an invertible lattice
//! operator `A` paired with the Dirac operator `D = Σ_j Γ_j X_j`: the
//! Hermitian block matrix `[[κ D_ρ, A_ρ], [A_ρ*, -κ D_ρ]]` restricted to the
//! discrete ball of radius `ρ`. Its half-signature is an integer index of the
//! pairing. The crate provides
//!
//! * Clifford representations and the real symmetry operators attached to
//!   them ([`clifford`], [`symmetry`]),
//! * lattice balls, Dirac matrices and finite-range hopping operators
//!   ([`lattice`], [`operators`]),
//! * localizer assembly, the tapered variant and the homotopy connecting
//!   them ([`localizer`]),
//! * signature/inertia and Pfaffian-sign primitives ([`signature`]),
//! * independent oracles: winding numbers, odd Chern integrals, spectral
//!   flow, eta sums ([`oracle`]),
//! * ready-made models used throughout the tests ([`models`]).

pub mod clifford;
pub mod error;
pub mod lattice;
pub mod linalg;
pub mod localizer;
pub mod models;
pub mod operators;
pub mod oracle;
pub mod signature;
pub mod symmetry;

pub use error::{Error, Result};

use num_complex::Complex64;

/// Dense complex matrix, the working type of the whole crate.
pub type CMatrix = nalgebra::DMatrix<Complex64>;
/// Dense real matrix (real symmetry operators, Pfaffian inputs).
pub type RMatrix = nalgebra::DMatrix<f64>;
