//! Verification engine for the centrally extended Yangian double of sl2.
//!
//! The crate is organized in layers:
//!
//! * [`scalar`], [`poly`], [`ratfun`], [`laurent`] — exact arithmetic:
//!   big rationals, multivariate polynomials, rational functions and
//!   region-tagged truncated Laurent series.
//! * [`fock`] — the truncated level-one free-boson modules, normal-ordered
//!   exponential operators and the spectral-shift automorphism.
//! * [`yangian`] — mode operators of the level-one currents and exact
//!   verification of the defining relations at central charge one.
//! * [`eval`] — two-dimensional evaluation modules, R-matrices, Yang-Baxter
//!   checks, the coproduct on tensor products, the Hopf pairing, and the
//!   numeric reconstruction of the universal R-matrix.
//! * [`intertwiner`] — the regularized type-one intertwiner component and
//!   convergence-controlled verification of its exchange equations.
//! * [`suite`] — batch orchestration, reporting and dumps for the CLI.

pub mod error;
pub mod scalar;
pub mod poly;
pub mod ratfun;
pub mod laurent;
pub mod gammafn;
pub mod fock;
pub mod yangian;
pub mod eval;
pub mod intertwiner;
pub mod suite;

pub use error::{Error, Result};
