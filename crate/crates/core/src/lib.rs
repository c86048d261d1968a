//! Coordinates on the fibres of the Ritz-value map for complex square matrices.
//!
//! A matrix `x` of order `n` has Ritz values `R(x) = (E(x_1), ..., E(x_n))`,
//! the spectra of its leading principal submatrices. This crate computes
//! them, decides the eigenvalue-disjointness conditions that make a fibre
//! generic, builds the unique unit upper Hessenberg matrix with prescribed
//! Ritz values, and provides the complementary "arrow" coordinates `b` that
//! together with `R` parameterize every generic matrix. Around that core sit
//! the Gelfand-Zeitlin flows acting on fibres, an exact Poisson bracket
//! engine for the generators `tr(x_m^k)`, and observability/controllability
//! diagnostics for the bordering problem.
//!
//! Level indices `m` and coordinate slots `j` are 1-based throughout, matching
//! the usual mathematical notation; matrix entries are 0-based.

pub mod arrow;
pub mod control;
pub mod coords;
pub mod error;
pub mod fiber;
pub mod gzflow;
pub mod numcore;

pub use error::{Condition, Error, Result};
pub use numcore::{ComplexMatrix, MonicPoly, Poly, Tolerances, C64};
