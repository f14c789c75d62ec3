//! Constructive calculus of pairs of orthogonal projections on `C^n`.
//!
//! Everything here is dense, double-precision complex linear algebra with
//! verifiable residuals: validated projections, the four kernel-intersection
//! subspaces, the difference/sum operator pair `A = P - Q`, `B = 1 - P - Q`
//! and its algebraic identities, explicit swap unitaries (`UPU* = Q`,
//! `UQU* = P`), the intertwining unitary `UP = QU`, the integer pair index,
//! and Riesz spectral projectors by contour quadrature.
//!
//! The crate is `no_std` (needs `alloc`); IO, file formats and the CLI live
//! in the companion `projpair-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod error;
mod fp;
pub mod index;
pub mod kato;
pub mod linalg;
pub mod matrix;
pub mod perturbation;
pub mod projection;
pub mod subspaces;
pub mod supersym;
pub mod tolerance;

pub use error::{Error, Result};
pub use linalg::orth::operator_norm;
pub use matrix::ComplexMatrix;
pub use projection::{projection_from_frame, validate_projection, Frame, OrthProjection};
pub use tolerance::ToleranceConfig;

/// Complex scalar used throughout.
pub type Complex64 = num_complex::Complex<f64>;
