//! Dense complex linear algebra kernels used by the projection calculus.
//!
//! Everything here is self-contained: plain `Vec`-backed matrices, no BLAS or
//! LAPACK bindings, so the crate stays `no_std` + `alloc` friendly.

pub mod eigenvalues;
pub mod hermitian;
pub mod lu;
pub mod orth;
