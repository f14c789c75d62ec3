//! Error type shared by every operation in the crate.

use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },

    #[error("entry data has length {got}, expected {expected}")]
    ShapeMismatch { expected: usize, got: usize },

    #[error("entry {index} is not finite")]
    NonFiniteEntry { index: usize },

    #[error("matrix is not Hermitian: residual {residual:e} exceeds bound {bound:e}")]
    NotHermitian { residual: f64, bound: f64 },

    #[error("matrix is not idempotent: residual {residual:e} exceeds bound {bound:e}")]
    NotIdempotent { residual: f64, bound: f64 },

    #[error("frame columns are not orthonormal: residual {residual:e} exceeds bound {bound:e}")]
    FrameNotOrthonormal { residual: f64, bound: f64 },

    #[error("operand dimensions disagree: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("tolerance configuration invalid: {reason}")]
    InvalidTolerance { reason: &'static str },

    #[error("eigenvalue {eigenvalue} sits in the ambiguity band around bin {bin}")]
    AmbiguousSpectrum { eigenvalue: f64, bin: f64 },

    #[error("generic part has odd dimension {dim}")]
    OddGenericDimension { dim: usize },

    #[error("operator has an eigenvalue of magnitude {min_abs_eigenvalue:e} near zero; sign is undefined")]
    SingularB { min_abs_eigenvalue: f64 },

    #[error("linear system is singular (smallest pivot {min_pivot:e})")]
    SingularSystem { min_pivot: f64 },

    #[error("no swap unitary exists: dim ker = {dim_ker}, dim coker = {dim_coker}, index = {index}")]
    NoSwapExists {
        dim_ker: usize,
        dim_coker: usize,
        index: i64,
    },

    #[error("norm of P - Q is {norm}; construction requires it below {limit}")]
    NormTooLarge { norm: f64, limit: f64 },

    #[error("power series did not converge within {terms} terms (last term norm {last_term_norm:e})")]
    SeriesNotConverged { terms: usize, last_term_norm: f64 },

    #[error("contour parameters invalid: {reason}")]
    InvalidContour { reason: &'static str },

    #[error("eigenvalue {re}+{im}i lies within {distance:e} of the contour")]
    EigenvalueOnContour { re: f64, im: f64, distance: f64 },

    #[error("quadrature did not converge at {nodes} nodes (deviation {deviation:e})")]
    QuadratureNotConverged { nodes: usize, deviation: f64 },

    #[error("enclosed rank changed: {rank_at_zero} at z=0 vs {rank_at_z} at z")]
    RankChanged { rank_at_zero: usize, rank_at_z: usize },

    #[error("trace {trace} is not within tolerance of the integer index {index}")]
    NonIntegerTrace { trace: f64, index: i64 },

    #[error("eigensolver failed to converge after {sweeps} sweeps")]
    EigenNotConverged { sweeps: usize },
}
