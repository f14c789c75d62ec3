//! Validated orthogonal projections and orthonormal frames.
//!
//! Validation never repairs an input. A matrix that misses the Hermiticity or
//! idempotency tolerance is rejected, because silently projecting it onto the
//! nearest true projection would hide caller bugs.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fp;
use crate::linalg::hermitian::hermitian_eigen;
use crate::linalg::orth;
use crate::matrix::ComplexMatrix;
use crate::tolerance::ToleranceConfig;
use crate::Complex64;

/// A square matrix accepted as an orthogonal projection (Hermitian and
/// idempotent within tolerance). The residuals measured during validation
/// travel with the value.
#[derive(Debug, Clone)]
pub struct OrthProjection {
    mat: ComplexMatrix,
    dim: usize,
    hermitian_residual: f64,
    idempotency_residual: f64,
}

impl OrthProjection {
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn hermitian_residual(&self) -> f64 {
        self.hermitian_residual
    }

    pub fn idempotency_residual(&self) -> f64 {
        self.idempotency_residual
    }

    /// Rank read off the trace; exact for anything that passed validation,
    /// since the spectrum clusters at 0 and 1.
    pub fn rank(&self) -> usize {
        let t = self.mat.trace().re;
        fp::round(t) as usize
    }

    /// The complementary projection `1 - P`. Shares the original's residuals:
    /// `(1-P) - (1-P)*` and `(1-P)^2 - (1-P)` equal the originals up to sign.
    pub fn complement(&self) -> OrthProjection {
        let id = ComplexMatrix::identity(self.dim);
        OrthProjection {
            mat: &id - &self.mat,
            dim: self.dim,
            hermitian_residual: self.hermitian_residual,
            idempotency_residual: self.idempotency_residual,
        }
    }

    /// Orthonormal basis of the range with deterministic column phases.
    pub fn range_frame(&self) -> Result<Frame> {
        let eig = hermitian_eigen(&self.mat)?;
        let picked: Vec<usize> = eig
            .eigenvalues
            .iter()
            .enumerate()
            .filter(|(_, &w)| w > 0.5)
            .map(|(i, _)| i)
            .collect();
        let mut mat = eig.vectors.select_columns(&picked);
        orth::fix_column_phases(&mut mat);
        Ok(Frame::new_unchecked(mat))
    }
}

/// Matrix with orthonormal columns spanning a subspace. `k = 0` is the basis
/// of the trivial subspace.
#[derive(Debug, Clone)]
pub struct Frame {
    mat: ComplexMatrix,
}

impl Frame {
    /// Accepts `mat` when its Gram matrix is the identity within `tol_resid`.
    pub fn new(mat: ComplexMatrix, tol_resid: f64) -> Result<Self> {
        let gram = mat.adjoint_matmul(&mat);
        let residual = (&gram - &ComplexMatrix::identity(mat.cols())).frobenius_norm();
        if residual > tol_resid {
            return Err(Error::FrameNotOrthonormal {
                residual,
                bound: tol_resid,
            });
        }
        Ok(Self { mat })
    }

    /// For columns already orthonormal by construction (eigenvector output,
    /// fresh Gram-Schmidt).
    pub(crate) fn new_unchecked(mat: ComplexMatrix) -> Self {
        Self { mat }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    /// Number of columns, the dimension of the spanned subspace.
    pub fn count(&self) -> usize {
        self.mat.cols()
    }

    pub fn ambient_dim(&self) -> usize {
        self.mat.rows()
    }
}

/// Checks Hermiticity and idempotency against the relative bounds
/// `tol · (1 + ‖m‖_F)` and returns the matrix as a projection.
pub fn validate_projection(m: &ComplexMatrix, tol: &ToleranceConfig) -> Result<OrthProjection> {
    tol.validated()?;
    let dim = m.require_square()?;
    let scale = 1.0 + m.frobenius_norm();

    let hermitian_residual = m.hermitian_residual();
    if hermitian_residual > tol.tol_herm * scale {
        return Err(Error::NotHermitian {
            residual: hermitian_residual,
            bound: tol.tol_herm * scale,
        });
    }

    let idempotency_residual = (&m.matmul(m) - m).frobenius_norm();
    if idempotency_residual > tol.tol_idem * scale {
        return Err(Error::NotIdempotent {
            residual: idempotency_residual,
            bound: tol.tol_idem * scale,
        });
    }

    Ok(OrthProjection {
        mat: m.clone(),
        dim,
        hermitian_residual,
        idempotency_residual,
    })
}

/// The projection onto the span of `f`, computed as `f · f*`. The product is
/// Hermitian to the last bit because entry `(i,j)` and entry `(j,i)` are
/// built from the same scalar products.
pub fn projection_from_frame(f: &Frame, tol: &ToleranceConfig) -> Result<OrthProjection> {
    let mat = f.matrix().matmul_adjoint(f.matrix());
    validate_projection(&mat, tol)
}

/// Rank-one projection onto the line through `v`; zero vector is rejected.
pub fn projection_onto_vector(v: &[Complex64], tol: &ToleranceConfig) -> Result<OrthProjection> {
    let norm_sq: f64 = v.iter().map(|z| z.norm_sqr()).sum();
    if norm_sq == 0.0 {
        return Err(Error::FrameNotOrthonormal {
            residual: 1.0,
            bound: tol.tol_resid,
        });
    }
    let inv = 1.0 / libm::sqrt(norm_sq);
    let col = ComplexMatrix::from_fn(v.len(), 1, |i, _| v[i].scale(inv));
    projection_from_frame(&Frame::new(col, tol.tol_resid)?, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    #[test]
    fn accepts_coordinate_projection() {
        let m = ComplexMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, 0.0]);
        let p = validate_projection(&m, &tol()).unwrap();
        assert_eq!(p.dim(), 2);
        assert_eq!(p.rank(), 1);
        assert_eq!(p.hermitian_residual(), 0.0);
        assert_eq!(p.idempotency_residual(), 0.0);
    }

    #[test]
    fn accepts_tilted_line_projection() {
        // Projection onto the line at angle pi/3 from e1.
        let (s, c) = (core::f64::consts::FRAC_PI_3.sin(), 0.5);
        let m = ComplexMatrix::from_real(2, 2, &[c * c, c * s, c * s, s * s]);
        let p = validate_projection(&m, &tol()).unwrap();
        assert_eq!(p.rank(), 1);
        assert!(p.idempotency_residual() < 1e-15);
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = ComplexMatrix::from_real(2, 2, &[1.0, 1.0, 0.0, 0.0]);
        let err = validate_projection(&m, &tol()).unwrap_err();
        assert!(matches!(err, Error::NotHermitian { .. }));
    }

    #[test]
    fn rejects_non_idempotent() {
        let m = ComplexMatrix::from_real(2, 2, &[0.6, 0.0, 0.0, 0.0]);
        let err = validate_projection(&m, &tol()).unwrap_err();
        assert!(matches!(err, Error::NotIdempotent { .. }));
    }

    #[test]
    fn rejects_rectangular() {
        let m = ComplexMatrix::zeros(2, 3);
        assert!(matches!(
            validate_projection(&m, &tol()),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn frame_to_projection_basis_vector() {
        let f = Frame::new(ComplexMatrix::from_real(2, 1, &[1.0, 0.0]), 1e-8).unwrap();
        let p = projection_from_frame(&f, &tol()).unwrap();
        assert_eq!(p.matrix(), &ComplexMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, 0.0]));
    }

    #[test]
    fn frame_to_projection_tilted() {
        let (s, c) = (core::f64::consts::FRAC_PI_3.sin(), 0.5);
        let f = Frame::new(ComplexMatrix::from_real(2, 1, &[c, s]), 1e-8).unwrap();
        let p = projection_from_frame(&f, &tol()).unwrap();
        let m = p.matrix();
        assert!((m[(0, 0)].re - 0.25).abs() < 1e-15);
        assert!((m[(0, 1)].re - 0.4330127018922193).abs() < 1e-15);
        assert!((m[(1, 0)].re - 0.4330127018922193).abs() < 1e-15);
        assert!((m[(1, 1)].re - 0.75).abs() < 1e-15);
    }

    #[test]
    fn empty_frame_gives_zero_projection() {
        let f = Frame::new(ComplexMatrix::zeros(3, 0), 1e-8).unwrap();
        let p = projection_from_frame(&f, &tol()).unwrap();
        assert_eq!(p.matrix(), &ComplexMatrix::zeros(3, 3));
        assert_eq!(p.rank(), 0);
    }

    #[test]
    fn frame_rejects_dependent_columns() {
        let m = ComplexMatrix::from_real(2, 2, &[1.0, 1.0, 0.0, 0.0]);
        assert!(matches!(
            Frame::new(m, 1e-8),
            Err(Error::FrameNotOrthonormal { .. })
        ));
    }

    #[test]
    fn operator_norm_of_difference() {
        let p = ComplexMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, 0.0]);
        let q = ComplexMatrix::from_real(2, 2, &[0.0, 0.0, 0.0, 1.0]);
        let n = orth::operator_norm(&(&p - &q)).unwrap();
        assert!((n - 1.0).abs() < 1e-13);

        let (s, c) = (core::f64::consts::FRAC_PI_3.sin(), 0.5);
        let q2 = ComplexMatrix::from_real(2, 2, &[c * c, c * s, c * s, s * s]);
        let n2 = orth::operator_norm(&(&p - &q2)).unwrap();
        assert!((n2 - s).abs() < 1e-13);

        assert_eq!(orth::operator_norm(&ComplexMatrix::zeros(3, 3)).unwrap(), 0.0);
    }

    #[test]
    fn range_frame_round_trip() {
        let (s, c) = (core::f64::consts::FRAC_PI_3.sin(), 0.5);
        let m = ComplexMatrix::from_real(2, 2, &[c * c, c * s, c * s, s * s]);
        let p = validate_projection(&m, &tol()).unwrap();
        let f = p.range_frame().unwrap();
        assert_eq!(f.count(), 1);
        let back = projection_from_frame(&f, &tol()).unwrap();
        assert!((&back.matrix().clone() - p.matrix()).frobenius_norm() < 1e-13);
    }

    #[test]
    fn complement_flips_rank() {
        let m = ComplexMatrix::from_real(3, 3, &[1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0]);
        let p = validate_projection(&m, &tol()).unwrap();
        let c = p.complement();
        assert_eq!(c.rank(), 1);
        assert_eq!(
            c.matrix(),
            &ComplexMatrix::from_real(3, 3, &[0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0])
        );
    }

    #[test]
    fn vector_projection_normalizes() {
        let v = vec![Complex64::new(3.0, 0.0), Complex64::new(4.0, 0.0)];
        let p = projection_onto_vector(&v, &tol()).unwrap();
        assert!((p.matrix()[(0, 0)].re - 0.36).abs() < 1e-15);
        assert!((p.matrix()[(1, 1)].re - 0.64).abs() < 1e-15);
    }
}
