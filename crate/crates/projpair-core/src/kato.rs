//! The intertwining unitary `U P = Q U` for projection pairs with
//! `‖P − Q‖ < 1`, its power-series cousin for oblique (non-Hermitian)
//! projections, and a sufficient-condition predicate on norm products.
//!
//! Both constructions share the bracket `QP + (1−Q)(1−P)` and differ only in
//! how `[1 − (P−Q)²]^{−1/2}` is computed: spectrally when everything is
//! Hermitian, by the binomial series when it is not.

use crate::error::{Error, Result};
use crate::fp;
use crate::linalg::hermitian::hermitian_eigen;
use crate::linalg::orth::operator_norm;
use crate::matrix::ComplexMatrix;
use crate::projection::OrthProjection;
use crate::tolerance::ToleranceConfig;

const SERIES_CAP: usize = 10_000;

/// An idempotent that need not be Hermitian. Its norm can exceed 1, which is
/// exactly what the norm-product predicate is about.
#[derive(Debug, Clone)]
pub struct ObliqueProjection {
    mat: ComplexMatrix,
    dim: usize,
    idempotency_residual: f64,
}

impl ObliqueProjection {
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn idempotency_residual(&self) -> f64 {
        self.idempotency_residual
    }
}

impl From<&OrthProjection> for ObliqueProjection {
    fn from(p: &OrthProjection) -> Self {
        Self {
            mat: p.matrix().clone(),
            dim: p.dim(),
            idempotency_residual: p.idempotency_residual(),
        }
    }
}

/// Accepts any square matrix with `‖M² − M‖_F ≤ tol_idem · (1 + ‖M‖_F)`.
pub fn validate_oblique(m: &ComplexMatrix, tol: &ToleranceConfig) -> Result<ObliqueProjection> {
    tol.validated()?;
    let dim = m.require_square()?;
    let residual = (&m.matmul(m) - m).frobenius_norm();
    let bound = tol.tol_idem * (1.0 + m.frobenius_norm());
    if residual > bound {
        return Err(Error::NotIdempotent { residual, bound });
    }
    Ok(ObliqueProjection {
        mat: m.clone(),
        dim,
        idempotency_residual: residual,
    })
}

fn require_contraction(diff: &ComplexMatrix, tol: &ToleranceConfig) -> Result<()> {
    let norm = operator_norm(diff)?;
    let limit = 1.0 - tol.tol_spec;
    if norm >= limit {
        return Err(Error::NormTooLarge { norm, limit });
    }
    Ok(())
}

fn bracket(p: &ComplexMatrix, q: &ComplexMatrix) -> ComplexMatrix {
    let id = ComplexMatrix::identity(p.rows());
    &q.matmul(p) + &(&id - q).matmul(&(&id - p))
}

/// The unitary `[QP + (1−Q)(1−P)] · [1 − (P−Q)²]^{−1/2}` mapping `ran P`
/// onto `ran Q`. The square root is taken spectrally; the matrix under it is
/// Hermitian positive definite because `‖P − Q‖ < 1`.
pub fn kato_unitary(
    p: &OrthProjection,
    q: &OrthProjection,
    tol: &ToleranceConfig,
) -> Result<ComplexMatrix> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch {
            left: p.dim(),
            right: q.dim(),
        });
    }
    let diff = p.matrix() - q.matrix();
    require_contraction(&diff, tol)?;
    let x = diff.matmul(&diff);
    let body = (&ComplexMatrix::identity(p.dim()) - &x).hermitian_part();
    let eig = hermitian_eigen(&body)?;
    let inv_sqrt = eig.apply_function(|w| 1.0 / fp::sqrt(w.max(f64::MIN_POSITIVE)));
    Ok(bracket(p.matrix(), q.matrix()).matmul(&inv_sqrt))
}

/// Similarity `W` with `W P = Q W` for idempotents that may be oblique.
/// `[1 − X]^{−1/2}` is summed as the binomial series in `X = (P−Q)²`, which
/// needs only `‖P − Q‖ < 1`, not diagonalizability.
pub fn oblique_similarity(
    p: &ObliqueProjection,
    q: &ObliqueProjection,
    tol: &ToleranceConfig,
) -> Result<ComplexMatrix> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch {
            left: p.dim(),
            right: q.dim(),
        });
    }
    let diff = p.matrix() - q.matrix();
    require_contraction(&diff, tol)?;
    let x = diff.matmul(&diff);

    // (1 - X)^{-1/2} = sum c_k X^k with c_0 = 1, c_{k+1} = c_k (2k+1)/(2k+2).
    let mut sum = ComplexMatrix::identity(p.dim());
    let mut term = ComplexMatrix::identity(p.dim());
    let mut converged = false;
    for k in 0..SERIES_CAP {
        let ratio = (2 * k + 1) as f64 / (2 * k + 2) as f64;
        term = term.matmul(&x).scale_re(ratio);
        let norm = term.frobenius_norm();
        sum = &sum + &term;
        if norm <= tol.quad_tol {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::SeriesNotConverged {
            terms: SERIES_CAP,
            last_term_norm: term.frobenius_norm(),
        });
    }
    Ok(bracket(p.matrix(), q.matrix()).matmul(&sum))
}

/// Both norm products `‖P−Q‖·‖P‖²` and `‖P−Q‖·‖Q‖²`, and whether both stay
/// below 1. For orthogonal projections the products reduce to `‖P−Q‖`
/// itself; for oblique ones they can fail even when `‖P−Q‖ < 1` is fine.
#[derive(Debug, Clone, Copy)]
pub struct WolfReport {
    pub holds: bool,
    pub product_p: f64,
    pub product_q: f64,
}

pub fn wolf_condition(p: &ObliqueProjection, q: &ObliqueProjection) -> Result<WolfReport> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch {
            left: p.dim(),
            right: q.dim(),
        });
    }
    let diff_norm = operator_norm(&(p.matrix() - q.matrix()))?;
    let np = operator_norm(p.matrix())?;
    let nq = operator_norm(q.matrix())?;
    let product_p = diff_norm * np * np;
    let product_q = diff_norm * nq * nq;
    Ok(WolfReport {
        holds: product_p < 1.0 && product_q < 1.0,
        product_p,
        product_q,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projection::validate_projection;

    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn proj(entries: &[f64], n: usize) -> OrthProjection {
        validate_projection(&ComplexMatrix::from_real(n, n, entries), &tol()).unwrap()
    }

    fn line_pair(theta: f64) -> (OrthProjection, OrthProjection) {
        let (s, c) = (theta.sin(), theta.cos());
        (
            proj(&[1.0, 0.0, 0.0, 0.0], 2),
            proj(&[c * c, c * s, c * s, s * s], 2),
        )
    }

    #[test]
    fn equal_pair_gives_identity() {
        let p = proj(&[1.0, 0.0, 0.0, 0.0], 2);
        let u = kato_unitary(&p, &p, &tol()).unwrap();
        assert!((&u - &ComplexMatrix::identity(2)).frobenius_norm() < 1e-13);
    }

    #[test]
    fn tilted_pair_gives_plane_rotation() {
        let theta = core::f64::consts::FRAC_PI_3;
        let (s, c) = (theta.sin(), theta.cos());
        let (p, q) = line_pair(theta);
        let u = kato_unitary(&p, &q, &tol()).unwrap();
        let expect = ComplexMatrix::from_real(2, 2, &[c, -s, s, c]);
        assert!((&u - &expect).frobenius_norm() < 1e-13);
        // Rotation, not reflection: determinant +1.
        let det = crate::linalg::lu::determinant(&u).unwrap();
        assert!((det.re - 1.0).abs() < 1e-12);
        // Intertwining: U P = Q U.
        let lhs = u.matmul(p.matrix());
        let rhs = q.matrix().matmul(&u);
        assert!((&lhs - &rhs).frobenius_norm() < 1e-13);
    }

    #[test]
    fn perpendicular_lines_rejected() {
        let p = proj(&[1.0, 0.0, 0.0, 0.0], 2);
        let q = proj(&[0.0, 0.0, 0.0, 1.0], 2);
        assert!(matches!(
            kato_unitary(&p, &q, &tol()),
            Err(Error::NormTooLarge { .. })
        ));
    }

    #[test]
    fn nilpotent_difference_needs_no_series_terms() {
        // P is oblique with the same range as Q; P - Q is nilpotent, so the
        // square-root series is just the identity and W equals the bracket.
        let p_mat = ComplexMatrix::from_real(2, 2, &[1.0, 0.5, 0.0, 0.0]);
        let q_mat = ComplexMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, 0.0]);
        let p = validate_oblique(&p_mat, &tol()).unwrap();
        let q = validate_oblique(&q_mat, &tol()).unwrap();
        let w = oblique_similarity(&p, &q, &tol()).unwrap();
        let expect = ComplexMatrix::from_real(2, 2, &[1.0, 0.5, 0.0, 1.0]);
        assert!((&w - &expect).frobenius_norm() < 1e-14);
        let wp = w.matmul(p.matrix());
        let qw = q.matrix().matmul(&w);
        assert!((&wp - &qw).frobenius_norm() < 1e-14);
        assert!((&wp - &ComplexMatrix::from_real(2, 2, &[1.0, 0.5, 0.0, 0.0])).frobenius_norm() < 1e-14);
    }

    #[test]
    fn series_and_spectral_roots_agree_on_hermitian_input() {
        let (p, q) = line_pair(core::f64::consts::FRAC_PI_3);
        let u = kato_unitary(&p, &q, &tol()).unwrap();
        let w = oblique_similarity(&(&p).into(), &(&q).into(), &tol()).unwrap();
        assert!((&u - &w).frobenius_norm() < 1e-9);
    }

    #[test]
    fn norm_products_orthogonal_case() {
        let (p, q) = line_pair(core::f64::consts::FRAC_PI_3);
        let r = wolf_condition(&(&p).into(), &(&q).into()).unwrap();
        assert!(r.holds);
        let s = core::f64::consts::FRAC_PI_3.sin();
        assert!((r.product_p - s).abs() < 1e-12);
        assert!((r.product_q - s).abs() < 1e-12);
    }

    #[test]
    fn norm_products_fail_for_wild_oblique() {
        let p_mat = ComplexMatrix::from_real(2, 2, &[1.0, 3.0, 0.0, 0.0]);
        let q_mat = ComplexMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, 0.0]);
        let p = validate_oblique(&p_mat, &tol()).unwrap();
        let q = validate_oblique(&q_mat, &tol()).unwrap();
        let r = wolf_condition(&p, &q).unwrap();
        assert!(!r.holds);
        assert!((r.product_p - 30.0).abs() < 1e-10);
        assert!((r.product_q - 3.0).abs() < 1e-12);
    }

    #[test]
    fn norm_products_vanish_for_equal_pair() {
        let p = proj(&[1.0, 0.0, 0.0, 0.0], 2);
        let r = wolf_condition(&(&p).into(), &(&p).into()).unwrap();
        assert!(r.holds);
        assert_eq!(r.product_p, 0.0);
        assert_eq!(r.product_q, 0.0);
    }

    #[test]
    fn oblique_rejects_non_idempotent() {
        let m = ComplexMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, 0.5]);
        assert!(matches!(
            validate_oblique(&m, &tol()),
            Err(Error::NotIdempotent { .. })
        ));
    }
}
