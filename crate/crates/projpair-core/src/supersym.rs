//! The difference/sum operator pair of two projections, its algebraic
//! identities, the matrix sign function, and the swap unitary.
//!
//! With `A = P - Q` and `B = 1 - P - Q` one has `A^2 + B^2 = 1` and
//! `AB + BA = 0`, and both squares commute with P and Q. A unitary exchanging
//! the two projections under conjugation exists exactly when the +1 and -1
//! eigenspaces of `A` have equal dimension; it is assembled from sgn(B) on
//! the complement of those eigenspaces and an index-pairing between them.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::hermitian::{hermitian_eigen, HermitianEigen};
use crate::linalg::lu;
use crate::linalg::orth;
use crate::matrix::ComplexMatrix;
use crate::projection::OrthProjection;
use crate::tolerance::ToleranceConfig;

/// `a = P - Q`, `b = 1 - P - Q` for a validated pair on the same space.
#[derive(Debug, Clone)]
pub struct SuperPair {
    a: ComplexMatrix,
    b: ComplexMatrix,
    dim: usize,
}

impl SuperPair {
    pub fn a(&self) -> &ComplexMatrix {
        &self.a
    }

    pub fn b(&self) -> &ComplexMatrix {
        &self.b
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
}

pub fn build_super(p: &OrthProjection, q: &OrthProjection) -> Result<SuperPair> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch {
            left: p.dim(),
            right: q.dim(),
        });
    }
    let id = ComplexMatrix::identity(p.dim());
    Ok(SuperPair {
        a: p.matrix() - q.matrix(),
        b: &(&id - p.matrix()) - q.matrix(),
        dim: p.dim(),
    })
}

/// The six identity defects, each a Frobenius norm that is zero in exact
/// arithmetic for any pair of orthogonal projections.
#[derive(Debug, Clone, Copy)]
pub struct IdentityResiduals {
    /// `‖A² + B² − 1‖`
    pub square_sum: f64,
    /// `‖AB + BA‖`
    pub anticommutator: f64,
    /// `‖PA² − A²P‖`
    pub p_a2_commutator: f64,
    /// `‖QA² − A²Q‖`
    pub q_a2_commutator: f64,
    /// `‖PB² − B²P‖`
    pub p_b2_commutator: f64,
    /// `‖QB² − B²Q‖`
    pub q_b2_commutator: f64,
}

impl IdentityResiduals {
    pub fn as_array(&self) -> [f64; 6] {
        [
            self.square_sum,
            self.anticommutator,
            self.p_a2_commutator,
            self.q_a2_commutator,
            self.p_b2_commutator,
            self.q_b2_commutator,
        ]
    }

    pub fn max(&self) -> f64 {
        self.as_array().into_iter().fold(0.0, f64::max)
    }
}

fn commutator_norm(x: &ComplexMatrix, y: &ComplexMatrix) -> f64 {
    (&x.matmul(y) - &y.matmul(x)).frobenius_norm()
}

pub fn identity_residuals(
    sp: &SuperPair,
    p: &OrthProjection,
    q: &OrthProjection,
) -> IdentityResiduals {
    let a2 = sp.a.matmul(&sp.a);
    let b2 = sp.b.matmul(&sp.b);
    let id = ComplexMatrix::identity(sp.dim);
    let square_sum = (&(&a2 + &b2) - &id).frobenius_norm();
    let anticommutator = (&sp.a.matmul(&sp.b) + &sp.b.matmul(&sp.a)).frobenius_norm();
    IdentityResiduals {
        square_sum,
        anticommutator,
        p_a2_commutator: commutator_norm(p.matrix(), &a2),
        q_a2_commutator: commutator_norm(q.matrix(), &a2),
        p_b2_commutator: commutator_norm(p.matrix(), &b2),
        q_b2_commutator: commutator_norm(q.matrix(), &b2),
    }
}

/// `sgn` of a nonsingular Hermitian matrix through its eigendecomposition:
/// eigenvalues map to ±1, eigenvectors stay. The result is Hermitian,
/// unitary, and squares to the identity.
pub fn matrix_sign(b: &ComplexMatrix, tol: &ToleranceConfig) -> Result<ComplexMatrix> {
    let eig = checked_hermitian_eigen(b, tol)?;
    require_nonsingular(&eig, tol)?;
    Ok(eig
        .apply_function(|w| if w > 0.0 { 1.0 } else { -1.0 })
        .hermitian_part())
}

fn checked_hermitian_eigen(b: &ComplexMatrix, tol: &ToleranceConfig) -> Result<HermitianEigen> {
    let residual = b.hermitian_residual();
    let bound = tol.tol_herm * (1.0 + b.frobenius_norm());
    if residual > bound {
        return Err(Error::NotHermitian { residual, bound });
    }
    hermitian_eigen(b)
}

fn require_nonsingular(eig: &HermitianEigen, tol: &ToleranceConfig) -> Result<f64> {
    let min_abs = eig
        .eigenvalues
        .iter()
        .map(|w| w.abs())
        .fold(f64::INFINITY, f64::min);
    if min_abs <= tol.tol_spec {
        return Err(Error::SingularB {
            min_abs_eigenvalue: min_abs,
        });
    }
    Ok(min_abs)
}

/// Whether a unitary exchanging P and Q exists, together with the two
/// deciding dimensions.
#[derive(Debug, Clone, Copy)]
pub struct SwapFeasibility {
    pub exists: bool,
    /// dim (ran P ∩ ker Q), the +1 eigenspace of P − Q.
    pub dim_ker: usize,
    /// dim (ker P ∩ ran Q), the −1 eigenspace of P − Q.
    pub dim_coker: usize,
}

pub fn swap_exists(
    p: &OrthProjection,
    q: &OrthProjection,
    tol: &ToleranceConfig,
) -> Result<SwapFeasibility> {
    let (plus, minus, _) = split_difference_spectrum(p, q, tol)?;
    Ok(SwapFeasibility {
        exists: plus.len() == minus.len(),
        dim_ker: plus.len(),
        dim_coker: minus.len(),
    })
}

/// Unitary with `U P U* = Q`, `U Q U* = P`, plus the stronger symmetry
/// properties `U = U*` and `U² = 1`.
#[derive(Debug, Clone)]
pub struct SwapResult {
    pub u: ComplexMatrix,
    /// Whether `‖U² − 1‖_F ≤ tol_resid` held on the constructed U.
    pub is_symmetry: bool,
    /// Dimension of the exchanged pair of eigenspaces.
    pub t_block_dim: usize,
}

fn split_difference_spectrum(
    p: &OrthProjection,
    q: &OrthProjection,
    tol: &ToleranceConfig,
) -> Result<(Vec<usize>, Vec<usize>, HermitianEigen)> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch {
            left: p.dim(),
            right: q.dim(),
        });
    }
    let eig = hermitian_eigen(&(p.matrix() - q.matrix()))?;
    for &w in &eig.eigenvalues {
        for bin in [-1.0, 1.0] {
            let dist = (w - bin).abs();
            if dist > tol.tol_spec && dist <= 10.0 * tol.tol_spec {
                return Err(Error::AmbiguousSpectrum { eigenvalue: w, bin });
            }
        }
    }
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    for (i, &w) in eig.eigenvalues.iter().enumerate() {
        if (w - 1.0).abs() <= tol.tol_spec {
            plus.push(i);
        } else if (w + 1.0).abs() <= tol.tol_spec {
            minus.push(i);
        }
    }
    Ok((plus, minus, eig))
}

/// Builds the exchanging unitary. On the complement of the ±1 eigenspaces of
/// `A = P - Q` it is sgn of the compressed `B`; between the two eigenspaces
/// it pairs the i-th basis vector of one with the i-th of the other. Both
/// pieces are Hermitian involutions, so the whole U is one.
pub fn swap_unitary(
    p: &OrthProjection,
    q: &OrthProjection,
    tol: &ToleranceConfig,
) -> Result<SwapResult> {
    let (plus, minus, eig) = split_difference_spectrum(p, q, tol)?;
    if plus.len() != minus.len() {
        return Err(Error::NoSwapExists {
            dim_ker: plus.len(),
            dim_coker: minus.len(),
            index: plus.len() as i64 - minus.len() as i64,
        });
    }
    let n = p.dim();

    let mut f_plus = eig.vectors.select_columns(&plus);
    let mut f_minus = eig.vectors.select_columns(&minus);
    orth::fix_column_phases(&mut f_plus);
    orth::fix_column_phases(&mut f_minus);

    let generic: Vec<usize> = (0..n).filter(|i| !plus.contains(i) && !minus.contains(i)).collect();
    let f2 = eig.vectors.select_columns(&generic);

    let id = ComplexMatrix::identity(n);
    let b = &(&id - p.matrix()) - q.matrix();
    let b2 = f2.adjoint_matmul(&b.matmul(&f2)).hermitian_part();
    let w2 = matrix_sign(&b2, tol)?;

    let exchange = &f_minus.matmul_adjoint(&f_plus) + &f_plus.matmul_adjoint(&f_minus);
    let u = (&exchange + &f2.matmul(&w2).matmul_adjoint(&f2)).hermitian_part();

    let involution_residual = (&u.matmul(&u) - &id).frobenius_norm();
    Ok(SwapResult {
        u,
        is_symmetry: involution_residual <= tol.tol_resid,
        t_block_dim: plus.len(),
    })
}

/// For each ε, the operator-norm distance between `B(|B|+ε)^{-1}` and
/// sgn(B). The distance equals `max ε/(|λ|+ε)` over the spectrum, so it
/// shrinks to zero monotonically and is bounded by ε divided by the smallest
/// absolute eigenvalue.
pub fn sign_limit_check(
    b: &ComplexMatrix,
    epsilons: &[f64],
    tol: &ToleranceConfig,
) -> Result<Vec<f64>> {
    if epsilons.iter().any(|&e| !(e > 0.0) || !e.is_finite()) {
        return Err(Error::InvalidTolerance {
            reason: "smoothing parameters must be finite and strictly positive",
        });
    }
    let eig = checked_hermitian_eigen(b, tol)?;
    require_nonsingular(&eig, tol)?;
    let sign = eig.apply_function(|w| if w > 0.0 { 1.0 } else { -1.0 });
    let abs = eig.apply_function(f64::abs);
    let id = ComplexMatrix::identity(b.rows());
    let mut out = Vec::with_capacity(epsilons.len());
    for &eps in epsilons {
        let smoothed = &abs + &id.scale_re(eps);
        let inv = lu::inverse(&smoothed)?;
        let deviation = &b.matmul(&inv) - &sign;
        out.push(orth::operator_norm(&deviation)?);
    }
    Ok(out)
}

/// Inverts the defining differences: `P = (A - B + 1)/2`, `Q = (-A - B + 1)/2`.
pub fn reconstruct_pq(sp: &SuperPair) -> (ComplexMatrix, ComplexMatrix) {
    let id = ComplexMatrix::identity(sp.dim);
    let p = (&(&sp.a - &sp.b) + &id).scale_re(0.5);
    let q = (&(&sp.a.scale_re(-1.0) - &sp.b) + &id).scale_re(0.5);
    (p, q)
}
