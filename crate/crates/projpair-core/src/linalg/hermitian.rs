//! Eigendecomposition of complex Hermitian matrices by the cyclic Jacobi
//! method with complex plane rotations.
//!
//! Jacobi is slower than tridiagonalization + QL but it is simple, backward
//! stable, and delivers eigenvectors orthonormal to machine precision, which
//! is what the spectral binning downstream depends on.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fp;
use crate::matrix::ComplexMatrix;
use crate::Complex64;

const MAX_SWEEPS: usize = 60;

/// Eigenvalues in ascending order with matching eigenvector columns.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub eigenvalues: Vec<f64>,
    /// Unitary matrix whose column `k` is the eigenvector for `eigenvalues[k]`.
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    /// `V f(diag) V*` for a real function of the eigenvalues.
    pub fn apply_function(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let mapped: Vec<Complex64> = self
            .eigenvalues
            .iter()
            .map(|&w| Complex64::new(f(w), 0.0))
            .collect();
        let scaled = scale_columns(&self.vectors, &mapped);
        scaled.matmul_adjoint(&self.vectors)
    }
}

fn scale_columns(m: &ComplexMatrix, factors: &[Complex64]) -> ComplexMatrix {
    ComplexMatrix::from_fn(m.rows(), m.cols(), |i, j| m[(i, j)] * factors[j])
}

/// Decomposes `m` as `V diag(w) V*`. Only the Hermitian part of `m` is used.
pub fn hermitian_eigen(m: &ComplexMatrix) -> Result<HermitianEigen> {
    let n = m.require_square()?;
    if n == 0 {
        return Ok(HermitianEigen {
            eigenvalues: Vec::new(),
            vectors: ComplexMatrix::zeros(0, 0),
        });
    }

    let mut a = m.hermitian_part();
    let mut v = ComplexMatrix::identity(n);
    let scale = a.frobenius_norm().max(f64::MIN_POSITIVE);
    let target = 1e-15 * scale;

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) <= target {
            converged = true;
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }
    if !converged && off_diagonal_norm(&a) > target {
        return Err(Error::EigenNotConverged { sweeps: MAX_SWEEPS });
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    order.sort_by(|&i, &j| diag[i].partial_cmp(&diag[j]).unwrap());

    let eigenvalues = order.iter().map(|&i| diag[i]).collect();
    let vectors = v.select_columns(&order);
    Ok(HermitianEigen { eigenvalues, vectors })
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut sum = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            sum += 2.0 * a[(i, j)].norm_sqr();
        }
    }
    fp::sqrt(sum)
}

/// Annihilates `a[(p, q)]` with the unitary plane rotation
/// `G = [[c, s·x], [-s·x̄, c]]`, `x = a_pq / |a_pq|`, applied as
/// `A <- G* A G`; `G` is accumulated into the eigenvector columns of `v`.
///
/// With `tau = (a_qq - a_pp) / 2|a_pq|` the zeroing condition reads
/// `t^2 + 2 tau t - 1 = 0`; the smaller root keeps the rotation angle
/// below pi/4, which is what makes cyclic Jacobi converge.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let abs_apq = apq.norm();
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    if abs_apq <= f64::EPSILON * 1e-3 * (app.abs() + aqq.abs() + abs_apq) || abs_apq == 0.0 {
        a[(p, q)] = Complex64::new(0.0, 0.0);
        a[(q, p)] = Complex64::new(0.0, 0.0);
        return;
    }

    let x = apq / abs_apq;
    let tau = (aqq - app) / (2.0 * abs_apq);
    let t = if tau >= 0.0 {
        1.0 / (tau + fp::sqrt(1.0 + tau * tau))
    } else {
        -1.0 / (-tau + fp::sqrt(1.0 + tau * tau))
    };
    let c = 1.0 / fp::sqrt(1.0 + t * t);
    let s = t * c;

    let n = a.rows();
    let sx = x.scale(s);

    // A <- A G (columns), then A <- G* A (rows).
    for i in 0..n {
        let aip = a[(i, p)];
        let aiq = a[(i, q)];
        a[(i, p)] = aip.scale(c) - aiq * sx.conj();
        a[(i, q)] = aiq.scale(c) + aip * sx;
    }
    for j in 0..n {
        let apj = a[(p, j)];
        let aqj = a[(q, j)];
        a[(p, j)] = apj.scale(c) - aqj * sx;
        a[(q, j)] = aqj.scale(c) + apj * sx.conj();
    }

    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);

    for i in 0..v.rows() {
        let vip = v[(i, p)];
        let viq = v[(i, q)];
        v[(i, p)] = vip.scale(c) - viq * sx.conj();
        v[(i, q)] = viq.scale(c) + vip * sx;
    }
}
