//! Orthonormalization, singular values, and numerical rank.

use alloc::vec::Vec;

use crate::error::Result;
use crate::fp;
use crate::linalg::hermitian::hermitian_eigen;
use crate::matrix::ComplexMatrix;
use crate::Complex64;

/// Orthonormal basis for the column span, built by two rounds of modified
/// Gram-Schmidt. A column whose remainder drops below `tol` times its
/// original norm counts as dependent and is dropped.
pub fn orthonormalize(m: &ComplexMatrix, tol: f64) -> ComplexMatrix {
    let rows = m.rows();
    let mut basis: Vec<Vec<Complex64>> = Vec::new();
    for j in 0..m.cols() {
        let mut v = m.column(j);
        let original = vec_norm(&v);
        if original == 0.0 {
            continue;
        }
        for _ in 0..2 {
            for b in &basis {
                let coeff = dot(b, &v);
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi -= coeff * bi;
                }
            }
        }
        let remaining = vec_norm(&v);
        if remaining <= tol * original {
            continue;
        }
        let inv = 1.0 / remaining;
        for vi in v.iter_mut() {
            *vi = vi.scale(inv);
        }
        basis.push(v);
    }
    let k = basis.len();
    ComplexMatrix::from_fn(rows, k, |i, j| basis[j][i])
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn vec_norm(v: &[Complex64]) -> f64 {
    fp::sqrt(v.iter().map(|z| z.norm_sqr()).sum())
}

/// Rotates each column so its largest-magnitude entry is real and positive.
/// Ties resolve to the lowest row index, making the result deterministic.
pub fn fix_column_phases(m: &mut ComplexMatrix) {
    for j in 0..m.cols() {
        let mut best = 0usize;
        let mut best_mag = 0.0f64;
        for i in 0..m.rows() {
            let mag = m[(i, j)].norm();
            if mag > best_mag {
                best_mag = mag;
                best = i;
            }
        }
        if best_mag == 0.0 {
            continue;
        }
        let factor = m[(best, j)].scale(1.0 / best_mag).conj();
        for i in 0..m.rows() {
            m[(i, j)] = m[(i, j)] * factor;
        }
    }
}

/// Singular values in descending order, obtained as the nonnegative spectrum
/// of the Hermitian embedding [[0, M], [M*, 0]]. The embedding route keeps
/// tiny singular values accurate, which the rank decisions depend on.
pub fn singular_values(m: &ComplexMatrix) -> Result<Vec<f64>> {
    let (r, c) = (m.rows(), m.cols());
    let k = r.min(c);
    if k == 0 {
        return Ok(Vec::new());
    }
    let dim = r + c;
    let emb = ComplexMatrix::from_fn(dim, dim, |i, j| {
        if i < r && j >= r {
            m[(i, j - r)]
        } else if i >= r && j < r {
            m[(j, i - r)].conj()
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let e = hermitian_eigen(&emb)?;
    Ok(e.eigenvalues[dim - k..]
        .iter()
        .rev()
        .map(|&w| w.max(0.0))
        .collect())
}

/// Largest singular value; zero for empty shapes.
pub fn operator_norm(m: &ComplexMatrix) -> Result<f64> {
    Ok(singular_values(m)?.first().copied().unwrap_or(0.0))
}

/// Number of singular values strictly above `threshold`.
pub fn rank_by_threshold(m: &ComplexMatrix, threshold: f64) -> Result<usize> {
    Ok(singular_values(m)?
        .iter()
        .filter(|&&s| s > threshold)
        .count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn singular_values_of_diagonal() {
        let m = ComplexMatrix::from_real(2, 2, &[3.0, 0.0, 0.0, 4.0]);
        let s = singular_values(&m).unwrap();
        assert!((s[0] - 4.0).abs() < 1e-13);
        assert!((s[1] - 3.0).abs() < 1e-13);
    }

    #[test]
    fn tall_matrix_single_value() {
        let m = ComplexMatrix::from_real(2, 1, &[3.0, 4.0]);
        let s = singular_values(&m).unwrap();
        assert_eq!(s.len(), 1);
        assert!((s[0] - 5.0).abs() < 1e-13);
    }

    #[test]
    fn frobenius_matches_singular_values() {
        let mut state = 0xc0ffeeu64;
        let mut next = move || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            ((state >> 11) as f64) / ((1u64 << 53) as f64) - 0.5
        };
        let m = ComplexMatrix::from_fn(5, 7, |_, _| c(next(), next()));
        let s = singular_values(&m).unwrap();
        let sum_sq: f64 = s.iter().map(|x| x * x).sum();
        assert!((sum_sq - m.frobenius_norm().powi(2)).abs() < 1e-12);
    }

    #[test]
    fn unitary_has_norm_one() {
        let t = core::f64::consts::FRAC_PI_6;
        let (s, cth) = (t.sin(), t.cos());
        let m = ComplexMatrix::from_real(2, 2, &[cth, -s, s, cth]);
        assert!((operator_norm(&m).unwrap() - 1.0).abs() < 1e-13);
    }

    #[test]
    fn orthonormalize_drops_dependent_columns() {
        let m = ComplexMatrix::from_real(3, 3, &[1.0, 2.0, 1.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0]);
        // Second column is twice the first.
        let q = orthonormalize(&m, 1e-10);
        assert_eq!(q.cols(), 2);
        let gram = q.adjoint_matmul(&q);
        assert!((&gram - &ComplexMatrix::identity(2)).frobenius_norm() < 1e-13);
    }

    #[test]
    fn orthonormalize_preserves_span() {
        let m = ComplexMatrix::new(
            3,
            2,
            vec![
                c(1.0, 1.0),
                c(0.5, 0.0),
                c(0.0, -2.0),
                c(1.0, 0.0),
                c(0.25, 0.25),
                c(0.0, 3.0),
            ],
        )
        .unwrap();
        let q = orthonormalize(&m, 1e-10);
        assert_eq!(q.cols(), 2);
        // Each original column must be reproduced by Q Q* applied to it.
        let proj = q.matmul_adjoint(&q);
        let replay = proj.matmul(&m);
        assert!((&replay - &m).frobenius_norm() < 1e-12);
    }

    #[test]
    fn phase_fix_makes_pivot_real_positive() {
        let mut m = ComplexMatrix::new(2, 1, vec![c(0.0, 2.0), c(1.0, 0.0)]).unwrap();
        fix_column_phases(&mut m);
        assert!((m[(0, 0)] - c(2.0, 0.0)).norm() < 1e-15);
        assert!((m[(1, 0)] - c(0.0, -1.0)).norm() < 1e-15);
        // Applying it again changes nothing.
        let before = m.clone();
        fix_column_phases(&mut m);
        assert!((&m - &before).frobenius_norm() == 0.0);
    }

    #[test]
    fn rank_counts_large_values() {
        let m = ComplexMatrix::from_real(3, 3, &[1.0, 0.0, 0.0, 0.0, 0.6, 0.0, 0.0, 0.0, 1e-12]);
        assert_eq!(rank_by_threshold(&m, 0.5).unwrap(), 2);
        assert_eq!(rank_by_threshold(&m, 1e-13).unwrap(), 3);
    }
}
