//! LU factorization with partial pivoting for complex matrices.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::Complex64;

/// Row-pivoted factorization `P A = L U` stored compactly.
#[derive(Debug, Clone)]
pub struct LuFactors {
    lu: ComplexMatrix,
    perm: Vec<usize>,
    sign: f64,
    singular: bool,
}

/// Factors a square matrix. Singularity is only reported when a solve or
/// inverse is requested, so determinants of singular matrices still work.
pub fn lu_factor(a: &ComplexMatrix) -> Result<LuFactors> {
    let n = a.require_square()?;
    let mut lu = a.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut sign = 1.0;
    let mut singular = false;

    for k in 0..n {
        let mut pivot_row = k;
        let mut pivot_mag = lu[(k, k)].norm();
        for i in k + 1..n {
            let mag = lu[(i, k)].norm();
            if mag > pivot_mag {
                pivot_mag = mag;
                pivot_row = i;
            }
        }
        if pivot_mag == 0.0 {
            singular = true;
            continue;
        }
        if pivot_row != k {
            lu.swap_rows(pivot_row, k);
            perm.swap(pivot_row, k);
            sign = -sign;
        }
        let pivot = lu[(k, k)];
        for i in k + 1..n {
            let factor = lu[(i, k)] / pivot;
            lu[(i, k)] = factor;
            for j in k + 1..n {
                let delta = factor * lu[(k, j)];
                lu[(i, j)] -= delta;
            }
        }
    }

    Ok(LuFactors { lu, perm, sign, singular })
}

impl LuFactors {
    pub fn is_singular(&self) -> bool {
        self.singular
    }

    pub fn determinant(&self) -> Complex64 {
        let n = self.lu.rows();
        let mut det = Complex64::new(self.sign, 0.0);
        for k in 0..n {
            det *= self.lu[(k, k)];
        }
        det
    }

    /// Smallest pivot magnitude, a cheap conditioning proxy.
    pub fn min_pivot(&self) -> f64 {
        let n = self.lu.rows();
        let mut m = f64::INFINITY;
        for k in 0..n {
            m = m.min(self.lu[(k, k)].norm());
        }
        if n == 0 {
            0.0
        } else {
            m
        }
    }

    /// Solves `A X = B` for every column of `B`.
    pub fn solve(&self, b: &ComplexMatrix) -> Result<ComplexMatrix> {
        let n = self.lu.rows();
        if b.rows() != n {
            return Err(Error::ShapeMismatch {
                expected: n,
                got: b.rows(),
            });
        }
        if self.singular {
            return Err(Error::SingularSystem {
                min_pivot: self.min_pivot(),
            });
        }
        let cols = b.cols();
        let mut x = ComplexMatrix::zeros(n, cols);
        for j in 0..cols {
            for i in 0..n {
                x[(i, j)] = b[(self.perm[i], j)];
            }
        }
        // Forward substitution with unit lower triangle.
        for k in 0..n {
            for i in k + 1..n {
                let f = self.lu[(i, k)];
                for j in 0..cols {
                    let delta = f * x[(k, j)];
                    x[(i, j)] -= delta;
                }
            }
        }
        // Back substitution with the upper triangle.
        for k in (0..n).rev() {
            let pivot = self.lu[(k, k)];
            for j in 0..cols {
                x[(k, j)] /= pivot;
            }
            for i in 0..k {
                let f = self.lu[(i, k)];
                for j in 0..cols {
                    let delta = f * x[(k, j)];
                    x[(i, j)] -= delta;
                }
            }
        }
        Ok(x)
    }

    pub fn inverse(&self) -> Result<ComplexMatrix> {
        self.solve(&ComplexMatrix::identity(self.lu.rows()))
    }
}

/// One-shot `A X = B`.
pub fn solve(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    lu_factor(a)?.solve(b)
}

/// One-shot inverse.
pub fn inverse(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    lu_factor(a)?.inverse()
}

/// One-shot determinant.
pub fn determinant(a: &ComplexMatrix) -> Result<Complex64> {
    Ok(lu_factor(a)?.determinant())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn solves_real_system() {
        let a = ComplexMatrix::from_real(2, 2, &[2.0, 1.0, 1.0, 3.0]);
        let b = ComplexMatrix::from_real(2, 1, &[5.0, 10.0]);
        let x = solve(&a, &b).unwrap();
        assert!((x[(0, 0)].re - 1.0).abs() < 1e-14);
        assert!((x[(1, 0)].re - 3.0).abs() < 1e-14);
    }

    #[test]
    fn inverse_round_trip_complex() {
        let a = ComplexMatrix::new(
            3,
            3,
            vec![
                c(1.0, 1.0),
                c(0.0, 2.0),
                c(3.0, 0.0),
                c(0.5, -1.0),
                c(2.0, 0.0),
                c(0.0, 0.0),
                c(0.0, 0.0),
                c(1.0, 0.0),
                c(4.0, -2.0),
            ],
        )
        .unwrap();
        let inv = inverse(&a).unwrap();
        let prod = a.matmul(&inv);
        assert!((&prod - &ComplexMatrix::identity(3)).frobenius_norm() < 1e-13);
    }

    #[test]
    fn determinant_of_triangular() {
        let a = ComplexMatrix::from_real(3, 3, &[2.0, 5.0, 1.0, 0.0, 3.0, 7.0, 0.0, 0.0, -4.0]);
        let d = determinant(&a).unwrap();
        assert!((d.re + 24.0).abs() < 1e-13);
        assert!(d.im.abs() < 1e-13);
    }

    #[test]
    fn pivoting_sign_flips_determinant() {
        // Permutation matrix swapping two rows has determinant -1.
        let a = ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]);
        let d = determinant(&a).unwrap();
        assert!((d.re + 1.0).abs() < 1e-14);
    }

    #[test]
    fn singular_matrix_reports() {
        let a = ComplexMatrix::from_real(2, 2, &[1.0, 2.0, 2.0, 4.0]);
        let f = lu_factor(&a).unwrap();
        assert!(f.is_singular());
        assert!(f.determinant().norm() < 1e-14);
        assert!(f.solve(&ComplexMatrix::identity(2)).is_err());
    }

    #[test]
    fn empty_system() {
        let a = ComplexMatrix::zeros(0, 0);
        let x = solve(&a, &ComplexMatrix::zeros(0, 0)).unwrap();
        assert!(x.is_empty());
    }
}
