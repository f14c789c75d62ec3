//! The four invariant subspaces cut out by a pair of projections, the split
//! into degenerate and generic parts, and principal angles.
//!
//! Everything is read off two Hermitian spectra: the difference `A = P - Q`
//! (eigenvalue +1 exactly on `ran P ∩ ker Q`, -1 on `ker P ∩ ran Q`) and the
//! sum `P + Q` (eigenvalue 2 on `ran P ∩ ran Q`, 0 on `ker P ∩ ker Q`).

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fp;
use crate::linalg::hermitian::{hermitian_eigen, HermitianEigen};
use crate::linalg::orth;
use crate::matrix::ComplexMatrix;
use crate::projection::{validate_projection, Frame, OrthProjection};
use crate::tolerance::ToleranceConfig;

/// Orthonormal bases of the four intersections, mutually orthogonal.
#[derive(Debug, Clone)]
pub struct KernelQuadruple {
    /// `ran P ∩ ker Q`: vectors kept by P and annihilated by Q.
    pub k_pq: Frame,
    /// `ran P ∩ ran Q`: vectors kept by both.
    pub k_p_1q: Frame,
    /// `ker P ∩ ker Q`: vectors annihilated by both.
    pub k_1p_q: Frame,
    /// `ker P ∩ ran Q`: vectors annihilated by P and kept by Q.
    pub k_1p_1q: Frame,
}

impl KernelQuadruple {
    pub fn dims(&self) -> (usize, usize, usize, usize) {
        (
            self.k_pq.count(),
            self.k_p_1q.count(),
            self.k_1p_q.count(),
            self.k_1p_1q.count(),
        )
    }

    /// Ambient dimension minus the four intersection dimensions.
    pub fn generic_dim(&self, ambient: usize) -> usize {
        let (a, b, c, d) = self.dims();
        ambient - a - b - c - d
    }
}

/// Splitting of the space into the part where `A = P - Q` acts as ±1
/// (`h1`, the two swap-relevant kernels) and its orthogonal complement
/// (`h2`), with both projections compressed to `h2`.
#[derive(Debug, Clone)]
pub struct HalmosSplit {
    pub h1_frame: Frame,
    pub h2_frame: Frame,
    pub p2: OrthProjection,
    pub q2: OrthProjection,
}

fn require_same_dim(p: &OrthProjection, q: &OrthProjection) -> Result<usize> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch {
            left: p.dim(),
            right: q.dim(),
        });
    }
    Ok(p.dim())
}

/// Eigenvalues strictly between the bins must stay well clear of them;
/// one inside the gray band `(tol_spec, 10 tol_spec]` means the
/// classification is not trustworthy.
fn check_bin_margins(eigenvalues: &[f64], bins: &[f64], tol_spec: f64) -> Result<()> {
    for &w in eigenvalues {
        for &bin in bins {
            let dist = (w - bin).abs();
            if dist > tol_spec && dist <= 10.0 * tol_spec {
                return Err(Error::AmbiguousSpectrum {
                    eigenvalue: w,
                    bin,
                });
            }
        }
    }
    Ok(())
}

fn bin_members(eigenvalues: &[f64], bin: f64, tol_spec: f64) -> Vec<usize> {
    eigenvalues
        .iter()
        .enumerate()
        .filter(|(_, &w)| (w - bin).abs() <= tol_spec)
        .map(|(i, _)| i)
        .collect()
}

fn frame_from_columns(eig: &HermitianEigen, idx: &[usize]) -> Frame {
    let mut mat = eig.vectors.select_columns(idx);
    orth::fix_column_phases(&mut mat);
    Frame::new_unchecked(mat)
}

fn difference_eigen(p: &OrthProjection, q: &OrthProjection) -> Result<HermitianEigen> {
    hermitian_eigen(&(p.matrix() - q.matrix()))
}

/// Bases for the four intersections. Eigenvalue `w` lands in a bin `m` iff
/// `|w - m| <= tol_spec`; near misses raise `AmbiguousSpectrum`.
pub fn kernel_quadruple(
    p: &OrthProjection,
    q: &OrthProjection,
    tol: &ToleranceConfig,
) -> Result<KernelQuadruple> {
    require_same_dim(p, q)?;
    let diff = difference_eigen(p, q)?;
    let sum = hermitian_eigen(&(p.matrix() + q.matrix()))?;
    check_bin_margins(&diff.eigenvalues, &[-1.0, 1.0], tol.tol_spec)?;
    check_bin_margins(&sum.eigenvalues, &[0.0, 2.0], tol.tol_spec)?;

    let k_pq = frame_from_columns(&diff, &bin_members(&diff.eigenvalues, 1.0, tol.tol_spec));
    let k_1p_1q = frame_from_columns(&diff, &bin_members(&diff.eigenvalues, -1.0, tol.tol_spec));
    let k_p_1q = frame_from_columns(&sum, &bin_members(&sum.eigenvalues, 2.0, tol.tol_spec));
    let k_1p_q = frame_from_columns(&sum, &bin_members(&sum.eigenvalues, 0.0, tol.tol_spec));

    Ok(KernelQuadruple {
        k_pq,
        k_p_1q,
        k_1p_q,
        k_1p_1q,
    })
}

/// Splits off the ±1 eigenspaces of `A = P - Q` and compresses both
/// projections to the complement, where the difference is a strict
/// contraction.
pub fn halmos_split(
    p: &OrthProjection,
    q: &OrthProjection,
    tol: &ToleranceConfig,
) -> Result<HalmosSplit> {
    require_same_dim(p, q)?;
    let diff = difference_eigen(p, q)?;
    check_bin_margins(&diff.eigenvalues, &[-1.0, 1.0], tol.tol_spec)?;

    let mut h1_idx = Vec::new();
    let mut h2_idx = Vec::new();
    for (i, &w) in diff.eigenvalues.iter().enumerate() {
        if (w - 1.0).abs() <= tol.tol_spec || (w + 1.0).abs() <= tol.tol_spec {
            h1_idx.push(i);
        } else {
            h2_idx.push(i);
        }
    }
    let h1_frame = frame_from_columns(&diff, &h1_idx);
    let h2_frame = frame_from_columns(&diff, &h2_idx);

    let p2 = compress(p.matrix(), h2_frame.matrix(), tol)?;
    let q2 = compress(q.matrix(), h2_frame.matrix(), tol)?;

    Ok(HalmosSplit {
        h1_frame,
        h2_frame,
        p2,
        q2,
    })
}

fn compress(m: &ComplexMatrix, frame: &ComplexMatrix, tol: &ToleranceConfig) -> Result<OrthProjection> {
    let small = frame.adjoint_matmul(&m.matmul(frame)).hermitian_part();
    validate_projection(&small, tol)
}

/// Sorted angles in `(0, π/2)` between `ran P` and `ran Q` on the part of the
/// space where the pair is in general position. Each planar block of the pair
/// contributes eigenvalues `±sin θ` to `A = P - Q`, so the spectrum away
/// from {-1, 0, +1} comes in pairs of equal magnitude.
pub fn principal_angles(
    p: &OrthProjection,
    q: &OrthProjection,
    tol: &ToleranceConfig,
) -> Result<Vec<f64>> {
    require_same_dim(p, q)?;
    let diff = difference_eigen(p, q)?;
    let mut magnitudes: Vec<f64> = diff
        .eigenvalues
        .iter()
        .map(|&w| w.abs())
        .filter(|&m| m > tol.tol_spec && (m - 1.0).abs() > tol.tol_spec)
        .collect();
    if magnitudes.len() % 2 != 0 {
        return Err(Error::OddGenericDimension {
            dim: magnitudes.len(),
        });
    }
    magnitudes.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let angles = magnitudes
        .chunks_exact(2)
        .map(|pair| {
            let s = 0.5 * (pair[0] + pair[1]);
            fp::asin(s.clamp(0.0, 1.0))
        })
        .collect();
    Ok(angles)
}
