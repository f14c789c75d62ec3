//! Index of a projection pair: the kernel-dimension difference, which at
//! finite dimension always equals the trace of P − Q.

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::projection::OrthProjection;
use crate::subspaces::kernel_quadruple;
use crate::tolerance::ToleranceConfig;

/// Index data for a pair. `index = dim_ker − dim_coker`, the trace of
/// `P − Q` rounds to it, and a swap unitary exists exactly when it is zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IndexReport {
    pub dim_ker: usize,
    pub dim_coker: usize,
    pub index: i64,
    pub trace_pq: f64,
    pub swap_possible: bool,
}

/// Computes the index from the kernel dimensions and cross-checks it
/// against the trace of P − Q.
pub fn pair_index(
    p: &OrthProjection,
    q: &OrthProjection,
    tol: &ToleranceConfig,
) -> Result<IndexReport> {
    let quad = kernel_quadruple(p, q, tol)?;
    let (dim_ker, _, _, dim_coker) = quad.dims();
    let index = dim_ker as i64 - dim_coker as i64;
    let trace_pq = (p.matrix() - q.matrix()).trace().re;
    if (trace_pq - index as f64).abs() > tol.tol_resid {
        return Err(Error::NonIntegerTrace {
            trace: trace_pq,
            index,
        });
    }
    Ok(IndexReport {
        dim_ker,
        dim_coker,
        index,
        trace_pq,
        swap_possible: index == 0,
    })
}

/// Matrix of `x ↦ Q P x` as a map from ran P to ran Q, in the
/// phase-normalized range bases. Columns index the ran P basis, rows the
/// ran Q basis; its null space realizes `ran P ∩ ker Q` and the
/// orthocomplement of its range realizes `ker P ∩ ran Q`.
pub fn fredholm_map(p: &OrthProjection, q: &OrthProjection) -> Result<ComplexMatrix> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch {
            left: p.dim(),
            right: q.dim(),
        });
    }
    let fp = p.range_frame()?;
    let fq = q.range_frame()?;
    let image = q.matrix().matmul(&p.matrix().matmul(fp.matrix()));
    Ok(fq.matrix().adjoint_matmul(&image))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::orth::singular_values;
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
    fn complementary_ranks_give_nonzero_index() {
        let p = proj(&[1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0], 3);
        let q = proj(&[0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0], 3);
        let r = pair_index(&p, &q, &tol()).unwrap();
        assert_eq!(r.dim_ker, 2);
        assert_eq!(r.dim_coker, 1);
        assert_eq!(r.index, 1);
        assert!((r.trace_pq - 1.0).abs() < 1e-14);
        assert!(!r.swap_possible);

        // Swapping the arguments negates the index.
        let flipped = pair_index(&q, &p, &tol()).unwrap();
        assert_eq!(flipped.index, -1);
        assert!(flipped.trace_pq + r.trace_pq == 0.0);
    }

    #[test]
    fn equal_pair_has_zero_index() {
        let p = proj(&[1.0, 0.0, 0.0, 0.0], 2);
        let r = pair_index(&p, &p, &tol()).unwrap();
        assert_eq!(r.index, 0);
        assert_eq!(r.trace_pq, 0.0);
        assert!(r.swap_possible);
    }

    #[test]
    fn tilted_lines_have_zero_index() {
        let (p, q) = line_pair(core::f64::consts::FRAC_PI_3);
        let r = pair_index(&p, &q, &tol()).unwrap();
        assert_eq!((r.dim_ker, r.dim_coker), (0, 0));
        assert_eq!(r.index, 0);
        assert!(r.trace_pq.abs() < 1e-12);
        assert!(r.swap_possible);
    }

    #[test]
    fn perpendicular_lines_have_matching_kernels() {
        let p = proj(&[1.0, 0.0, 0.0, 0.0], 2);
        let q = proj(&[0.0, 0.0, 0.0, 1.0], 2);
        let r = pair_index(&p, &q, &tol()).unwrap();
        assert_eq!((r.dim_ker, r.dim_coker), (1, 1));
        assert_eq!(r.index, 0);
        assert!(r.swap_possible);
        let k = fredholm_map(&p, &q).unwrap();
        assert_eq!((k.rows(), k.cols()), (1, 1));
        assert!(k[(0, 0)].norm() < 1e-14);
    }

    #[test]
    fn overlap_map_entry_is_cosine() {
        let (p, q) = line_pair(core::f64::consts::FRAC_PI_3);
        let k = fredholm_map(&p, &q).unwrap();
        assert_eq!((k.rows(), k.cols()), (1, 1));
        assert!((k[(0, 0)].re - 0.5).abs() < 1e-12);
        assert!(k[(0, 0)].im.abs() < 1e-13);
    }

    #[test]
    fn identical_line_map_is_one() {
        let p = proj(&[1.0, 0.0, 0.0, 0.0], 2);
        let k = fredholm_map(&p, &p).unwrap();
        assert_eq!((k.rows(), k.cols()), (1, 1));
        assert!((k[(0, 0)].re - 1.0).abs() < 1e-13);
    }

    #[test]
    fn map_rank_matches_kernel_dimensions() {
        let p = proj(
            &[
                1.0, 0.0, 0.0, 0.0, //
                0.0, 1.0, 0.0, 0.0, //
                0.0, 0.0, 0.0, 0.0, //
                0.0, 0.0, 0.0, 0.0,
            ],
            4,
        );
        let q = proj(
            &[
                1.0, 0.0, 0.0, 0.0, //
                0.0, 0.0, 0.0, 0.0, //
                0.0, 0.0, 0.5, 0.5, //
                0.0, 0.0, 0.5, 0.5,
            ],
            4,
        );
        let quad = kernel_quadruple(&p, &q, &tol()).unwrap();
        let dims = quad.dims();
        let k = fredholm_map(&p, &q).unwrap();
        assert_eq!((k.rows(), k.cols()), (2, 2));
        let rank = singular_values(&k)
            .unwrap()
            .iter()
            .filter(|&&s| s > tol().tol_spec)
            .count();
        assert_eq!(k.cols() - rank, dims.0);
        assert_eq!(k.rows() - rank, dims.3);
        let report = pair_index(&p, &q, &tol()).unwrap();
        assert_eq!(report.index, 0);
        assert_eq!(report.dim_ker, 1);
        assert_eq!(report.dim_coker, 1);
    }

    #[test]
    fn trace_drift_outside_tolerance_is_reported() {
        let theta = core::f64::consts::FRAC_PI_3;
        let (s, c) = (theta.sin(), theta.cos());
        let delta = 5e-11;
        let p = proj(&[1.0, 0.0, 0.0, 0.0], 2);
        let q = proj(&[c * c + delta, c * s, c * s, s * s], 2);
        let strict = ToleranceConfig {
            tol_resid: 1e-12,
            ..ToleranceConfig::default()
        };
        let err = pair_index(&p, &q, &strict).unwrap_err();
        match err {
            Error::NonIntegerTrace { trace, index } => {
                assert_eq!(index, 0);
                assert!((trace + delta).abs() < 1e-13);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let p = proj(&[1.0, 0.0, 0.0, 0.0], 2);
        let q = proj(&[1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0], 3);
        assert!(matches!(
            fredholm_map(&p, &q),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            pair_index(&p, &q, &tol()),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn map_is_zero_only_on_kernel_directions() {
        let (p, q) = line_pair(core::f64::consts::FRAC_PI_4);
        let k = fredholm_map(&p, &q).unwrap();
        let s = singular_values(&k).unwrap();
        assert_eq!(s.len(), 1);
        assert!((s[0] - core::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
    }
}
