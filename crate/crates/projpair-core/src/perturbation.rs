//! Spectral projections by contour quadrature and the reduction of local
//! eigenvalue tracking to one fixed finite block.
//!
//! The projection onto the eigenspace group enclosed by a circle is the
//! contour integral of the resolvent, approximated here by the trapezoidal
//! rule with node doubling. For a matrix family `f(z)`, conjugating by the
//! similarity that carries `ran P(z)` onto `ran P(0)` pins the enclosed
//! eigenvalues inside a block on the z-independent space `ran P(0)`.

use alloc::boxed::Box;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fp;
use crate::kato::{oblique_similarity, validate_oblique};
use crate::linalg::eigenvalues::general_eigenvalues;
use crate::linalg::hermitian::hermitian_eigen;
use crate::linalg::{lu, orth};
use crate::matrix::ComplexMatrix;
use crate::projection::Frame;
use crate::tolerance::ToleranceConfig;
use crate::Complex64;

/// Largest node count the refinement loop may reach.
const NODE_CAP: usize = 1 << 16;

/// Circle `|λ − center| = radius` sampled at a power-of-two number of
/// equispaced nodes, so each refinement reuses every earlier resolvent
/// evaluation.
#[derive(Debug, Clone, Copy)]
pub struct ContourSpec {
    center: Complex64,
    radius: f64,
    nodes: usize,
}

impl ContourSpec {
    pub fn new(center: Complex64, radius: f64, nodes: usize) -> Result<Self> {
        if !(center.re.is_finite() && center.im.is_finite()) {
            return Err(Error::InvalidContour {
                reason: "center must be finite",
            });
        }
        if !radius.is_finite() || radius <= 0.0 {
            return Err(Error::InvalidContour {
                reason: "radius must be positive and finite",
            });
        }
        if nodes < 8 || !nodes.is_power_of_two() {
            return Err(Error::InvalidContour {
                reason: "node count must be a power of two, at least 8",
            });
        }
        if nodes > NODE_CAP / 2 {
            return Err(Error::InvalidContour {
                reason: "node count leaves no room for refinement below the cap",
            });
        }
        Ok(Self {
            center,
            radius,
            nodes,
        })
    }

    pub fn center(&self) -> Complex64 {
        self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }

    /// Distance from a point to the contour circle.
    pub fn distance(&self, z: Complex64) -> f64 {
        let offset = z - self.center;
        (fp::hypot(offset.re, offset.im) - self.radius).abs()
    }

    /// Whether a point lies strictly inside the circle.
    pub fn encloses(&self, z: Complex64) -> bool {
        let offset = z - self.center;
        fp::hypot(offset.re, offset.im) < self.radius
    }
}

/// Quadrature approximation of the projection onto the enclosed eigenspace
/// group, together with its refinement record. The matrix commutes with the
/// input and is idempotent but generally not Hermitian.
#[derive(Debug, Clone)]
pub struct RieszProjection {
    matrix: ComplexMatrix,
    nodes_used: usize,
    history: Vec<(usize, f64)>,
    idempotency_residual: f64,
    commutator_residual: f64,
}

impl RieszProjection {
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn nodes_used(&self) -> usize {
        self.nodes_used
    }

    /// One `(node count, deviation from previous level)` entry per doubling.
    pub fn history(&self) -> &[(usize, f64)] {
        &self.history
    }

    pub fn idempotency_residual(&self) -> f64 {
        self.idempotency_residual
    }

    pub fn commutator_residual(&self) -> f64 {
        self.commutator_residual
    }

    /// Dimension of the enclosed spectral subspace. Nonzero singular values
    /// of an idempotent are at least 1, so the 1/2 cut is unambiguous.
    pub fn rank(&self) -> Result<usize> {
        orth::rank_by_threshold(&self.matrix, 0.5)
    }
}

/// Sum of `e^{iφ_j} (λ_j − m)^{−1}` over contour nodes at the given
/// resolution; `odd_only` restricts to the nodes a doubling just added.
fn resolvent_sum(
    m: &ComplexMatrix,
    contour: &ContourSpec,
    resolution: usize,
    odd_only: bool,
) -> Result<ComplexMatrix> {
    let n = m.rows();
    let id = ComplexMatrix::identity(n);
    let mut sum = ComplexMatrix::zeros(n, n);
    let start = usize::from(odd_only);
    let step = if odd_only { 2 } else { 1 };
    let mut j = start;
    while j < resolution {
        let phi = core::f64::consts::TAU * j as f64 / resolution as f64;
        let (s, c) = fp::sin_cos(phi);
        let direction = Complex64::new(c, s);
        let lambda = contour.center + direction.scale(contour.radius);
        let inverse = lu::inverse(&(&id.scale(lambda) - m))?;
        sum = &sum + &inverse.scale(direction);
        j += step;
    }
    Ok(sum)
}

/// Trapezoidal approximation of `(1/2πi) ∮ (λ − m)^{−1} dλ` over the given
/// circle, with nodes doubled until two successive levels agree to
/// `quad_tol` in Frobenius norm.
pub fn riesz_projection(
    m: &ComplexMatrix,
    contour: &ContourSpec,
    tol: &ToleranceConfig,
) -> Result<RieszProjection> {
    tol.validated()?;
    m.require_square()?;
    let margin = tol.tol_spec * (1.0 + fp::hypot(contour.center.re, contour.center.im) + contour.radius);
    for ev in general_eigenvalues(m)? {
        let distance = contour.distance(ev);
        if distance <= margin {
            return Err(Error::EigenvalueOnContour {
                re: ev.re,
                im: ev.im,
                distance,
            });
        }
    }

    let mut resolution = contour.nodes;
    let mut raw = resolvent_sum(m, contour, resolution, false)?;
    let mut approx = raw.scale_re(contour.radius / resolution as f64);
    let mut history = Vec::new();
    let matrix = loop {
        resolution *= 2;
        raw = &raw + &resolvent_sum(m, contour, resolution, true)?;
        let refined = raw.scale_re(contour.radius / resolution as f64);
        let deviation = (&refined - &approx).frobenius_norm();
        history.push((resolution, deviation));
        approx = refined;
        if deviation <= tol.quad_tol {
            break approx;
        }
        if resolution >= NODE_CAP {
            return Err(Error::QuadratureNotConverged {
                nodes: resolution,
                deviation,
            });
        }
    };

    let idempotency_residual = (&matrix.matmul(&matrix) - &matrix).frobenius_norm();
    let commutator_residual = (&m.matmul(&matrix) - &matrix.matmul(m)).frobenius_norm();
    Ok(RieszProjection {
        matrix,
        nodes_used: resolution,
        history,
        idempotency_residual,
        commutator_residual,
    })
}

/// Square-matrix-valued function of one complex parameter with a declared
/// fixed dimension.
pub struct MatrixFamily {
    dim: usize,
    evaluator: Box<dyn Fn(Complex64) -> ComplexMatrix>,
}

impl core::fmt::Debug for MatrixFamily {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("MatrixFamily")
            .field("dim", &self.dim)
            .finish_non_exhaustive()
    }
}

impl MatrixFamily {
    pub fn new(dim: usize, evaluator: impl Fn(Complex64) -> ComplexMatrix + 'static) -> Self {
        Self {
            dim,
            evaluator: Box::new(evaluator),
        }
    }

    /// Polynomial family `Σ zʲ Cⱼ` from its coefficient list, constant term
    /// first. All coefficients must be square and share one dimension.
    pub fn from_coefficients(coefficients: Vec<ComplexMatrix>) -> Result<Self> {
        let dim = match coefficients.first() {
            Some(first) => first.require_square()?,
            None => {
                return Err(Error::ShapeMismatch {
                    expected: 1,
                    got: 0,
                })
            }
        };
        for c in &coefficients {
            let d = c.require_square()?;
            if d != dim {
                return Err(Error::DimensionMismatch { left: dim, right: d });
            }
        }
        Ok(Self::new(dim, move |z| {
            let mut acc = ComplexMatrix::zeros(dim, dim);
            for c in coefficients.iter().rev() {
                acc = &acc.scale(z) + c;
            }
            acc
        }))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Evaluates the family, checking the declared shape.
    pub fn eval(&self, z: Complex64) -> Result<ComplexMatrix> {
        let m = (self.evaluator)(z);
        if m.rows() != self.dim || m.cols() != self.dim {
            let off = if m.rows() != self.dim { m.rows() } else { m.cols() };
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: off,
            });
        }
        Ok(m)
    }
}

/// The enclosed-spectrum block of a conjugated family member, expressed on
/// an orthonormal frame of the unperturbed spectral subspace. Its
/// eigenvalues are the eigenvalues of `f(z)` inside the contour.
#[derive(Debug, Clone)]
pub struct ReducedBlock {
    pub block: ComplexMatrix,
    pub frame: Frame,
}

/// Orthonormal basis of `ran p` for an idempotent `p`, read off the
/// eigenvectors of `p p*`. Eigenvalues of `p p*` are squared singular
/// values, hence 0 or at least 1; the 1/4 cut matches the rank threshold.
fn oblique_range_frame(p: &ComplexMatrix) -> Result<Frame> {
    let eig = hermitian_eigen(&p.matmul_adjoint(p))?;
    let picked: Vec<usize> = eig
        .eigenvalues
        .iter()
        .enumerate()
        .filter(|(_, &w)| w > 0.25)
        .map(|(i, _)| i)
        .collect();
    let mut mat = eig.vectors.select_columns(&picked);
    orth::fix_column_phases(&mut mat);
    Ok(Frame::new_unchecked(mat))
}

/// Evaluates the family at `0` and `z`, builds both contour projections,
/// conjugates `f(z)` by the similarity `W` with `W P(z) = P(0) W`, and
/// compresses the result to a frame of `ran P(0)`.
pub fn reduce_family(
    family: &MatrixFamily,
    z: Complex64,
    contour: &ContourSpec,
    tol: &ToleranceConfig,
) -> Result<ReducedBlock> {
    tol.validated()?;
    let m0 = family.eval(Complex64::new(0.0, 0.0))?;
    let mz = family.eval(z)?;
    let r0 = riesz_projection(&m0, contour, tol)?;
    let rz = riesz_projection(&mz, contour, tol)?;
    let rank_at_zero = r0.rank()?;
    let rank_at_z = rz.rank()?;
    if rank_at_zero != rank_at_z {
        return Err(Error::RankChanged {
            rank_at_zero,
            rank_at_z,
        });
    }

    // Quadrature output carries noise on the order of quad_tol, so
    // idempotency is held to the residual tolerance here instead of the
    // stricter input-validation tolerance.
    let mut relaxed = *tol;
    relaxed.tol_idem = relaxed.tol_idem.max(relaxed.tol_resid);
    let pz = validate_oblique(rz.matrix(), &relaxed)?;
    let p0 = validate_oblique(r0.matrix(), &relaxed)?;

    let w = oblique_similarity(&pz, &p0, tol)?;
    let w_inv = lu::inverse(&w)?;
    let conjugated = w.matmul(&mz).matmul(&w_inv);

    let frame = oblique_range_frame(r0.matrix())?;
    let block = frame
        .matrix()
        .adjoint_matmul(&conjugated.matmul(frame.matrix()));
    Ok(ReducedBlock { block, frame })
}
