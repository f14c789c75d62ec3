//! Seeded generation of projection pairs with prescribed ranks and
//! prescribed dimensions for the two deciding kernel intersections.
//!
//! A pair decomposes into one-dimensional blocks where each projection acts
//! as 0 or 1 and two-dimensional blocks carrying one principal angle. The
//! generator assembles exactly that structure and hides it behind a seeded
//! random unitary, so every requested combination is realized exactly and
//! reproducibly.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use projpair_core::linalg::orth::orthonormalize;
use projpair_core::{
    validate_projection, Complex64, ComplexMatrix, OrthProjection, ToleranceConfig,
};

use crate::error::CliError;

/// Smallest and largest principal angle the generator will emit. Both ends
/// keep the difference and sum spectra clear of the 0 and ±1 decision bins.
pub const MIN_ANGLE: f64 = 0.05;
pub const MAX_ANGLE: f64 = std::f64::consts::FRAC_PI_2 - 0.05;

const DIM_CAP: usize = 1024;

#[derive(Debug, Clone, Copy)]
pub struct PairSpec {
    pub dim: usize,
    pub rank_p: usize,
    pub rank_q: usize,
    /// Requested dim (ran P ∩ ker Q).
    pub dim_ker: usize,
    /// Requested dim (ker P ∩ ran Q).
    pub dim_coker: usize,
    pub seed: u64,
    /// Upper bound for the sampled principal angles; `None` means the full
    /// generic range.
    pub max_angle: Option<f64>,
}

/// A generated pair plus the hidden structure it was assembled from.
#[derive(Debug, Clone)]
pub struct GeneratedPair {
    pub p: OrthProjection,
    pub q: OrthProjection,
    /// dim (ran P ∩ ran Q).
    pub shared_range: usize,
    /// dim (ker P ∩ ker Q).
    pub shared_kernel: usize,
    /// Principal angles of the two-dimensional blocks, one per block.
    pub angles: Vec<f64>,
}

struct Layout {
    shared_range: usize,
    generic: usize,
    shared_kernel: usize,
}

fn infeasible(reason: String) -> CliError {
    CliError::Infeasible { reason }
}

/// Checks the dimension bookkeeping and picks how the non-kernel rank is
/// split between shared range directions and angle blocks.
fn solve_layout(spec: &PairSpec, rng: &mut ChaCha8Rng) -> Result<Layout, CliError> {
    let n = spec.dim;
    if n == 0 || n > DIM_CAP {
        return Err(infeasible(format!("dimension {n} outside 1..={DIM_CAP}")));
    }
    if spec.rank_p > n || spec.rank_q > n {
        return Err(infeasible(format!(
            "ranks {}/{} exceed dimension {n}",
            spec.rank_p, spec.rank_q
        )));
    }
    if spec.dim_ker > spec.rank_p {
        return Err(infeasible(format!(
            "kernel dimension {} exceeds rank {}",
            spec.dim_ker, spec.rank_p
        )));
    }
    if spec.dim_coker > spec.rank_q {
        return Err(infeasible(format!(
            "cokernel dimension {} exceeds rank {}",
            spec.dim_coker, spec.rank_q
        )));
    }
    let m_p = spec.rank_p - spec.dim_ker;
    let m_q = spec.rank_q - spec.dim_coker;
    if m_p != m_q {
        return Err(infeasible(format!(
            "rank minus kernel must agree on both sides: {m_p} vs {m_q}"
        )));
    }
    if spec.dim_ker + spec.dim_coker + m_p > n {
        return Err(infeasible(format!(
            "kernels plus coupled rank need {} dimensions, only {n} available",
            spec.dim_ker + spec.dim_coker + m_p
        )));
    }
    let headroom = n - spec.dim_ker - spec.dim_coker - m_p;
    let generic = rng.gen_range(0..=m_p.min(headroom));
    let shared_range = m_p - generic;
    let shared_kernel = headroom - generic;
    Ok(Layout {
        shared_range,
        generic,
        shared_kernel,
    })
}

fn sample_angles(
    count: usize,
    max_angle: Option<f64>,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<f64>, CliError> {
    let hi = max_angle.unwrap_or(MAX_ANGLE);
    if !(hi > MIN_ANGLE && hi <= MAX_ANGLE) {
        return Err(infeasible(format!(
            "max angle {hi} outside ({MIN_ANGLE}, {MAX_ANGLE}]"
        )));
    }
    Ok((0..count).map(|_| rng.gen_range(MIN_ANGLE..hi)).collect())
}

/// Haar-like random unitary: orthonormalized complex Gaussian columns. The
/// entry order is fixed, so the result depends only on the rng state.
fn random_unitary(n: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    loop {
        let g = ComplexMatrix::from_fn(n, n, |_, _| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            Complex64::new(re, im)
        });
        let u = orthonormalize(&g, 1e-8);
        if u.cols() == n {
            return u;
        }
    }
}

pub fn generate_pair(spec: &PairSpec, tol: &ToleranceConfig) -> Result<GeneratedPair, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let layout = solve_layout(spec, &mut rng)?;
    let angles = sample_angles(layout.generic, spec.max_angle, &mut rng)?;

    let n = spec.dim;
    let mut p0 = ComplexMatrix::zeros(n, n);
    let mut q0 = ComplexMatrix::zeros(n, n);
    let one = Complex64::new(1.0, 0.0);
    let mut at = 0usize;
    for _ in 0..spec.dim_ker {
        p0[(at, at)] = one;
        at += 1;
    }
    for _ in 0..spec.dim_coker {
        q0[(at, at)] = one;
        at += 1;
    }
    for _ in 0..layout.shared_range {
        p0[(at, at)] = one;
        q0[(at, at)] = one;
        at += 1;
    }
    at += layout.shared_kernel;
    for &theta in &angles {
        let (s, c) = theta.sin_cos();
        p0[(at, at)] = one;
        q0[(at, at)] = Complex64::new(c * c, 0.0);
        q0[(at, at + 1)] = Complex64::new(c * s, 0.0);
        q0[(at + 1, at)] = Complex64::new(c * s, 0.0);
        q0[(at + 1, at + 1)] = Complex64::new(s * s, 0.0);
        at += 2;
    }
    debug_assert_eq!(at, n);

    let v = random_unitary(n, &mut rng);
    let p_mat = v.matmul(&p0).matmul_adjoint(&v).hermitian_part();
    let q_mat = v.matmul(&q0).matmul_adjoint(&v).hermitian_part();
    let p = validate_projection(&p_mat, tol)?;
    let q = validate_projection(&q_mat, tol)?;
    Ok(GeneratedPair {
        p,
        q,
        shared_range: layout.shared_range,
        shared_kernel: layout.shared_kernel,
        angles,
    })
}

/// A feasible spec drawn uniformly for the given dimension: ranks are free
/// and the kernel dimensions are balanced against them, so sweeping seeds
/// covers every structural combination.
pub fn sampled_spec(dim: usize, seed: u64) -> PairSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rank_p = rng.gen_range(0..=dim);
    let rank_q = rng.gen_range(0..=dim);
    let coupled_min = (rank_p + rank_q).saturating_sub(dim);
    let coupled_max = rank_p.min(rank_q);
    let coupled = rng.gen_range(coupled_min..=coupled_max);
    PairSpec {
        dim,
        rank_p,
        rank_q,
        dim_ker: rank_p - coupled,
        dim_coker: rank_q - coupled,
        seed,
        max_angle: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use projpair_core::operator_norm;
    use projpair_core::subspaces::kernel_quadruple;

    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn spec(dim: usize, r: usize, s: usize, a: usize, b: usize, seed: u64) -> PairSpec {
        PairSpec {
            dim,
            rank_p: r,
            rank_q: s,
            dim_ker: a,
            dim_coker: b,
            seed,
            max_angle: None,
        }
    }

    #[test]
    fn requested_structure_is_realized() {
        let g = generate_pair(&spec(7, 3, 4, 1, 2, 42), &tol()).unwrap();
        assert_eq!(g.p.rank(), 3);
        assert_eq!(g.q.rank(), 4);
        let quad = kernel_quadruple(&g.p, &g.q, &tol()).unwrap();
        let (a, c, d, b) = quad.dims();
        assert_eq!(a, 1);
        assert_eq!(b, 2);
        assert_eq!(c, g.shared_range);
        assert_eq!(d, g.shared_kernel);
        assert_eq!(quad.generic_dim(7), 2 * g.angles.len());
    }

    #[test]
    fn same_seed_reproduces_bitwise() {
        let s = spec(6, 3, 3, 1, 1, 7);
        let g1 = generate_pair(&s, &tol()).unwrap();
        let g2 = generate_pair(&s, &tol()).unwrap();
        assert_eq!(g1.p.matrix(), g2.p.matrix());
        assert_eq!(g1.q.matrix(), g2.q.matrix());
        let g3 = generate_pair(&spec(6, 3, 3, 1, 1, 8), &tol()).unwrap();
        assert_ne!(g1.p.matrix(), g3.p.matrix());
    }

    #[test]
    fn unbalanced_kernels_are_infeasible() {
        // rank_p - dim_ker = 2 but rank_q - dim_coker = 1.
        let err = generate_pair(&spec(6, 3, 2, 1, 1, 0), &tol()).unwrap_err();
        assert_eq!(err.exit_code(), 4);
        assert_eq!(err.code_name(), "InfeasibleSpec");
        // Kernels alone already exceed the space.
        assert!(generate_pair(&spec(3, 3, 3, 3, 3, 0), &tol()).is_err());
        // Rank larger than the dimension.
        assert!(generate_pair(&spec(2, 3, 1, 0, 0, 0), &tol()).is_err());
    }

    #[test]
    fn forced_perpendicular_structure() {
        // dim 2 with ranks 1/1 and both kernels 1 leaves no generic room:
        // the pair must be two perpendicular lines in disguise.
        let g = generate_pair(&spec(2, 1, 1, 1, 1, 1), &tol()).unwrap();
        let quad = kernel_quadruple(&g.p, &g.q, &tol()).unwrap();
        assert_eq!(quad.dims(), (1, 0, 0, 1));
        assert!(g.angles.is_empty());
        let gap = operator_norm(&(g.p.matrix() - g.q.matrix())).unwrap();
        assert!((gap - 1.0).abs() < 1e-10);
    }

    #[test]
    fn angle_cap_bounds_the_gap() {
        let cap = 1.2f64;
        let s = PairSpec {
            max_angle: Some(cap),
            ..spec(8, 4, 4, 0, 0, 11)
        };
        let g = generate_pair(&s, &tol()).unwrap();
        for &t in &g.angles {
            assert!(t >= MIN_ANGLE && t < cap);
        }
        // No kernel blocks, so the gap is the largest angle sine.
        let gap = operator_norm(&(g.p.matrix() - g.q.matrix())).unwrap();
        assert!(gap <= cap.sin() + 1e-12);
    }

    #[test]
    fn sampled_specs_always_generate() {
        for seed in 0..40 {
            let dim = 2 + (seed as usize % 9);
            let s = sampled_spec(dim, seed);
            let g = generate_pair(&s, &tol()).unwrap();
            assert_eq!(g.p.rank(), s.rank_p);
            assert_eq!(g.q.rank(), s.rank_q);
        }
    }
}
