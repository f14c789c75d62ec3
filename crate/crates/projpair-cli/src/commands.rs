//! Subcommand definitions and the report each one assembles.
//!
//! Every command prints exactly one report document to stdout and signals
//! failure through the process exit code; matrices only ever go to files.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use projpair_core::index::pair_index;
use projpair_core::kato::kato_unitary;
use projpair_core::linalg::eigenvalues::general_eigenvalues;
use projpair_core::perturbation::{reduce_family, riesz_projection, ContourSpec};
use projpair_core::subspaces::{halmos_split, kernel_quadruple, principal_angles};
use projpair_core::supersym::{build_super, identity_residuals, swap_exists, swap_unitary};
use projpair_core::{
    validate_projection, Complex64, ComplexMatrix, OrthProjection, ToleranceConfig,
};

use crate::error::CliError;
use crate::format::{read_family, read_matrix, write_matrix};
use crate::pairgen::{generate_pair, PairSpec};
use crate::report::{Report, ReportValue};

#[derive(Debug, Parser)]
#[command(
    name = "projpair",
    version,
    about = "Calculus of pairs of orthogonal projections: swap and intertwining unitaries, \
             kernel decompositions, index, and contour spectral projections"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// Overrides for the library tolerance bundle. Unset flags keep the defaults.
#[derive(Debug, Clone, Args)]
pub struct TolFlags {
    /// Hermiticity acceptance bound.
    #[arg(long, value_name = "X")]
    pub tol_herm: Option<f64>,
    /// Idempotency acceptance bound.
    #[arg(long, value_name = "X")]
    pub tol_idem: Option<f64>,
    /// Spectral binning margin.
    #[arg(long, value_name = "X")]
    pub tol_spec: Option<f64>,
    /// Residual acceptance bound for derived identities.
    #[arg(long, value_name = "X")]
    pub tol_resid: Option<f64>,
    /// Quadrature refinement stopping threshold.
    #[arg(long, value_name = "X")]
    pub quad_tol: Option<f64>,
}

impl TolFlags {
    pub fn config(&self) -> ToleranceConfig {
        let mut tol = ToleranceConfig::default();
        if let Some(x) = self.tol_herm {
            tol.tol_herm = x;
        }
        if let Some(x) = self.tol_idem {
            tol.tol_idem = x;
        }
        if let Some(x) = self.tol_spec {
            tol.tol_spec = x;
        }
        if let Some(x) = self.tol_resid {
            tol.tol_resid = x;
        }
        if let Some(x) = self.quad_tol {
            tol.quad_tol = x;
        }
        tol
    }
}

/// Evaluation point for a matrix family.
#[derive(Debug, Clone, Args)]
pub struct ZFlags {
    /// Real part of the family parameter z.
    #[arg(long, value_name = "X", default_value_t = 0.0)]
    pub z_re: f64,
    /// Imaginary part of the family parameter z.
    #[arg(long, value_name = "X", default_value_t = 0.0)]
    pub z_im: f64,
}

impl ZFlags {
    fn value(&self) -> Complex64 {
        Complex64::new(self.z_re, self.z_im)
    }
}

/// Circular integration contour.
#[derive(Debug, Clone, Args)]
pub struct ContourFlags {
    /// Real part of the contour center.
    #[arg(long, value_name = "X", default_value_t = 0.0)]
    pub center_re: f64,
    /// Imaginary part of the contour center.
    #[arg(long, value_name = "X", default_value_t = 0.0)]
    pub center_im: f64,
    /// Contour radius.
    #[arg(long, value_name = "R")]
    pub radius: f64,
    /// Starting quadrature node count; a power of two, at least 8.
    #[arg(long, value_name = "N", default_value_t = 16)]
    pub nodes: usize,
}

impl ContourFlags {
    fn center(&self) -> Complex64 {
        Complex64::new(self.center_re, self.center_im)
    }

    fn spec(&self) -> Result<ContourSpec, CliError> {
        Ok(ContourSpec::new(self.center(), self.radius, self.nodes)?)
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check that a matrix file holds an orthogonal projection.
    Validate {
        /// Matrix file to check.
        matrix: PathBuf,
        #[command(flatten)]
        tol: TolFlags,
    },
    /// Build the unitary that exchanges two projections, when one exists.
    Swap {
        /// First projection file.
        matrix_p: PathBuf,
        /// Second projection file.
        matrix_q: PathBuf,
        /// Destination for the swap unitary.
        #[arg(long, value_name = "PATH")]
        out: PathBuf,
        #[command(flatten)]
        tol: TolFlags,
    },
    /// Build the unitary carrying ran P onto ran Q when ‖P−Q‖ < 1.
    Kato {
        /// First projection file.
        matrix_p: PathBuf,
        /// Second projection file.
        matrix_q: PathBuf,
        /// Destination for the intertwining unitary.
        #[arg(long, value_name = "PATH")]
        out: PathBuf,
        #[command(flatten)]
        tol: TolFlags,
    },
    /// Kernel dimensions, their difference, and the trace that equals it.
    Index {
        /// First projection file.
        matrix_p: PathBuf,
        /// Second projection file.
        matrix_q: PathBuf,
        #[command(flatten)]
        tol: TolFlags,
    },
    /// Intersection dimensions, principal angles, and the two-part splitting.
    Decompose {
        /// First projection file.
        matrix_p: PathBuf,
        /// Second projection file.
        matrix_q: PathBuf,
        #[command(flatten)]
        tol: TolFlags,
    },
    /// Residuals of the six difference/sum operator identities.
    Identities {
        /// First projection file.
        matrix_p: PathBuf,
        /// Second projection file.
        matrix_q: PathBuf,
        #[command(flatten)]
        tol: TolFlags,
    },
    /// Spectral projection of one family member by contour quadrature.
    Riesz {
        /// Family file: a JSON array of matrix coefficients by power of z.
        family: PathBuf,
        #[command(flatten)]
        z: ZFlags,
        #[command(flatten)]
        contour: ContourFlags,
        /// Optional destination for the projection matrix.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
        #[command(flatten)]
        tol: TolFlags,
    },
    /// Compress a family member to the fixed frame of the unperturbed
    /// spectral projection.
    Reduce {
        /// Family file: a JSON array of matrix coefficients by power of z.
        family: PathBuf,
        #[command(flatten)]
        z: ZFlags,
        #[command(flatten)]
        contour: ContourFlags,
        /// Optional destination for the reduced block.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
        #[command(flatten)]
        tol: TolFlags,
    },
    /// Generate a seeded projection pair with prescribed ranks and
    /// kernel dimensions.
    Random {
        /// Ambient dimension.
        #[arg(long, value_name = "N")]
        dim: usize,
        /// Rank of the first projection.
        #[arg(long = "rankP", alias = "rank-p", value_name = "R")]
        rank_p: usize,
        /// Rank of the second projection.
        #[arg(long = "rankQ", alias = "rank-q", value_name = "S")]
        rank_q: usize,
        /// dim(ran P ∩ ker Q) and dim(ker P ∩ ran Q), in that order.
        #[arg(long, num_args = 2, value_name = "D", default_values_t = [0, 0])]
        kernel_dims: Vec<usize>,
        /// Generator seed.
        #[arg(long, value_name = "K", default_value_t = 0)]
        seed: u64,
        /// Upper bound for the sampled principal angles, in (0.05, π/2 − 0.05].
        #[arg(long, value_name = "X")]
        max_angle: Option<f64>,
        /// Destination for the first projection.
        #[arg(long, value_name = "PATH")]
        out_p: PathBuf,
        /// Destination for the second projection.
        #[arg(long, value_name = "PATH")]
        out_q: PathBuf,
        #[command(flatten)]
        tol: TolFlags,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Validate { .. } => "validate",
            Command::Swap { .. } => "swap",
            Command::Kato { .. } => "kato",
            Command::Index { .. } => "index",
            Command::Decompose { .. } => "decompose",
            Command::Identities { .. } => "identities",
            Command::Riesz { .. } => "riesz",
            Command::Reduce { .. } => "reduce",
            Command::Random { .. } => "random",
        }
    }

    fn inputs(&self) -> Vec<String> {
        match self {
            Command::Validate { matrix, .. } => vec![path_text(matrix)],
            Command::Swap {
                matrix_p, matrix_q, ..
            }
            | Command::Kato {
                matrix_p, matrix_q, ..
            }
            | Command::Index {
                matrix_p, matrix_q, ..
            }
            | Command::Decompose {
                matrix_p, matrix_q, ..
            }
            | Command::Identities {
                matrix_p, matrix_q, ..
            } => vec![path_text(matrix_p), path_text(matrix_q)],
            Command::Riesz { family, .. } | Command::Reduce { family, .. } => {
                vec![path_text(family)]
            }
            Command::Random { .. } => Vec::new(),
        }
    }
}

fn path_text(path: &Path) -> String {
    path.display().to_string()
}

fn load_projection(path: &Path, tol: &ToleranceConfig) -> Result<OrthProjection, CliError> {
    Ok(validate_projection(&read_matrix(path)?, tol)?)
}

fn load_pair(
    path_p: &Path,
    path_q: &Path,
    tol: &ToleranceConfig,
) -> Result<(OrthProjection, OrthProjection), CliError> {
    Ok((load_projection(path_p, tol)?, load_projection(path_q, tol)?))
}

/// Runs one parsed invocation. The report is returned even on failure so the
/// caller can still print it next to the nonzero exit code.
pub fn run(cli: Cli) -> (Report, i32) {
    let mut report = Report::new(cli.command.name(), cli.command.inputs());
    match execute(cli.command, &mut report) {
        Ok(()) => (report, 0),
        Err(err) => {
            let exit = err.exit_code();
            report.fail(&err);
            (report, exit)
        }
    }
}

fn execute(command: Command, report: &mut Report) -> Result<(), CliError> {
    match command {
        Command::Validate { matrix, tol } => cmd_validate(&matrix, &tol.config(), report),
        Command::Swap {
            matrix_p,
            matrix_q,
            out,
            tol,
        } => cmd_swap(&matrix_p, &matrix_q, &out, &tol.config(), report),
        Command::Kato {
            matrix_p,
            matrix_q,
            out,
            tol,
        } => cmd_kato(&matrix_p, &matrix_q, &out, &tol.config(), report),
        Command::Index {
            matrix_p,
            matrix_q,
            tol,
        } => cmd_index(&matrix_p, &matrix_q, &tol.config(), report),
        Command::Decompose {
            matrix_p,
            matrix_q,
            tol,
        } => cmd_decompose(&matrix_p, &matrix_q, &tol.config(), report),
        Command::Identities {
            matrix_p,
            matrix_q,
            tol,
        } => cmd_identities(&matrix_p, &matrix_q, &tol.config(), report),
        Command::Riesz {
            family,
            z,
            contour,
            out,
            tol,
        } => cmd_riesz(&family, &z, &contour, out.as_deref(), &tol.config(), report),
        Command::Reduce {
            family,
            z,
            contour,
            out,
            tol,
        } => cmd_reduce(&family, &z, &contour, out.as_deref(), &tol.config(), report),
        Command::Random {
            dim,
            rank_p,
            rank_q,
            kernel_dims,
            seed,
            max_angle,
            out_p,
            out_q,
            tol,
        } => {
            let spec = PairSpec {
                dim,
                rank_p,
                rank_q,
                dim_ker: kernel_dims[0],
                dim_coker: kernel_dims[1],
                seed,
                max_angle,
            };
            cmd_random(&spec, &out_p, &out_q, &tol.config(), report)
        }
    }
}

fn cmd_validate(path: &Path, tol: &ToleranceConfig, report: &mut Report) -> Result<(), CliError> {
    let p = load_projection(path, tol)?;
    report.put("rows", ReportValue::Count(p.dim()));
    report.put("cols", ReportValue::Count(p.dim()));
    report.put("rank", ReportValue::Count(p.rank()));
    report.residual("hermiticity", p.hermitian_residual());
    report.residual("idempotency", p.idempotency_residual());
    Ok(())
}

fn cmd_swap(
    path_p: &Path,
    path_q: &Path,
    out: &Path,
    tol: &ToleranceConfig,
    report: &mut Report,
) -> Result<(), CliError> {
    let (p, q) = load_pair(path_p, path_q, tol)?;
    // Kernel dimensions go in first so a nonexistence failure still
    // reports what blocked the swap.
    let feasibility = swap_exists(&p, &q, tol)?;
    report.put("dim_ker", ReportValue::Count(feasibility.dim_ker));
    report.put("dim_coker", ReportValue::Count(feasibility.dim_coker));
    report.put(
        "index",
        ReportValue::Int(feasibility.dim_ker as i64 - feasibility.dim_coker as i64),
    );

    let swap = swap_unitary(&p, &q, tol)?;
    write_matrix(out, &swap.u)?;
    report.put("out", ReportValue::Text(path_text(out)));
    report.put("t_block_dim", ReportValue::Count(swap.t_block_dim));
    report.put("is_symmetry", ReportValue::Bool(swap.is_symmetry));

    let id = ComplexMatrix::identity(p.dim());
    let u_adj = swap.u.adjoint();
    let conj_p = swap.u.matmul(p.matrix()).matmul(&u_adj);
    let conj_q = swap.u.matmul(q.matrix()).matmul(&u_adj);
    report.residual("conjugate_p_to_q", (&conj_p - q.matrix()).frobenius_norm());
    report.residual("conjugate_q_to_p", (&conj_q - p.matrix()).frobenius_norm());
    report.residual(
        "unitarity",
        (&swap.u.adjoint_matmul(&swap.u) - &id).frobenius_norm(),
    );
    report.residual(
        "involution",
        (&swap.u.matmul(&swap.u) - &id).frobenius_norm(),
    );
    Ok(())
}

fn cmd_kato(
    path_p: &Path,
    path_q: &Path,
    out: &Path,
    tol: &ToleranceConfig,
    report: &mut Report,
) -> Result<(), CliError> {
    let (p, q) = load_pair(path_p, path_q, tol)?;
    let u = kato_unitary(&p, &q, tol)?;
    write_matrix(out, &u)?;
    report.put("out", ReportValue::Text(path_text(out)));

    let id = ComplexMatrix::identity(p.dim());
    report.residual(
        "intertwining",
        (&u.matmul(p.matrix()) - &q.matrix().matmul(&u)).frobenius_norm(),
    );
    report.residual("unitarity", (&u.adjoint_matmul(&u) - &id).frobenius_norm());
    Ok(())
}

fn cmd_index(
    path_p: &Path,
    path_q: &Path,
    tol: &ToleranceConfig,
    report: &mut Report,
) -> Result<(), CliError> {
    let (p, q) = load_pair(path_p, path_q, tol)?;
    let idx = pair_index(&p, &q, tol)?;
    report.put("dim_ker", ReportValue::Count(idx.dim_ker));
    report.put("dim_coker", ReportValue::Count(idx.dim_coker));
    report.put("index", ReportValue::Int(idx.index));
    report.put("trace", ReportValue::Real(idx.trace_pq));
    report.put("swap_possible", ReportValue::Bool(idx.swap_possible));
    report.residual(
        "trace_deviation",
        (idx.trace_pq - idx.index as f64).abs(),
    );
    Ok(())
}

fn cmd_decompose(
    path_p: &Path,
    path_q: &Path,
    tol: &ToleranceConfig,
    report: &mut Report,
) -> Result<(), CliError> {
    let (p, q) = load_pair(path_p, path_q, tol)?;
    let quad = kernel_quadruple(&p, &q, tol)?;
    let (a, c, d, b) = quad.dims();
    report.put("dim_ran_p_ker_q", ReportValue::Count(a));
    report.put("dim_ran_p_ran_q", ReportValue::Count(c));
    report.put("dim_ker_p_ker_q", ReportValue::Count(d));
    report.put("dim_ker_p_ran_q", ReportValue::Count(b));
    report.put("generic_dim", ReportValue::Count(quad.generic_dim(p.dim())));
    report.put("rank_p", ReportValue::Count(p.rank()));
    report.put("rank_q", ReportValue::Count(q.rank()));

    let split = halmos_split(&p, &q, tol)?;
    report.put("h1_dim", ReportValue::Count(split.h1_frame.count()));
    report.put("h2_dim", ReportValue::Count(split.h2_frame.count()));

    let angles = principal_angles(&p, &q, tol)?;
    report.put("angles", ReportValue::RealList(angles));

    let stacked = quad
        .k_pq
        .matrix()
        .hcat(quad.k_p_1q.matrix())
        .hcat(quad.k_1p_q.matrix())
        .hcat(quad.k_1p_1q.matrix());
    let gram = stacked.adjoint_matmul(&stacked);
    let eye = ComplexMatrix::identity(stacked.cols());
    report.residual("kernel_frames_orthonormality", (&gram - &eye).frobenius_norm());
    Ok(())
}

fn cmd_identities(
    path_p: &Path,
    path_q: &Path,
    tol: &ToleranceConfig,
    report: &mut Report,
) -> Result<(), CliError> {
    let (p, q) = load_pair(path_p, path_q, tol)?;
    let sp = build_super(&p, &q)?;
    let res = identity_residuals(&sp, &p, &q);
    report.put("dim", ReportValue::Count(sp.dim()));
    report.put("max_residual", ReportValue::Real(res.max()));
    report.residual("square_sum", res.square_sum);
    report.residual("anticommutator", res.anticommutator);
    report.residual("p_a2_commutator", res.p_a2_commutator);
    report.residual("q_a2_commutator", res.q_a2_commutator);
    report.residual("p_b2_commutator", res.p_b2_commutator);
    report.residual("q_b2_commutator", res.q_b2_commutator);
    Ok(())
}

fn cmd_riesz(
    family_path: &Path,
    z: &ZFlags,
    contour: &ContourFlags,
    out: Option<&Path>,
    tol: &ToleranceConfig,
    report: &mut Report,
) -> Result<(), CliError> {
    let family = read_family(family_path)?;
    let spec = contour.spec()?;
    let member = family.eval(z.value())?;
    let riesz = riesz_projection(&member, &spec, tol)?;

    report.put("dim", ReportValue::Count(family.dim()));
    report.put("z", ReportValue::Complex([z.z_re, z.z_im]));
    report.put(
        "center",
        ReportValue::Complex([contour.center_re, contour.center_im]),
    );
    report.put("radius", ReportValue::Real(contour.radius));
    report.put("nodes_used", ReportValue::Count(riesz.nodes_used()));
    report.put("rank", ReportValue::Count(riesz.rank()?));
    report.residual("idempotency", riesz.idempotency_residual());
    report.residual("commutation", riesz.commutator_residual());
    if let Some((_, deviation)) = riesz.history().last() {
        report.residual("refinement_deviation", *deviation);
    }
    if let Some(out) = out {
        write_matrix(out, riesz.matrix())?;
        report.put("out", ReportValue::Text(path_text(out)));
    }
    Ok(())
}

fn cmd_reduce(
    family_path: &Path,
    z: &ZFlags,
    contour: &ContourFlags,
    out: Option<&Path>,
    tol: &ToleranceConfig,
    report: &mut Report,
) -> Result<(), CliError> {
    let family = read_family(family_path)?;
    let spec = contour.spec()?;
    let reduced = reduce_family(&family, z.value(), &spec, tol)?;

    report.put("dim", ReportValue::Count(family.dim()));
    report.put("z", ReportValue::Complex([z.z_re, z.z_im]));
    report.put(
        "center",
        ReportValue::Complex([contour.center_re, contour.center_im]),
    );
    report.put("radius", ReportValue::Real(contour.radius));
    report.put("block_dim", ReportValue::Count(reduced.block.rows()));

    let eigenvalues = general_eigenvalues(&reduced.block)?;
    report.put(
        "eigenvalues",
        ReportValue::ComplexList(eigenvalues.iter().map(|w| [w.re, w.im]).collect()),
    );

    let frame = reduced.frame.matrix();
    let gram = frame.adjoint_matmul(frame);
    let eye = ComplexMatrix::identity(frame.cols());
    report.residual("frame_orthonormality", (&gram - &eye).frobenius_norm());
    if let Some(out) = out {
        write_matrix(out, &reduced.block)?;
        report.put("out", ReportValue::Text(path_text(out)));
    }
    Ok(())
}

fn cmd_random(
    spec: &PairSpec,
    out_p: &Path,
    out_q: &Path,
    tol: &ToleranceConfig,
    report: &mut Report,
) -> Result<(), CliError> {
    let pair = generate_pair(spec, tol)?;
    write_matrix(out_p, pair.p.matrix())?;
    write_matrix(out_q, pair.q.matrix())?;

    report.put("out_p", ReportValue::Text(path_text(out_p)));
    report.put("out_q", ReportValue::Text(path_text(out_q)));
    report.put("dim", ReportValue::Count(spec.dim));
    report.put("rank_p", ReportValue::Count(pair.p.rank()));
    report.put("rank_q", ReportValue::Count(pair.q.rank()));
    report.put("dim_ker", ReportValue::Count(spec.dim_ker));
    report.put("dim_coker", ReportValue::Count(spec.dim_coker));
    report.put("shared_range", ReportValue::Count(pair.shared_range));
    report.put("shared_kernel", ReportValue::Count(pair.shared_kernel));
    report.put("generic_blocks", ReportValue::Count(pair.angles.len()));
    report.put("angles", ReportValue::RealList(pair.angles.clone()));
    report.put("seed", ReportValue::Count(spec.seed as usize));

    report.residual("p_hermiticity", pair.p.hermitian_residual());
    report.residual("p_idempotency", pair.p.idempotency_residual());
    report.residual("q_hermiticity", pair.q.hermitian_residual());
    report.residual("q_idempotency", pair.q.idempotency_residual());
    Ok(())
}
