//! `hnl` command-line front end.
//!
//! [`run`] parses argv, dispatches to `hnl-core`, and writes one report in
//! text, JSON or CSV. Exit codes: 0 on success, 1 on usage or parameter
//! errors, 2 on numerical or I/O failures. Signal verdicts never change the
//! exit code.

pub mod format;
pub mod report;

use std::ffi::OsString;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use hnl_core::discrimination::geometry_bound;
use hnl_core::signaling::hoeffding_session_error;
use hnl_core::steering::{primed_condition_number, primed_reconstruction_residual};
use hnl_core::{
    analytic_marginals, build_psi, decomposition_residual, estimate_bob_error, no_signal_test,
    optimal_detector, oracle_min_error, primed_basis, reduced_state_bob, steer, BlochVector,
    CanonicalGeometry, DetectorSpec, Error as CoreError, OrthonormalBasis, ProjectiveDetector,
    ProtocolConfig, TwoOutcomePovm, ALGEBRAIC_TOL,
};
use thiserror::Error;

pub use report::{write_report, OutputFormat, Report};
use report::{
    BoundReport, NosigReport, OracleReport, SimulateReport, SteerReport, SweepReport, SweepRow,
};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("cannot write {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Core(e) => match e {
                CoreError::OutOfDomain { .. }
                | CoreError::InvalidParameter(_)
                | CoreError::InvalidDetector(_)
                | CoreError::InsufficientData { .. }
                | CoreError::BadDistribution(_)
                | CoreError::UnknownLabel(_) => 1,
                CoreError::ZeroVector
                | CoreError::NotPure { .. }
                | CoreError::InvalidState(_)
                | CoreError::SingularSystem { .. } => 2,
            },
            CliError::Io { .. } => 2,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "hnl",
    version,
    about = "Quantum state discrimination bounds and the no-signaling check"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: OutputFormat,
    /// Write the report here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Minimum error for discriminating α from β, and the optimal detector.
    Bound(Angle),
    /// Build ψ and show Bob's ensembles under both of Alice's bases.
    Steer(Angle),
    /// Brute-force the minimum error over detectors and compare with the bound.
    Oracle {
        #[command(flatten)]
        angle: Angle,
        /// Projective axes on the x–z grid.
        #[arg(long, default_value_t = 10_000)]
        grid: usize,
        /// Random two-outcome POVMs.
        #[arg(long, default_value_t = 10_000)]
        povms: usize,
        #[command(flatten)]
        seed: Seed,
    },
    /// Estimate Bob's bit error over many sessions.
    Simulate {
        #[command(flatten)]
        angle: Angle,
        #[command(flatten)]
        detector: DetectorArg,
        /// Rounds (shared copies) per session.
        #[arg(long, default_value_t = 2000)]
        rounds: usize,
        #[arg(long, default_value_t = 200)]
        sessions: usize,
        #[command(flatten)]
        seed: Seed,
    },
    /// Test whether Bob's outcome statistics depend on Alice's bit.
    Nosig {
        #[command(flatten)]
        angle: Angle,
        #[command(flatten)]
        detector: DetectorArg,
        /// Rounds per bit.
        #[arg(long, default_value_t = 100_000)]
        rounds: usize,
        #[arg(long, default_value_t = 5.0)]
        z_threshold: f64,
        #[command(flatten)]
        seed: Seed,
    },
    /// Run the no-signaling test over a grid of angles and detector excesses.
    Sweep {
        /// Angle range `start:end:step`, inclusive.
        #[arg(long, value_name = "A:B:STEP")]
        theta_range: String,
        /// Super-detector excess range `start:end:step`. Without it, every
        /// cell uses `--detector`.
        #[arg(long, value_name = "A:B:STEP")]
        eps_range: Option<String>,
        /// Off-design response of the super detector: a probability, or
        /// `worst`.
        #[arg(long, default_value = "0.5")]
        q: String,
        #[command(flatten)]
        detector: DetectorArg,
        /// Rounds per bit in each cell.
        #[arg(long, default_value_t = 10_000)]
        rounds: usize,
        #[arg(long, default_value_t = 5.0)]
        z_threshold: f64,
        #[command(flatten)]
        seed: Seed,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct Angle {
    /// Half the angle between the α and β Bloch vectors, in radians.
    #[arg(long, allow_hyphen_values = true)]
    pub theta: Option<f64>,
    /// |⟨α|β⟩|², converted to theta.
    #[arg(long, allow_hyphen_values = true)]
    pub overlap: Option<f64>,
}

impl Angle {
    pub fn geometry(&self) -> Result<CanonicalGeometry, CliError> {
        Ok(match (self.theta, self.overlap) {
            (Some(t), _) => CanonicalGeometry::new(t)?,
            (None, Some(o)) => CanonicalGeometry::from_overlap(o)?,
            (None, None) => unreachable!("clap requires one of --theta/--overlap"),
        })
    }
}

#[derive(Debug, Args)]
pub struct DetectorArg {
    /// `optimal`, `projective:X,Y,Z`, `povm:T,S,X,Y,Z`, `super:EPS[,Q[,Q2]]`
    /// or `super:EPS,worst`.
    #[arg(long, default_value = "optimal")]
    pub detector: String,
}

#[derive(Debug, Args)]
pub struct Seed {
    #[arg(long, env = "HNL_SEED", default_value_t = 0)]
    pub seed: u64,
}

/// Parses a detector flag.
pub fn parse_detector(s: &str) -> Result<DetectorSpec, CliError> {
    let (kind, rest) = s.split_once(':').unwrap_or((s, ""));
    let invalid = |e: CoreError| CliError::Usage(format!("invalid detector `{s}`: {e}"));
    let nums = |n: &str| -> Result<Vec<f64>, CliError> {
        rest.split(',')
            .map(|t| {
                t.trim()
                    .parse::<f64>()
                    .map_err(|_| CliError::Usage(format!("{n}: `{t}` is not a number")))
            })
            .collect()
    };
    let spec = match kind {
        "optimal" if rest.is_empty() => DetectorSpec::Optimal,
        "projective" => match nums("projective")?.as_slice() {
            &[x, y, z] => ProjectiveDetector::along(x, y, z).map_err(invalid)?.into(),
            _ => return Err(CliError::Usage("projective detector takes X,Y,Z".into())),
        },
        "povm" => match nums("povm")?.as_slice() {
            &[t, s, x, y, z] => {
                let n = BlochVector::direction(x, y, z).map_err(invalid)?;
                TwoOutcomePovm::from_weights(t, s, &n)
                    .map_err(invalid)?
                    .into()
            }
            _ => return Err(CliError::Usage("povm detector takes T,S,X,Y,Z".into())),
        },
        "super" => {
            let parts: Vec<&str> = rest.split(',').map(str::trim).collect();
            let num = |t: &str| {
                t.parse::<f64>()
                    .map_err(|_| CliError::Usage(format!("super: `{t}` is not a number")))
            };
            match parts.as_slice() {
                [eps] => DetectorSpec::super_uniform(num(eps)?, 0.5),
                [eps, "worst"] => DetectorSpec::super_worst_case(num(eps)?),
                [eps, q] => DetectorSpec::super_uniform(num(eps)?, num(q)?),
                [eps, q, q2] => DetectorSpec::Super {
                    epsilon: num(eps)?,
                    q_other: num(q)?,
                    q_minus_delta: Some(num(q2)?),
                },
                _ => return Err(CliError::Usage("super detector takes EPS[,Q[,Q2]]".into())),
            }
        }
        _ => return Err(CliError::Usage(format!("unknown detector `{s}`"))),
    };
    Ok(spec)
}

/// Parses `start:end:step` into the inclusive grid `start, start + step, …`.
pub fn parse_range(s: &str) -> Result<Vec<f64>, CliError> {
    let bad = || CliError::Usage(format!("range `{s}` must be START:END:STEP"));
    let parts: Vec<f64> = s
        .split(':')
        .map(|t| t.trim().parse::<f64>().map_err(|_| bad()))
        .collect::<Result<_, _>>()?;
    let &[a, b, step] = parts.as_slice() else {
        return Err(bad());
    };
    if !(a.is_finite() && b.is_finite() && step.is_finite()) || step <= 0.0 {
        return Err(CliError::Usage(format!(
            "range `{s}` needs finite bounds and a positive step"
        )));
    }
    if b < a {
        return Err(CliError::Usage(format!("range `{s}` is empty")));
    }
    let n = ((b - a) / step + 1e-9).floor() as usize + 1;
    Ok((0..n).map(|k| a + k as f64 * step).collect())
}

/// Entry point: returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match execute(&cli, &mut out) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("hnl: {e}");
            if matches!(e, CliError::Usage(_)) {
                eprintln!("usage: hnl [--format text|json|csv] [--output PATH] <bound|steer|oracle|simulate|nosig|sweep> [OPTIONS]");
            }
            e.exit_code()
        }
    }
}

/// Runs a parsed command and writes its report.
pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let (format, path) = (cli.format, cli.output.as_deref());
    match &cli.command {
        Command::Bound(angle) => write_report(&bound(&angle.geometry()?), format, path, out),
        Command::Steer(angle) => {
            write_report(&steer_report(&angle.geometry()?)?, format, path, out)
        }
        Command::Oracle {
            angle,
            grid,
            povms,
            seed,
        } => {
            let g = angle.geometry()?;
            let result = oracle_min_error(&g, *grid, *povms, seed.seed)?;
            let pe_min = geometry_bound(&g);
            let r = OracleReport {
                theta: g.theta(),
                grid_points: *grid,
                povm_samples: *povms,
                seed: seed.seed,
                pe_min,
                result,
                deviation: result.min_error - pe_min,
            };
            write_report(&r, format, path, out)
        }
        Command::Simulate {
            angle,
            detector,
            rounds,
            sessions,
            seed,
        } => {
            let g = angle.geometry()?;
            let config = ProtocolConfig::new(
                g.theta(),
                parse_detector(&detector.detector)?,
                *rounds,
                *sessions,
                seed.seed,
            );
            let estimate = estimate_bob_error(&config)?;
            let marginals = analytic_marginals(&config.detector, &g)?;
            let margin = marginals.worst_round_success() - 0.5;
            let r = SimulateReport {
                config,
                marginals,
                hoeffding_bound: (margin > ALGEBRAIC_TOL)
                    .then(|| hoeffding_session_error(*rounds, margin)),
                estimate,
            };
            write_report(&r, format, path, out)
        }
        Command::Nosig {
            angle,
            detector,
            rounds,
            z_threshold,
            seed,
        } => {
            let g = angle.geometry()?;
            let detector = parse_detector(&detector.detector)?;
            let r = nosig(&g, detector, *rounds, *z_threshold, seed.seed)?;
            write_report(&r, format, path, out)
        }
        Command::Sweep {
            theta_range,
            eps_range,
            q,
            detector,
            rounds,
            z_threshold,
            seed,
        } => {
            let r = sweep(
                &parse_range(theta_range)?,
                eps_range.as_deref().map(parse_range).transpose()?,
                q,
                &detector.detector,
                *rounds,
                *z_threshold,
                seed.seed,
            )?;
            write_report(&r, format, path, out)
        }
    }
}

pub fn bound(g: &CanonicalGeometry) -> BoundReport {
    BoundReport {
        theta: g.theta(),
        overlap: g.overlap(),
        pe_min: geometry_bound(g),
        p: g.p(),
        optimal_axis: optimal_detector(g).axis(),
    }
}

pub fn steer_report(g: &CanonicalGeometry) -> Result<SteerReport, CliError> {
    let psi = build_psi(g);
    let rho = reduced_state_bob(&psi);
    let basis = primed_basis(g)?;
    let computational = steer(&psi, &OrthonormalBasis::COMPUTATIONAL);
    let primed = steer(&psi, &basis);
    Ok(SteerReport {
        theta: g.theta(),
        p: g.p(),
        psi,
        rho_b_bloch: rho.bloch(),
        computational,
        primed_basis: basis,
        primed,
        residual_computational: decomposition_residual(&rho, &computational.decomposition()),
        residual_primed: decomposition_residual(&rho, &primed.decomposition()),
        reconstruction_residual: primed_reconstruction_residual(g, &basis),
        orthonormality_defect: basis.orthonormality_defect(),
        condition_number: primed_condition_number(g),
    })
}

pub fn nosig(
    g: &CanonicalGeometry,
    detector: DetectorSpec,
    rounds: usize,
    z_threshold: f64,
    seed: u64,
) -> Result<NosigReport, CliError> {
    let mut config = ProtocolConfig::new(g.theta(), detector, rounds, 1, seed);
    config.z_threshold = z_threshold;
    Ok(NosigReport {
        theta: g.theta(),
        detector,
        seed,
        marginals: analytic_marginals(&detector, g)?,
        report: no_signal_test(&config)?,
    })
}

/// Cell `k` (row-major over theta, then epsilon) is seeded with `seed + k`.
/// Cells whose `epsilon` is out of range at that angle are skipped and
/// counted.
pub fn sweep(
    thetas: &[f64],
    epsilons: Option<Vec<f64>>,
    q: &str,
    detector: &str,
    rounds: usize,
    z_threshold: f64,
    seed: u64,
) -> Result<SweepReport, CliError> {
    let detectors: Vec<DetectorSpec> = match epsilons {
        Some(eps) => {
            let make = |e: f64| -> Result<DetectorSpec, CliError> {
                if q == "worst" {
                    Ok(DetectorSpec::super_worst_case(e))
                } else {
                    let q: f64 = q.parse().map_err(|_| {
                        CliError::Usage(format!("--q `{q}` is not a number or `worst`"))
                    })?;
                    Ok(DetectorSpec::super_uniform(e, q))
                }
            };
            eps.into_iter().map(make).collect::<Result<_, _>>()?
        }
        None => vec![parse_detector(detector)?],
    };
    let mut rows = Vec::new();
    let mut skipped = 0;
    for &theta in thetas {
        let g = CanonicalGeometry::new(theta)?;
        for &d in &detectors {
            if let Some(e) = d.epsilon() {
                if !(e > 0.0 && e <= geometry_bound(&g) + ALGEBRAIC_TOL) {
                    skipped += 1;
                    continue;
                }
            }
            let cell_seed = seed.wrapping_add((rows.len() + skipped) as u64);
            let r = nosig(&g, d, rounds, z_threshold, cell_seed)?;
            rows.push(SweepRow {
                theta,
                overlap: g.overlap(),
                pe_min: geometry_bound(&g),
                p: g.p(),
                detector: d.name().to_string(),
                epsilon: d.epsilon(),
                gap: r.report.gap,
                z: r.report.z_statistic,
                verdict: r.report.verdict,
            });
        }
    }
    if rows.is_empty() {
        return Err(CliError::Usage("sweep produced no valid cells".into()));
    }
    Ok(SweepReport {
        rounds,
        seed,
        skipped,
        rows,
    })
}
