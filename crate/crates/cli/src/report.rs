//! Report types and their text, JSON and CSV renderings.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::Path;

use clap::ValueEnum;
use hnl_core::{
    BipartiteState, BlochVector, DetectorSpec, ErrorEstimate, Marginals, NoSignalReport,
    OracleResult, OrthonormalBasis, ProtocolConfig, SteeredEnsemble, Verdict,
};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::format::{g17, g6, G17Formatter};
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
    Csv,
}

/// Anything the CLI can print.
pub trait Report: Serialize {
    fn text(&self) -> String;
    fn csv(&self) -> String;
}

/// Renders `report` in `format`, to `path` if given and to `stdout`
/// otherwise.
pub fn write_report<R: Report>(
    report: &R,
    format: OutputFormat,
    path: Option<&Path>,
    stdout: &mut dyn Write,
) -> Result<(), CliError> {
    let body = render(report, format)?;
    match path {
        Some(p) => fs::write(p, body).map_err(|source| CliError::Io {
            path: p.display().to_string(),
            source,
        }),
        None => stdout
            .write_all(body.as_bytes())
            .map_err(|source| CliError::Io {
                path: "<stdout>".into(),
                source,
            }),
    }
}

pub fn render<R: Report>(report: &R, format: OutputFormat) -> Result<String, CliError> {
    Ok(match format {
        OutputFormat::Text => report.text(),
        OutputFormat::Csv => report.csv(),
        OutputFormat::Json => {
            let mut out = Vec::new();
            let mut ser = serde_json::Serializer::with_formatter(&mut out, G17Formatter::new());
            report.serialize(&mut ser).map_err(|e| CliError::Io {
                path: "<json>".into(),
                source: io::Error::other(e),
            })?;
            out.push(b'\n');
            String::from_utf8(out).expect("serde_json emits UTF-8")
        }
    })
}

fn axis_fields(v: &BlochVector) -> String {
    format!("{},{},{}", g17(v.x()), g17(v.y()), g17(v.z()))
}

fn axis_text(v: &BlochVector) -> String {
    format!("({}, {}, {})", g6(v.x()), g6(v.y()), g6(v.z()))
}

fn opt(x: Option<f64>) -> String {
    x.map(g17).unwrap_or_default()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub theta: f64,
    pub overlap: f64,
    pub pe_min: f64,
    pub p: f64,
    pub optimal_axis: BlochVector,
}

impl Report for BoundReport {
    fn text(&self) -> String {
        format!(
            "theta = {}\noverlap = {}\nP_E^m = {}\np = {}\noptimal axis = {}\n",
            g6(self.theta),
            g6(self.overlap),
            g6(self.pe_min),
            g6(self.p),
            axis_text(&self.optimal_axis),
        )
    }

    fn csv(&self) -> String {
        format!(
            "theta,overlap,pe_min,p,optimal_axis_x,optimal_axis_y,optimal_axis_z\n{},{},{},{},{}\n",
            g17(self.theta),
            g17(self.overlap),
            g17(self.pe_min),
            g17(self.p),
            axis_fields(&self.optimal_axis),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SteerReport {
    pub theta: f64,
    pub p: f64,
    pub psi: BipartiteState,
    pub rho_b_bloch: BlochVector,
    pub computational: SteeredEnsemble,
    pub primed_basis: OrthonormalBasis,
    pub primed: SteeredEnsemble,
    pub residual_computational: f64,
    pub residual_primed: f64,
    pub reconstruction_residual: f64,
    pub orthonormality_defect: f64,
    pub condition_number: f64,
}

impl Report for SteerReport {
    fn text(&self) -> String {
        let mut s = String::new();
        let c = self.psi.amplitudes();
        let _ = writeln!(s, "theta = {}\np = {}", g6(self.theta), g6(self.p));
        let _ = writeln!(
            s,
            "psi (c00, c01, c10, c11) = ({}, {}, {}, {})",
            cplx(c[0]),
            cplx(c[1]),
            cplx(c[2]),
            cplx(c[3])
        );
        let _ = writeln!(s, "rho_B Bloch vector = {}", axis_text(&self.rho_b_bloch));
        for (name, ens) in [
            ("computational", &self.computational),
            ("primed", &self.primed),
        ] {
            let _ = writeln!(s, "{name} basis:");
            for (k, b) in ens.branches.iter().enumerate() {
                let _ = writeln!(
                    s,
                    "  outcome {k}: prob {} -> Bob Bloch {}{}",
                    g6(b.prob),
                    axis_text(&b.state.bloch()),
                    if b.degenerate { " (degenerate)" } else { "" }
                );
            }
        }
        let [f, g] = self.primed_basis.vectors().map(|k| k.amplitudes());
        let _ = writeln!(s, "|0'> = ({}, {})", cplx(f[0]), cplx(f[1]));
        let _ = writeln!(s, "|1'> = ({}, {})", cplx(g[0]), cplx(g[1]));
        let _ = writeln!(
            s,
            "decomposition residual (alpha, delta) = {}",
            g6(self.residual_computational)
        );
        let _ = writeln!(
            s,
            "decomposition residual (beta, -delta) = {}",
            g6(self.residual_primed)
        );
        let _ = writeln!(
            s,
            "primed reconstruction residual = {}",
            g6(self.reconstruction_residual)
        );
        let _ = writeln!(
            s,
            "primed orthonormality defect = {}",
            g6(self.orthonormality_defect)
        );
        let _ = writeln!(
            s,
            "primed system condition number = {}",
            g6(self.condition_number)
        );
        s
    }

    fn csv(&self) -> String {
        format!(
            "theta,p,rho_b_x,rho_b_y,rho_b_z,residual_computational,residual_primed,reconstruction_residual,orthonormality_defect,condition_number\n{},{},{},{},{},{},{},{}\n",
            g17(self.theta),
            g17(self.p),
            axis_fields(&self.rho_b_bloch),
            g17(self.residual_computational),
            g17(self.residual_primed),
            g17(self.reconstruction_residual),
            g17(self.orthonormality_defect),
            g17(self.condition_number),
        )
    }
}

fn cplx(c: Complex64) -> String {
    let (re, im) = (c.re, c.im);
    if im == 0.0 {
        g6(re)
    } else {
        format!(
            "{}{}{}i",
            g6(re),
            if im < 0.0 { "-" } else { "+" },
            g6(im.abs())
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub theta: f64,
    pub grid_points: usize,
    pub povm_samples: usize,
    pub seed: u64,
    pub pe_min: f64,
    pub result: OracleResult,
    /// `min_error − pe_min`; never below `−1e-12` if the bound holds.
    pub deviation: f64,
}

impl Report for OracleReport {
    fn text(&self) -> String {
        format!(
            "theta = {}\nP_E^m (closed form) = {}\noracle minimum = {} at axis {}\n  projective grid ({} axes) = {}\n  random POVMs ({}) = {}\ndeviation = {}\nseed = {}\n",
            g6(self.theta),
            g6(self.pe_min),
            g6(self.result.min_error),
            axis_text(&self.result.argmin_axis),
            self.grid_points,
            g6(self.result.projective_min),
            self.povm_samples,
            self.result.povm_min.map(g6).unwrap_or_else(|| "n/a".into()),
            g6(self.deviation),
            self.seed,
        )
    }

    fn csv(&self) -> String {
        format!(
            "theta,grid_points,povm_samples,seed,pe_min,min_error,projective_min,povm_min,deviation,axis_x,axis_y,axis_z\n{},{},{},{},{},{},{},{},{},{}\n",
            g17(self.theta),
            self.grid_points,
            self.povm_samples,
            self.seed,
            g17(self.pe_min),
            g17(self.result.min_error),
            g17(self.result.projective_min),
            opt(self.result.povm_min),
            g17(self.deviation),
            axis_fields(&self.result.argmin_axis),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulateReport {
    pub config: ProtocolConfig,
    pub marginals: Marginals,
    pub hoeffding_bound: Option<f64>,
    pub estimate: ErrorEstimate,
}

impl Report for SimulateReport {
    fn text(&self) -> String {
        let c = &self.config;
        let m = &self.marginals;
        let mut s = format!(
            "theta = {}\ndetector = {}\nrounds per session = {}\nsessions = {}\nseed = {}\n",
            g6(c.theta),
            detector_label(&c.detector),
            c.rounds,
            c.sessions,
            c.seed
        );
        let _ = writeln!(
            s,
            "analytic P(0 | bit 0) = {}\nanalytic P(0 | bit 1) = {}\nanalytic gap = {}",
            g6(m.p0_bit0),
            g6(m.p0_bit1),
            g6(m.gap())
        );
        if let Some(h) = self.hoeffding_bound {
            let _ = writeln!(s, "Hoeffding session-error bound = {}", g6(h));
        }
        let e = &self.estimate;
        let _ = writeln!(
            s,
            "wrong decisions = {} / {} (ties broken: {})\nBob error rate = {}",
            e.wrong,
            e.sessions,
            e.ties,
            g6(e.error_rate)
        );
        s
    }

    fn csv(&self) -> String {
        let c = &self.config;
        let m = &self.marginals;
        let e = &self.estimate;
        format!(
            "theta,detector,epsilon,rounds,sessions,seed,p0_bit0,p0_bit1,gap,hoeffding_bound,wrong,ties,error_rate\n{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
            g17(c.theta),
            c.detector.name(),
            opt(c.detector.epsilon()),
            c.rounds,
            c.sessions,
            c.seed,
            g17(m.p0_bit0),
            g17(m.p0_bit1),
            g17(m.gap()),
            opt(self.hoeffding_bound),
            e.wrong,
            e.ties,
            g17(e.error_rate),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NosigReport {
    pub theta: f64,
    pub detector: DetectorSpec,
    pub seed: u64,
    pub marginals: Marginals,
    #[serde(flatten)]
    pub report: NoSignalReport,
}

impl Report for NosigReport {
    fn text(&self) -> String {
        let r = &self.report;
        format!(
            "theta = {}\ndetector = {}\nrounds per bit = {}\nseed = {}\nfreq(0 | bit 0) = {}\nfreq(0 | bit 1) = {}\ngap = {} (analytic {})\nz = {} (threshold {})\nverdict = {}\n",
            g6(self.theta),
            detector_label(&self.detector),
            r.rounds,
            self.seed,
            g6(r.freq0_bit0),
            g6(r.freq0_bit1),
            g6(r.gap),
            g6(self.marginals.gap()),
            g6(r.z_statistic),
            g6(r.threshold),
            r.verdict,
        )
    }

    fn csv(&self) -> String {
        let r = &self.report;
        format!(
            "theta,detector,epsilon,rounds,seed,freq0_bit0,freq0_bit1,gap,z,threshold,verdict\n{},{},{},{},{},{},{},{},{},{},{}\n",
            g17(self.theta),
            self.detector.name(),
            opt(self.detector.epsilon()),
            r.rounds,
            self.seed,
            g17(r.freq0_bit0),
            g17(r.freq0_bit1),
            g17(r.gap),
            g17(r.z_statistic),
            g17(r.threshold),
            r.verdict,
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub theta: f64,
    pub overlap: f64,
    pub pe_min: f64,
    pub p: f64,
    pub detector: String,
    pub epsilon: Option<f64>,
    pub gap: f64,
    pub z: f64,
    pub verdict: Verdict,
}

pub const SWEEP_HEADER: &str = "theta,overlap,pe_min,p,detector,epsilon,gap,z,verdict";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub rounds: usize,
    pub seed: u64,
    /// Grid cells dropped because `epsilon` exceeded the bound at that theta.
    pub skipped: usize,
    pub rows: Vec<SweepRow>,
}

impl Report for SweepReport {
    fn text(&self) -> String {
        let mut s = format!(
            "{:>10} {:>10} {:>10} {:>10} {:>10} {:>8} {:>10} {:>10} {}\n",
            "theta", "overlap", "pe_min", "p", "detector", "epsilon", "gap", "z", "verdict"
        );
        for r in &self.rows {
            let _ = writeln!(
                s,
                "{:>10.6} {:>10.6} {:>10.6} {:>10.6} {:>10} {:>8} {:>10.6} {:>10.3} {}",
                r.theta,
                r.overlap,
                r.pe_min,
                r.p,
                r.detector,
                r.epsilon
                    .map(|e| format!("{e:.4}"))
                    .unwrap_or_else(|| "-".into()),
                r.gap,
                r.z,
                r.verdict
            );
        }
        let _ = writeln!(
            s,
            "{} cells, {} skipped (epsilon above bound), {} rounds per bit, seed {}",
            self.rows.len(),
            self.skipped,
            self.rounds,
            self.seed
        );
        s
    }

    fn csv(&self) -> String {
        let mut s = String::from(SWEEP_HEADER);
        s.push('\n');
        for r in &self.rows {
            let _ = writeln!(
                s,
                "{},{},{},{},{},{},{},{},{}",
                g17(r.theta),
                g17(r.overlap),
                g17(r.pe_min),
                g17(r.p),
                r.detector,
                opt(r.epsilon),
                g17(r.gap),
                g17(r.z),
                r.verdict
            );
        }
        s
    }
}

pub fn detector_label(d: &DetectorSpec) -> String {
    match d {
        DetectorSpec::Optimal => "optimal".into(),
        DetectorSpec::Projective { detector } => {
            format!("projective {}", axis_text(&detector.axis()))
        }
        DetectorSpec::Povm { .. } => "povm".into(),
        DetectorSpec::Super {
            epsilon,
            q_other,
            q_minus_delta,
        } => match q_minus_delta {
            Some(q2) => format!(
                "super (epsilon {}, q_delta {}, q_minus_delta {})",
                g6(*epsilon),
                g6(*q_other),
                g6(*q2)
            ),
            None => format!("super (epsilon {}, q_other {})", g6(*epsilon), g6(*q_other)),
        },
    }
}
