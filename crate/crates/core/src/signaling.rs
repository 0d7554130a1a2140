//! Monte Carlo simulation of the signaling protocol.
//!
//! Alice and Bob share many copies of `|ψ⟩`. To send bit 0 Alice measures
//! every copy in `{|0⟩, |1⟩}`; to send bit 1 she uses the primed basis. Bob
//! applies one binary detector to each of his qubits and decodes by majority.
//!
//! For any quantum detector Bob's reduced state, and hence his outcome
//! statistics, do not depend on Alice's choice, so decoding is a coin flip.
//! A detector beating the Helstrom bound by `ε` makes each round agree with
//! the sent bit with probability at least `1/2 + pε`, whatever it does on δ
//! and −δ, and Bob's majority vote becomes a working channel. With the
//! least favourable off-design response the outcome-0 gap is exactly `2pε`.
//!
//! # Sizing a session
//!
//! With a super-quantum detector each round agrees with the sent bit with
//! probability at least `1/2 + pε`. By Hoeffding's inequality the majority
//! decoder errs with probability at most `exp(−2N(pε)²)`, so
//! `N ≥ ln(1/δ) / (2(pε)²)` rounds give session error at most `δ`
//! (see [`rounds_for_session_error`]).

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bloch::{CanonicalGeometry, StateLabel};
use crate::discrimination::{
    optimal_detector, BinaryMeasurement, ProjectiveDetector, SuperQuantumDetector, TwoOutcomePovm,
};
use crate::error::{Error, Result};
use crate::steering::{build_psi, primed_basis, steer, OrthonormalBasis};

/// Fewest rounds per bit accepted by [`no_signal_test`].
pub const MIN_NOSIG_ROUNDS: usize = 100;

/// Default `|z|` above which [`no_signal_test`] reports a signal.
pub const DEFAULT_Z_THRESHOLD: f64 = 5.0;

/// Session index reserved for the two batches of [`no_signal_test`].
const NOSIG_SESSION: u64 = u64::MAX >> 1;

/// Steered states must match the labelled geometry states this closely.
const STEERING_MATCH_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "u8", try_from = "u8")]
pub enum Bit {
    Zero,
    One,
}

impl Bit {
    pub fn index(self) -> usize {
        match self {
            Bit::Zero => 0,
            Bit::One => 1,
        }
    }

    /// Bit `i mod 2`.
    pub fn alternating(i: u64) -> Bit {
        if i.is_multiple_of(2) {
            Bit::Zero
        } else {
            Bit::One
        }
    }
}

impl From<Bit> for u8 {
    fn from(b: Bit) -> u8 {
        b.index() as u8
    }
}

impl TryFrom<u8> for Bit {
    type Error = Error;

    fn try_from(v: u8) -> Result<Bit> {
        match v {
            0 => Ok(Bit::Zero),
            1 => Ok(Bit::One),
            _ => Err(Error::InvalidParameter(format!(
                "bit must be 0 or 1, got {v}"
            ))),
        }
    }
}

impl fmt::Display for Bit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index())
    }
}

/// Which detector Bob uses.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DetectorSpec {
    /// The Helstrom measurement for the configured geometry.
    Optimal,
    Projective {
        detector: ProjectiveDetector,
    },
    Povm {
        povm: TwoOutcomePovm,
    },
    /// Behavioural detector beating the bound by `epsilon`, answering 0 on δ
    /// with probability `q_other` and on −δ with `q_minus_delta` (defaults to
    /// `q_other`).
    Super {
        epsilon: f64,
        q_other: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        q_minus_delta: Option<f64>,
    },
}

impl DetectorSpec {
    pub fn name(&self) -> &'static str {
        match self {
            DetectorSpec::Optimal => "optimal",
            DetectorSpec::Projective { .. } => "projective",
            DetectorSpec::Povm { .. } => "povm",
            DetectorSpec::Super { .. } => "super",
        }
    }

    /// Super-quantum detector with the same response on δ and −δ.
    pub fn super_uniform(epsilon: f64, q_other: f64) -> Self {
        DetectorSpec::Super {
            epsilon,
            q_other,
            q_minus_delta: None,
        }
    }

    /// Super-quantum detector with the off-design response least favourable
    /// to Bob (0 on δ, 1 on −δ).
    pub fn super_worst_case(epsilon: f64) -> Self {
        DetectorSpec::Super {
            epsilon,
            q_other: 0.0,
            q_minus_delta: Some(1.0),
        }
    }

    pub fn epsilon(&self) -> Option<f64> {
        match self {
            DetectorSpec::Super { epsilon, .. } => Some(*epsilon),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProtocolConfig {
    pub theta: f64,
    pub detector: DetectorSpec,
    /// Rounds (shared copies) per session.
    pub rounds: usize,
    pub sessions: usize,
    pub seed: u64,
    pub z_threshold: f64,
}

impl ProtocolConfig {
    pub fn new(
        theta: f64,
        detector: DetectorSpec,
        rounds: usize,
        sessions: usize,
        seed: u64,
    ) -> Self {
        ProtocolConfig {
            theta,
            detector,
            rounds,
            sessions,
            seed,
            z_threshold: DEFAULT_Z_THRESHOLD,
        }
    }

    /// Validates the config and precomputes the steered ensembles.
    pub fn protocol(&self) -> Result<Protocol> {
        if self.rounds == 0 {
            return Err(Error::InvalidParameter("rounds must be at least 1".into()));
        }
        if self.sessions == 0 {
            return Err(Error::InvalidParameter(
                "sessions must be at least 1".into(),
            ));
        }
        if !(self.z_threshold > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "z threshold must be positive, got {}",
                self.z_threshold
            )));
        }
        let g = CanonicalGeometry::new(self.theta)?;
        Protocol::new(g, self.detector, self.rounds, self.seed)
    }
}

/// One branch of Bob's ensemble for a given bit.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Branch {
    prob: f64,
    label: StateLabel,
    /// Probability that Bob's detector answers 0 on this branch's state.
    p0: f64,
}

/// A validated protocol: geometry, detector response and Bob's ensembles for
/// both bit values.
#[derive(Debug, Clone, PartialEq)]
pub struct Protocol {
    geometry: CanonicalGeometry,
    detector: DetectorSpec,
    branches: [[Branch; 2]; 2],
    rounds: usize,
    seed: u64,
}

impl Protocol {
    pub fn new(
        g: CanonicalGeometry,
        detector: DetectorSpec,
        rounds: usize,
        seed: u64,
    ) -> Result<Self> {
        #[allow(clippy::large_enum_variant)]
        enum Resolved {
            Physical(TwoOutcomePovm),
            Super(SuperQuantumDetector),
        }
        let resolved = match detector {
            DetectorSpec::Optimal => Resolved::Physical(optimal_detector(&g).into()),
            DetectorSpec::Projective { detector } => Resolved::Physical(detector.into()),
            DetectorSpec::Povm { povm } => Resolved::Physical(povm),
            DetectorSpec::Super {
                epsilon,
                q_other,
                q_minus_delta,
            } => Resolved::Super(SuperQuantumDetector::with_split_response(
                epsilon,
                q_other,
                q_minus_delta.unwrap_or(q_other),
                g,
            )?),
        };

        let psi = build_psi(&g);
        let labels = [
            [StateLabel::Alpha, StateLabel::Delta],
            [StateLabel::Beta, StateLabel::MinusDelta],
        ];
        let mut branches = [[Branch {
            prob: 0.0,
            label: StateLabel::Alpha,
            p0: 0.0,
        }; 2]; 2];
        for bit in [Bit::Zero, Bit::One] {
            let ensemble = steer(&psi, &alice_basis_for_bit(bit, &g)?);
            for (k, branch) in ensemble.branches.iter().enumerate() {
                let label = labels[bit.index()][k];
                let drift = branch.state.distance(&g.state(label));
                if drift > STEERING_MATCH_TOL {
                    return Err(Error::InvalidState(format!(
                        "steered branch {k} for bit {bit} misses {label} by {drift:e}"
                    )));
                }
                let p0 = match &resolved {
                    Resolved::Physical(m) => m.prob_outcome0(&branch.state.density()),
                    Resolved::Super(d) => d.prob_outcome0(label)?,
                };
                branches[bit.index()][k] = Branch {
                    prob: branch.prob,
                    label,
                    p0,
                };
            }
        }
        Ok(Protocol {
            geometry: g,
            detector,
            branches,
            rounds,
            seed,
        })
    }

    #[inline]
    pub fn geometry(&self) -> &CanonicalGeometry {
        &self.geometry
    }

    #[inline]
    pub fn detector(&self) -> &DetectorSpec {
        &self.detector
    }

    #[inline]
    pub fn rounds(&self) -> usize {
        self.rounds
    }

    #[inline]
    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Steered branch weights and labels Bob receives for `bit`.
    pub fn ensemble(&self, bit: Bit) -> [(f64, StateLabel); 2] {
        self.branches[bit.index()].map(|b| (b.prob, b.label))
    }

    /// Deterministic RNG for one `(session, bit)` pair: ChaCha8 keyed by the
    /// master seed, on stream `2·session + bit`. Streams never overlap, so
    /// results do not depend on the order sessions run in.
    pub fn session_rng(&self, session: u64, bit: Bit) -> ChaCha8Rng {
        session_rng(self.seed, session, bit)
    }
}

pub fn session_rng(seed: u64, session: u64, bit: Bit) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(session.wrapping_shl(1) | bit.index() as u64);
    rng
}

/// Alice's measurement basis for `bit`: computational for 0, primed for 1.
pub fn alice_basis_for_bit(bit: Bit, g: &CanonicalGeometry) -> Result<OrthonormalBasis> {
    match bit {
        Bit::Zero => Ok(OrthonormalBasis::COMPUTATIONAL),
        Bit::One => primed_basis(g),
    }
}

/// One copy: Alice's outcome selects Bob's branch, then Bob's detector fires.
/// Returns Bob's outcome, 0 or 1.
pub fn run_round<R: Rng + ?Sized>(bit: Bit, protocol: &Protocol, rng: &mut R) -> u8 {
    let [first, second] = &protocol.branches[bit.index()];
    let branch = if rng.random::<f64>() < first.prob {
        first
    } else {
        second
    };
    if rng.random::<f64>() < branch.p0 {
        0
    } else {
        1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decision {
    pub guess: Bit,
    pub tie_broken: bool,
}

/// Majority decoder: bit 0 if more than half the outcomes were 0, bit 1 if
/// fewer, a fair coin on an exact tie.
pub fn bob_decide<R: Rng + ?Sized>(n0: usize, rounds: usize, rng: &mut R) -> Decision {
    assert!(n0 <= rounds, "n0 = {n0} exceeds {rounds} rounds");
    match (2 * n0).cmp(&rounds) {
        std::cmp::Ordering::Greater => Decision {
            guess: Bit::Zero,
            tie_broken: false,
        },
        std::cmp::Ordering::Less => Decision {
            guess: Bit::One,
            tie_broken: false,
        },
        std::cmp::Ordering::Equal => Decision {
            guess: if rng.random::<bool>() {
                Bit::Zero
            } else {
                Bit::One
            },
            tie_broken: true,
        },
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SessionRecord {
    pub session: u64,
    pub bit_sent: Bit,
    pub n0: usize,
    pub n1: usize,
    pub bob_guess: Bit,
    pub tie_broken: bool,
}

impl SessionRecord {
    pub fn correct(&self) -> bool {
        self.bit_sent == self.bob_guess
    }
}

/// Runs `rounds` copies for one bit on the `(session, bit)` substream.
pub fn run_session(protocol: &Protocol, session: u64, bit: Bit) -> SessionRecord {
    let mut rng = protocol.session_rng(session, bit);
    let n = protocol.rounds;
    let n0 = (0..n)
        .filter(|_| run_round(bit, protocol, &mut rng) == 0)
        .count();
    let decision = bob_decide(n0, n, &mut rng);
    SessionRecord {
        session,
        bit_sent: bit,
        n0,
        n1: n - n0,
        bob_guess: decision.guess,
        tie_broken: decision.tie_broken,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorEstimate {
    pub sessions: usize,
    pub wrong: usize,
    pub ties: usize,
    pub error_rate: f64,
    pub records: Vec<SessionRecord>,
}

/// Runs `config.sessions` sessions sending `0, 1, 0, 1, …` and returns the
/// fraction Bob decoded wrongly. Sessions run in parallel; records come back
/// in session order.
pub fn estimate_bob_error(config: &ProtocolConfig) -> Result<ErrorEstimate> {
    let protocol = config.protocol()?;
    let records: Vec<SessionRecord> = (0..config.sessions as u64)
        .into_par_iter()
        .map(|s| run_session(&protocol, s, Bit::alternating(s)))
        .collect();
    let wrong = records.iter().filter(|r| !r.correct()).count();
    let ties = records.iter().filter(|r| r.tie_broken).count();
    Ok(ErrorEstimate {
        sessions: records.len(),
        wrong,
        ties,
        error_rate: wrong as f64 / records.len() as f64,
        records,
    })
}

/// Exact per-round probabilities of outcome 0 under each bit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Marginals {
    pub p0_bit0: f64,
    pub p0_bit1: f64,
    /// `p · P(0 | α)`: the part of `p0_bit0` carried by the signal branch.
    pub signal_margin_bit0: f64,
    /// `p · P(1 | β)`: the part of `1 − p0_bit1` carried by the signal branch.
    pub signal_margin_bit1: f64,
}

impl Marginals {
    pub fn gap(&self) -> f64 {
        self.p0_bit0 - self.p0_bit1
    }

    /// Smallest per-round probability that Bob's outcome equals the bit sent.
    pub fn worst_round_success(&self) -> f64 {
        self.p0_bit0.min(1.0 - self.p0_bit1)
    }
}

/// Outcome-0 marginals for both bits, summed over Alice's steered branches.
pub fn analytic_marginals(detector: &DetectorSpec, g: &CanonicalGeometry) -> Result<Marginals> {
    Ok(Protocol::new(*g, *detector, 1, 0)?.marginals())
}

impl Protocol {
    pub fn marginals(&self) -> Marginals {
        let p0 = |bit: Bit| -> f64 {
            self.branches[bit.index()]
                .iter()
                .map(|b| b.prob * b.p0)
                .sum()
        };
        let [alpha, _] = self.branches[0];
        let [beta, _] = self.branches[1];
        Marginals {
            p0_bit0: p0(Bit::Zero),
            p0_bit1: p0(Bit::One),
            signal_margin_bit0: alpha.prob * alpha.p0,
            signal_margin_bit1: beta.prob * (1.0 - beta.p0),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    NoSignal,
    Signal,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::NoSignal => "no_signal",
            Verdict::Signal => "signal",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoSignalReport {
    pub rounds: usize,
    pub n0_bit0: usize,
    pub n0_bit1: usize,
    pub freq0_bit0: f64,
    pub freq0_bit1: f64,
    /// `freq0_bit0 − freq0_bit1`
    pub gap: f64,
    pub z_statistic: f64,
    pub threshold: f64,
    pub verdict: Verdict,
}

/// Two-proportion z statistic with pooled variance for equal sample sizes.
/// Returns 0 when the pooled frequency is 0 or 1 (both samples identical).
pub fn two_proportion_z(n0_a: usize, n0_b: usize, n: usize) -> f64 {
    let (fa, fb) = (n0_a as f64 / n as f64, n0_b as f64 / n as f64);
    let pooled = 0.5 * (fa + fb);
    let se = (pooled * (1.0 - pooled) * 2.0 / n as f64).sqrt();
    if se > 0.0 {
        (fa - fb) / se
    } else {
        0.0
    }
}

/// One `rounds`-copy batch per bit; tests whether Bob's outcome-0 frequency
/// depends on Alice's choice.
pub fn no_signal_test(config: &ProtocolConfig) -> Result<NoSignalReport> {
    if config.rounds < MIN_NOSIG_ROUNDS {
        return Err(Error::InsufficientData {
            rounds: config.rounds,
            min: MIN_NOSIG_ROUNDS,
        });
    }
    let protocol = config.protocol()?;
    let [b0, b1] = [Bit::Zero, Bit::One].map(|bit| run_session(&protocol, NOSIG_SESSION, bit));
    let n = config.rounds;
    let z = two_proportion_z(b0.n0, b1.n0, n);
    let (f0, f1) = (b0.n0 as f64 / n as f64, b1.n0 as f64 / n as f64);
    Ok(NoSignalReport {
        rounds: n,
        n0_bit0: b0.n0,
        n0_bit1: b1.n0,
        freq0_bit0: f0,
        freq0_bit1: f1,
        gap: f0 - f1,
        z_statistic: z,
        threshold: config.z_threshold,
        verdict: if z.abs() > config.z_threshold {
            Verdict::Signal
        } else {
            Verdict::NoSignal
        },
    })
}

/// Hoeffding bound `exp(−2 N t²)` on the majority decoder's session error
/// when each round is correct with probability `1/2 + t`.
pub fn hoeffding_session_error(rounds: usize, margin: f64) -> f64 {
    (-2.0 * rounds as f64 * margin * margin).exp()
}

/// Rounds needed for session error at most `delta` given per-round margin
/// `t` over one half: `⌈ln(1/δ) / (2t²)⌉`.
pub fn rounds_for_session_error(margin: f64, delta: f64) -> Result<usize> {
    if !(margin > 0.0 && margin <= 0.5) || !(delta > 0.0 && delta < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "need margin in (0, 1/2] and delta in (0, 1), got {margin}, {delta}"
        )));
    }
    Ok(((1.0 / delta).ln() / (2.0 * margin * margin)).ceil() as usize)
}

/// Convenience: a projective [`DetectorSpec`].
impl From<ProjectiveDetector> for DetectorSpec {
    fn from(detector: ProjectiveDetector) -> Self {
        DetectorSpec::Projective { detector }
    }
}

impl From<TwoOutcomePovm> for DetectorSpec {
    fn from(povm: TwoOutcomePovm) -> Self {
        DetectorSpec::Povm { povm }
    }
}
