//! Single-qubit state algebra: amplitudes, Bloch vectors, density operators
//! and the canonical five-state geometry.
//!
//! A pure state `|ψ⟩` and its Bloch vector `r` are related by
//! `|ψ⟩⟨ψ| = (1 + r·σ) / 2`. Mixtures add their Bloch vectors with the
//! mixing probabilities as weights.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{inner, Mat2, ZERO};
use crate::{ALGEBRAIC_TOL, INPUT_TOL};

/// Amplitudes below this modulus are treated as zero when fixing the global
/// phase.
const PHASE_CUTOFF: f64 = 1e-12;

/// A normalized qubit state `a0|0⟩ + a1|1⟩` with canonical global phase: the
/// first amplitude of modulus above `1e-12` is real and non-negative.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PureQubitFields")]
pub struct PureQubit {
    a0: Complex64,
    a1: Complex64,
}

#[derive(Deserialize)]
struct PureQubitFields {
    a0: Complex64,
    a1: Complex64,
}

impl TryFrom<PureQubitFields> for PureQubit {
    type Error = Error;

    fn try_from(f: PureQubitFields) -> Result<Self> {
        pure_from_amplitudes(f.a0, f.a1)
    }
}

impl PureQubit {
    /// `|0⟩`
    pub const ZERO: PureQubit = PureQubit {
        a0: Complex64::new(1.0, 0.0),
        a1: ZERO,
    };

    /// `|1⟩`
    pub const ONE: PureQubit = PureQubit {
        a0: ZERO,
        a1: Complex64::new(1.0, 0.0),
    };

    pub fn new(a0: Complex64, a1: Complex64) -> Result<Self> {
        pure_from_amplitudes(a0, a1)
    }

    /// Real-amplitude state `(a0, a1)`, normalized.
    pub fn real(a0: f64, a1: f64) -> Result<Self> {
        pure_from_amplitudes(a0.into(), a1.into())
    }

    #[inline]
    pub fn a0(&self) -> Complex64 {
        self.a0
    }

    #[inline]
    pub fn a1(&self) -> Complex64 {
        self.a1
    }

    #[inline]
    pub fn amplitudes(&self) -> [Complex64; 2] {
        [self.a0, self.a1]
    }

    /// `⟨self|other⟩`
    pub fn inner(&self, other: &PureQubit) -> Complex64 {
        inner(self.amplitudes(), other.amplitudes())
    }

    pub fn bloch(&self) -> BlochVector {
        bloch_from_pure(self)
    }

    /// `|ψ⟩⟨ψ|`
    pub fn projector(&self) -> Mat2 {
        Mat2::outer(self.amplitudes(), self.amplitudes())
    }

    pub fn density(&self) -> DensityOperator {
        DensityOperator(self.projector())
    }

    /// Largest modulus difference between amplitudes.
    pub fn distance(&self, other: &PureQubit) -> f64 {
        (self.a0 - other.a0).norm().max((self.a1 - other.a1).norm())
    }
}

impl fmt::Display for PureQubit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a0, self.a1)
    }
}

/// Normalizes `(a0, a1)` and removes the global phase.
pub fn pure_from_amplitudes(a0: Complex64, a1: Complex64) -> Result<PureQubit> {
    let n2 = a0.norm_sqr() + a1.norm_sqr();
    if !(n2 > 1e-24) || !n2.is_finite() {
        return Err(Error::ZeroVector);
    }
    let n = n2.sqrt();
    let (b0, b1) = (a0 / n, a1 / n);
    let pivot = if b0.norm() > PHASE_CUTOFF { b0 } else { b1 };
    let phase = pivot.conj() / pivot.norm();
    let (mut c0, mut c1) = (b0 * phase, b1 * phase);
    // The pivot is now real by construction; drop the rounding residue.
    if b0.norm() > PHASE_CUTOFF {
        c0 = Complex64::new(c0.re.max(0.0), 0.0);
    } else {
        c1 = Complex64::new(c1.re.max(0.0), 0.0);
    }
    Ok(PureQubit { a0: c0, a1: c1 })
}

/// A real 3-vector inside the unit ball.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "BlochFields")]
pub struct BlochVector {
    x: f64,
    y: f64,
    z: f64,
}

#[derive(Deserialize)]
struct BlochFields {
    x: f64,
    y: f64,
    z: f64,
}

impl TryFrom<BlochFields> for BlochVector {
    type Error = Error;

    fn try_from(f: BlochFields) -> Result<Self> {
        BlochVector::new(f.x, f.y, f.z)
    }
}

impl BlochVector {
    pub const ORIGIN: BlochVector = BlochVector::raw(0.0, 0.0, 0.0);
    pub const PLUS_X: BlochVector = BlochVector::raw(1.0, 0.0, 0.0);
    pub const PLUS_Y: BlochVector = BlochVector::raw(0.0, 1.0, 0.0);
    pub const PLUS_Z: BlochVector = BlochVector::raw(0.0, 0.0, 1.0);

    const fn raw(x: f64, y: f64, z: f64) -> Self {
        BlochVector { x, y, z }
    }

    /// Fails with `InvalidState` outside the Bloch ball.
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let v = BlochVector::raw(x, y, z);
        let n = v.norm();
        if !n.is_finite() || n > 1.0 + ALGEBRAIC_TOL {
            return Err(Error::InvalidState(format!(
                "Bloch vector ({x}, {y}, {z}) has norm {n} > 1"
            )));
        }
        Ok(v)
    }

    /// The unit vector along `(x, y, z)`.
    pub fn direction(x: f64, y: f64, z: f64) -> Result<Self> {
        let n = (x * x + y * y + z * z).sqrt();
        if !(n > PHASE_CUTOFF) || !n.is_finite() {
            return Err(Error::ZeroVector);
        }
        Ok(BlochVector::raw(x / n, y / n, z / n))
    }

    pub(crate) fn from_array_unchecked(v: [f64; 3]) -> Self {
        BlochVector::raw(v[0], v[1], v[2])
    }

    #[inline]
    pub fn x(&self) -> f64 {
        self.x
    }

    #[inline]
    pub fn y(&self) -> f64 {
        self.y
    }

    #[inline]
    pub fn z(&self) -> f64 {
        self.z
    }

    #[inline]
    pub fn to_array(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn dot(&self, other: &BlochVector) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn is_pure(&self) -> bool {
        (self.norm() - 1.0).abs() < ALGEBRAIC_TOL
    }

    pub fn neg(&self) -> BlochVector {
        BlochVector::raw(-self.x, -self.y, -self.z)
    }

    /// Angle in `[0, π]` between two nonzero vectors.
    pub fn angle_to(&self, other: &BlochVector) -> f64 {
        let [a, b, c] = self.to_array();
        let [d, e, f] = other.to_array();
        let cross = [b * f - c * e, c * d - a * f, a * e - b * d];
        let sin = (cross[0] * cross[0] + cross[1] * cross[1] + cross[2] * cross[2]).sqrt();
        sin.atan2(self.dot(other))
    }

    /// Largest componentwise difference.
    pub fn distance(&self, other: &BlochVector) -> f64 {
        (self.x - other.x)
            .abs()
            .max((self.y - other.y).abs())
            .max((self.z - other.z).abs())
    }

    /// `(1 + r·σ) / 2`
    pub fn density(&self) -> DensityOperator {
        DensityOperator(density_matrix(self.to_array()))
    }
}

impl fmt::Display for BlochVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

pub(crate) fn density_matrix(r: [f64; 3]) -> Mat2 {
    let [x, y, z] = r;
    Mat2::new(
        Complex64::new(0.5 * (1.0 + z), 0.0),
        Complex64::new(0.5 * x, -0.5 * y),
        Complex64::new(0.5 * x, 0.5 * y),
        Complex64::new(0.5 * (1.0 - z), 0.0),
    )
}

/// Bloch vector of a pure state: `x + iy = 2 a0* a1`, `z = |a0|² − |a1|²`.
pub fn bloch_from_pure(q: &PureQubit) -> BlochVector {
    let coherence = q.a0.conj() * q.a1 * 2.0;
    BlochVector::raw(
        coherence.re,
        coherence.im,
        q.a0.norm_sqr() - q.a1.norm_sqr(),
    )
}

/// Inverse of [`bloch_from_pure`]. Vectors within `1e-9` of the unit sphere
/// are renormalized first; anything else is rejected with `NotPure`.
pub fn pure_from_bloch(v: &BlochVector) -> Result<PureQubit> {
    let n = v.norm();
    if !((n - 1.0).abs() < INPUT_TOL) {
        return Err(Error::NotPure { norm: n });
    }
    let [x, y, z] = [v.x / n, v.y / n, v.z / n];
    let transverse = x.hypot(y);
    let (a0, a1) = if z >= 0.0 {
        let a0 = (0.5 * (1.0 + z)).sqrt();
        (Complex64::new(a0, 0.0), Complex64::new(x, y) / (2.0 * a0))
    } else {
        let s = (0.5 * (1.0 - z)).sqrt();
        let phase = if transverse > 0.0 {
            Complex64::new(x, y) / transverse
        } else {
            Complex64::new(1.0, 0.0)
        };
        (Complex64::new(transverse / (2.0 * s), 0.0), phase * s)
    };
    pure_from_amplitudes(a0, a1)
}

/// `|⟨q1|q2⟩|²`, clamped to `[0, 1]`.
pub fn overlap(q1: &PureQubit, q2: &PureQubit) -> f64 {
    q1.inner(q2).norm_sqr().clamp(0.0, 1.0)
}

/// A validated qubit density operator: Hermitian, unit trace, positive
/// semidefinite, each within `1e-12`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Mat2", into = "Mat2")]
pub struct DensityOperator(Mat2);

impl TryFrom<Mat2> for DensityOperator {
    type Error = Error;

    fn try_from(m: Mat2) -> Result<Self> {
        DensityOperator::new(m)
    }
}

impl From<DensityOperator> for Mat2 {
    fn from(d: DensityOperator) -> Mat2 {
        d.0
    }
}

impl DensityOperator {
    pub fn new(m: Mat2) -> Result<Self> {
        let herm = m.hermiticity_defect();
        if !(herm < ALGEBRAIC_TOL) {
            return Err(Error::InvalidState(format!(
                "not Hermitian (defect {herm:e})"
            )));
        }
        let tr = m.trace();
        if !((tr - 1.0).norm() < ALGEBRAIC_TOL) {
            return Err(Error::InvalidState(format!("trace {tr} != 1")));
        }
        let [lo, _] = m.hermitian_eigenvalues();
        if lo < -ALGEBRAIC_TOL {
            return Err(Error::InvalidState(format!("negative eigenvalue {lo:e}")));
        }
        Ok(DensityOperator(m))
    }

    /// Caller guarantees the invariants.
    pub(crate) fn from_matrix_unchecked(m: Mat2) -> Self {
        DensityOperator(m)
    }

    pub fn maximally_mixed() -> Self {
        DensityOperator(Mat2::identity().scale(0.5))
    }

    #[inline]
    pub fn matrix(&self) -> &Mat2 {
        &self.0
    }

    pub fn bloch(&self) -> BlochVector {
        BlochVector::from_array_unchecked(self.0.pauli_components())
    }

    pub fn eigenvalues(&self) -> [f64; 2] {
        self.0.hermitian_eigenvalues()
    }

    pub fn max_abs_diff(&self, other: &DensityOperator) -> f64 {
        self.0.max_abs_diff(&other.0)
    }

    /// `tr(ρ²)`
    pub fn purity(&self) -> f64 {
        (self.0 * self.0).trace().re
    }
}

/// `Σ pᵢ |ψᵢ⟩⟨ψᵢ|`
pub fn density_from_mixture(parts: &[(f64, PureQubit)]) -> Result<DensityOperator> {
    check_distribution(parts.iter().map(|(p, _)| *p))?;
    let m = parts
        .iter()
        .fold(Mat2::zero(), |acc, (p, q)| acc + q.projector().scale(*p));
    DensityOperator::new(m)
}

pub(crate) fn check_distribution(probs: impl Iterator<Item = f64>) -> Result<()> {
    let mut total = 0.0;
    let mut count = 0usize;
    for p in probs {
        if !p.is_finite() || p < 0.0 {
            return Err(Error::BadDistribution(format!(
                "probability {p} is negative"
            )));
        }
        total += p;
        count += 1;
    }
    if count == 0 {
        return Err(Error::BadDistribution("no components".into()));
    }
    if !((total - 1.0).abs() < ALGEBRAIC_TOL) {
        return Err(Error::BadDistribution(format!(
            "probabilities sum to {total}"
        )));
    }
    Ok(())
}

/// Names of the states in [`CanonicalGeometry`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StateLabel {
    Alpha,
    Beta,
    Gamma,
    Delta,
    MinusDelta,
}

impl StateLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            StateLabel::Alpha => "alpha",
            StateLabel::Beta => "beta",
            StateLabel::Gamma => "gamma",
            StateLabel::Delta => "delta",
            StateLabel::MinusDelta => "minus_delta",
        }
    }
}

impl fmt::Display for StateLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for StateLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "alpha" | "a" => Ok(StateLabel::Alpha),
            "beta" | "b" => Ok(StateLabel::Beta),
            "gamma" | "g" => Ok(StateLabel::Gamma),
            "delta" | "d" => Ok(StateLabel::Delta),
            "minus_delta" | "-delta" | "-d" => Ok(StateLabel::MinusDelta),
            _ => Err(Error::UnknownLabel(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeometryState {
    pub state: PureQubit,
    pub bloch: BlochVector,
}

impl GeometryState {
    fn new(state: PureQubit) -> Self {
        GeometryState {
            state,
            bloch: state.bloch(),
        }
    }
}

/// The family `{α, β, γ, δ, −δ}` for a half-angle `θ ∈ (0, π/2)`, placed in
/// the x–z plane of the Bloch sphere:
///
/// * `r_γ = +ẑ` bisects `r_α = (sin θ, 0, cos θ)` and `r_β = (−sin θ, 0, cos θ)`,
///   so the angle between `r_α` and `r_β` is `2θ` and `|⟨α|β⟩|² = cos²θ`;
/// * `r_δ = −x̂` is orthogonal to `r_γ` and at angle `π/2 + θ` from `r_α`;
/// * `r_{−δ} = −r_δ`.
///
/// `p = 1 / (1 + sin θ)` is the weight of the α (or β) branch.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CanonicalGeometry {
    theta: f64,
    alpha: GeometryState,
    beta: GeometryState,
    gamma: GeometryState,
    delta: GeometryState,
    minus_delta: GeometryState,
    p: f64,
}

pub fn canonical_geometry(theta: f64) -> Result<CanonicalGeometry> {
    CanonicalGeometry::new(theta)
}

impl CanonicalGeometry {
    pub fn new(theta: f64) -> Result<Self> {
        if !(theta > 0.0 && theta < std::f64::consts::FRAC_PI_2) {
            return Err(Error::OutOfDomain {
                what: "theta",
                value: theta,
                domain: "(0, pi/2)",
            });
        }
        let (s, c) = (0.5 * theta).sin_cos();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let alpha = PureQubit::real(c, s)?;
        let beta = PureQubit::real(c, -s)?;
        let gamma = PureQubit::ZERO;
        let delta = PureQubit::real(h, -h)?;
        let minus_delta = PureQubit::real(h, h)?;

        // r_{-δ} is the exact negation of r_δ rather than a recomputation.
        let delta = GeometryState::new(delta);
        let minus_delta = GeometryState {
            state: minus_delta,
            bloch: delta.bloch.neg(),
        };
        Ok(CanonicalGeometry {
            theta,
            alpha: GeometryState::new(alpha),
            beta: GeometryState::new(beta),
            gamma: GeometryState::new(gamma),
            delta,
            minus_delta,
            p: 1.0 / (1.0 + theta.sin()),
        })
    }

    /// Geometry whose α/β overlap equals `overlap`, via `θ = arccos √overlap`.
    pub fn from_overlap(overlap: f64) -> Result<Self> {
        if !(overlap > 0.0 && overlap < 1.0) {
            return Err(Error::OutOfDomain {
                what: "overlap",
                value: overlap,
                domain: "(0, 1)",
            });
        }
        CanonicalGeometry::new(overlap.sqrt().acos())
    }

    #[inline]
    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// Weight of the signal branch, `1 / (1 + sin θ)`.
    #[inline]
    pub fn p(&self) -> f64 {
        self.p
    }

    /// `|⟨α|β⟩|² = cos²θ`
    pub fn overlap(&self) -> f64 {
        let c = self.theta.cos();
        c * c
    }

    pub fn get(&self, label: StateLabel) -> &GeometryState {
        match label {
            StateLabel::Alpha => &self.alpha,
            StateLabel::Beta => &self.beta,
            StateLabel::Gamma => &self.gamma,
            StateLabel::Delta => &self.delta,
            StateLabel::MinusDelta => &self.minus_delta,
        }
    }

    pub fn state(&self, label: StateLabel) -> PureQubit {
        self.get(label).state
    }

    pub fn bloch(&self, label: StateLabel) -> BlochVector {
        self.get(label).bloch
    }

    pub fn alpha(&self) -> PureQubit {
        self.alpha.state
    }

    pub fn beta(&self) -> PureQubit {
        self.beta.state
    }

    pub fn gamma(&self) -> PureQubit {
        self.gamma.state
    }

    pub fn delta(&self) -> PureQubit {
        self.delta.state
    }

    pub fn minus_delta(&self) -> PureQubit {
        self.minus_delta.state
    }

    /// The constant `C > 0` with `r_γ = C (r_α + r_β)`.
    pub fn bisector_scale(&self) -> f64 {
        let a = self.alpha.bloch.to_array();
        let b = self.beta.bloch.to_array();
        let sum = [a[0] + b[0], a[1] + b[1], a[2] + b[2]];
        1.0 / (sum[0] * sum[0] + sum[1] * sum[1] + sum[2] * sum[2]).sqrt()
    }

    /// Bloch vector of Bob's reduced state, `p r_α + (1 − p) r_δ`.
    pub fn mixture_bloch(&self) -> BlochVector {
        let p = self.p;
        let a = self.alpha.bloch.to_array();
        let d = self.delta.bloch.to_array();
        BlochVector::from_array_unchecked([
            p * a[0] + (1.0 - p) * d[0],
            p * a[1] + (1.0 - p) * d[1],
            p * a[2] + (1.0 - p) * d[2],
        ])
    }
}
