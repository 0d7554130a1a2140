//! Minimum-error discrimination of two equiprobable pure qubits.
//!
//! For states with overlap `|⟨α|β⟩|²` the smallest achievable error is
//! `(1 − √(1 − overlap)) / 2`, reached by the projective measurement along
//! `r_α − r_β`. Any quantum two-outcome detector is a [`BinaryMeasurement`];
//! the [`SuperQuantumDetector`] is a behavioural table that beats the bound by
//! `epsilon` and is used to drive the signaling protocol.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bloch::{density_matrix, BlochVector, CanonicalGeometry, DensityOperator, StateLabel};
use crate::error::{Error, Result};
use crate::linalg::Mat2;
use crate::ALGEBRAIC_TOL;

/// Minimum number of projective axes scanned by [`oracle_min_error`].
pub const MIN_ORACLE_GRID: usize = 1000;

/// `(1 − √(1 − overlap)) / 2` for `overlap ∈ [0, 1]`.
pub fn helstrom_bound(overlap: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&overlap) {
        return Err(Error::OutOfDomain {
            what: "overlap",
            value: overlap,
            domain: "[0, 1]",
        });
    }
    Ok(0.5 * (1.0 - (1.0 - overlap).sqrt()))
}

/// Helstrom bound for the α/β pair of `g`.
pub fn geometry_bound(g: &CanonicalGeometry) -> f64 {
    // overlap() is cos²θ and always in range
    0.5 * (1.0 - (1.0 - g.overlap()).sqrt())
}

/// A two-outcome quantum measurement, described by its outcome-0 effect.
pub trait BinaryMeasurement {
    fn outcome0_effect(&self) -> Mat2;

    /// Born probability `tr(E0 ρ)` of outcome 0.
    fn prob_outcome0(&self, rho: &DensityOperator) -> f64 {
        born(&self.outcome0_effect(), rho)
    }
}

fn born(effect: &Mat2, rho: &DensityOperator) -> f64 {
    let p = (*effect * *rho.matrix()).trace().re;
    debug_assert!(
        (-ALGEBRAIC_TOL..=1.0 + ALGEBRAIC_TOL).contains(&p),
        "Born probability {p} out of range"
    );
    p.clamp(0.0, 1.0)
}

/// Projective measurement along a unit Bloch axis `n`: outcome 0 is the
/// projector `(1 + n·σ)/2`, outcome 1 its complement.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProjectiveDetector {
    axis: BlochVector,
}

impl ProjectiveDetector {
    pub fn new(axis: BlochVector) -> Result<Self> {
        if !axis.is_pure() {
            return Err(Error::InvalidDetector(format!(
                "projective axis must be a unit vector, got norm {}",
                axis.norm()
            )));
        }
        Ok(ProjectiveDetector { axis })
    }

    /// Detector along the direction of `(x, y, z)`, normalized.
    pub fn along(x: f64, y: f64, z: f64) -> Result<Self> {
        let axis = BlochVector::direction(x, y, z)
            .map_err(|_| Error::InvalidDetector("projective axis is the zero vector".into()))?;
        ProjectiveDetector::new(axis)
    }

    #[inline]
    pub fn axis(&self) -> BlochVector {
        self.axis
    }

    /// Same measurement with the outcome labels swapped.
    pub fn flipped(&self) -> Self {
        ProjectiveDetector {
            axis: self.axis.neg(),
        }
    }

    /// `(1 + n·r) / 2`, evaluated directly on Bloch vectors.
    pub fn prob_outcome0_bloch(&self, r: &BlochVector) -> f64 {
        (0.5 * (1.0 + self.axis.dot(r))).clamp(0.0, 1.0)
    }
}

impl BinaryMeasurement for ProjectiveDetector {
    fn outcome0_effect(&self) -> Mat2 {
        density_matrix(self.axis.to_array())
    }
}

/// A general two-outcome POVM `{E0, 1 − E0}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Mat2", into = "Mat2")]
pub struct TwoOutcomePovm {
    e0: Mat2,
}

impl TryFrom<Mat2> for TwoOutcomePovm {
    type Error = Error;

    fn try_from(m: Mat2) -> Result<Self> {
        TwoOutcomePovm::new(m)
    }
}

impl From<TwoOutcomePovm> for Mat2 {
    fn from(p: TwoOutcomePovm) -> Mat2 {
        p.e0
    }
}

impl TwoOutcomePovm {
    /// Validates that `e0` is Hermitian with spectrum in `[0, 1]`, so that
    /// both `e0` and `1 − e0` are effects.
    pub fn new(e0: Mat2) -> Result<Self> {
        let herm = e0.hermiticity_defect();
        if !(herm < ALGEBRAIC_TOL) {
            return Err(Error::InvalidDetector(format!(
                "effect is not Hermitian (defect {herm:e})"
            )));
        }
        let [lo, hi] = e0.hermitian_eigenvalues();
        if lo < -ALGEBRAIC_TOL || hi > 1.0 + ALGEBRAIC_TOL {
            return Err(Error::InvalidDetector(format!(
                "effect eigenvalues ({lo}, {hi}) leave [0, 1]"
            )));
        }
        Ok(TwoOutcomePovm { e0 })
    }

    /// `E0 = t·P(n) + s·P(−n)` with `t, s ∈ [0, 1]`, where `P(n)` is the
    /// projector onto Bloch direction `n`. Every qubit two-outcome POVM has
    /// this form.
    pub fn from_weights(t: f64, s: f64, n: &BlochVector) -> Result<Self> {
        if !(0.0..=1.0).contains(&t) || !(0.0..=1.0).contains(&s) {
            return Err(Error::InvalidDetector(format!(
                "weights ({t}, {s}) must lie in [0, 1]"
            )));
        }
        let plus = density_matrix(n.to_array());
        let minus = density_matrix(n.neg().to_array());
        TwoOutcomePovm::new(plus.scale(t) + minus.scale(s))
    }

    #[inline]
    pub fn effect(&self) -> &Mat2 {
        &self.e0
    }

    pub fn complement(&self) -> Mat2 {
        Mat2::identity() - self.e0
    }
}

impl BinaryMeasurement for TwoOutcomePovm {
    fn outcome0_effect(&self) -> Mat2 {
        self.e0
    }
}

impl From<ProjectiveDetector> for TwoOutcomePovm {
    fn from(d: ProjectiveDetector) -> Self {
        TwoOutcomePovm {
            e0: d.outcome0_effect(),
        }
    }
}

/// `tr(E0 ρ)`.
pub fn povm_outcome_probability(povm: &TwoOutcomePovm, state: &DensityOperator) -> f64 {
    povm.prob_outcome0(state)
}

/// The optimal detector: projective along `(r_α − r_β)/|r_α − r_β|`.
pub fn optimal_detector(g: &CanonicalGeometry) -> ProjectiveDetector {
    let a = g.bloch(StateLabel::Alpha).to_array();
    let b = g.bloch(StateLabel::Beta).to_array();
    ProjectiveDetector::along(a[0] - b[0], a[1] - b[1], a[2] - b[2])
        .expect("alpha and beta are distinct on the open theta interval")
}

/// Error probability with equal priors: `½ P(1 | α) + ½ P(0 | β)`.
pub fn detector_error<M: BinaryMeasurement + ?Sized>(d: &M, g: &CanonicalGeometry) -> f64 {
    let on_alpha = d.prob_outcome0(&g.alpha().density());
    let on_beta = d.prob_outcome0(&g.beta().density());
    0.5 * (1.0 - on_alpha) + 0.5 * on_beta
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleResult {
    /// Smallest error over everything sampled.
    pub min_error: f64,
    /// Bloch axis of the best detector (for a POVM, the axis `n` of its
    /// effect).
    pub argmin_axis: BlochVector,
    /// Best error over the projective grid alone.
    pub projective_min: f64,
    pub projective_argmin: BlochVector,
    /// Best error over the random POVMs alone, if any were sampled.
    pub povm_min: Option<f64>,
}

/// Brute-force search for the minimum error: a uniform grid of
/// `grid_points` projective axes in the α–β (x–z) plane, followed by
/// `povm_samples` random POVMs `t·P(n) + s·P(−n)` with `t, s` uniform on
/// `[0, 1]` and `n` uniform on the sphere. Deterministic for a fixed `seed`.
pub fn oracle_min_error(
    g: &CanonicalGeometry,
    grid_points: usize,
    povm_samples: usize,
    seed: u64,
) -> Result<OracleResult> {
    if grid_points < MIN_ORACLE_GRID {
        return Err(Error::InvalidParameter(format!(
            "grid_points = {grid_points}, need at least {MIN_ORACLE_GRID}"
        )));
    }

    let mut projective_min = f64::INFINITY;
    let mut projective_argmin = BlochVector::PLUS_Z;
    for k in 0..grid_points {
        let phi = 2.0 * PI * k as f64 / grid_points as f64;
        let (s, c) = phi.sin_cos();
        let d = ProjectiveDetector::along(s, 0.0, c)?;
        let e = detector_error(&d, g);
        if e < projective_min {
            projective_min = e;
            projective_argmin = d.axis();
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut povm_min = f64::INFINITY;
    let mut povm_argmin = BlochVector::PLUS_Z;
    for _ in 0..povm_samples {
        let n = random_unit_vector(&mut rng);
        let t: f64 = rng.random();
        let s: f64 = rng.random();
        let povm = TwoOutcomePovm::from_weights(t, s, &n)?;
        let e = detector_error(&povm, g);
        if e < povm_min {
            povm_min = e;
            povm_argmin = n;
        }
    }

    let (min_error, argmin_axis) = if povm_min < projective_min {
        (povm_min, povm_argmin)
    } else {
        (projective_min, projective_argmin)
    };
    Ok(OracleResult {
        min_error,
        argmin_axis,
        projective_min,
        projective_argmin,
        povm_min: (povm_samples > 0).then_some(povm_min),
    })
}

/// Uniform direction on the unit sphere.
pub fn random_unit_vector<R: Rng + ?Sized>(rng: &mut R) -> BlochVector {
    let z: f64 = rng.random_range(-1.0..=1.0);
    let phi: f64 = rng.random_range(0.0..2.0 * PI);
    let rho = (1.0 - z * z).max(0.0).sqrt();
    BlochVector::from_array_unchecked([rho * phi.cos(), rho * phi.sin(), z])
}

/// Random two-outcome POVM drawn from the same distribution the oracle uses.
pub fn random_povm<R: Rng + ?Sized>(rng: &mut R) -> TwoOutcomePovm {
    let n = random_unit_vector(rng);
    let t: f64 = rng.random();
    let s: f64 = rng.random();
    TwoOutcomePovm::from_weights(t, s, &n).expect("weights drawn from [0, 1)")
}

/// A hypothetical detector that errs on α and β with probability
/// `P_E^m − epsilon`, strictly below the Helstrom bound.
///
/// Off the α/β pair its behaviour is unconstrained: it answers 0 on δ with
/// probability `q_other` and on −δ with `q_minus_delta` (equal to `q_other`
/// unless configured with [`SuperQuantumDetector::with_split_response`]).
/// The split `(0, 1)` is the response least favourable to Bob.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SuperQuantumDetector {
    epsilon: f64,
    q_other: f64,
    q_minus_delta: f64,
    geometry: CanonicalGeometry,
}

impl SuperQuantumDetector {
    pub const DEFAULT_Q_OTHER: f64 = 0.5;

    pub fn new(epsilon: f64, q_other: f64, geometry: CanonicalGeometry) -> Result<Self> {
        Self::with_split_response(epsilon, q_other, q_other, geometry)
    }

    pub fn with_split_response(
        epsilon: f64,
        q_delta: f64,
        q_minus_delta: f64,
        geometry: CanonicalGeometry,
    ) -> Result<Self> {
        let bound = geometry_bound(&geometry);
        if !(epsilon > 0.0 && epsilon <= bound + ALGEBRAIC_TOL) {
            return Err(Error::InvalidDetector(format!(
                "epsilon = {epsilon} must lie in (0, {bound}]"
            )));
        }
        for q in [q_delta, q_minus_delta] {
            if !(0.0..=1.0).contains(&q) {
                return Err(Error::InvalidDetector(format!(
                    "off-design response {q} must lie in [0, 1]"
                )));
            }
        }
        Ok(SuperQuantumDetector {
            epsilon,
            q_other: q_delta,
            q_minus_delta,
            geometry,
        })
    }

    /// Off-design response least favourable to Bob: never 0 on δ, always 0
    /// on −δ.
    pub fn worst_case(epsilon: f64, geometry: CanonicalGeometry) -> Result<Self> {
        Self::with_split_response(epsilon, 0.0, 1.0, geometry)
    }

    #[inline]
    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// Outcome-0 probability on δ.
    #[inline]
    pub fn q_other(&self) -> f64 {
        self.q_other
    }

    /// Outcome-0 probability on −δ.
    #[inline]
    pub fn q_minus_delta(&self) -> f64 {
        self.q_minus_delta
    }

    #[inline]
    pub fn geometry(&self) -> &CanonicalGeometry {
        &self.geometry
    }

    /// The claimed error probability `P_E = P_E^m − epsilon`, floored at 0.
    pub fn error_probability(&self) -> f64 {
        (geometry_bound(&self.geometry) - self.epsilon).max(0.0)
    }

    pub fn prob_outcome0(&self, label: StateLabel) -> Result<f64> {
        let pe = self.error_probability();
        match label {
            StateLabel::Alpha => Ok(1.0 - pe),
            StateLabel::Beta => Ok(pe),
            StateLabel::Delta => Ok(self.q_other),
            StateLabel::MinusDelta => Ok(self.q_minus_delta),
            StateLabel::Gamma => Err(Error::UnknownLabel(label.to_string())),
        }
    }
}

/// Outcome-0 probability of the behavioural table for `label`.
pub fn behavioral_response(d: &SuperQuantumDetector, label: StateLabel) -> Result<f64> {
    d.prob_outcome0(label)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bloch::{PureQubit, StateLabel};
    use num_complex::Complex64;
    use proptest::prelude::*;
    use std::f64::consts::FRAC_PI_4;

    const PI_6: f64 = PI / 6.0;

    /// Trace-norm route: `P_E^m = ½ (1 − ‖½ρα − ½ρβ‖₁)`, with the trace norm
    /// taken from the eigenvalues of the Hermitian difference.
    fn trace_norm_bound(a: &PureQubit, b: &PureQubit) -> f64 {
        let diff = (a.projector() - b.projector()).scale(0.5);
        let [lo, hi] = diff.hermitian_eigenvalues();
        0.5 * (1.0 - (lo.abs() + hi.abs()))
    }

    /// Independent brute force: scan projective axes on a fine grid in the
    /// x–z plane using the Bloch-dot error expression.
    fn grid_min(g: &CanonicalGeometry, n: usize) -> f64 {
        let a = g.bloch(StateLabel::Alpha);
        let b = g.bloch(StateLabel::Beta);
        (0..n)
            .map(|k| {
                let phi = 2.0 * PI * (k as f64 + 0.37) / n as f64;
                let axis = BlochVector::from_array_unchecked([phi.sin(), 0.0, phi.cos()]);
                0.5 * (1.0 - 0.5 * (1.0 + axis.dot(&a))) + 0.5 * (0.5 * (1.0 + axis.dot(&b)))
            })
            .fold(f64::INFINITY, f64::min)
    }

    #[test]
    fn bound_examples() {
        assert_eq!(helstrom_bound(0.0).unwrap(), 0.0);
        assert_eq!(helstrom_bound(1.0).unwrap(), 0.5);
        let g = CanonicalGeometry::new(PI_6).unwrap();
        let brute = grid_min(&g, 200_000);
        assert!((brute - 0.25).abs() < 1e-9, "{brute}");
        assert!((helstrom_bound(0.75).unwrap() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn bound_domain() {
        for o in [-1e-9, 1.0 + 1e-9, f64::NAN, 2.0] {
            assert!(matches!(helstrom_bound(o), Err(Error::OutOfDomain { .. })));
        }
    }

    #[test]
    fn bound_agrees_with_trace_norm() {
        for k in 1..=31 {
            let g = CanonicalGeometry::new(0.05 * k as f64).unwrap();
            let closed = helstrom_bound(g.overlap()).unwrap();
            let tn = trace_norm_bound(&g.alpha(), &g.beta());
            assert!(
                (closed - tn).abs() < 1e-12,
                "theta {}: {closed} vs {tn}",
                g.theta()
            );
        }
    }

    #[test]
    fn bound_is_monotone() {
        let mut prev = -1.0;
        for k in 0..=1000 {
            let v = helstrom_bound(k as f64 / 1000.0).unwrap();
            assert!(v >= prev && (0.0..=0.5).contains(&v));
            prev = v;
        }
    }

    #[test]
    fn optimal_detector_examples() {
        let g = CanonicalGeometry::new(PI_6).unwrap();
        let d = optimal_detector(&g);
        assert!(d.axis().distance(&BlochVector::PLUS_X) < 1e-15);
        assert!((detector_error(&d, &g) - 0.25).abs() < 1e-12);

        let g = CanonicalGeometry::new(FRAC_PI_4).unwrap();
        let expected = 0.5 * (1.0 - FRAC_PI_4.sin());
        assert!((expected - 0.146_446_609_406_726_24).abs() < 1e-15);
        assert!((detector_error(&optimal_detector(&g), &g) - expected).abs() < 1e-12);

        for k in 1..=31 {
            let g = CanonicalGeometry::new(0.05 * k as f64).unwrap();
            let d = optimal_detector(&g);
            assert!(d.axis().dot(&g.bloch(StateLabel::Gamma)).abs() < 1e-15);
            let err = detector_error(&d, &g);
            assert!((err - helstrom_bound(g.overlap()).unwrap()).abs() < 1e-12);
        }
    }

    #[test]
    fn detector_error_examples() {
        let g = CanonicalGeometry::new(PI_6).unwrap();
        let bisector = ProjectiveDetector::new(BlochVector::PLUS_Z).unwrap();
        assert!((detector_error(&bisector, &g) - 0.5).abs() < 1e-15);

        let swapped = ProjectiveDetector::new(BlochVector::PLUS_X.neg()).unwrap();
        // 1/2 + (r_β − r_α)·n / 4 with n = −x̂
        let a = g.bloch(StateLabel::Alpha);
        let b = g.bloch(StateLabel::Beta);
        let oracle = 0.5 + (a.x() - b.x()) / 4.0;
        assert!((oracle - 0.75).abs() < 1e-15);
        assert!((detector_error(&swapped, &g) - 0.75).abs() < 1e-12);
    }

    #[test]
    fn projective_and_povm_paths_agree() {
        let d = ProjectiveDetector::along(0.3, -0.4, 0.5).unwrap();
        let povm = TwoOutcomePovm::from(d);
        let r = BlochVector::new(0.1, 0.2, -0.6).unwrap();
        assert!((d.prob_outcome0_bloch(&r) - povm.prob_outcome0(&r.density())).abs() < 1e-15);
    }

    #[test]
    fn povm_probability_examples() {
        let half = TwoOutcomePovm::new(Mat2::identity().scale(0.5)).unwrap();
        let r = BlochVector::new(0.2, -0.7, 0.1).unwrap();
        assert!((povm_outcome_probability(&half, &r.density()) - 0.5).abs() < 1e-15);

        let zero = TwoOutcomePovm::new(PureQubit::ZERO.projector()).unwrap();
        assert_eq!(
            povm_outcome_probability(&zero, &PureQubit::ZERO.density()),
            1.0
        );

        let e = TwoOutcomePovm::from_weights(0.3, 0.1, &BlochVector::PLUS_X).unwrap();
        let delta = CanonicalGeometry::new(PI_6).unwrap().delta().density();
        assert!((povm_outcome_probability(&e, &delta) - 0.1).abs() < 1e-15);
    }

    #[test]
    fn invalid_effects_rejected() {
        let c = |re: f64| Complex64::new(re, 0.0);
        let too_big = Mat2::diag(1.2, 0.5);
        let negative = Mat2::diag(-0.1, 0.5);
        let skew = Mat2::new(c(0.5), c(0.2), c(-0.2), c(0.5));
        for m in [too_big, negative, skew] {
            assert!(matches!(
                TwoOutcomePovm::new(m),
                Err(Error::InvalidDetector(_))
            ));
        }
        assert!(TwoOutcomePovm::from_weights(1.1, 0.0, &BlochVector::PLUS_Z).is_err());
        assert!(ProjectiveDetector::new(BlochVector::new(0.5, 0.0, 0.0).unwrap()).is_err());
        assert!(ProjectiveDetector::along(0.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn oracle_examples() {
        let g = CanonicalGeometry::new(PI_6).unwrap();
        let r = oracle_min_error(&g, 10_000, 10_000, 7).unwrap();
        assert!((r.min_error - 0.25).abs() < 1e-6);
        assert!(r.min_error >= 0.25 - 1e-12);
        assert!(r.povm_min.unwrap() >= 0.25 - 1e-12);
        assert!(r.projective_argmin.distance(&BlochVector::PLUS_X) < 1e-3);

        let g = CanonicalGeometry::new(FRAC_PI_4).unwrap();
        let r = oracle_min_error(&g, 10_000, 0, 7).unwrap();
        assert!((r.min_error - 0.146_446_609_406_726_24).abs() < 1e-6);
        assert!(r.povm_min.is_none());
    }

    #[test]
    fn oracle_is_deterministic_and_checks_grid() {
        let g = CanonicalGeometry::new(0.9).unwrap();
        let a = oracle_min_error(&g, 1000, 500, 99).unwrap();
        let b = oracle_min_error(&g, 1000, 500, 99).unwrap();
        assert_eq!(a, b);
        assert!(matches!(
            oracle_min_error(&g, 999, 10, 0),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn behavioral_examples() {
        let g = CanonicalGeometry::new(PI_6).unwrap();
        let d = SuperQuantumDetector::new(0.05, 0.5, g).unwrap();
        assert!((behavioral_response(&d, StateLabel::Alpha).unwrap() - 0.8).abs() < 1e-12);
        assert!((behavioral_response(&d, StateLabel::Beta).unwrap() - 0.2).abs() < 1e-12);
        assert_eq!(behavioral_response(&d, StateLabel::Delta).unwrap(), 0.5);
        assert_eq!(
            behavioral_response(&d, StateLabel::MinusDelta).unwrap(),
            0.5
        );
        assert!(matches!(
            behavioral_response(&d, StateLabel::Gamma),
            Err(Error::UnknownLabel(_))
        ));
        let a = behavioral_response(&d, StateLabel::Alpha).unwrap();
        let b = behavioral_response(&d, StateLabel::Beta).unwrap();
        assert!((a - (1.0 - b)).abs() < 1e-15);
    }

    #[test]
    fn super_detector_validation() {
        let g = CanonicalGeometry::new(PI_6).unwrap();
        assert!(SuperQuantumDetector::new(0.0, 0.5, g).is_err());
        assert!(SuperQuantumDetector::new(0.26, 0.5, g).is_err());
        assert!(SuperQuantumDetector::new(0.05, 1.5, g).is_err());
        assert!(SuperQuantumDetector::with_split_response(0.05, 0.5, 1.01, g).is_err());
        let perfect = SuperQuantumDetector::new(geometry_bound(&g), 0.0, g).unwrap();
        assert_eq!(perfect.error_probability(), 0.0);
        let worst = SuperQuantumDetector::worst_case(0.05, g).unwrap();
        assert_eq!(worst.prob_outcome0(StateLabel::Delta).unwrap(), 0.0);
        assert_eq!(worst.prob_outcome0(StateLabel::MinusDelta).unwrap(), 1.0);
    }

    #[test]
    fn p_times_success_is_half() {
        for k in 1..=31 {
            let g = CanonicalGeometry::new(0.05 * k as f64).unwrap();
            let pe = helstrom_bound(g.overlap()).unwrap();
            assert!((g.p() * (1.0 - pe) - 0.5).abs() < 1e-12);
        }
    }

    proptest! {
        #[test]
        fn no_quantum_detector_beats_the_bound(
            theta in 0.01f64..1.56,
            t in 0.0f64..=1.0,
            s in 0.0f64..=1.0,
            z in -1.0f64..=1.0,
            phi in 0.0f64..(2.0 * PI),
        ) {
            let g = CanonicalGeometry::new(theta).unwrap();
            let rho = (1.0 - z * z).sqrt();
            let n = BlochVector::from_array_unchecked([rho * phi.cos(), rho * phi.sin(), z]);
            let povm = TwoOutcomePovm::from_weights(t, s, &n).unwrap();
            let bound = helstrom_bound(g.overlap()).unwrap();
            prop_assert!(detector_error(&povm, &g) >= bound - 1e-12);
        }

        #[test]
        fn label_swap_duality(theta in 0.01f64..1.56, z in -1.0f64..=1.0, phi in 0.0f64..(2.0 * PI)) {
            let g = CanonicalGeometry::new(theta).unwrap();
            let rho = (1.0 - z * z).sqrt();
            let d = ProjectiveDetector::along(rho * phi.cos(), rho * phi.sin(), z).unwrap();
            let e = detector_error(&d, &g);
            prop_assert!((detector_error(&d.flipped(), &g) - (1.0 - e)).abs() < 1e-12);
        }
    }
}
