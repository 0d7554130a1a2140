//! The shared entangled state, Bob's reduced state and Alice's steering.
//!
//! Alice and Bob share
//!
//! ```text
//! |ψ⟩ = √p |0⟩|α⟩ + √(1−p) |1⟩|δ⟩
//! ```
//!
//! Measuring Alice in `{|0⟩, |1⟩}` leaves Bob with `{(p, α), (1−p, δ)}`.
//! Because `p r_α + (1−p) r_δ = p r_β + (1−p) r_{−δ}`, the same `|ψ⟩` can be
//! rewritten as `√p |0′⟩|β⟩ + √(1−p) |1′⟩|−δ⟩` for another orthonormal basis
//! `{|0′⟩, |1′⟩}`, and measuring in that basis leaves Bob with
//! `{(p, β), (1−p, −δ)}`. Both ensembles have the same density operator.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bloch::{
    check_distribution, pure_from_amplitudes, CanonicalGeometry, DensityOperator, PureQubit,
};
use crate::error::{Error, Result};
use crate::linalg::{inner, norm_sqr, Mat2, ONE, ZERO};
use crate::ALGEBRAIC_TOL;

/// Branches whose amplitude norm falls below this are treated as empty.
const BRANCH_CUTOFF: f64 = 1e-12;

/// Smallest admissible `|det|` for the primed-basis linear solve.
const MIN_DET: f64 = 1e-12;

/// A unit vector in `C²` that keeps its global phase. Phases matter when kets
/// are combined inside a bipartite superposition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[Complex64; 2]", into = "[Complex64; 2]")]
pub struct Ket([Complex64; 2]);

impl TryFrom<[Complex64; 2]> for Ket {
    type Error = Error;

    fn try_from(v: [Complex64; 2]) -> Result<Self> {
        Ket::new(v[0], v[1])
    }
}

impl From<Ket> for [Complex64; 2] {
    fn from(k: Ket) -> Self {
        k.0
    }
}

impl From<PureQubit> for Ket {
    fn from(q: PureQubit) -> Self {
        Ket(q.amplitudes())
    }
}

impl Ket {
    pub const ZERO: Ket = Ket([ONE, ZERO]);
    pub const ONE: Ket = Ket([ZERO, ONE]);

    /// Normalizes `(a0, a1)`; the phase is kept.
    pub fn new(a0: Complex64, a1: Complex64) -> Result<Self> {
        let n2 = a0.norm_sqr() + a1.norm_sqr();
        if !(n2 > 1e-24) || !n2.is_finite() {
            return Err(Error::ZeroVector);
        }
        let n = n2.sqrt();
        Ok(Ket([a0 / n, a1 / n]))
    }

    #[inline]
    pub fn amplitudes(&self) -> [Complex64; 2] {
        self.0
    }

    /// The physical state, with the global phase removed.
    pub fn to_pure(&self) -> PureQubit {
        pure_from_amplitudes(self.0[0], self.0[1]).expect("ket is normalized")
    }

    pub fn inner(&self, other: &Ket) -> Complex64 {
        inner(self.0, other.0)
    }
}

/// Two-qubit pure state `Σ c_ab |a⟩_A |b⟩_B`, amplitudes ordered
/// `c00, c01, c10, c11` (Alice index first).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[Complex64; 4]", into = "[Complex64; 4]")]
pub struct BipartiteState([Complex64; 4]);

impl TryFrom<[Complex64; 4]> for BipartiteState {
    type Error = Error;

    fn try_from(c: [Complex64; 4]) -> Result<Self> {
        BipartiteState::new(c)
    }
}

impl From<BipartiteState> for [Complex64; 4] {
    fn from(s: BipartiteState) -> Self {
        s.0
    }
}

impl BipartiteState {
    pub fn new(amplitudes: [Complex64; 4]) -> Result<Self> {
        let n2: f64 = amplitudes.iter().map(|c| c.norm_sqr()).sum();
        if !((n2 - 1.0).abs() < ALGEBRAIC_TOL) {
            return Err(Error::InvalidState(format!(
                "bipartite state has squared norm {n2}"
            )));
        }
        Ok(BipartiteState(amplitudes))
    }

    /// `Σ wᵢ |aᵢ⟩_A |bᵢ⟩_B`, which must come out normalized.
    pub fn from_terms(terms: &[(Complex64, Ket, Ket)]) -> Result<Self> {
        BipartiteState::new(superpose(terms))
    }

    pub fn product(alice: Ket, bob: Ket) -> Self {
        BipartiteState(superpose(&[(ONE, alice, bob)]))
    }

    #[inline]
    pub fn amplitudes(&self) -> [Complex64; 4] {
        self.0
    }

    #[inline]
    fn get(&self, a: usize, b: usize) -> Complex64 {
        self.0[2 * a + b]
    }

    /// Bob's unnormalized conditional vector `(⟨k|_A ⊗ 1)|ψ⟩`.
    pub fn bob_conditional(&self, alice: &Ket) -> [Complex64; 2] {
        let k = alice.amplitudes();
        [
            k[0].conj() * self.get(0, 0) + k[1].conj() * self.get(1, 0),
            k[0].conj() * self.get(0, 1) + k[1].conj() * self.get(1, 1),
        ]
    }

    /// Largest amplitude modulus difference.
    pub fn max_abs_diff(&self, other: &BipartiteState) -> f64 {
        max_abs_diff4(&self.0, &other.0)
    }
}

fn superpose(terms: &[(Complex64, Ket, Ket)]) -> [Complex64; 4] {
    let mut c = [ZERO; 4];
    for (w, a, b) in terms {
        let (a, b) = (a.amplitudes(), b.amplitudes());
        for i in 0..2 {
            for j in 0..2 {
                c[2 * i + j] += *w * a[i] * b[j];
            }
        }
    }
    c
}

fn max_abs_diff4(x: &[Complex64; 4], y: &[Complex64; 4]) -> f64 {
    x.iter()
        .zip(y)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max)
}

/// An orthonormal basis of Alice's qubit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "BasisFields")]
pub struct OrthonormalBasis {
    first: Ket,
    second: Ket,
}

#[derive(Deserialize)]
struct BasisFields {
    first: Ket,
    second: Ket,
}

impl TryFrom<BasisFields> for OrthonormalBasis {
    type Error = Error;

    fn try_from(f: BasisFields) -> Result<Self> {
        OrthonormalBasis::new(f.first, f.second)
    }
}

impl OrthonormalBasis {
    pub const COMPUTATIONAL: OrthonormalBasis = OrthonormalBasis {
        first: Ket::ZERO,
        second: Ket::ONE,
    };

    pub fn new(first: Ket, second: Ket) -> Result<Self> {
        let defect = first.inner(&second).norm();
        if !(defect < ALGEBRAIC_TOL) {
            return Err(Error::InvalidState(format!(
                "basis vectors are not orthogonal (|<first|second>| = {defect:e})"
            )));
        }
        Ok(OrthonormalBasis { first, second })
    }

    /// `{cos(t/2)|0⟩ + e^{iφ} sin(t/2)|1⟩, its orthogonal complement}`, the
    /// basis whose first vector has Bloch angles `(t, φ)`.
    pub fn from_angles(t: f64, phi: f64) -> Self {
        let (s, c) = (0.5 * t).sin_cos();
        let e = Complex64::from_polar(1.0, phi);
        OrthonormalBasis {
            first: Ket([Complex64::new(c, 0.0), e * s]),
            second: Ket([Complex64::new(-s, 0.0), e * c]),
        }
    }

    #[inline]
    pub fn first(&self) -> Ket {
        self.first
    }

    #[inline]
    pub fn second(&self) -> Ket {
        self.second
    }

    pub fn vectors(&self) -> [Ket; 2] {
        [self.first, self.second]
    }

    /// `max(|⟨first|second⟩|, ||first|² − 1|, ||second|² − 1|)`
    pub fn orthonormality_defect(&self) -> f64 {
        self.first
            .inner(&self.second)
            .norm()
            .max((norm_sqr(self.first.0) - 1.0).abs())
            .max((norm_sqr(self.second.0) - 1.0).abs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Component {
    pub prob: f64,
    pub state: PureQubit,
}

/// A convex decomposition `Σ pᵢ |ψᵢ⟩⟨ψᵢ|`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Component>", into = "Vec<Component>")]
pub struct Decomposition(Vec<Component>);

impl TryFrom<Vec<Component>> for Decomposition {
    type Error = Error;

    fn try_from(parts: Vec<Component>) -> Result<Self> {
        check_distribution(parts.iter().map(|c| c.prob))?;
        Ok(Decomposition(parts))
    }
}

impl From<Decomposition> for Vec<Component> {
    fn from(d: Decomposition) -> Self {
        d.0
    }
}

impl Decomposition {
    pub fn new(parts: &[(f64, PureQubit)]) -> Result<Self> {
        parts
            .iter()
            .map(|&(prob, state)| Component { prob, state })
            .collect::<Vec<_>>()
            .try_into()
    }

    pub fn components(&self) -> &[Component] {
        &self.0
    }

    pub fn density(&self) -> DensityOperator {
        DensityOperator::from_matrix_unchecked(self.matrix())
    }

    fn matrix(&self) -> Mat2 {
        self.0.iter().fold(Mat2::zero(), |acc, c| {
            acc + c.state.projector().scale(c.prob)
        })
    }
}

/// Bob's conditional state after Alice obtains one basis outcome.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SteeredBranch {
    pub prob: f64,
    pub state: PureQubit,
    /// Set when the branch amplitude vanished; `prob` is then 0 and `state`
    /// is a `|0⟩` placeholder.
    pub degenerate: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SteeredEnsemble {
    pub branches: [SteeredBranch; 2],
}

impl SteeredEnsemble {
    pub fn decomposition(&self) -> Decomposition {
        Decomposition(
            self.branches
                .iter()
                .map(|b| Component {
                    prob: b.prob,
                    state: b.state,
                })
                .collect(),
        )
    }

    /// `Σ pᵢ |ψᵢ⟩⟨ψᵢ|` over the branches.
    pub fn mixture(&self) -> DensityOperator {
        self.decomposition().density()
    }

    pub fn probs(&self) -> [f64; 2] {
        [self.branches[0].prob, self.branches[1].prob]
    }
}

/// `√p |0⟩|α⟩ + √(1−p) |1⟩|δ⟩`.
pub fn build_psi(g: &CanonicalGeometry) -> BipartiteState {
    let p = g.p();
    BipartiteState::from_terms(&[
        (p.sqrt().into(), Ket::ZERO, g.alpha().into()),
        ((1.0 - p).sqrt().into(), Ket::ONE, g.delta().into()),
    ])
    .expect("branch weights p and 1 - p sum to one")
}

/// Partial trace over Alice: `ρ_B[b][b′] = Σ_a c_ab c*_ab′`.
pub fn reduced_state_bob(psi: &BipartiteState) -> DensityOperator {
    let mut m = [[ZERO; 2]; 2];
    for (b, row) in m.iter_mut().enumerate() {
        for (bp, cell) in row.iter_mut().enumerate() {
            *cell = (0..2).map(|a| psi.get(a, b) * psi.get(a, bp).conj()).sum();
        }
    }
    DensityOperator::from_matrix_unchecked(Mat2(m))
}

/// Alice measures in `basis`; each outcome leaves Bob in a collapsed state
/// with the Born weight of that outcome.
pub fn steer(psi: &BipartiteState, basis: &OrthonormalBasis) -> SteeredEnsemble {
    let branches = basis.vectors().map(|k| {
        let v = psi.bob_conditional(&k);
        let prob = norm_sqr(v);
        if prob.sqrt() < BRANCH_CUTOFF {
            SteeredBranch {
                prob: 0.0,
                state: PureQubit::ZERO,
                degenerate: true,
            }
        } else {
            SteeredBranch {
                prob,
                state: pure_from_amplitudes(v[0], v[1]).expect("branch norm above cutoff"),
                degenerate: false,
            }
        }
    });
    SteeredEnsemble { branches }
}

/// Bob-side matrix with columns `|β⟩` and `|−δ⟩`.
fn primed_system(g: &CanonicalGeometry) -> Mat2 {
    let b = g.beta().amplitudes();
    let md = g.minus_delta().amplitudes();
    Mat2::new(b[0], md[0], b[1], md[1])
}

/// Spectral condition number of the `[β, −δ]` system solved by
/// [`primed_basis`].
pub fn primed_condition_number(g: &CanonicalGeometry) -> f64 {
    primed_system(g).condition_number()
}

/// Solves `√p |0′⟩|β⟩ + √(1−p) |1′⟩|−δ⟩ = |ψ⟩` for Alice's primed basis.
///
/// Writing `|ψ⟩ = Σ_a |a⟩ ⊗ |v_a⟩`, each Bob vector satisfies
/// `v_a = √p ⟨a|0′⟩ β + √(1−p) ⟨a|1′⟩ (−δ)`, which is a 2×2 system in the
/// columns `β, −δ` for every `a`.
pub fn primed_basis(g: &CanonicalGeometry) -> Result<OrthonormalBasis> {
    let psi = build_psi(g);
    let system = primed_system(g);
    let (sp, sq) = (g.p().sqrt(), (1.0 - g.p()).sqrt());
    let mut first = [ZERO; 2];
    let mut second = [ZERO; 2];
    for a in 0..2 {
        let rhs = [psi.get(a, 0), psi.get(a, 1)];
        let x = system.solve(rhs, MIN_DET).ok_or(Error::SingularSystem {
            det: system.det().norm(),
        })?;
        first[a] = x[0] / sp;
        second[a] = x[1] / sq;
    }
    OrthonormalBasis::new(
        Ket::new(first[0], first[1])?,
        Ket::new(second[0], second[1])?,
    )
}

/// Largest amplitude difference between `|ψ⟩` and the primed expansion
/// `√p |0′⟩|β⟩ + √(1−p) |1′⟩|−δ⟩` built from `basis`.
pub fn primed_reconstruction_residual(g: &CanonicalGeometry, basis: &OrthonormalBasis) -> f64 {
    let p = g.p();
    let rebuilt = superpose(&[
        (p.sqrt().into(), basis.first(), g.beta().into()),
        (
            (1.0 - p).sqrt().into(),
            basis.second(),
            g.minus_delta().into(),
        ),
    ]);
    max_abs_diff4(&build_psi(g).amplitudes(), &rebuilt)
}

/// Max-abs entrywise difference between `rho` and `Σ pᵢ |ψᵢ⟩⟨ψᵢ|`.
pub fn decomposition_residual(rho: &DensityOperator, d: &Decomposition) -> f64 {
    rho.matrix().max_abs_diff(&d.matrix())
}
