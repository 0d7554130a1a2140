//! Two-state qubit discrimination and the no-signaling argument behind the
//! Helstrom bound.
//!
//! The crate is organised bottom-up:
//!
//! * [`bloch`]: pure states, Bloch vectors, density operators and the
//!   canonical five-state geometry parameterised by the half-angle `theta`.
//! * [`discrimination`]: the closed-form minimum error, the optimal
//!   measurement, error evaluation for arbitrary two-outcome detectors and a
//!   brute-force oracle.
//! * [`steering`]: the entangled state shared by Alice and Bob, Bob's reduced
//!   state and the two decompositions Alice can steer it into.
//! * [`signaling`]: Monte Carlo simulation of the signaling protocol, with
//!   analytic marginals and a two-proportion test.

// `!(x < tol)` is used on purpose so NaN inputs are rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bloch;
pub mod discrimination;
pub mod error;
pub mod linalg;
pub mod signaling;
pub mod steering;

pub use bloch::{
    bloch_from_pure, canonical_geometry, density_from_mixture, overlap, pure_from_amplitudes,
    pure_from_bloch, BlochVector, CanonicalGeometry, DensityOperator, PureQubit, StateLabel,
};
pub use discrimination::{
    behavioral_response, detector_error, helstrom_bound, optimal_detector, oracle_min_error,
    povm_outcome_probability, BinaryMeasurement, OracleResult, ProjectiveDetector,
    SuperQuantumDetector, TwoOutcomePovm,
};
pub use error::{Error, Result};
pub use linalg::Mat2;
pub use signaling::{
    alice_basis_for_bit, analytic_marginals, bob_decide, estimate_bob_error, no_signal_test,
    run_round, run_session, Bit, Decision, DetectorSpec, ErrorEstimate, Marginals, NoSignalReport,
    Protocol, ProtocolConfig, SessionRecord, Verdict,
};
pub use steering::{
    build_psi, decomposition_residual, primed_basis, reduced_state_bob, steer, BipartiteState,
    Component, Decomposition, Ket, OrthonormalBasis, SteeredBranch, SteeredEnsemble,
};

/// Tolerance for algebraic identities evaluated in double precision.
pub const ALGEBRAIC_TOL: f64 = 1e-12;

/// Tolerance applied to user-supplied inputs such as Bloch vectors.
pub const INPUT_TOL: f64 = 1e-9;
