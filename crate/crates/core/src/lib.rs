//! Generalized coherent states as nonlinear (f-deformed) states on
//! truncated Fock spaces.
//!
//! The crate reduces a catalogue of coherent-state families to a single
//! datum — the weight sequence ρ(n) — and derives everything else from it:
//! state expansions, photon statistics, deformed ladder operators and
//! Hamiltonians, displacement operators, temporally stabilized
//! (Gazeau-Klauder) states, the dual family with μ(n) = (n!)²/ρ(n), and a
//! verification harness for the identities the construction must satisfy
//! (moments, eigenstate residuals, commutators, action identity, temporal
//! stability, duality involution).

pub mod cli;
pub mod duality;
pub mod error;
pub mod families;
pub mod fock;
pub mod opspace;
pub mod quad;
pub mod specfun;
pub mod verify;

pub use error::{Error, Result};
pub use families::{Dimension, FamilySpec, NonlinearityFn, RadiusEstimate, Spectrum, WeightSequence};
pub use fock::{
    build_state, cat_superposition, normalization_value, overlap, photon_statistics, FockExpansion,
    Parity, PhotonStatistics, TruncationPolicy,
};
pub use opspace::{
    commutator, conjugate_ladder, deformed_ladder, diagonal_transform, displacement, exp_shift,
    hamiltonian, jaynes_cummings_h, ladder_matrices, DiagonalKind, DisplacementKind,
    HamiltonianVariant, ShiftKind, TruncatedOperator,
};
pub use duality::{
    dual_generalized_gk_state, dual_gk_state, generalized_gk_state, gk_state, stabilize, GKLabel,
};
pub use verify::{VerifyReport, WeightFunction};
