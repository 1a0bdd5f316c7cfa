//! Convex roofs over rank-two mixtures: characteristic curves of
//! superposition families, lower convex envelopes, tangent anchors, explicit
//! decompositions, and the three-qubit appendix example.

pub mod appendix;
pub mod envelope;
pub mod family;
pub mod reduced;
pub mod scalar;
pub mod scenarios;
pub mod stationary;
pub mod verify;

pub use appendix::{appendix_tau3, appendix_zeros, AppendixTau3Params, AppendixZero};
pub use envelope::{lower_convex_envelope, Envelope};
pub use family::{characteristic_curves, CharacteristicCurveSet, Rank2Family};
pub use reduced::{reduced_tripartite_spectral, ReducedTripartite};
pub use scenarios::{
    n1_roof_ghzw4, n2_roof_ghzw4, t1_roof_ghzw4, ConvexRoofResult, RoofPoint, RoofScenario,
    RoofSolver,
};
pub use stationary::stationary_mix_point;
pub use verify::{verify_decomposition, Verification};
