//! Kirchhoff-decreasing local moves on trees, the exhaustive checks built on
//! them, and round-based decentralized leaf rewiring.

pub mod moves;
pub mod rewire;
pub mod verify;

pub use moves::{LocalMove, MoveKind, MoveOutcome, VineView};
pub use rewire::{decentralized_rewire, RewireConfig, RewireState, RewireStep, Termination};
pub use verify::{verify_lemmas, verify_theorem, CellReport, TheoremId, VerificationReport, Witness};
