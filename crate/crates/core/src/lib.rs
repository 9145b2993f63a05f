//! Robustness of noisy linear consensus, measured by the H2 norm.
//!
//! The crate is organised bottom-up:
//!
//! * [`graph`] holds the weighted digraph, its Laplacian, connectivity and
//!   shortest-path distances, plus the plain-text edge-list format.
//! * [`metrics`] computes the projection basis, reduced Laplacian, H2 norm
//!   (eigenvalue and Lyapunov routes), effective and directed resistances,
//!   and the Kirchhoff and Wiener indices.
//! * [`tree`] is a compact unit-weight tree used by everything that works
//!   with exact integer distance sums.
//! * [`families`] builds and recognises the named tree families (stars,
//!   paths, caterpillars, `P_{N,d,i}`, `N_{N,d}`, double palms and vines).
//! * [`enumeration`] generates every unlabeled tree on `N <= 16` nodes and
//!   ranks classes of trees by exact Kirchhoff index.
//! * [`ordering`] contains the leaf-moving operations that reduce the
//!   Kirchhoff index, exhaustive verifiers for the tree ordering results and
//!   a round-based decentralized rewiring simulation.
//! * [`sim`] integrates the noisy consensus SDE and estimates the stationary
//!   mean-square dispersion.

pub mod enumeration;
pub mod error;
pub mod families;
pub mod format;
pub mod graph;
pub mod metrics;
pub mod ordering;
pub mod sim;
pub mod tree;

pub use enumeration::{CanonicalKey, CanonicalTree, ClassDescriptor, RankingTable};
pub use error::{Error, Result};
pub use families::{Blueprint, Family};
pub use graph::{Distance, DistanceMatrix, Edge, LaplacianMatrix, WeightedDigraph};
pub use metrics::{
    GramianSolution, ProjectionBasis, ReducedLaplacian, ResistanceMatrix, SpectralSummary,
};
pub use tree::Tree;
