//! Robustness metrics of a consensus graph.
//!
//! Everything here is computed for the normalised Lyapunov right-hand side
//! `I`; the noise intensity only enters in [`crate::sim`].

mod lyapunov;
mod projection;
mod report;
mod resistance;
mod spectrum;

pub use lyapunov::{h2_lyapunov, h2_lyapunov_with, solve_lyapunov, GramianSolution, LYAPUNOV_MAX_NODES};
pub use projection::{reduced_laplacian, reduced_laplacian_with, ProjectionBasis, ReducedLaplacian};
pub use report::{graph_report, GraphReport, H2Method};
pub use resistance::{
    kirchhoff_tree_exact, resistance_directed, resistance_undirected, wiener_index,
    ResistanceMatrix,
};
pub use spectrum::{h2_eigen, spectrum, SpectralSummary, ZERO_EIGENVALUE_TOL};
