use nalgebra::Complex;

use crate::error::{Error, Result};
use crate::graph::WeightedDigraph;

/// Absolute tolerance under which an eigenvalue counts as zero.
pub const ZERO_EIGENVALUE_TOL: f64 = 1e-9;

/// Laplacian eigenvalues sorted ascending by real part, ties by imaginary
/// part.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralSummary {
    pub eigenvalues: Vec<Complex<f64>>,
}

impl SpectralSummary {
    /// `Re(lambda_2)`; zero for a single node.
    pub fn algebraic_connectivity(&self) -> f64 {
        self.eigenvalues.get(1).map_or(0.0, |l| l.re)
    }

    /// Connectivity verdict from the spectrum alone.
    pub fn is_connected(&self) -> bool {
        self.eigenvalues.len() < 2 || self.algebraic_connectivity() > ZERO_EIGENVALUE_TOL
    }

    pub fn max_real_part(&self) -> f64 {
        self.eigenvalues.iter().map(|l| l.re).fold(0.0, f64::max)
    }
}

/// Symmetric solver for undirected graphs (real spectrum), general
/// Schur-based solver otherwise.
pub fn spectrum(g: &WeightedDigraph) -> SpectralSummary {
    let l = g.laplacian().0;
    let mut eigenvalues: Vec<Complex<f64>> = if g.is_undirected() {
        l.symmetric_eigenvalues().iter().map(|&x| Complex::new(x, 0.0)).collect()
    } else {
        l.complex_eigenvalues().iter().copied().collect()
    };
    eigenvalues.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    SpectralSummary { eigenvalues }
}

/// `H = sqrt(sum_{i >= 2} 1 / (2 lambda_i))` for undirected connected graphs.
pub fn h2_eigen(g: &WeightedDigraph) -> Result<f64> {
    if !g.is_undirected() {
        return Err(Error::NotUndirected);
    }
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    let s = spectrum(g);
    Ok(s.eigenvalues[1..].iter().map(|l| 0.5 / l.re).sum::<f64>().sqrt())
}
