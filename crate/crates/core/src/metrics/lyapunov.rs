//! Dense Lyapunov solver for `A S + S A^T = C` with symmetric `C`.
//!
//! The solution of a Lyapunov equation with symmetric right-hand side is
//! symmetric, so only the `n (n + 1) / 2` upper-triangular unknowns are kept
//! and the vectorised system is solved by LU. Cost is `O(n^6 / 8)`; the
//! graph entry points refuse more than [`LYAPUNOV_MAX_NODES`] nodes.

use nalgebra::DMatrix;

use super::projection::{reduced_laplacian_with, ProjectionBasis};
use crate::error::{Error, Result};
use crate::graph::WeightedDigraph;

pub const LYAPUNOV_MAX_NODES: usize = 60;

/// Gramian `S` of `L_bar S + S L_bar^T = I` and `H = sqrt(tr S)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GramianSolution {
    pub sigma: DMatrix<f64>,
    pub h2: f64,
    pub residual: f64,
}

fn tri_index(n: usize, a: usize, b: usize) -> usize {
    let (a, b) = if a <= b { (a, b) } else { (b, a) };
    // Row-major upper triangle.
    a * n - a * (a + 1) / 2 + b
}

pub fn solve_lyapunov(a: &DMatrix<f64>, c: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let n = a.nrows();
    if a.ncols() != n || c.nrows() != n || c.ncols() != n {
        return Err(Error::InvalidParameters("Lyapunov operands must be square and conformant".into()));
    }
    let m = n * (n + 1) / 2;
    let mut sys = DMatrix::<f64>::zeros(m, m);
    let mut rhs = nalgebra::DVector::<f64>::zeros(m);
    for i in 0..n {
        for j in i..n {
            let row = tri_index(n, i, j);
            rhs[row] = c[(i, j)];
            // (A S)_{ij} = sum_k A_{ik} S_{kj};  (S A^T)_{ij} = sum_k S_{ik} A_{jk}
            for k in 0..n {
                sys[(row, tri_index(n, k, j))] += a[(i, k)];
                sys[(row, tri_index(n, i, k))] += a[(j, k)];
            }
        }
    }
    let sol = sys
        .lu()
        .solve(&rhs)
        .ok_or_else(|| Error::LyapunovSolveFailed("singular vectorised system".into()))?;
    let mut s = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            s[(i, j)] = sol[tri_index(n, i, j)];
        }
    }
    if s.iter().any(|x| !x.is_finite()) {
        return Err(Error::LyapunovSolveFailed("non-finite solution".into()));
    }
    Ok(s)
}

pub fn h2_lyapunov(g: &WeightedDigraph) -> Result<GramianSolution> {
    h2_lyapunov_with(g, &ProjectionBasis::new(g.node_count())?)
}

pub fn h2_lyapunov_with(g: &WeightedDigraph, basis: &ProjectionBasis) -> Result<GramianSolution> {
    let n = g.node_count();
    if n > LYAPUNOV_MAX_NODES {
        return Err(Error::NTooLarge { what: "Lyapunov solve", n, max: LYAPUNOV_MAX_NODES });
    }
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    let lbar = reduced_laplacian_with(g, basis)?.matrix;
    let eye = DMatrix::identity(n - 1, n - 1);
    let sigma = solve_lyapunov(&lbar, &eye)?;
    let residual = (&lbar * &sigma + &sigma * lbar.transpose() - &eye).amax();
    // Scale-aware acceptance: the residual of a backward-stable solve grows
    // with the magnitudes involved.
    let scale = 1f64.max(lbar.amax() * sigma.amax() * n as f64);
    if residual > 1e-8 * scale {
        return Err(Error::LyapunovSolveFailed(format!("residual {residual:e} too large")));
    }
    let tr = sigma.trace();
    if !(tr > 0.0) {
        return Err(Error::LyapunovSolveFailed(format!("non-positive trace {tr}")));
    }
    Ok(GramianSolution { h2: tr.sqrt(), sigma, residual })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_examples() {
        let edge = WeightedDigraph::undirected(2, &[(0, 1, 1.0)]).unwrap();
        let s = h2_lyapunov(&edge).unwrap();
        assert!((s.sigma[(0, 0)] - 0.25).abs() < 1e-14);
        assert!((s.h2 - 0.5).abs() < 1e-14);
        let dir = WeightedDigraph::directed(2, &[(0, 1, 1.0)]).unwrap();
        let s = h2_lyapunov(&dir).unwrap();
        assert!((s.sigma[(0, 0)] - 0.5).abs() < 1e-14);
        assert!((s.h2 - 0.5f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn star_ten() {
        let e: Vec<_> = (1..10).map(|i| (0, i, 1.0)).collect();
        let g = WeightedDigraph::undirected(10, &e).unwrap();
        let s = h2_lyapunov(&g).unwrap();
        assert!((s.h2 - (81.0f64 / 20.0).sqrt()).abs() < 1e-10);
        assert!(s.residual <= 1e-8);
        // Symmetric positive definite.
        assert!((&s.sigma - s.sigma.transpose()).amax() < 1e-12);
        assert!(s.sigma.clone().cholesky().is_some());
    }

    #[test]
    fn nonsymmetric_operand() {
        let a = DMatrix::from_row_slice(2, 2, &[2.0, 1.0, 0.0, 3.0]);
        let c = DMatrix::from_row_slice(2, 2, &[1.0, 0.5, 0.5, 2.0]);
        let s = solve_lyapunov(&a, &c).unwrap();
        assert!((&a * &s + &s * a.transpose() - c).amax() < 1e-13);
    }

    #[test]
    fn errors() {
        let split = WeightedDigraph::undirected(4, &[(0, 1, 1.0), (2, 3, 1.0)]).unwrap();
        assert_eq!(h2_lyapunov(&split), Err(Error::NotConnected));
        let e: Vec<_> = (1..61).map(|i| (i - 1, i, 1.0)).collect();
        let big = WeightedDigraph::undirected(61, &e).unwrap();
        assert!(matches!(h2_lyapunov(&big), Err(Error::NTooLarge { .. })));
    }
}
