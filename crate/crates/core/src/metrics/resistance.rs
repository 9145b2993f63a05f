use nalgebra::DMatrix;

use super::lyapunov::h2_lyapunov_with;
use super::projection::{reduced_laplacian_with, ProjectionBasis};
use crate::error::{Error, Result};
use crate::format::sig12;
use crate::graph::WeightedDigraph;
use crate::tree::Tree;

/// Pairwise (effective or directed) resistances and their pair sum.
#[derive(Debug, Clone, PartialEq)]
pub struct ResistanceMatrix {
    pub matrix: DMatrix<f64>,
    pub kirchhoff: f64,
}

impl ResistanceMatrix {
    fn from_gram(x: &DMatrix<f64>) -> Self {
        let n = x.nrows();
        let mut r = DMatrix::zeros(n, n);
        let mut kf = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                let v = x[(i, i)] + x[(j, j)] - 2.0 * x[(i, j)];
                r[(i, j)] = v;
                r[(j, i)] = v;
                kf += v;
            }
        }
        Self { matrix: r, kirchhoff: kf }
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.matrix[(i, j)]
    }

    pub fn node_count(&self) -> usize {
        self.matrix.nrows()
    }

    /// Header `node,0,1,...` followed by one row per node.
    pub fn to_csv(&self) -> String {
        let n = self.node_count();
        let mut out = String::from("node");
        for j in 0..n {
            out.push_str(&format!(",{j}"));
        }
        out.push('\n');
        for i in 0..n {
            out.push_str(&i.to_string());
            for j in 0..n {
                out.push(',');
                out.push_str(&sig12(self.matrix[(i, j)]));
            }
            out.push('\n');
        }
        out
    }

    /// `H = sqrt(K_f / 2N)`.
    pub fn h2(&self) -> f64 {
        (self.kirchhoff / (2.0 * self.node_count() as f64)).sqrt()
    }
}

/// Effective resistances from the pseudoinverse `L^+ = Q^T L_bar^{-1} Q`.
pub fn resistance_undirected(g: &WeightedDigraph) -> Result<ResistanceMatrix> {
    if !g.is_undirected() {
        return Err(Error::NotUndirected);
    }
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    let n = g.node_count();
    if n == 1 {
        return Ok(ResistanceMatrix { matrix: DMatrix::zeros(1, 1), kirchhoff: 0.0 });
    }
    let basis = ProjectionBasis::new(n)?;
    let lbar = reduced_laplacian_with(g, &basis)?.matrix;
    // Symmetrise away rounding so the Cholesky factor sees an exact SPD input.
    let lbar = (&lbar + lbar.transpose()) * 0.5;
    let inv = lbar
        .cholesky()
        .ok_or(Error::NotConnected)?
        .inverse();
    let q = basis.matrix();
    let pinv = q.transpose() * inv * q;
    Ok(ResistanceMatrix::from_gram(&pinv))
}

/// Directed resistances from `X = 2 Q^T S Q`, `S` the Lyapunov Gramian.
/// On symmetric inputs these coincide with effective resistances.
pub fn resistance_directed(g: &WeightedDigraph) -> Result<ResistanceMatrix> {
    let n = g.node_count();
    if n == 1 {
        return Ok(ResistanceMatrix { matrix: DMatrix::zeros(1, 1), kirchhoff: 0.0 });
    }
    let basis = ProjectionBasis::new(n)?;
    let gram = h2_lyapunov_with(g, &basis)?;
    let q = basis.matrix();
    let x = q.transpose() * gram.sigma * q * 2.0;
    Ok(ResistanceMatrix::from_gram(&x))
}

/// Exact pairwise distance sum of a unit-weight tree. Equals both the
/// Kirchhoff and the Wiener index of the tree.
pub fn kirchhoff_tree_exact(g: &WeightedDigraph) -> Result<u64> {
    if !g.is_tree() {
        return Err(Error::NotTree);
    }
    if !g.is_unit_weight() {
        return Err(Error::NonUnitWeights);
    }
    Ok(Tree::from_graph(g)?.kirchhoff())
}

/// Sum of shortest-path lengths over unordered pairs of an undirected
/// connected graph.
pub fn wiener_index(g: &WeightedDigraph) -> Result<f64> {
    if !g.is_undirected() {
        return Err(Error::NotUndirected);
    }
    g.distances().pair_sum().ok_or(Error::NotConnected)
}
