use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::graph::WeightedDigraph;

/// An `(N-1) x N` matrix whose rows are an orthonormal basis of the
/// complement of the all-ones vector.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectionBasis {
    q: DMatrix<f64>,
}

impl ProjectionBasis {
    /// The deterministic basis: rows `2..N` of the Householder reflector
    /// that maps `1/sqrt(N)` to the first coordinate axis.
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::NTooSmall { n, min: 2 });
        }
        let s = 1.0 / (n as f64).sqrt();
        let mut v = DVector::from_element(n, s);
        v[0] -= 1.0;
        let vv = v.dot(&v);
        let mut q = DMatrix::zeros(n - 1, n);
        for r in 1..n {
            for c in 0..n {
                let id = if r == c { 1.0 } else { 0.0 };
                q[(r - 1, c)] = id - 2.0 * v[r] * v[c] / vv;
            }
        }
        Ok(Self { q })
    }

    /// The Helmert basis: row `k` is proportional to
    /// `(1, ..., 1, -k, 0, ..., 0)` with `k` leading ones.
    pub fn helmert(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::NTooSmall { n, min: 2 });
        }
        let mut q = DMatrix::zeros(n - 1, n);
        for k in 1..n {
            let norm = ((k * (k + 1)) as f64).sqrt();
            for c in 0..k {
                q[(k - 1, c)] = 1.0 / norm;
            }
            q[(k - 1, k)] = -(k as f64) / norm;
        }
        Ok(Self { q })
    }

    /// Accepts any matrix satisfying `Q 1 = 0` and `Q Q^T = I` to `1e-10`.
    pub fn from_matrix(q: DMatrix<f64>) -> Result<Self> {
        let n = q.ncols();
        if n < 2 || q.nrows() != n - 1 {
            return Err(Error::InvalidParameters(format!(
                "basis must be (N-1) x N, got {} x {}",
                q.nrows(),
                n
            )));
        }
        let ones = DVector::from_element(n, 1.0);
        let gram = &q * q.transpose();
        let off = (gram - DMatrix::identity(n - 1, n - 1)).amax();
        if (&q * ones).amax() > 1e-10 || off > 1e-10 {
            return Err(Error::InvalidParameters("rows are not an orthonormal basis of 1^perp".into()));
        }
        Ok(Self { q })
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.q
    }

    /// Number of agents `N`.
    pub fn dim(&self) -> usize {
        self.q.ncols()
    }

    pub fn project(&self, x: &DVector<f64>) -> DVector<f64> {
        &self.q * x
    }
}

/// `Q L Q^T`, the Laplacian restricted to the disagreement subspace.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedLaplacian {
    pub matrix: DMatrix<f64>,
}

pub fn reduced_laplacian(g: &WeightedDigraph) -> Result<ReducedLaplacian> {
    reduced_laplacian_with(g, &ProjectionBasis::new(g.node_count())?)
}

pub fn reduced_laplacian_with(g: &WeightedDigraph, basis: &ProjectionBasis) -> Result<ReducedLaplacian> {
    if basis.dim() != g.node_count() {
        return Err(Error::InvalidParameters(format!(
            "basis is for {} nodes, graph has {}",
            basis.dim(),
            g.node_count()
        )));
    }
    let q = basis.matrix();
    let l = g.laplacian();
    Ok(ReducedLaplacian { matrix: q * l.matrix() * q.transpose() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_identities(b: &ProjectionBasis) {
        let n = b.dim();
        let q = b.matrix();
        let ones = DVector::from_element(n, 1.0);
        assert!((q * &ones).amax() <= 1e-12);
        assert!((q * q.transpose() - DMatrix::identity(n - 1, n - 1)).amax() <= 1e-12);
        let pi = DMatrix::identity(n, n) - DMatrix::from_element(n, n, 1.0 / n as f64);
        assert!((q.transpose() * q - pi).amax() <= 1e-12, "n = {n}");
    }

    #[test]
    fn two_node_basis_is_fixed() {
        let b = ProjectionBasis::new(2).unwrap();
        let s = 1.0 / 2f64.sqrt();
        assert!((b.matrix()[(0, 0)] - s).abs() < 1e-15);
        assert!((b.matrix()[(0, 1)] + s).abs() < 1e-15);
    }

    #[test]
    fn identities_hold_up_to_fifty_nodes() {
        for n in 2..=50 {
            check_identities(&ProjectionBasis::new(n).unwrap());
            check_identities(&ProjectionBasis::helmert(n).unwrap());
        }
    }

    #[test]
    fn rejects_tiny_n_and_bad_matrices() {
        assert_eq!(ProjectionBasis::new(1), Err(Error::NTooSmall { n: 1, min: 2 }));
        assert!(ProjectionBasis::from_matrix(DMatrix::from_row_slice(1, 2, &[1.0, 0.0])).is_err());
        let h = ProjectionBasis::helmert(5).unwrap();
        assert!(ProjectionBasis::from_matrix(h.matrix().clone()).is_ok());
    }

    #[test]
    fn reduced_laplacian_examples() {
        let edge = WeightedDigraph::undirected(2, &[(0, 1, 1.0)]).unwrap();
        let r = reduced_laplacian(&edge).unwrap().matrix;
        assert!((r[(0, 0)] - 2.0).abs() < 1e-14);
        let dir = WeightedDigraph::directed(2, &[(0, 1, 1.0)]).unwrap();
        let r = reduced_laplacian(&dir).unwrap().matrix;
        assert!((r[(0, 0)] - 1.0).abs() < 1e-14);
        let star = WeightedDigraph::undirected(3, &[(0, 1, 1.0), (0, 2, 1.0)]).unwrap();
        let r = reduced_laplacian(&star).unwrap().matrix;
        let mut ev: Vec<f64> = r.symmetric_eigen().eigenvalues.iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        assert!((ev[0] - 1.0).abs() < 1e-12 && (ev[1] - 3.0).abs() < 1e-12);
    }
}
