//! Independent oracles and generators shared by the integration tests.
#![allow(dead_code)]

use std::collections::HashSet;

use h2robust::{Tree, WeightedDigraph};
use nalgebra::DMatrix;
use rand::Rng;
use rayon::prelude::*;

/// Decodes a Prüfer sequence over `0..n` into a labelled tree's edges.
pub fn prufer_decode(seq: &[usize], n: usize) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &s in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
        edges.push((leaf, s));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

/// Rooted parenthesis code as a left-aligned bit string (`(` = 0,
/// `)` = 1) and its length. Balanced codes are never proper prefixes of
/// each other, so comparing left-aligned words is lexicographic order.
fn rooted_code(adj: &[u32; 32], v: usize, parent: usize) -> (u64, u32) {
    let mut kids = [(0u64, 0u32); 32];
    let mut k = 0;
    let mut rest = adj[v];
    while rest != 0 {
        let w = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if w != parent {
            kids[k] = rooted_code(adj, w, v);
            k += 1;
        }
    }
    kids[..k].sort_unstable();
    let mut bits = 0u64; // leading 0 for `(`
    let mut len = 1;
    for &(code, l) in &kids[..k] {
        bits |= code >> len;
        len += l;
    }
    bits |= 1u64 << (63 - len);
    (bits, len + 1)
}

/// Minimum rooted encoding over every possible root (`n <= 31`).
pub fn free_canon(n: usize, edges: &[(usize, usize)]) -> u64 {
    let mut adj = [0u32; 32];
    for &(a, b) in edges {
        adj[a] |= 1 << b;
        adj[b] |= 1 << a;
    }
    (0..n).map(|r| rooted_code(&adj, r, usize::MAX).0).min().unwrap()
}

/// Number of unlabeled trees on `n` nodes via all `n^(n-2)` Prüfer
/// sequences, deduplicated by [`free_canon`].
pub fn prufer_tree_count(n: usize) -> usize {
    if n <= 2 {
        return 1;
    }
    let len = n - 2;
    let total = n.pow(len as u32);
    (0..total)
        .into_par_iter()
        .fold(HashSet::new, |mut set, mut code| {
            let mut seq = vec![0; len];
            for s in seq.iter_mut() {
                *s = code % n;
                code /= n;
            }
            set.insert(free_canon(n, &prufer_decode(&seq, n)));
            set
        })
        .reduce(HashSet::new, |mut a, b| {
            a.extend(b);
            a
        })
        .len()
}

/// Sum of all pairwise hop distances by Floyd-Warshall.
pub fn floyd_distance_sum(n: usize, edges: &[(usize, usize)]) -> u64 {
    const INF: u64 = u64::MAX / 4;
    let mut d = vec![vec![INF; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0;
    }
    for &(a, b) in edges {
        d[a][b] = 1;
        d[b][a] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).map(|(i, j)| d[i][j]).sum()
}

/// Effective resistances from `L^+ = (L + J/N)^{-1} - J/N`.
pub fn pinv_resistances(g: &WeightedDigraph) -> DMatrix<f64> {
    let n = g.node_count();
    let l = g.laplacian().0;
    let j = DMatrix::from_element(n, n, 1.0 / n as f64);
    let pinv = (l + &j).try_inverse().unwrap() - j;
    DMatrix::from_fn(n, n, |a, b| pinv[(a, a)] + pinv[(b, b)] - 2.0 * pinv[(a, b)])
}

pub fn pinv_kirchhoff(g: &WeightedDigraph) -> f64 {
    let r = pinv_resistances(g);
    let n = g.node_count();
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).map(|(i, j)| r[(i, j)]).sum()
}

/// Solves `A S + S A^T = I` through the full Kronecker system and returns
/// `trace(S)`.
pub fn kron_lyapunov_trace(a: &DMatrix<f64>) -> f64 {
    let n = a.nrows();
    let mut m = DMatrix::zeros(n * n, n * n);
    // vec(S) column-major: index(i, j) = i + j n.
    for i in 0..n {
        for j in 0..n {
            let row = i + j * n;
            for k in 0..n {
                m[(row, k + j * n)] += a[(i, k)];
                m[(row, i + k * n)] += a[(j, k)];
            }
        }
    }
    let rhs = DMatrix::<f64>::identity(n, n);
    let vec = nalgebra::DVector::from_column_slice(rhs.as_slice());
    let s = m.lu().solve(&vec).unwrap();
    (0..n).map(|i| s[i + i * n]).sum()
}

pub fn random_tree_edges<R: Rng>(rng: &mut R, n: usize) -> Vec<(usize, usize)> {
    (1..n).map(|v| (rng.random_range(0..v), v)).collect()
}

pub fn random_tree<R: Rng>(rng: &mut R, n: usize) -> Tree {
    Tree::from_edges(n, &random_tree_edges(rng, n)).unwrap()
}

/// A random spanning tree plus each absent pair with probability `p`.
pub fn random_connected_graph<R: Rng>(rng: &mut R, n: usize, p: f64, weighted: bool) -> WeightedDigraph {
    let mut present = vec![vec![false; n]; n];
    let mut edges = Vec::new();
    let weight = |rng: &mut R| if weighted { rng.random_range(0.25..4.0) } else { 1.0 };
    for (a, b) in random_tree_edges(rng, n) {
        present[a][b] = true;
        present[b][a] = true;
        let w = weight(rng);
        edges.push((a, b, w));
    }
    for a in 0..n {
        for b in a + 1..n {
            if !present[a][b] && rng.random_bool(p) {
                let w = weight(rng);
                edges.push((a, b, w));
            }
        }
    }
    WeightedDigraph::undirected(n, &edges).unwrap()
}

/// Relative difference `|a - b| / max(|a|, |b|)`.
pub fn rel(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

/// Brute-force isomorphism test over all permutations.
pub fn isomorphic(a: &Tree, b: &Tree) -> bool {
    let n = a.len();
    if n != b.len() {
        return false;
    }
    let mut da: Vec<usize> = (0..n).map(|v| a.degree(v)).collect();
    let mut db: Vec<usize> = (0..n).map(|v| b.degree(v)).collect();
    da.sort();
    db.sort();
    if da != db {
        return false;
    }
    let edges = a.edges();
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        if edges.iter().all(|&(x, y)| b.has_edge(perm[x], perm[y])) {
            return true;
        }
        if !next_permutation(&mut perm) {
            return false;
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (0..p.len().saturating_sub(1)).rev().find(|&i| p[i] < p[i + 1]) else {
        return false;
    };
    let j = (i + 1..p.len()).rev().find(|&j| p[j] > p[i]).unwrap();
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}
