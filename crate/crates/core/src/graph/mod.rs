//! Weighted directed graphs and the quantities derived directly from them.
//!
//! An edge `(i, j, w)` means agent `i` receives information from agent `j`
//! and weights it by `w > 0`. Undirected graphs are stored as symmetric
//! digraphs.

mod edgelist;

use std::cmp::Ordering;
use std::collections::{BTreeMap, BinaryHeap, VecDeque};

use nalgebra::DMatrix;
use petgraph::graph::DiGraph;

use crate::error::{Error, Result};

pub use edgelist::{parse_edge_list, write_edge_list};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub source: usize,
    pub target: usize,
    pub weight: f64,
}

impl Edge {
    pub fn new(source: usize, target: usize, weight: f64) -> Self {
        Self { source, target, weight }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeightedDigraph {
    n: usize,
    // Sorted by (source, target).
    edges: Vec<Edge>,
    out: Vec<Vec<(usize, f64)>>,
}

impl WeightedDigraph {
    /// Validates and canonicalises an edge list. With `undirected` set, each
    /// listed edge is expanded into its symmetric pair.
    pub fn build(n: usize, edges: &[Edge], undirected: bool) -> Result<Self> {
        if n == 0 {
            return Err(Error::NTooSmall { n, min: 1 });
        }
        let mut map: BTreeMap<(usize, usize), f64> = BTreeMap::new();
        let mut insert = |e: Edge| -> Result<()> {
            for id in [e.source, e.target] {
                if id >= n {
                    return Err(Error::IdOutOfRange { id, n });
                }
            }
            if e.source == e.target {
                return Err(Error::SelfLoop(e.source));
            }
            if !(e.weight > 0.0) || !e.weight.is_finite() {
                return Err(Error::NonpositiveWeight {
                    from: e.source,
                    to: e.target,
                    weight: e.weight,
                });
            }
            if map.insert((e.source, e.target), e.weight).is_some() {
                return Err(Error::DuplicateEdge { from: e.source, to: e.target });
            }
            Ok(())
        };
        for &e in edges {
            insert(e)?;
            if undirected {
                insert(Edge::new(e.target, e.source, e.weight))?;
            }
        }
        let edges: Vec<Edge> = map.into_iter().map(|((s, t), w)| Edge::new(s, t, w)).collect();
        let mut out = vec![Vec::new(); n];
        for e in &edges {
            out[e.source].push((e.target, e.weight));
        }
        Ok(Self { n, edges, out })
    }

    /// Undirected graph from `(i, j, w)` triples.
    pub fn undirected(n: usize, edges: &[(usize, usize, f64)]) -> Result<Self> {
        let edges: Vec<Edge> = edges.iter().map(|&(s, t, w)| Edge::new(s, t, w)).collect();
        Self::build(n, &edges, true)
    }

    /// Directed graph from `(i, j, w)` triples.
    pub fn directed(n: usize, edges: &[(usize, usize, f64)]) -> Result<Self> {
        let edges: Vec<Edge> = edges.iter().map(|&(s, t, w)| Edge::new(s, t, w)).collect();
        Self::build(n, &edges, false)
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn out_neighbors(&self, i: usize) -> &[(usize, f64)] {
        &self.out[i]
    }

    pub fn weight(&self, i: usize, j: usize) -> Option<f64> {
        self.out[i].iter().find(|&&(t, _)| t == j).map(|&(_, w)| w)
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.weight(i, j).is_some()
    }

    pub fn is_undirected(&self) -> bool {
        self.edges
            .iter()
            .all(|e| self.weight(e.target, e.source) == Some(e.weight))
    }

    /// Each undirected edge once, as `(i, j, w)` with `i < j`. Only
    /// meaningful when [`is_undirected`](Self::is_undirected) holds.
    pub fn undirected_edges(&self) -> Vec<(usize, usize, f64)> {
        self.edges
            .iter()
            .filter(|e| e.source < e.target)
            .map(|e| (e.source, e.target, e.weight))
            .collect()
    }

    pub fn is_unit_weight(&self) -> bool {
        self.edges.iter().all(|e| e.weight == 1.0)
    }

    pub fn out_degree(&self, i: usize) -> f64 {
        self.out[i].iter().map(|&(_, w)| w).sum()
    }

    pub fn laplacian(&self) -> LaplacianMatrix {
        let n = self.n;
        let mut m = DMatrix::zeros(n, n);
        for e in &self.edges {
            m[(e.source, e.target)] = -e.weight;
        }
        // The diagonal is the negated sum of the off-diagonal entries as
        // stored, so every row sums to exactly zero in floating point.
        for i in 0..n {
            let mut s = 0.0;
            for j in 0..n {
                if j != i {
                    s += m[(i, j)];
                }
            }
            m[(i, i)] = -s;
        }
        LaplacianMatrix(m)
    }

    /// True iff some node is reachable from every node along edge direction,
    /// i.e. the condensation of the graph has a unique sink component.
    pub fn is_connected(&self) -> bool {
        let mut g = DiGraph::<(), ()>::with_capacity(self.n, self.edges.len());
        let nodes: Vec<_> = (0..self.n).map(|_| g.add_node(())).collect();
        for e in &self.edges {
            g.add_edge(nodes[e.source], nodes[e.target], ());
        }
        let sccs = petgraph::algo::tarjan_scc(&g);
        let mut comp = vec![0usize; self.n];
        for (c, members) in sccs.iter().enumerate() {
            for v in members {
                comp[v.index()] = c;
            }
        }
        let mut has_exit = vec![false; sccs.len()];
        for e in &self.edges {
            if comp[e.source] != comp[e.target] {
                has_exit[comp[e.source]] = true;
            }
        }
        has_exit.iter().filter(|&&x| !x).count() == 1
    }

    /// A connected undirected graph with `N - 1` undirected edges.
    pub fn is_tree(&self) -> bool {
        self.is_undirected() && self.edges.len() == 2 * (self.n - 1) && self.is_connected()
    }

    /// Hop counts along edge direction, ignoring weights.
    pub fn hop_distances(&self) -> Vec<Vec<Option<usize>>> {
        (0..self.n)
            .map(|s| {
                let mut dist = vec![None; self.n];
                dist[s] = Some(0);
                let mut queue = VecDeque::from([s]);
                while let Some(u) = queue.pop_front() {
                    let du = dist[u].unwrap();
                    for &(v, _) in &self.out[u] {
                        if dist[v].is_none() {
                            dist[v] = Some(du + 1);
                            queue.push_back(v);
                        }
                    }
                }
                dist
            })
            .collect()
    }

    /// All-pairs shortest path lengths along edge direction. Unit-weight
    /// graphs take a BFS path that yields exact integers.
    pub fn distances(&self) -> DistanceMatrix {
        let n = self.n;
        let rows: Vec<Vec<Distance>> = if self.is_unit_weight() {
            self.hop_distances()
                .into_iter()
                .map(|row| {
                    row.into_iter()
                        .map(|d| d.map_or(Distance::Infinite, |h| Distance::Finite(h as f64)))
                        .collect()
                })
                .collect()
        } else {
            (0..n).map(|s| self.dijkstra(s)).collect()
        };
        DistanceMatrix { n, rows }
    }

    fn dijkstra(&self, source: usize) -> Vec<Distance> {
        #[derive(PartialEq)]
        struct Item(f64, usize);
        impl Eq for Item {}
        impl PartialOrd for Item {
            fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
                Some(self.cmp(o))
            }
        }
        impl Ord for Item {
            fn cmp(&self, o: &Self) -> Ordering {
                o.0.total_cmp(&self.0).then(o.1.cmp(&self.1))
            }
        }
        let mut dist: Vec<Option<f64>> = vec![None; self.n];
        let mut heap = BinaryHeap::new();
        dist[source] = Some(0.0);
        heap.push(Item(0.0, source));
        while let Some(Item(d, u)) = heap.pop() {
            if dist[u].is_some_and(|best| d > best) {
                continue;
            }
            for &(v, w) in &self.out[u] {
                let nd = d + w;
                if dist[v].is_none_or(|cur| nd < cur) {
                    dist[v] = Some(nd);
                    heap.push(Item(nd, v));
                }
            }
        }
        dist.into_iter()
            .map(|d| d.map_or(Distance::Infinite, Distance::Finite))
            .collect()
    }
}

/// `L = D - A` with `D` the diagonal of out-degrees.
#[derive(Debug, Clone, PartialEq)]
pub struct LaplacianMatrix(pub DMatrix<f64>);

impl LaplacianMatrix {
    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.0
    }

    /// Largest |row sum|, accumulating off-diagonal entries in column order
    /// before the diagonal (the order the diagonal was built in).
    pub fn max_abs_row_sum(&self) -> f64 {
        let n = self.0.nrows();
        (0..n)
            .map(|i| {
                let off: f64 = (0..n).filter(|&j| j != i).map(|j| self.0[(i, j)]).sum();
                (off + self.0[(i, i)]).abs()
            })
            .fold(0.0, f64::max)
    }
}

/// A shortest-path length; unreachable pairs are `Infinite`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Distance {
    Finite(f64),
    Infinite,
}

impl Distance {
    pub fn finite(self) -> Option<f64> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Distance::Finite(_))
    }

    fn max(self, other: Distance) -> Distance {
        match (self, other) {
            (Distance::Finite(a), Distance::Finite(b)) => Distance::Finite(a.max(b)),
            _ => Distance::Infinite,
        }
    }
}

impl std::fmt::Display for Distance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    rows: Vec<Vec<Distance>>,
}

impl DistanceMatrix {
    pub fn get(&self, i: usize, j: usize) -> Distance {
        self.rows[i][j]
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn diameter(&self) -> Distance {
        self.rows
            .iter()
            .flatten()
            .fold(Distance::Finite(0.0), |acc, &d| acc.max(d))
    }

    /// Sum over unordered pairs of `d(i, j)`, when every such distance is
    /// finite in the `i -> j` direction.
    pub fn pair_sum(&self) -> Option<f64> {
        let mut s = 0.0;
        for i in 0..self.n {
            for j in i + 1..self.n {
                s += self.rows[i][j].finite()?;
            }
        }
        Some(s)
    }
}
