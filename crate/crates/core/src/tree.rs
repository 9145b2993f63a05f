//! Unit-weight undirected trees with exact integer distance arithmetic.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::WeightedDigraph;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tree {
    adj: Vec<Vec<usize>>,
}

impl Tree {
    /// Builds a tree on `n` nodes from `n - 1` undirected edges.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::NTooSmall { n, min: 1 });
        }
        if edges.len() != n - 1 {
            return Err(Error::NotTree);
        }
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in edges {
            for id in [a, b] {
                if id >= n {
                    return Err(Error::IdOutOfRange { id, n });
                }
            }
            if a == b {
                return Err(Error::SelfLoop(a));
            }
            if adj[a].contains(&b) {
                return Err(Error::DuplicateEdge { from: a, to: b });
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let t = Self { adj };
        if t.bfs(0).contains(&usize::MAX) {
            return Err(Error::NotTree);
        }
        Ok(t)
    }

    /// Accepts any undirected tree; weights are ignored.
    pub fn from_graph(g: &WeightedDigraph) -> Result<Self> {
        if !g.is_tree() {
            return Err(Error::NotTree);
        }
        let edges: Vec<(usize, usize)> =
            g.undirected_edges().into_iter().map(|(a, b, _)| (a, b)).collect();
        Self::from_edges(g.node_count(), &edges)
    }

    pub fn path(n: usize) -> Self {
        let e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edges(n, &e).expect("path is a tree")
    }

    pub fn star(n: usize) -> Self {
        let e: Vec<_> = (1..n).map(|i| (0, i)).collect();
        Self::from_edges(n, &e).expect("star is a tree")
    }

    pub fn to_graph(&self) -> WeightedDigraph {
        let e: Vec<_> = self.edges().into_iter().map(|(a, b)| (a, b, 1.0)).collect();
        WeightedDigraph::undirected(self.len(), &e).expect("tree edges are valid")
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.adj[v].len() == 1
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }

    /// Edges `(a, b)` with `a < b`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut e = Vec::with_capacity(self.len().saturating_sub(1));
        for (a, list) in self.adj.iter().enumerate() {
            for &b in list {
                if a < b {
                    e.push((a, b));
                }
            }
        }
        e
    }

    /// Hop distances from `s`; `usize::MAX` marks unreachable nodes, which
    /// only happens while validating a candidate edge set.
    pub fn bfs(&self, s: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.len()];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// BFS parent pointers from `root` (`parent[root] == root`).
    pub fn parents(&self, root: usize) -> Vec<usize> {
        let mut parent = vec![usize::MAX; self.len()];
        parent[root] = root;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                if parent[v] == usize::MAX {
                    parent[v] = u;
                    queue.push_back(v);
                }
            }
        }
        parent
    }

    pub fn distance_matrix(&self) -> Vec<Vec<usize>> {
        (0..self.len()).map(|s| self.bfs(s)).collect()
    }

    /// Exact sum of pairwise distances, which is the Kirchhoff index of a
    /// unit-weight tree.
    pub fn kirchhoff(&self) -> u64 {
        let total: u64 = (0..self.len())
            .map(|s| self.bfs(s).iter().map(|&d| d as u64).sum::<u64>())
            .sum();
        total / 2
    }

    pub fn eccentricity(&self, v: usize) -> usize {
        self.bfs(v).into_iter().max().unwrap_or(0)
    }

    pub fn diameter(&self) -> usize {
        let far = argmax(&self.bfs(0));
        self.eccentricity(far)
    }

    /// Node sequence of the unique path from `u` to `v`.
    pub fn path_between(&self, u: usize, v: usize) -> Vec<usize> {
        let parent = self.parents(v);
        let mut path = vec![u];
        let mut cur = u;
        while cur != v {
            cur = parent[cur];
            path.push(cur);
        }
        path
    }

    /// The lexicographically smallest node sequence among all longest paths,
    /// over both orientations.
    pub fn longest_path(&self) -> Vec<usize> {
        if self.len() == 1 {
            return vec![0];
        }
        let dm = self.distance_matrix();
        let d = self.diameter();
        let mut best: Option<Vec<usize>> = None;
        for u in 0..self.len() {
            for v in 0..self.len() {
                if dm[u][v] == d && u < v {
                    for p in [self.path_between(u, v), self.path_between(v, u)] {
                        if best.as_ref().is_none_or(|b| p < *b) {
                            best = Some(p);
                        }
                    }
                }
            }
        }
        best.expect("some pair realises the diameter")
    }

    /// One or two central nodes (minimum eccentricity), ascending.
    pub fn centers(&self) -> Vec<usize> {
        let ecc: Vec<usize> = (0..self.len()).map(|v| self.eccentricity(v)).collect();
        let min = *ecc.iter().min().expect("non-empty tree");
        (0..self.len()).filter(|&v| ecc[v] == min).collect()
    }

    /// One or two centroids (nodes whose largest branch is smallest), ascending.
    pub fn centroids(&self) -> Vec<usize> {
        let n = self.len();
        let parent = self.parents(0);
        let order = self.bfs_order(0);
        let mut size = vec![1usize; n];
        for &v in order.iter().rev() {
            if v != 0 {
                size[parent[v]] += size[v];
            }
        }
        let branch = |v: usize| {
            let mut m = n - size[v];
            for &c in &self.adj[v] {
                if parent[c] == v && c != v {
                    m = m.max(size[c]);
                }
            }
            m
        };
        let weights: Vec<usize> = (0..n).map(branch).collect();
        let min = *weights.iter().min().expect("non-empty tree");
        (0..n).filter(|&v| weights[v] == min).collect()
    }

    fn bfs_order(&self, root: usize) -> Vec<usize> {
        let mut seen = vec![false; self.len()];
        seen[root] = true;
        let mut order = vec![root];
        let mut i = 0;
        while i < order.len() {
            let u = order[i];
            i += 1;
            for &v in &self.adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    order.push(v);
                }
            }
        }
        order
    }

    /// Nodes on `v`'s side of the edge `(v, away)`, including `v`.
    pub fn side_of(&self, v: usize, away: usize) -> Vec<usize> {
        let mut seen = vec![false; self.len()];
        seen[v] = true;
        seen[away] = true;
        let mut stack = vec![v];
        let mut out = vec![v];
        while let Some(u) = stack.pop() {
            for &w in &self.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                    out.push(w);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// A tree is a caterpillar when deleting its leaves leaves a path.
    pub fn is_caterpillar(&self) -> bool {
        if self.len() <= 2 {
            return true;
        }
        (0..self.len())
            .filter(|&v| !self.is_leaf(v))
            .all(|v| self.adj[v].iter().filter(|&&w| !self.is_leaf(w)).count() <= 2)
    }

    /// Detaches every node in `moved` (each adjacent to `from`) together
    /// with the subtree it carries and re-attaches it to `to`. Returns the
    /// new tree and the exact change in Kirchhoff index, computed from the
    /// distance changes of the relocated nodes only.
    pub fn reattach(&self, moved: &[usize], from: usize, to: usize) -> Result<(Tree, i64)> {
        let n = self.len();
        if moved.is_empty() {
            return Err(Error::InvalidParameters("nothing to move".into()));
        }
        let mut in_moved = vec![false; n];
        for &m in moved {
            if m >= n || from >= n || to >= n {
                return Err(Error::IdOutOfRange { id: m.max(from).max(to), n });
            }
            if !self.has_edge(m, from) {
                return Err(Error::InvalidParameters(format!("node {m} is not adjacent to {from}")));
            }
            for v in self.side_of(m, from) {
                in_moved[v] = true;
            }
        }
        if in_moved[to] || to == from {
            return Err(Error::InvalidParameters(format!(
                "cannot re-attach onto {to}: it travels with the moved nodes or is the source"
            )));
        }
        let mut adj = self.adj.clone();
        for &m in moved {
            adj[m].retain(|&x| x != from);
            adj[from].retain(|&x| x != m);
            adj[m].push(to);
            adj[to].push(m);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let next = Tree { adj };
        let mut delta: i64 = 0;
        for v in (0..n).filter(|&v| in_moved[v]) {
            let before = self.bfs(v);
            let after = next.bfs(v);
            for j in (0..n).filter(|&j| !in_moved[j]) {
                delta += after[j] as i64 - before[j] as i64;
            }
        }
        Ok((next, delta))
    }
}

fn argmax(v: &[usize]) -> usize {
    let mut best = 0;
    for (i, &x) in v.iter().enumerate() {
        if x > v[best] {
            best = i;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert_eq!(Tree::from_edges(3, &[(0, 1)]), Err(Error::NotTree));
        assert_eq!(Tree::from_edges(4, &[(0, 1), (1, 0), (2, 3)]), Err(Error::DuplicateEdge { from: 1, to: 0 }));
        assert_eq!(Tree::from_edges(4, &[(0, 1), (1, 2), (0, 2)]), Err(Error::NotTree));
        assert!(Tree::from_edges(1, &[]).is_ok());
    }

    #[test]
    fn closed_forms() {
        for n in 1..=20u64 {
            assert_eq!(Tree::path(n as usize).kirchhoff(), (n * n * n - n) / 6);
            assert_eq!(Tree::star(n as usize).kirchhoff(), (n - 1) * (n - 1));
        }
        assert_eq!(Tree::path(5).diameter(), 4);
        assert_eq!(Tree::star(5).diameter(), 2);
    }

    #[test]
    fn centers_and_centroids() {
        assert_eq!(Tree::path(5).centers(), vec![2]);
        assert_eq!(Tree::path(6).centers(), vec![2, 3]);
        assert_eq!(Tree::star(6).centroids(), vec![0]);
        assert_eq!(Tree::path(6).centroids(), vec![2, 3]);
        // Broom: path 0-1-2-3 with leaves 4..8 on node 3. Centre is 2,
        // centroid is 3.
        let t = Tree::from_edges(9, &[(0, 1), (1, 2), (2, 3), (3, 4), (3, 5), (3, 6), (3, 7), (3, 8)])
            .unwrap();
        assert_eq!(t.centers(), vec![2]);
        assert_eq!(t.centroids(), vec![3]);
    }

    #[test]
    fn longest_path_is_lexicographic() {
        let t = Tree::from_edges(5, &[(0, 2), (1, 2), (2, 3), (3, 4)]).unwrap();
        assert_eq!(t.longest_path(), vec![0, 2, 3, 4]);
        assert_eq!(Tree::path(1).longest_path(), vec![0]);
    }

    #[test]
    fn caterpillar_test() {
        assert!(Tree::path(6).is_caterpillar());
        assert!(Tree::star(6).is_caterpillar());
        // Spider with three legs of length two.
        let spider = Tree::from_edges(7, &[(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)]).unwrap();
        assert!(!spider.is_caterpillar());
    }

    #[test]
    fn reattach_reports_exact_delta() {
        // P5 -> move leaf 0 from 1 to 2.
        let p5 = Tree::path(5);
        let (t, d) = p5.reattach(&[0], 1, 2).unwrap();
        assert_eq!(d, t.kirchhoff() as i64 - p5.kirchhoff() as i64);
        assert_eq!(t.kirchhoff(), 18);
        // Moving a node with its subtree.
        let (t, d) = p5.reattach(&[3], 2, 0).unwrap();
        assert_eq!(d, t.kirchhoff() as i64 - p5.kirchhoff() as i64);
        assert!(p5.reattach(&[0], 2, 3).is_err());
        assert!(p5.reattach(&[1], 2, 0).is_err());
    }
}
