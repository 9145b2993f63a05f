//! Shared fixtures for the benchmarks.

use h2robust::WeightedDigraph;

/// Ring on `n >= 7` nodes plus a 3-hop chord per node; ring weights cycle through 1, 2, 3.
pub fn ring_with_chords(n: usize) -> WeightedDigraph {
    assert!(n >= 7);
    let mut edges = Vec::new();
    for i in 0..n {
        edges.push((i, (i + 1) % n, 1.0 + (i % 3) as f64));
        edges.push((i, (i + 3) % n, 0.5));
    }
    WeightedDigraph::undirected(n, &edges).expect("ring fixture")
}

/// Directed cycle with a back edge every fourth node.
pub fn directed_cycle(n: usize) -> WeightedDigraph {
    let mut edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n, 1.0)).collect();
    edges.extend((0..n).step_by(4).map(|i| ((i + 1) % n, i, 0.5)));
    WeightedDigraph::directed(n, &edges).expect("cycle fixture")
}
