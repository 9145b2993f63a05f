mod common;

use common::*;
use h2robust::enumeration::{enumerate_trees, rank_class, ClassDescriptor};
use h2robust::families::{classify, Family};
use h2robust::metrics::{h2_eigen, h2_lyapunov, kirchhoff_tree_exact, reduced_laplacian, resistance_undirected};
use h2robust::{Blueprint, Tree, WeightedDigraph};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const TREE_COUNTS: [usize; 16] = [1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551, 1301, 3159, 7741, 19320];

#[test]
fn enumeration_counts_match_prufer_dedup() {
    for n in 1..=9 {
        let ours = enumerate_trees(n).unwrap().len();
        assert_eq!(ours, prufer_tree_count(n), "N = {n}");
        assert_eq!(ours, TREE_COUNTS[n - 1]);
    }
}

#[test]
fn enumeration_counts_to_sixteen() {
    for n in 10..=14 {
        assert_eq!(enumerate_trees(n).unwrap().len(), TREE_COUNTS[n - 1], "N = {n}");
    }
}

#[test]
fn enumerated_trees_are_pairwise_non_isomorphic() {
    for n in 1..=8 {
        let trees = enumerate_trees(n).unwrap();
        for (i, a) in trees.iter().enumerate() {
            for b in &trees[i + 1..] {
                assert!(!isomorphic(&a.tree, &b.tree), "{} ~ {}", a.key, b.key);
            }
        }
    }
}

#[test]
fn kirchhoff_matches_floyd_and_pseudoinverse() {
    for n in 2..=9 {
        for t in enumerate_trees(n).unwrap() {
            let edges = t.tree.edges();
            assert_eq!(t.kirchhoff, floyd_distance_sum(n, &edges), "{}", t.key);
            let g = t.tree.to_graph();
            assert!((pinv_kirchhoff(&g) - t.kirchhoff as f64).abs() < 1e-9);
            assert_eq!(kirchhoff_tree_exact(&g).unwrap(), t.kirchhoff);
        }
    }
}

#[test]
fn closed_forms() {
    for n in 2..=30 {
        let path = Tree::path(n).to_graph();
        assert_eq!(kirchhoff_tree_exact(&path).unwrap() as usize, (n * n * n - n) / 6);
        let star = Tree::star(n).to_graph();
        assert_eq!(kirchhoff_tree_exact(&star).unwrap() as usize, (n - 1) * (n - 1));
    }
}

#[test]
fn three_h2_routes_match_independent_oracles() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..25 {
        let n = 2 + rand::Rng::random_range(&mut rng, 0..10);
        let g = random_connected_graph(&mut rng, n, 0.3, true);
        let lbar = reduced_laplacian(&g).unwrap().matrix;
        let oracle_h2 = kron_lyapunov_trace(&lbar).sqrt();
        let kf = pinv_kirchhoff(&g);
        let oracle_from_kf = (kf / (2.0 * n as f64)).sqrt();
        assert!(rel(oracle_h2, oracle_from_kf) < 1e-9);
        assert!(rel(h2_eigen(&g).unwrap(), oracle_h2) < 1e-9);
        assert!(rel(h2_lyapunov(&g).unwrap().h2, oracle_h2) < 1e-9);
        let r = resistance_undirected(&g).unwrap();
        let pr = pinv_resistances(&g);
        assert!((r.matrix - pr).amax() < 1e-9);
    }
}

#[test]
fn directed_gramian_matches_kronecker_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let n = 3 + rand::Rng::random_range(&mut rng, 0..6);
        // Directed ring plus random chords is strongly connected.
        let mut edges: Vec<(usize, usize, f64)> = (0..n).map(|i| (i, (i + 1) % n, 1.0)).collect();
        for i in 0..n {
            for j in 0..n {
                if i != j && j != (i + 1) % n && rand::Rng::random_bool(&mut rng, 0.2) {
                    edges.push((i, j, rand::Rng::random_range(&mut rng, 0.5..2.0)));
                }
            }
        }
        let g = WeightedDigraph::directed(n, &edges).unwrap();
        let lbar = reduced_laplacian(&g).unwrap().matrix;
        let oracle = kron_lyapunov_trace(&lbar).sqrt();
        assert!(rel(h2_lyapunov(&g).unwrap().h2, oracle) < 1e-9);
    }
}

#[test]
fn family_kirchhoff_examples() {
    let kf = |s: &str| Blueprint::parse(s, |_| unreachable!()).unwrap().build_tree().unwrap().kirchhoff();
    // Values from an independent distance-sum computation.
    assert_eq!(kf("dpalm:6,1,3"), 28);
    assert_eq!(kf("dpalm:6,2,2"), 29);
    assert_eq!(kf("dpalm:7,2,3"), 42);
    assert_eq!(kf("dpalm:7,1,4"), 40);
    assert_eq!(kf("pndi:7,4,2"), 44);
    assert_eq!(kf("pndi:7,4,1"), 46);
    assert_eq!(kf("pndi:7,5,2"), 50);
    assert_eq!(kf("pndi:7,5,1"), 52);
    assert_eq!(kf("nnd:7,4"), 48);
    assert_eq!(kf("nnd:8,4"), 64);
    assert_eq!(kf("pndi:8,4,2"), 59);
    assert_eq!(kf("nnd:9,4"), 82);
    assert_eq!(kf("pndi:9,4,2"), 76);
}

#[test]
fn blueprints_classify_as_themselves() {
    let specs = [
        "star:6", "path:7", "pndi:9,4,1", "pndi:9,4,2", "nnd:9,4", "nnd:11,5", "dpalm:9,2,4", "cat:5,1,2,0,3",
    ];
    for s in specs {
        let b = Blueprint::parse(s, |_| unreachable!()).unwrap();
        let c = classify(&b.build_tree().unwrap());
        assert!(c.contains(&Family::of_blueprint(&b)), "{s}: {:?}", c.families);
    }
}

#[test]
fn every_diameter_three_tree_is_a_double_palm() {
    for n in 4..=12 {
        let table = rank_class(ClassDescriptor::with_diameter(n, 3)).unwrap();
        for e in &table.entries {
            assert!(classify(&e.tree.tree).double_palm().is_some(), "{}", e.tree.key);
        }
    }
}
