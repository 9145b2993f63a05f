//! One PASS/FAIL line per acceptance criterion. Exits non-zero if any fails.

mod common;

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use common::*;
use h2robust::enumeration::{enumerate_trees, CanonicalKey};
use h2robust::format::sig12;
use h2robust::metrics::{h2_eigen, h2_lyapunov, resistance_directed, resistance_undirected};
use h2robust::ordering::verify::{lemma_formulas, lemma_moves};
use h2robust::ordering::{decentralized_rewire, verify_theorem, RewireConfig, TheoremId, Termination};
use h2robust::sim::{simulate, NoiseModel, SimParams};
use h2robust::{Tree, WeightedDigraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TREE_COUNTS: [usize; 10] = [1, 1, 1, 2, 3, 6, 11, 23, 47, 106];

struct Outcome {
    pass: bool,
    detail: String,
    /// Everything the criterion computed, rendered deterministically.
    artifact: String,
}

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut out = f();
    let took = start.elapsed();
    if took > limit {
        out.pass = false;
        out.detail = format!("{} (took {:.1?}, limit {:.0?})", out.detail, took, limit);
    }
    out
}

fn c1_cross_method() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst = 0.0f64;
    let mut art = String::new();
    for _ in 0..200 {
        let n = rng.random_range(2..=30);
        let p = rng.random_range(0.05..0.5);
        let g = random_connected_graph(&mut rng, n, p, true);
        let e = h2_eigen(&g).unwrap();
        let l = h2_lyapunov(&g).unwrap().h2;
        let r = (resistance_undirected(&g).unwrap().kirchhoff / (2.0 * n as f64)).sqrt();
        worst = worst.max(rel(e, l)).max(rel(e, r)).max(rel(l, r));
        writeln!(art, "{n},{},{},{}", sig12(e), sig12(l), sig12(r)).unwrap();
    }
    Outcome { pass: worst < 1e-8, detail: format!("200 graphs, worst relative gap {worst:.2e}"), artifact: art }
}

fn c2_tree_resistance() -> Outcome {
    let mut worst = 0.0f64;
    let mut count = 0;
    let mut art = String::new();
    for n in 2..=12 {
        for t in enumerate_trees(n).unwrap() {
            let r = resistance_undirected(&t.tree.to_graph()).unwrap();
            let dist = t.tree.distance_matrix();
            for i in 0..n {
                for j in 0..n {
                    worst = worst.max((r.get(i, j) - dist[i][j] as f64).abs());
                }
            }
            count += 1;
            writeln!(art, "{},{}", t.key, sig12(r.kirchhoff)).unwrap();
        }
    }
    Outcome { pass: worst < 1e-9, detail: format!("{count} trees, worst |r - d| {worst:.2e}"), artifact: art }
}

fn c3_directed() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst = 0.0f64;
    let mut art = String::new();
    for _ in 0..50 {
        let n = rng.random_range(2..=15);
        let g = random_connected_graph(&mut rng, n, 0.3, true);
        let arcs: Vec<(usize, usize, f64)> = g.edges().iter().map(|e| (e.source, e.target, e.weight)).collect();
        let d = WeightedDigraph::directed(n, &arcs).unwrap();
        let a = resistance_undirected(&g).unwrap();
        let b = resistance_directed(&d).unwrap();
        worst = worst.max((a.matrix - &b.matrix).amax());
        writeln!(art, "{n},{}", sig12(b.kirchhoff)).unwrap();
    }
    let edge = WeightedDigraph::directed(2, &[(0, 1, 1.0)]).unwrap();
    let r = resistance_directed(&edge).unwrap();
    let h = h2_lyapunov(&edge).unwrap().h2;
    let exact = (r.get(0, 1) - 2.0).abs() < 1e-12 && (h - 0.5f64.sqrt()).abs() < 1e-12;
    writeln!(art, "{},{}", sig12(r.get(0, 1)), sig12(h)).unwrap();
    Outcome {
        pass: worst < 1e-8 && exact,
        detail: format!("50 symmetric digraphs, worst gap {worst:.2e}; 2-node directed r = {}, H = {}", sig12(r.get(0, 1)), sig12(h)),
        artifact: art,
    }
}

fn c4_theorems() -> Outcome {
    let mut art = String::new();
    let mut pass = true;
    let mut total = 0;
    let mut notes = Vec::new();
    for n in 1..=10 {
        let count = enumerate_trees(n).unwrap().len();
        total += count;
        let counts_ok = count == TREE_COUNTS[n - 1] && (n > 9 || count == prufer_tree_count(n));
        pass &= counts_ok;
        writeln!(art, "N={n} trees={count}").unwrap();
    }
    for id in TheoremId::ALL {
        let r = verify_theorem(id, 10).unwrap();
        pass &= r.pass;
        notes.push(format!("{}: {}", id, if r.pass { "ok" } else { "FAILED" }));
        art.push_str(&r.to_json());
    }
    Outcome {
        pass,
        detail: format!("{total} trees for N <= 10 (Prüfer cross-check N <= 9); {}", notes.join(", ")),
        artifact: art,
    }
}

fn c5_lemma_formulas() -> Outcome {
    let cells = lemma_formulas(14);
    let cases: usize = cells.iter().map(|c| c.cases).sum();
    let failed: Vec<String> = cells.iter().filter(|c| !c.pass).map(|c| format!("{} N={}", c.check, c.n)).collect();
    Outcome {
        pass: failed.is_empty(),
        detail: format!("{cases} parameter sets, N <= 14; failures: {}", if failed.is_empty() { "none".into() } else { failed.join(", ") }),
        artifact: serde_json::to_string(&cells).unwrap(),
    }
}

fn c6_descent() -> Outcome {
    let cells = lemma_moves(10).unwrap();
    let sum = |name: &str| cells.iter().filter(|c| c.check == name).map(|c| c.cases).sum::<usize>();
    let failed: Vec<String> = cells.iter().filter(|c| !c.pass).map(|c| format!("{} N={}: {:?}", c.check, c.n, c.failure)).collect();
    Outcome {
        pass: failed.is_empty(),
        detail: format!(
            "{} caterpillar descents, {} non-caterpillar descents, {} pendant drops; failures: {}",
            sum("lemma 3 descent"),
            sum("lemma 4 descent"),
            sum("lemma 5 pendant drop"),
            if failed.is_empty() { "none".into() } else { failed.join("; ") }
        ),
        artifact: serde_json::to_string(&cells).unwrap(),
    }
}

fn c7_edge_addition() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0;
    let mut violations = 0;
    let mut art = String::new();
    for _ in 0..100 {
        let n = rng.random_range(2..=12);
        let g = random_connected_graph(&mut rng, n, 0.2, false);
        let base = resistance_undirected(&g).unwrap().kirchhoff;
        for a in 0..n {
            for b in a + 1..n {
                if g.has_edge(a, b) {
                    continue;
                }
                let mut edges = g.undirected_edges();
                edges.push((a, b, 1.0));
                let kf = resistance_undirected(&WeightedDigraph::undirected(n, &edges).unwrap()).unwrap().kirchhoff;
                checked += 1;
                if kf >= base {
                    violations += 1;
                }
                writeln!(art, "{a},{b},{}", sig12(base - kf)).unwrap();
            }
        }
    }
    Outcome {
        pass: violations == 0 && checked > 0,
        detail: format!("{checked} edge additions over 100 graphs, {violations} non-decreasing"),
        artifact: art,
    }
}

fn c8_simulation() -> Outcome {
    let cases = [
        ("single edge", WeightedDigraph::undirected(2, &[(0, 1, 1.0)]).unwrap(), 0.25),
        ("K_{1,9}", Tree::star(10).to_graph(), 4.05),
        ("P_10", Tree::path(10).to_graph(), 165.0 / 20.0),
    ];
    let mut pass = true;
    let mut parts = Vec::new();
    let mut art = String::new();
    for (i, (name, g, h2sq)) in cases.iter().enumerate() {
        let run = simulate(g, NoiseModel { alpha: 2.0, seed: 80 + i as u64 }, &SimParams::new(2_000_000, 200_000)).unwrap();
        let est = run.estimate.unwrap();
        let z = (est.mean - h2sq) / est.stderr;
        pass &= z.abs() < 3.0;
        parts.push(format!("{name}: {} +- {} vs {} (z {:+.2})", sig12(est.mean), sig12(est.stderr), sig12(*h2sq), z));
        art.push_str(&run.to_csv());
        art.push_str(&serde_json::to_string(&run.summary()).unwrap());
    }
    Outcome { pass, detail: parts.join("; "), artifact: art }
}

fn c9_rewiring() -> Outcome {
    let mut pass = true;
    let mut runs = 0;
    let mut findings = Vec::new();
    let mut art = String::new();
    for n in 1..=10 {
        for t in enumerate_trees(n).unwrap() {
            let s = decentralized_rewire(&t.tree, RewireConfig { hops: 3, max_rounds: 10_000, seed: None }).unwrap();
            runs += 1;
            let decreasing = s.log.iter().all(|r| r.kf_after < r.kf_before)
                && s.log.windows(2).all(|w| w[0].kf_after == w[1].kf_before);
            let terminated = s.termination != Some(Termination::MaxRounds);
            pass &= decreasing && terminated;
            if !s.is_star() {
                findings.push(format!("{} -> {}", t.key, CanonicalKey::of(&s.tree)));
            }
            art.push_str(&s.log_csv().unwrap());
        }
    }
    for f in &findings {
        println!("    finding: non-star fixed point {f}");
    }
    Outcome {
        pass,
        detail: format!("{runs} runs with hop radius 3, all logs strictly decreasing and terminated; {} non-star terminal trees reported as findings", findings.len()),
        artifact: art,
    }
}

type Criterion = (&'static str, Duration, fn() -> Outcome);

fn main() {
    let min = |m: u64| Duration::from_secs(60 * m);
    let criteria: [Criterion; 9] = [
        ("cross-method H2 equivalence", min(1), c1_cross_method),
        ("tree resistance equals distance", min(2), c2_tree_resistance),
        ("directed resistance consistency", min(5), c3_directed),
        ("theorem suite by exhaustion", min(5), c4_theorems),
        ("lemma change formulas", min(5), c5_lemma_formulas),
        ("descent termination", min(5), c6_descent),
        ("edge-addition monotonicity", min(5), c7_edge_addition),
        ("simulation identity", min(5), c8_simulation),
        ("rewiring", min(5), c9_rewiring),
    ];
    let mut all_pass = true;
    let mut artifacts = Vec::new();
    for (i, (name, limit, f)) in criteria.iter().enumerate() {
        let out = timed(*limit, f);
        all_pass &= out.pass;
        println!("{} criterion {}: {name}: {}", if out.pass { "PASS" } else { "FAIL" }, i + 1, out.detail);
        artifacts.push(out.artifact);
    }
    let mut differing = Vec::new();
    for (i, (_, _, f)) in criteria.iter().enumerate() {
        if f().artifact != artifacts[i] {
            differing.push((i + 1).to_string());
        }
    }
    let det = differing.is_empty();
    all_pass &= det;
    println!(
        "{} criterion 10: determinism: {}",
        if det { "PASS" } else { "FAIL" },
        if det {
            "rerun of criteria 1-9 produced byte-identical artifacts".to_string()
        } else {
            format!("artifacts differ for criteria {}", differing.join(", "))
        }
    );
    if !all_pass {
        std::process::exit(1);
    }
}
