//! Exhaustive checks of the ordering results over enumerated tree classes.
//! Every comparison is on exact integer Kirchhoff indices.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use super::moves::{
    bouquet_leaf_delta, caterpillar_descent, move_bouquet_leaf, move_vine_leaf,
    noncaterpillar_descent, pendant_drop, shift_bouquet_inward, vine_leaf_delta, MoveOutcome,
    VineView,
};
use crate::enumeration::{enumerate_trees, CanonicalKey, CanonicalTree, MAX_ENUMERATION_NODES};
use crate::error::{Error, Result};
use crate::families::Blueprint;
use crate::tree::Tree;

pub const NUMBERING: &str = "theorem ids: 1 = diameter-3 trees are the double palms D_{N,p,q}, \
ordered by increasing p; 2 = the path has the strictly largest H2 norm; 3 = diameter N-2 trees \
are the P_{N,N-2,i}, ordered by decreasing i; 5 = P_{N,d,floor(d/2)} uniquely minimises H2 \
within diameter d; 6 = some diameter d-1 tree beats every diameter-d tree and the star is the \
unique global minimum; lemmas 1-5 are checked through the local moves";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum TheoremId {
    DiameterThree,
    PathMaximum,
    DiameterNMinusTwo,
    CentralBouquetMinimum,
    DiameterDomination,
}

impl TheoremId {
    pub const ALL: [TheoremId; 5] = [
        TheoremId::DiameterThree,
        TheoremId::PathMaximum,
        TheoremId::DiameterNMinusTwo,
        TheoremId::CentralBouquetMinimum,
        TheoremId::DiameterDomination,
    ];

    pub fn number(self) -> u8 {
        match self {
            TheoremId::DiameterThree => 1,
            TheoremId::PathMaximum => 2,
            TheoremId::DiameterNMinusTwo => 3,
            TheoremId::CentralBouquetMinimum => 5,
            TheoremId::DiameterDomination => 6,
        }
    }
}

impl FromStr for TheoremId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.number().to_string() == s)
            .ok_or_else(|| Error::InvalidParameters(format!("unknown theorem id `{s}` (expected 1, 2, 3, 5 or 6)")))
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "theorem {}", self.number())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub key: String,
    pub kirchhoff: u64,
}

impl Witness {
    fn of(t: &CanonicalTree) -> Self {
        Witness { key: t.key.to_string(), kirchhoff: t.kirchhoff }
    }

    fn of_tree(t: &Tree) -> Self {
        Witness { key: CanonicalKey::of(t).to_string(), kirchhoff: t.kirchhoff() }
    }
}

/// One checked cell: a statement at one `(N, d)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CellReport {
    pub check: String,
    pub n: usize,
    pub d: Option<usize>,
    pub pass: bool,
    pub cases: usize,
    pub witnesses: Vec<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

impl CellReport {
    fn new(check: &str, n: usize, d: Option<usize>) -> Self {
        CellReport { check: check.into(), n, d, pass: true, cases: 0, witnesses: Vec::new(), failure: None }
    }

    fn fail(&mut self, msg: String) {
        if self.pass {
            self.pass = false;
            self.failure = Some(msg);
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub subject: String,
    pub numbering: &'static str,
    pub max_nodes: usize,
    pub pass: bool,
    pub cells: Vec<CellReport>,
}

impl VerificationReport {
    fn new(subject: String, max_nodes: usize, cells: Vec<CellReport>) -> Self {
        let pass = cells.iter().all(|c| c.pass);
        VerificationReport { subject, numbering: NUMBERING, max_nodes, pass, cells }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }
}

fn guard(max_nodes: usize) -> Result<()> {
    if max_nodes > MAX_ENUMERATION_NODES {
        return Err(Error::NTooLarge { what: "verification", n: max_nodes, max: MAX_ENUMERATION_NODES });
    }
    Ok(())
}

fn class(trees: &[CanonicalTree], d: usize) -> Vec<&CanonicalTree> {
    trees.iter().filter(|t| t.diameter == d).collect()
}

fn key_of(b: Blueprint) -> CanonicalKey {
    CanonicalKey::of(&b.build_tree().expect("valid blueprint"))
}

/// Checks that `members` is exactly `chain` (as keys) and that K_f strictly
/// increases along `chain`.
fn check_chain(cell: &mut CellReport, members: &[&CanonicalTree], chain: &[CanonicalKey]) {
    cell.cases = members.len();
    let have: BTreeSet<&CanonicalKey> = members.iter().map(|t| &t.key).collect();
    let want: BTreeSet<&CanonicalKey> = chain.iter().collect();
    if have != want || members.len() != chain.len() {
        cell.fail(format!("class has {} members, expected the {} listed trees", members.len(), chain.len()));
        return;
    }
    let mut prev = None;
    for key in chain {
        let t = members.iter().find(|t| &t.key == key).unwrap();
        cell.witnesses.push(Witness::of(t));
        if prev.is_some_and(|p| p >= t.kirchhoff) {
            cell.fail(format!("K_f does not strictly increase at {}", t.key));
        }
        prev = Some(t.kirchhoff);
    }
}

/// Checks `expected` is the unique minimiser (or maximiser) of K_f among `members`.
fn check_unique_extreme(cell: &mut CellReport, members: &[&CanonicalTree], expected: &CanonicalKey, max: bool) {
    cell.cases = members.len();
    let Some(target) = members.iter().find(|t| &t.key == expected) else {
        cell.fail(format!("{expected} is not in the class"));
        return;
    };
    cell.witnesses.push(Witness::of(target));
    for t in members {
        let beaten = if max { t.kirchhoff >= target.kirchhoff } else { t.kirchhoff <= target.kirchhoff };
        if &t.key != expected && beaten {
            cell.witnesses.push(Witness::of(t));
            cell.fail(format!("{} ties or beats the expected extreme", t.key));
        }
    }
}

fn theorem_cells(id: TheoremId, n: usize, trees: &[CanonicalTree]) -> Vec<CellReport> {
    let name = id.to_string();
    let mut out = Vec::new();
    match id {
        TheoremId::DiameterThree if n >= 4 => {
            let mut cell = CellReport::new(&name, n, Some(3));
            let chain: Vec<CanonicalKey> =
                (1..=(n - 2) / 2).map(|p| key_of(Blueprint::DoublePalm { n, p, q: n - 2 - p })).collect();
            check_chain(&mut cell, &class(trees, 3), &chain);
            out.push(cell);
        }
        TheoremId::PathMaximum if n >= 2 => {
            let mut cell = CellReport::new(&name, n, None);
            let all: Vec<&CanonicalTree> = trees.iter().collect();
            check_unique_extreme(&mut cell, &all, &CanonicalKey::of(&Tree::path(n)), true);
            out.push(cell);
        }
        TheoremId::DiameterNMinusTwo if n >= 4 => {
            let d = n - 2;
            let mut cell = CellReport::new(&name, n, Some(d));
            let chain: Vec<CanonicalKey> =
                (1..=d / 2).rev().map(|i| key_of(Blueprint::Pndi { n, d, i })).collect();
            check_chain(&mut cell, &class(trees, d), &chain);
            out.push(cell);
        }
        TheoremId::CentralBouquetMinimum if n >= 4 => {
            for d in 2..=n - 2 {
                let mut cell = CellReport::new(&name, n, Some(d));
                let expected = key_of(Blueprint::Pndi { n, d, i: d / 2 });
                check_unique_extreme(&mut cell, &class(trees, d), &expected, false);
                out.push(cell);
            }
        }
        TheoremId::DiameterDomination if n >= 4 => {
            for d in 3..n {
                let mut cell = CellReport::new(&name, n, Some(d));
                let upper = class(trees, d);
                let lower = class(trees, d - 1);
                cell.cases = upper.len();
                let best_lower = lower.iter().min_by_key(|t| (t.kirchhoff, &t.key)).unwrap();
                let best_upper = upper.iter().min_by_key(|t| (t.kirchhoff, &t.key)).unwrap();
                cell.witnesses.push(Witness::of(best_lower));
                cell.witnesses.push(Witness::of(best_upper));
                if best_lower.kirchhoff >= best_upper.kirchhoff {
                    cell.fail(format!("no diameter-{} tree beats {}", d - 1, best_upper.key));
                }
                out.push(cell);
            }
            let mut cell = CellReport::new(&name, n, None);
            let all: Vec<&CanonicalTree> = trees.iter().collect();
            check_unique_extreme(&mut cell, &all, &CanonicalKey::of(&Tree::star(n)), false);
            out.push(cell);
        }
        _ => {}
    }
    out
}

/// Runs one theorem over every applicable `N <= max_nodes`.
pub fn verify_theorem(id: TheoremId, max_nodes: usize) -> Result<VerificationReport> {
    guard(max_nodes)?;
    let cells = (1..=max_nodes)
        .into_par_iter()
        .map(|n| Ok(theorem_cells(id, n, &enumerate_trees(n)?)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok(VerificationReport::new(id.to_string(), max_nodes, cells))
}

/// Lemma 1 and 2 change formulas over blueprint parameter sweeps.
pub fn lemma_formulas(max_nodes: usize) -> Vec<CellReport> {
    let mut cells = Vec::new();
    for n in 6..=max_nodes {
        let mut cell = CellReport::new("lemma 1 formula", n, None);
        for p in 2..=(n - 2) / 2 {
            for q in p..=n - 2 - p {
                let t = Blueprint::DoublePalm { n, p, q }.build_tree().unwrap();
                cell.cases += 1;
                match move_bouquet_leaf(&t) {
                    Ok(m) => {
                        let want = bouquet_leaf_delta(n, p, q);
                        if m.delta_kf != want || !exact(&t, &m) || m.delta_kf >= 0 {
                            cell.fail(format!("D_{{{n},{p},{q}}}: change {} vs formula {want}", m.delta_kf));
                        }
                    }
                    Err(e) => cell.fail(format!("D_{{{n},{p},{q}}}: {e}")),
                }
            }
        }
        cells.push(cell);
    }
    for n in 4..=max_nodes {
        let mut cell = CellReport::new("lemma 2 formula", n, None);
        for size in 2..=4usize.min(n - 2) {
            let base = Tree::path(size);
            for root in 0..size {
                for l in 1..=(n - size) / 2 {
                    let k = n - size - l;
                    let b = Blueprint::Vine { subtree: base.clone(), root, l, k };
                    let (t, v) = VineView::from_blueprint(&b).unwrap();
                    cell.cases += 1;
                    match move_vine_leaf(&t, &v) {
                        Ok(m) => {
                            let want = vine_leaf_delta(n, l, k);
                            if m.delta_kf != want || !exact(&t, &m) || m.delta_kf <= 0 {
                                cell.fail(format!("{b}: change {} vs formula {want}", m.delta_kf));
                            }
                        }
                        Err(e) => cell.fail(format!("{b}: {e}")),
                    }
                }
            }
        }
        cells.push(cell);
    }
    cells
}

fn exact(before: &Tree, m: &MoveOutcome) -> bool {
    m.delta_kf == m.tree.kirchhoff() as i64 - before.kirchhoff() as i64
}

/// Checks that every step is exact and strictly decreasing. Returns the
/// last tree.
fn check_descent(cell: &mut CellReport, start: &Tree, steps: &[MoveOutcome], key: &CanonicalKey) -> Tree {
    let mut cur = start.clone();
    for s in steps {
        if !exact(&cur, s) || s.delta_kf >= 0 {
            cell.fail(format!("{key}: step {:?} changed K_f by {}", s.record, s.delta_kf));
        }
        cur = s.tree.clone();
    }
    cur
}

fn move_cells(n: usize, trees: &[CanonicalTree]) -> Vec<CellReport> {
    let mut l1 = CellReport::new("lemma 1 moves", n, None);
    let mut l2 = CellReport::new("lemma 2 moves", n, None);
    let mut l3 = CellReport::new("lemma 3 descent", n, None);
    let mut l4 = CellReport::new("lemma 4 descent", n, None);
    let mut l5 = CellReport::new("lemma 5 pendant drop", n, None);
    for ct in trees {
        let t = &ct.tree;
        let d = ct.diameter;
        if let Ok(m) = move_bouquet_leaf(t) {
            l1.cases += 1;
            if !exact(t, &m) || m.delta_kf >= 0 {
                l1.fail(format!("{}: change {}", ct.key, m.delta_kf));
            }
        }
        for v in VineView::all(t) {
            if v.l() == 0 {
                continue;
            }
            l2.cases += 1;
            match move_vine_leaf(t, &v) {
                Ok(m) if exact(t, &m) && m.delta_kf == vine_leaf_delta(n, v.l(), v.k()) => {}
                Ok(m) => l2.fail(format!("{}: change {}", ct.key, m.delta_kf)),
                Err(e) => l2.fail(format!("{}: {e}", ct.key)),
            }
        }
        if ct.is_caterpillar && d >= 2 && d + 2 <= n {
            l3.cases += 1;
            match caterpillar_descent(t) {
                Ok(steps) => {
                    let end = check_descent(&mut l3, t, &steps, &ct.key);
                    let want = key_of(Blueprint::Pndi { n, d, i: d / 2 });
                    if CanonicalKey::of(&end) != want {
                        l3.fail(format!("{}: descent ended at {}", ct.key, CanonicalKey::of(&end)));
                    }
                    if steps.iter().any(|s| s.tree.diameter() != d || !s.tree.is_caterpillar()) {
                        l3.fail(format!("{}: descent left the caterpillar class", ct.key));
                    }
                }
                Err(e) => l3.fail(format!("{}: {e}", ct.key)),
            }
        }
        if !ct.is_caterpillar {
            l4.cases += 1;
            match noncaterpillar_descent(t) {
                Ok(steps) => {
                    let end = check_descent(&mut l4, t, &steps, &ct.key);
                    if steps.iter().any(|s| s.tree.diameter() != d || s.tree.is_caterpillar()) {
                        l4.fail(format!("{}: descent left the non-caterpillar class", ct.key));
                    }
                    if CanonicalKey::of(&end) != key_of(Blueprint::Nnd { n, d }) {
                        l4.fail(format!("{}: descent ended at {}", ct.key, CanonicalKey::of(&end)));
                    }
                    l5.cases += 1;
                    match pendant_drop(&end) {
                        Ok(m) => {
                            let want = key_of(Blueprint::Pndi { n, d, i: d / 2 });
                            if !exact(&end, &m) || m.delta_kf >= 0 || CanonicalKey::of(&m.tree) != want {
                                l5.fail(format!("{}: pendant drop gave {} ({})", ct.key, CanonicalKey::of(&m.tree), m.delta_kf));
                            }
                        }
                        Err(e) => l5.fail(format!("{}: {e}", ct.key)),
                    }
                }
                Err(e) => l4.fail(format!("{}: {e}", ct.key)),
            }
        }
        // Lemma 3's single step on its own.
        if let Ok(m) = shift_bouquet_inward(t) {
            if !exact(t, &m) || m.delta_kf >= 0 {
                l3.fail(format!("{}: shift changed K_f by {}", ct.key, m.delta_kf));
            }
        }
    }
    for cell in [&mut l4, &mut l5] {
        if let Some(d) = (4..n.saturating_sub(2)).next() {
            let t = Blueprint::Nnd { n, d }.build_tree().unwrap();
            cell.witnesses.push(Witness::of_tree(&t));
        }
    }
    vec![l1, l2, l3, l4, l5]
}

/// Lemma moves over every enumerated tree with `N <= max_nodes`.
pub fn lemma_moves(max_nodes: usize) -> Result<Vec<CellReport>> {
    guard(max_nodes)?;
    Ok((1..=max_nodes)
        .into_par_iter()
        .map(|n| Ok(move_cells(n, &enumerate_trees(n)?)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect())
}

pub fn verify_lemmas(max_nodes: usize) -> Result<VerificationReport> {
    let mut cells = lemma_formulas(max_nodes);
    cells.extend(lemma_moves(max_nodes)?);
    Ok(VerificationReport::new("lemmas".into(), max_nodes, cells))
}
