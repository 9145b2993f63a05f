//! Named tree families: construction from blueprints and recognition.
//!
//! Node numbering of materialised trees is deterministic: backbone (path)
//! nodes first in path order, then leaves grouped by attachment point. Stars
//! put the centre at node 0; vines keep the subtree's own ids and append the
//! shorter arm, then the longer arm, each from the root outwards.

use std::collections::BTreeSet;
use std::fmt;

use crate::enumeration::{rooted_key, CanonicalKey};
use crate::error::{Error, Result};
use crate::graph::WeightedDigraph;
use crate::tree::Tree;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Blueprint {
    Star { n: usize },
    Path { n: usize },
    /// Path of length `d` with `bouquets[j - 1]` extra leaves on internal
    /// node `j`, `1 <= j <= d - 1`.
    Caterpillar { d: usize, bouquets: Vec<usize> },
    /// Path of length `d` with one bouquet of `n - d - 1` leaves on internal
    /// node `i`.
    Pndi { n: usize, d: usize, i: usize },
    /// `P_{n-1,d,floor(d/2)}` with one extra node hung from a bouquet leaf.
    Nnd { n: usize, d: usize },
    /// Path of `n - p - q` nodes with `p` leaves on one end and `q` on the other.
    DoublePalm { n: usize, p: usize, q: usize },
    /// Rooted tree with two pendant paths of `l` and `k` nodes at the root.
    Vine { subtree: Tree, root: usize, l: usize, k: usize },
}

fn invalid(msg: String) -> Error {
    Error::InvalidParameters(msg)
}

impl Blueprint {
    /// Parses `star:N`, `path:N`, `pndi:N,d,i`, `nnd:N,d`, `dpalm:N,p,q`,
    /// `cat:d,n1,...` or `vine:<file>,root,l,k`. The loader resolves vine
    /// subtree files.
    pub fn parse(spec: &str, load_subtree: impl FnOnce(&str) -> Result<Tree>) -> Result<Self> {
        let (kind, args) = spec
            .split_once(':')
            .ok_or_else(|| invalid(format!("blueprint `{spec}` lacks `kind:`")))?;
        let ints = |s: &str| -> Result<Vec<usize>> {
            s.split(',')
                .map(|x| {
                    x.trim()
                        .parse::<usize>()
                        .map_err(|_| invalid(format!("`{x}` is not a non-negative integer")))
                })
                .collect()
        };
        let arity = |v: &[usize], k: usize| -> Result<()> {
            if v.len() == k {
                Ok(())
            } else {
                Err(invalid(format!("`{kind}` takes {k} parameters, got {}", v.len())))
            }
        };
        match kind {
            "star" => {
                let v = ints(args)?;
                arity(&v, 1)?;
                Ok(Blueprint::Star { n: v[0] })
            }
            "path" => {
                let v = ints(args)?;
                arity(&v, 1)?;
                Ok(Blueprint::Path { n: v[0] })
            }
            "pndi" => {
                let v = ints(args)?;
                arity(&v, 3)?;
                Ok(Blueprint::Pndi { n: v[0], d: v[1], i: v[2] })
            }
            "nnd" => {
                let v = ints(args)?;
                arity(&v, 2)?;
                Ok(Blueprint::Nnd { n: v[0], d: v[1] })
            }
            "dpalm" => {
                let v = ints(args)?;
                arity(&v, 3)?;
                Ok(Blueprint::DoublePalm { n: v[0], p: v[1], q: v[2] })
            }
            "cat" => {
                let v = ints(args)?;
                Ok(Blueprint::Caterpillar { d: v[0], bouquets: v[1..].to_vec() })
            }
            "vine" => {
                let parts: Vec<&str> = args.rsplitn(4, ',').collect();
                if parts.len() != 4 {
                    return Err(invalid("`vine` takes <file>,root,l,k".into()));
                }
                let tail = ints(&format!("{},{},{}", parts[2], parts[1], parts[0]))?;
                let subtree = load_subtree(parts[3])?;
                Ok(Blueprint::Vine { subtree, root: tail[0], l: tail[1], k: tail[2] })
            }
            other => Err(invalid(format!("unknown family `{other}`"))),
        }
    }

    /// Canonical parameter order (`p <= q`, `l <= k`).
    pub fn canonical(self) -> Self {
        match self {
            Blueprint::DoublePalm { n, p, q } => Blueprint::DoublePalm { n, p: p.min(q), q: p.max(q) },
            Blueprint::Vine { subtree, root, l, k } => {
                Blueprint::Vine { subtree, root, l: l.min(k), k: l.max(k) }
            }
            other => other,
        }
    }

    pub fn build_tree(&self) -> Result<Tree> {
        let tree = match self.clone().canonical() {
            Blueprint::Star { n } => {
                if n < 2 {
                    return Err(invalid(format!("star requires N >= 2, got {n}")));
                }
                Tree::star(n)
            }
            Blueprint::Path { n } => {
                if n < 1 {
                    return Err(invalid("path requires N >= 1".into()));
                }
                Tree::path(n)
            }
            Blueprint::Caterpillar { d, bouquets } => {
                if d < 1 {
                    return Err(invalid("caterpillar requires d >= 1".into()));
                }
                if bouquets.len() != d - 1 {
                    return Err(invalid(format!(
                        "caterpillar with d = {d} needs {} bouquet sizes, got {}",
                        d - 1,
                        bouquets.len()
                    )));
                }
                backbone_with_leaves(d, bouquets.iter().enumerate().map(|(j, &c)| (j + 1, c)))
            }
            Blueprint::Pndi { n, d, i } => {
                if d < 2 {
                    return Err(invalid(format!("P_ndi requires d >= 2, got {d}")));
                }
                if i < 1 || i > d / 2 {
                    return Err(invalid(format!(
                        "P_ndi requires 1 <= i <= floor(d/2) = {}, got i = {i}",
                        d / 2
                    )));
                }
                if n < d + 2 {
                    return Err(invalid(format!(
                        "P_ndi requires N >= d + 2 = {} (bouquet size N - d - 1 >= 1), got N = {n}",
                        d + 2
                    )));
                }
                backbone_with_leaves(d, [(i, n - d - 1)])
            }
            Blueprint::Nnd { n, d } => {
                if d < 4 {
                    return Err(invalid(format!("N_nd requires d >= 4, got {d}")));
                }
                if n < d + 3 {
                    return Err(invalid(format!(
                        "N_nd requires N >= d + 3 = {}, got N = {n}",
                        d + 3
                    )));
                }
                let base = backbone_with_leaves(d, [(d / 2, n - d - 2)]);
                let mut edges = base.edges();
                // First bouquet leaf is node d + 1.
                edges.push((d + 1, n - 1));
                Tree::from_edges(n, &edges)?
            }
            Blueprint::DoublePalm { n, p, q } => {
                if p < 1 {
                    return Err(invalid(format!("double palm requires p, q >= 1, got {p}")));
                }
                if p + q + 2 > n {
                    return Err(invalid(format!(
                        "double palm requires p + q <= N - 2 = {}, got {}",
                        n.saturating_sub(2),
                        p + q
                    )));
                }
                let b = n - p - q;
                let mut edges: Vec<(usize, usize)> = (1..b).map(|v| (v - 1, v)).collect();
                edges.extend((0..p).map(|x| (0, b + x)));
                edges.extend((0..q).map(|x| (b - 1, b + p + x)));
                Tree::from_edges(n, &edges)?
            }
            Blueprint::Vine { subtree, root, l, k } => {
                let t = subtree.len();
                if t < 2 {
                    return Err(invalid("vine requires a rooted subtree with at least 2 nodes".into()));
                }
                if root >= t {
                    return Err(invalid(format!("vine root {root} out of range for {t} nodes")));
                }
                if l < 1 {
                    return Err(invalid("vine arms need l, k >= 1".into()));
                }
                let mut edges = subtree.edges();
                let mut next = t;
                for len in [l, k] {
                    let mut prev = root;
                    for _ in 0..len {
                        edges.push((prev, next));
                        prev = next;
                        next += 1;
                    }
                }
                Tree::from_edges(next, &edges)?
            }
        };
        Ok(tree)
    }

    pub fn materialize(&self) -> Result<WeightedDigraph> {
        Ok(self.build_tree()?.to_graph())
    }
}

impl fmt::Display for Blueprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Blueprint::Star { n } => write!(f, "star:{n}"),
            Blueprint::Path { n } => write!(f, "path:{n}"),
            Blueprint::Caterpillar { d, bouquets } => {
                write!(f, "cat:{d}")?;
                for b in bouquets {
                    write!(f, ",{b}")?;
                }
                Ok(())
            }
            Blueprint::Pndi { n, d, i } => write!(f, "pndi:{n},{d},{i}"),
            Blueprint::Nnd { n, d } => write!(f, "nnd:{n},{d}"),
            Blueprint::DoublePalm { n, p, q } => write!(f, "dpalm:{n},{p},{q}"),
            Blueprint::Vine { subtree, root, l, k } => {
                write!(f, "vine:{},{l},{k}", rooted_key(subtree, *root))
            }
        }
    }
}

/// Path `0..=d` plus `count` leaves on each listed path position.
fn backbone_with_leaves(d: usize, attachments: impl IntoIterator<Item = (usize, usize)>) -> Tree {
    let mut edges: Vec<(usize, usize)> = (1..=d).map(|v| (v - 1, v)).collect();
    let mut next = d + 1;
    for (pos, count) in attachments {
        for _ in 0..count {
            edges.push((pos, next));
            next += 1;
        }
    }
    Tree::from_edges(next, &edges).expect("backbone with leaves is a tree")
}

/// A family membership with canonical parameters.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Family {
    Star { n: usize },
    Path { n: usize },
    Caterpillar { d: usize, bouquets: Vec<usize> },
    Pndi { n: usize, d: usize, i: usize },
    Nnd { n: usize, d: usize },
    DoublePalm { n: usize, p: usize, q: usize },
    /// `subtree` is the AHU encoding of the remaining tree rooted at the
    /// vine root.
    Vine { subtree: String, l: usize, k: usize },
}

impl Family {
    /// The membership a blueprint should produce under classification.
    pub fn of_blueprint(b: &Blueprint) -> Self {
        match b.clone().canonical() {
            Blueprint::Star { n } => Family::Star { n },
            Blueprint::Path { n } => Family::Path { n },
            Blueprint::Caterpillar { d, bouquets } => {
                let rev: Vec<usize> = bouquets.iter().rev().copied().collect();
                Family::Caterpillar { d, bouquets: bouquets.min(rev) }
            }
            Blueprint::Pndi { n, d, i } => Family::Pndi { n, d, i },
            Blueprint::Nnd { n, d } => Family::Nnd { n, d },
            Blueprint::DoublePalm { n, p, q } => Family::DoublePalm { n, p, q },
            Blueprint::Vine { subtree, root, l, k } => {
                Family::Vine { subtree: rooted_key(&subtree, root), l, k }
            }
        }
    }

    fn is_standard(&self) -> bool {
        !matches!(self, Family::Vine { .. })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Star { n } => write!(f, "star:{n}"),
            Family::Path { n } => write!(f, "path:{n}"),
            Family::Caterpillar { d, bouquets } => {
                write!(f, "cat:{d}")?;
                for b in bouquets {
                    write!(f, ",{b}")?;
                }
                Ok(())
            }
            Family::Pndi { n, d, i } => write!(f, "pndi:{n},{d},{i}"),
            Family::Nnd { n, d } => write!(f, "nnd:{n},{d}"),
            Family::DoublePalm { n, p, q } => write!(f, "dpalm:{n},{p},{q}"),
            Family::Vine { subtree, l, k } => write!(f, "vine:{subtree},{l},{k}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub families: Vec<Family>,
    pub is_caterpillar: bool,
}

impl Classification {
    pub fn contains(&self, f: &Family) -> bool {
        self.families.contains(f)
    }

    /// Memberships other than vine decompositions.
    pub fn standard(&self) -> impl Iterator<Item = &Family> {
        self.families.iter().filter(|f| f.is_standard())
    }

    pub fn labels(&self) -> Vec<String> {
        self.families.iter().map(Family::to_string).collect()
    }

    pub fn double_palm(&self) -> Option<(usize, usize)> {
        self.families.iter().find_map(|f| match f {
            Family::DoublePalm { p, q, .. } => Some((*p, *q)),
            _ => None,
        })
    }
}

/// Per-internal-node extra leaf counts along a longest path of a
/// caterpillar, in path order.
pub fn caterpillar_bouquets(t: &Tree) -> Option<Vec<usize>> {
    if !t.is_caterpillar() || t.len() < 2 {
        return None;
    }
    let path = t.longest_path();
    Some(path[1..path.len() - 1].iter().map(|&v| t.degree(v) - 2).collect())
}

/// Pendant paths hanging from `root`: for each neighbour that starts a
/// chain of degree-2 nodes ending in a leaf, the chain's nodes outward.
pub fn pendant_arms(t: &Tree, root: usize) -> Vec<Vec<usize>> {
    let mut arms = Vec::new();
    for &first in t.neighbors(root) {
        let mut arm = vec![first];
        let (mut prev, mut cur) = (root, first);
        loop {
            match t.degree(cur) {
                1 => {
                    arms.push(arm);
                    break;
                }
                2 => {
                    let next = t.neighbors(cur).iter().copied().find(|&x| x != prev).unwrap();
                    prev = cur;
                    cur = next;
                    arm.push(cur);
                }
                _ => break,
            }
        }
    }
    arms
}

/// Every family membership of `t`.
pub fn classify(t: &Tree) -> Classification {
    let n = t.len();
    let d = t.diameter();
    let key = CanonicalKey::of(t);
    let mut found = BTreeSet::new();
    if n >= 2 && key == CanonicalKey::of(&Tree::star(n)) {
        found.insert(Family::Star { n });
    }
    if key == CanonicalKey::of(&Tree::path(n)) {
        found.insert(Family::Path { n });
    }
    let is_caterpillar = t.is_caterpillar();
    if let Some(seq) = caterpillar_bouquets(t) {
        let rev: Vec<usize> = seq.iter().rev().copied().collect();
        let nonzero: Vec<usize> = (0..seq.len()).filter(|&j| seq[j] > 0).collect();
        if d >= 2 && nonzero.len() == 1 {
            let j = nonzero[0] + 1;
            found.insert(Family::Pndi { n, d, i: j.min(d - j) });
        }
        if d >= 3 && seq[1..seq.len() - 1].iter().all(|&c| c == 0) {
            let (a, b) = (seq[0] + 1, seq[seq.len() - 1] + 1);
            found.insert(Family::DoublePalm { n, p: a.min(b), q: a.max(b) });
        }
        found.insert(Family::Caterpillar { d, bouquets: seq.clone().min(rev) });
    }
    if d >= 4 && n >= d + 3 {
        let nnd = Blueprint::Nnd { n, d }.build_tree().expect("valid N_nd parameters");
        if key == CanonicalKey::of(&nnd) {
            found.insert(Family::Nnd { n, d });
        }
    }
    for root in 0..n {
        if t.degree(root) < 3 {
            continue;
        }
        let arms = pendant_arms(t, root);
        for a in 0..arms.len() {
            for b in a + 1..arms.len() {
                let mut removed = vec![false; n];
                for &v in arms[a].iter().chain(&arms[b]) {
                    removed[v] = true;
                }
                let (sub, sub_root) = induced_subtree(t, &removed, root);
                let (l, k) = (arms[a].len(), arms[b].len());
                found.insert(Family::Vine {
                    subtree: rooted_key(&sub, sub_root),
                    l: l.min(k),
                    k: l.max(k),
                });
            }
        }
    }
    Classification { families: found.into_iter().collect(), is_caterpillar }
}

/// Unit-weight tree check plus [`classify`].
pub fn classify_graph(g: &WeightedDigraph) -> Result<Classification> {
    if !g.is_tree() {
        return Err(Error::NotTree);
    }
    if !g.is_unit_weight() {
        return Err(Error::NonUnitWeights);
    }
    Ok(classify(&Tree::from_graph(g)?))
}

/// The tree induced on the nodes not marked `removed`, relabelled
/// compactly; returns the new id of `root` as well.
fn induced_subtree(t: &Tree, removed: &[bool], root: usize) -> (Tree, usize) {
    let mut id = vec![usize::MAX; t.len()];
    let mut next = 0;
    for v in 0..t.len() {
        if !removed[v] {
            id[v] = next;
            next += 1;
        }
    }
    let edges: Vec<(usize, usize)> = t
        .edges()
        .into_iter()
        .filter(|&(a, b)| !removed[a] && !removed[b])
        .map(|(a, b)| (id[a], id[b]))
        .collect();
    (Tree::from_edges(next, &edges).expect("removing pendant arms keeps a tree"), id[root])
}
