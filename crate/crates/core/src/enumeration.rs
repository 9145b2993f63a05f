//! Exhaustive generation of unlabeled trees and exact Kirchhoff rankings.
//!
//! Rooted trees are generated as canonical level sequences with the
//! Beyer-Hedetniemi successor rule; each one is keyed by its free-tree
//! canonical form (AHU encoding rooted at the centre) and duplicates are
//! dropped.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::families;
use crate::format::sig12;
use crate::tree::Tree;

pub const MAX_ENUMERATION_NODES: usize = 16;

/// AHU parenthesis encoding of a tree rooted at its centre. For bicentral
/// trees the lexicographically smaller of the two rooted encodings is used.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CanonicalKey(String);

impl CanonicalKey {
    pub fn of(tree: &Tree) -> Self {
        let key = tree
            .centers()
            .into_iter()
            .map(|c| rooted_key(tree, c))
            .min()
            .expect("non-empty tree");
        CanonicalKey(key)
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Materialises the key with preorder node numbering (root is node 0).
    pub fn to_tree(&self) -> Tree {
        tree_from_encoding(&self.0).expect("canonical keys are well formed")
    }
}

impl std::fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

/// AHU encoding of `tree` rooted at `root`: `(` + sorted child codes + `)`.
pub fn rooted_key(tree: &Tree, root: usize) -> String {
    let parent = tree.parents(root);
    let mut order = vec![root];
    let mut i = 0;
    while i < order.len() {
        let u = order[i];
        i += 1;
        for &v in tree.neighbors(u) {
            if parent[v] == u && v != u {
                order.push(v);
            }
        }
    }
    let mut codes: Vec<Option<String>> = vec![None; tree.len()];
    for &v in order.iter().rev() {
        let mut kids: Vec<String> = tree
            .neighbors(v)
            .iter()
            .filter(|&&c| parent[c] == v && c != v)
            .map(|&c| codes[c].take().expect("child encoded first"))
            .collect();
        kids.sort_unstable();
        let mut s = String::with_capacity(2 + kids.iter().map(String::len).sum::<usize>());
        s.push('(');
        for k in &kids {
            s.push_str(k);
        }
        s.push(')');
        codes[v] = Some(s);
    }
    codes[root].take().expect("root encoded")
}

/// Parses a parenthesis encoding into a tree with preorder numbering.
pub fn tree_from_encoding(code: &str) -> Result<Tree> {
    let mut edges = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    let mut count = 0usize;
    for (pos, ch) in code.chars().enumerate() {
        match ch {
            '(' => {
                if count > 0 && stack.is_empty() {
                    return Err(Error::InvalidParameters(format!("second root at {pos}")));
                }
                if let Some(&p) = stack.last() {
                    edges.push((p, count));
                }
                stack.push(count);
                count += 1;
            }
            ')' => {
                stack.pop().ok_or_else(|| {
                    Error::InvalidParameters(format!("unbalanced `)` at {pos}"))
                })?;
            }
            other => {
                return Err(Error::InvalidParameters(format!("unexpected `{other}` in encoding")))
            }
        }
    }
    if !stack.is_empty() || count == 0 {
        return Err(Error::InvalidParameters("unbalanced encoding".into()));
    }
    Tree::from_edges(count, &edges)
}

/// One representative of an isomorphism class of unlabeled trees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalTree {
    pub key: CanonicalKey,
    pub tree: Tree,
    pub n: usize,
    pub diameter: usize,
    pub kirchhoff: u64,
    pub is_caterpillar: bool,
}

impl CanonicalTree {
    pub fn new(key: CanonicalKey) -> Self {
        let tree = key.to_tree();
        Self {
            n: tree.len(),
            diameter: tree.diameter(),
            kirchhoff: tree.kirchhoff(),
            is_caterpillar: tree.is_caterpillar(),
            tree,
            key,
        }
    }

    pub fn from_tree(tree: &Tree) -> Self {
        Self::new(CanonicalKey::of(tree))
    }

    pub fn h2(&self) -> f64 {
        h2_from_kirchhoff(self.kirchhoff, self.n)
    }
}

/// `sqrt(K_f / 2N)`.
pub fn h2_from_kirchhoff(kirchhoff: u64, n: usize) -> f64 {
    (kirchhoff as f64 / (2.0 * n as f64)).sqrt()
}

fn check_size(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::NTooSmall { n, min: 1 });
    }
    if n > MAX_ENUMERATION_NODES {
        return Err(Error::NTooLarge { what: "tree enumeration", n, max: MAX_ENUMERATION_NODES });
    }
    Ok(())
}

/// Canonical keys of every unlabeled tree on `n` nodes, ascending.
pub fn enumerate_keys(n: usize) -> Result<Vec<CanonicalKey>> {
    check_size(n)?;
    if n <= 2 {
        return Ok(vec![CanonicalKey::of(&Tree::path(n))]);
    }
    let mut keys = BTreeSet::new();
    // Levels with the root at 1; the path is the first canonical sequence.
    let mut levels: Vec<usize> = (1..=n).collect();
    loop {
        keys.insert(CanonicalKey::of(&tree_from_levels(&levels)));
        let Some(p) = (1..n).rev().find(|&i| levels[i] > 2) else {
            break;
        };
        let q = (0..p).rev().find(|&i| levels[i] == levels[p] - 1).expect("level predecessor");
        for i in p..n {
            levels[i] = levels[i - p + q];
        }
    }
    Ok(keys.into_iter().collect())
}

fn tree_from_levels(levels: &[usize]) -> Tree {
    let mut stack: Vec<usize> = Vec::with_capacity(levels.len());
    let mut edges = Vec::with_capacity(levels.len());
    for (i, &l) in levels.iter().enumerate() {
        stack.truncate(l - 1);
        if let Some(&p) = stack.last() {
            edges.push((p, i));
        }
        stack.push(i);
    }
    Tree::from_edges(levels.len(), &edges).expect("level sequence is a tree")
}

/// Every unlabeled tree on `n` nodes, ordered by canonical key.
pub fn enumerate_trees(n: usize) -> Result<Vec<CanonicalTree>> {
    Ok(enumerate_keys(n)?.into_par_iter().map(CanonicalTree::new).collect())
}

fn check_diameter(n: usize, d: usize) -> Result<()> {
    let ok = match n {
        1 => d == 0,
        2 => d == 1,
        _ => (2..n).contains(&d),
    };
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidDiameter { n, d })
    }
}

/// The trees on `n` nodes with diameter `d`.
pub fn trees_by_diameter(n: usize, d: usize) -> Result<Vec<CanonicalTree>> {
    check_size(n)?;
    check_diameter(n, d)?;
    Ok(enumerate_trees(n)?.into_iter().filter(|t| t.diameter == d).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ClassDescriptor {
    pub n: usize,
    pub diameter: Option<usize>,
    pub caterpillars_only: bool,
}

impl ClassDescriptor {
    pub fn all(n: usize) -> Self {
        Self { n, diameter: None, caterpillars_only: false }
    }

    pub fn with_diameter(n: usize, d: usize) -> Self {
        Self { n, diameter: Some(d), caterpillars_only: false }
    }

    pub fn caterpillars(self) -> Self {
        Self { caterpillars_only: true, ..self }
    }

    pub fn members(&self) -> Result<Vec<CanonicalTree>> {
        let trees = match self.diameter {
            Some(d) => trees_by_diameter(self.n, d)?,
            None => enumerate_trees(self.n)?,
        };
        Ok(trees
            .into_iter()
            .filter(|t| !self.caterpillars_only || t.is_caterpillar)
            .collect())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RankedTree {
    /// Competition rank: tied trees share a rank, the next rank skips.
    pub rank: usize,
    pub tree: CanonicalTree,
    pub h2: f64,
}

/// A class of trees ordered by exact integer Kirchhoff index.
#[derive(Debug, Clone, PartialEq)]
pub struct RankingTable {
    pub class: ClassDescriptor,
    pub entries: Vec<RankedTree>,
}

impl RankingTable {
    /// Index ranges of entries sharing a Kirchhoff index, in table order.
    pub fn tie_groups(&self) -> Vec<std::ops::Range<usize>> {
        let mut groups = Vec::new();
        let mut start = 0;
        for i in 1..=self.entries.len() {
            if i == self.entries.len()
                || self.entries[i].tree.kirchhoff != self.entries[start].tree.kirchhoff
            {
                groups.push(start..i);
                start = i;
            }
        }
        groups
    }

    pub fn has_ties(&self) -> bool {
        self.tie_groups().iter().any(|g| g.len() > 1)
    }

    /// `rank,canonical_key,n,diameter,kirchhoff,h2,is_caterpillar,family_labels`
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(vec![]);
        let io = |e: csv::Error| Error::InvalidParameters(e.to_string());
        w.write_record([
            "rank",
            "canonical_key",
            "n",
            "diameter",
            "kirchhoff",
            "h2",
            "is_caterpillar",
            "family_labels",
        ])
        .map_err(io)?;
        for e in &self.entries {
            let labels = families::classify(&e.tree.tree).labels().join(";");
            w.write_record([
                e.rank.to_string(),
                e.tree.key.to_string(),
                e.tree.n.to_string(),
                e.tree.diameter.to_string(),
                e.tree.kirchhoff.to_string(),
                sig12(e.h2),
                e.tree.is_caterpillar.to_string(),
                labels,
            ])
            .map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::InvalidParameters(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

/// Ranks a class ascending by Kirchhoff index; ties keep canonical-key order
/// and share a rank.
pub fn rank_class(class: ClassDescriptor) -> Result<RankingTable> {
    let mut members = class.members()?;
    members.sort_by(|a, b| a.kirchhoff.cmp(&b.kirchhoff).then_with(|| a.key.cmp(&b.key)));
    let mut entries: Vec<RankedTree> = Vec::with_capacity(members.len());
    for (i, t) in members.into_iter().enumerate() {
        let rank = match entries.last() {
            Some(prev) if prev.tree.kirchhoff == t.kirchhoff => prev.rank,
            _ => i + 1,
        };
        entries.push(RankedTree { rank, h2: t.h2(), tree: t });
    }
    Ok(RankingTable { class, entries })
}

/// CSV listing of trees: `index,canonical_key,n,diameter,kirchhoff,is_caterpillar`.
pub fn trees_to_csv(trees: &[CanonicalTree]) -> String {
    let mut out = String::from("index,canonical_key,n,diameter,kirchhoff,is_caterpillar\n");
    for (i, t) in trees.iter().enumerate() {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            i, t.key, t.n, t.diameter, t.kirchhoff, t.is_caterpillar
        ));
    }
    out
}
