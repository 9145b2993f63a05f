//! Each operation returns the moved tree, the exact Kirchhoff change and a
//! record of what moved where. Longest paths are the lexicographically
//! smallest ones; positions along a path run from `0` to `d`.

use serde::Serialize;

use crate::enumeration::CanonicalKey;
use crate::error::{Error, Result};
use crate::families::{self, pendant_arms, Blueprint};
use crate::tree::Tree;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MoveKind {
    BouquetLeafTransfer,
    VineLeafTransfer,
    BouquetShiftInward,
    BouquetDropTowardPath,
    PendantDrop,
    RewireStep,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocalMove {
    pub kind: MoveKind,
    /// Node the moved nodes were attached to.
    pub source: usize,
    /// Node they are attached to afterwards.
    pub target: usize,
    pub moved: Vec<usize>,
    /// `Some(-1)` / `Some(1)` when the sign of the change is guaranteed.
    pub predicted_sign: Option<i8>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveOutcome {
    pub tree: Tree,
    pub delta_kf: i64,
    pub record: LocalMove,
}

fn apply(
    t: &Tree,
    kind: MoveKind,
    moved: Vec<usize>,
    source: usize,
    target: usize,
    predicted_sign: Option<i8>,
) -> Result<MoveOutcome> {
    let (tree, delta_kf) = t.reattach(&moved, source, target)?;
    Ok(MoveOutcome { tree, delta_kf, record: LocalMove { kind, source, target, moved, predicted_sign } })
}

/// A longest path together with every node's distance to it.
struct Spine {
    path: Vec<usize>,
    dist: Vec<usize>,
    /// Next node towards the path (`v` itself for path nodes).
    up: Vec<usize>,
}

impl Spine {
    fn new(t: &Tree) -> Self {
        let path = t.longest_path();
        let n = t.len();
        let mut dist = vec![usize::MAX; n];
        let mut up: Vec<usize> = (0..n).collect();
        let mut queue = std::collections::VecDeque::new();
        for &v in &path {
            dist[v] = 0;
            queue.push_back(v);
        }
        while let Some(u) = queue.pop_front() {
            for &w in t.neighbors(u) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    up[w] = u;
                    queue.push_back(w);
                }
            }
        }
        Spine { path, dist, up }
    }

    fn d(&self) -> usize {
        self.path.len() - 1
    }

    /// Off-path neighbours of the path node at `pos`.
    fn hanging(&self, t: &Tree, pos: usize) -> Vec<usize> {
        t.neighbors(self.path[pos]).iter().copied().filter(|&w| self.dist[w] == 1).collect()
    }
}

/// Twice the distance from path position `j` to the nearer centre of a
/// length-`d` path.
fn center_gap(j: usize, d: usize) -> usize {
    (2 * j).abs_diff(d) - d % 2
}

/// One step from `j` away from the nearer path end.
fn inward(j: usize, d: usize) -> usize {
    if 2 * j < d {
        j + 1
    } else {
        j - 1
    }
}

/// Among positions with something hanging, the one furthest from the
/// centre; ties go to the smaller position.
fn furthest_occupied(positions: &[usize], d: usize) -> Option<usize> {
    positions.iter().copied().fold(None, |best, j| match best {
        Some(b) if center_gap(b, d) >= center_gap(j, d) => Some(b),
        _ => Some(j),
    })
}

/// Moves one leaf from the smaller end bouquet of a double palm to the
/// other end: `D_{N,p,q} -> D_{N,p-1,q+1}` for `1 < p <= q`.
pub fn move_bouquet_leaf(t: &Tree) -> Result<MoveOutcome> {
    let (p, _) = families::classify(t).double_palm().ok_or_else(|| {
        Error::HypothesesViolated("input is not a double palm with p + q <= N - 2".into())
    })?;
    if p <= 1 {
        return Err(Error::HypothesesViolated(format!("bouquet leaf transfer needs p > 1, got p = {p}")));
    }
    let path = t.longest_path();
    let d = path.len() - 1;
    let (a, b) = (path[1], path[d - 1]);
    let leaves_at = |v: usize| t.neighbors(v).iter().filter(|&&w| t.is_leaf(w)).count();
    // The smaller bouquet; on a tie the one at the start of the path.
    let (from, to) = if leaves_at(a) <= leaves_at(b) { (a, b) } else { (b, a) };
    let leaf = *t.neighbors(from).iter().filter(|&&w| t.is_leaf(w)).max().unwrap();
    apply(t, MoveKind::BouquetLeafTransfer, vec![leaf], from, to, Some(-1))
}

/// The Kirchhoff change of a bouquet leaf transfer.
pub fn bouquet_leaf_delta(n: usize, p: usize, q: usize) -> i64 {
    -((n - p - q - 1) as i64) * ((q - p + 1) as i64)
}

/// A vine decomposition: two pendant paths hanging from `root`, listed from
/// the root outwards, with `short.len() <= long.len()`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VineView {
    pub root: usize,
    pub short: Vec<usize>,
    pub long: Vec<usize>,
}

impl VineView {
    pub fn new(root: usize, a: Vec<usize>, b: Vec<usize>) -> Self {
        if a.len() <= b.len() {
            VineView { root, short: a, long: b }
        } else {
            VineView { root, short: b, long: a }
        }
    }

    pub fn l(&self) -> usize {
        self.short.len()
    }

    pub fn k(&self) -> usize {
        self.long.len()
    }

    /// Materialises a vine blueprint and returns its decomposition.
    pub fn from_blueprint(b: &Blueprint) -> Result<(Tree, VineView)> {
        let Blueprint::Vine { subtree, root, l, k } = b.clone().canonical() else {
            return Err(Error::HypothesesViolated("blueprint is not a vine".into()));
        };
        let tree = b.build_tree()?;
        let t = subtree.len();
        Ok((tree, VineView { root, short: (t..t + l).collect(), long: (t + l..t + l + k).collect() }))
    }

    /// Every vine decomposition of `t`.
    pub fn all(t: &Tree) -> Vec<VineView> {
        let mut out = Vec::new();
        for root in (0..t.len()).filter(|&r| t.degree(r) >= 3) {
            let arms = pendant_arms(t, root);
            for i in 0..arms.len() {
                for j in i + 1..arms.len() {
                    out.push(VineView::new(root, arms[i].clone(), arms[j].clone()));
                }
            }
        }
        out
    }

    fn check(&self, t: &Tree) -> Result<()> {
        let arms = pendant_arms(t, self.root);
        let is_arm = |a: &[usize]| a.is_empty() || arms.iter().any(|x| x == a);
        if !is_arm(&self.short) || !is_arm(&self.long) || self.short.len() > self.long.len() {
            return Err(Error::HypothesesViolated("not a pendant-path decomposition of this tree".into()));
        }
        if t.len() < self.l() + self.k() + 2 {
            return Err(Error::HypothesesViolated("vine subtree needs at least 2 nodes".into()));
        }
        Ok(())
    }
}

/// The end of the short arm moves to the end of the long arm:
/// `T^r_{l,k} -> T^r_{l-1,k+1}`, increasing the Kirchhoff index.
pub fn move_vine_leaf(t: &Tree, v: &VineView) -> Result<MoveOutcome> {
    v.check(t)?;
    if v.l() == 0 {
        return Err(Error::HypothesesViolated("vine leaf transfer needs l >= 1".into()));
    }
    let leaf = *v.short.last().unwrap();
    let from = if v.l() >= 2 { v.short[v.l() - 2] } else { v.root };
    apply(t, MoveKind::VineLeafTransfer, vec![leaf], from, *v.long.last().unwrap(), Some(1))
}

/// The Kirchhoff change of a vine leaf transfer.
pub fn vine_leaf_delta(n: usize, l: usize, k: usize) -> i64 {
    ((n - l - k - 1) as i64) * ((k - l + 1) as i64)
}

/// The reverse transfer, end of the long arm to the end of the short arm:
/// `T^r_{l,k} -> T^r_{l+1,k-1}` for `k >= l + 2`, decreasing the index.
pub fn rebalance_vine(t: &Tree, v: &VineView) -> Result<MoveOutcome> {
    v.check(t)?;
    if v.k() < v.l() + 2 {
        return Err(Error::HypothesesViolated(format!(
            "rebalancing needs k >= l + 2, got l = {}, k = {}",
            v.l(),
            v.k()
        )));
    }
    let leaf = *v.long.last().unwrap();
    let from = v.long[v.k() - 2];
    let to = v.short.last().copied().unwrap_or(v.root);
    apply(t, MoveKind::VineLeafTransfer, vec![leaf], from, to, Some(-1))
}

/// Bouquet positions (internal path positions carrying extra leaves) of a
/// caterpillar along its longest path.
fn bouquet_positions(t: &Tree, s: &Spine) -> Vec<usize> {
    (1..s.d()).filter(|&j| !s.hanging(t, j).is_empty()).collect()
}

/// Moves the bouquet furthest from the centre one node further from the
/// nearer path end.
pub fn shift_bouquet_inward(t: &Tree) -> Result<MoveOutcome> {
    if !t.is_caterpillar() {
        return Err(Error::NotCaterpillar);
    }
    if t.len() < 3 {
        return Err(Error::SingleBouquet);
    }
    let s = Spine::new(t);
    let d = s.d();
    let occupied = bouquet_positions(t, &s);
    if occupied.len() < 2 {
        return Err(Error::SingleBouquet);
    }
    let j = furthest_occupied(&occupied, d).unwrap();
    apply(t, MoveKind::BouquetShiftInward, s.hanging(t, j), s.path[j], s.path[inward(j, d)], Some(-1))
}

/// `P_{N,d,i}` seen as a vine rooted at its bouquet node.
fn single_bouquet_vine(t: &Tree) -> Option<VineView> {
    let s = Spine::new(t);
    let d = s.d();
    let occupied = bouquet_positions(t, &s);
    if occupied.len() != 1 {
        return None;
    }
    let i = occupied[0];
    let toward_start: Vec<usize> = (0..i).rev().map(|x| s.path[x]).collect();
    let toward_end: Vec<usize> = (i + 1..=d).map(|x| s.path[x]).collect();
    Some(VineView::new(s.path[i], toward_start, toward_end))
}

/// Inward shifts until one bouquet remains, then vine rebalancing until the
/// bouquet sits at the centre. Ends at `P_{N,d,floor(d/2)}`.
pub fn caterpillar_descent(t: &Tree) -> Result<Vec<MoveOutcome>> {
    if !t.is_caterpillar() {
        return Err(Error::NotCaterpillar);
    }
    let mut steps = Vec::new();
    let mut cur = t.clone();
    loop {
        match shift_bouquet_inward(&cur) {
            Ok(m) => {
                cur = m.tree.clone();
                steps.push(m);
            }
            Err(Error::SingleBouquet) => break,
            Err(e) => return Err(e),
        }
    }
    while let Some(v) = single_bouquet_vine(&cur) {
        if v.k() < v.l() + 2 {
            break;
        }
        let m = rebalance_vine(&cur, &v)?;
        cur = m.tree.clone();
        steps.push(m);
    }
    Ok(steps)
}

/// One step of the non-caterpillar descent towards `N_{N,d}`.
pub fn drop_bouquet_toward_path(t: &Tree) -> Result<MoveOutcome> {
    if t.is_caterpillar() {
        return Err(Error::IsCaterpillar);
    }
    let n = t.len();
    let s = Spine::new(t);
    let d = s.d();
    if is_nnd(t, d) {
        return Err(Error::IsTerminal { n, d });
    }
    let far: Vec<usize> = (0..n).filter(|&v| s.dist[v] > 1).collect();
    let kind = MoveKind::BouquetDropTowardPath;
    if far.len() > 1 {
        let top = far.iter().map(|&v| s.dist[v]).max().unwrap();
        // Smallest-id deepest node; its parent's other neighbours away from
        // the path are leaves at the same depth.
        let x = *far.iter().find(|&&v| s.dist[v] == top).unwrap();
        let parent = s.up[x];
        let bouquet: Vec<usize> =
            t.neighbors(parent).iter().copied().filter(|&w| w != s.up[parent]).collect();
        let grand = s.up[parent];
        let another_at_two = top == 2
            && (0..n).any(|v| s.dist[v] == 2 && s.up[v] != parent);
        if top > 2 || another_at_two {
            return apply(t, kind, bouquet, parent, grand, Some(-1));
        }
        // Unique bouquet at distance two: keep its largest-id leaf behind.
        let keep = *bouquet.iter().max().unwrap();
        let moved: Vec<usize> = bouquet.into_iter().filter(|&w| w != keep).collect();
        return apply(t, kind, moved, parent, grand, Some(-1));
    }
    // A single node at distance two: shift the attachment furthest from the
    // centre inward.
    let occupied: Vec<usize> = (1..d).filter(|&j| !s.hanging(t, j).is_empty()).collect();
    let j = furthest_occupied(&occupied, d).unwrap();
    apply(t, kind, s.hanging(t, j), s.path[j], s.path[inward(j, d)], Some(-1))
}

fn is_nnd(t: &Tree, d: usize) -> bool {
    let n = t.len();
    d >= 4
        && n >= d + 3
        && CanonicalKey::of(t)
            == CanonicalKey::of(&Blueprint::Nnd { n, d }.build_tree().expect("valid N_nd"))
}

/// Repeated [`drop_bouquet_toward_path`] until `N_{N,d}`.
pub fn noncaterpillar_descent(t: &Tree) -> Result<Vec<MoveOutcome>> {
    let mut steps = Vec::new();
    let mut cur = t.clone();
    loop {
        match drop_bouquet_toward_path(&cur) {
            Ok(m) => {
                cur = m.tree.clone();
                steps.push(m);
            }
            Err(Error::IsTerminal { .. }) => return Ok(steps),
            Err(e) => return Err(e),
        }
    }
}

/// Moves the single node at distance two from the longest path of
/// `N_{N,d}` onto the centre, giving `P_{N,d,floor(d/2)}`.
pub fn pendant_drop(t: &Tree) -> Result<MoveOutcome> {
    let d = t.diameter();
    if !is_nnd(t, d) {
        return Err(Error::WrongShape(format!("expected N_{{{},{d}}}", t.len())));
    }
    let s = Spine::new(t);
    let x = (0..t.len()).find(|&v| s.dist[v] == 2).unwrap();
    let y = s.up[x];
    apply(t, MoveKind::PendantDrop, vec![x], y, s.up[y], Some(-1))
}
