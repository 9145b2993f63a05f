//! Round-based simulation of decentralized leaf rewiring. Each node sees
//! the tree within `hops` of itself. A leaf whose view meets the rest of
//! the tree through a single node `j`, and that is a furthest leaf from `j`
//! inside the view, re-attaches one node closer to `j`.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::moves::{LocalMove, MoveKind};
use crate::error::{Error, Result};
use crate::tree::Tree;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RewireConfig {
    pub hops: usize,
    pub max_rounds: usize,
    /// Shuffles the order candidates are processed in; ascending ids if unset.
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    /// No node passed the candidacy rule.
    NoCandidates,
    /// Candidates existed but every move was rejected by the decrease gate.
    Stalled,
    MaxRounds,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RewireStep {
    pub round: usize,
    pub node_moved: usize,
    pub old_parent: usize,
    pub new_parent: usize,
    pub kf_before: u64,
    pub kf_after: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RewireState {
    pub tree: Tree,
    pub hops: usize,
    pub round: usize,
    pub log: Vec<RewireStep>,
    pub moves: Vec<LocalMove>,
    /// Candidate moves refused because they would not decrease K_f.
    pub rejected: usize,
    pub termination: Option<Termination>,
}

/// A leaf's proposed move: detach from `from`, attach to `to`. `view` is
/// the node set it claims for the round.
struct Candidate {
    node: usize,
    from: usize,
    to: usize,
    view: Vec<usize>,
}

fn candidate(t: &Tree, i: usize, hops: usize) -> Option<Candidate> {
    if !t.is_leaf(i) {
        return None;
    }
    let di = t.bfs(i);
    let view: Vec<usize> = (0..t.len()).filter(|&v| di[v] <= hops).collect();
    let inside = |v: usize| di[v] <= hops;
    let boundary: Vec<usize> = view
        .iter()
        .copied()
        .filter(|&u| t.neighbors(u).iter().any(|&w| !inside(w)))
        .collect();
    let j = match boundary.as_slice() {
        [j] => *j,
        // The view is the whole tree: aim for the centroid.
        [] => t.centroids()[0],
        _ => return None,
    };
    let dj = t.bfs(j);
    let far = view.iter().filter(|&&v| t.is_leaf(v)).map(|&v| dj[v]).max()?;
    if dj[i] != far || far < 2 {
        return None;
    }
    let from = t.neighbors(i)[0];
    let to = *t.neighbors(from).iter().find(|&&w| dj[w] + 1 == dj[from])?;
    Some(Candidate { node: i, from, to, view })
}

impl RewireState {
    pub fn new(tree: Tree, hops: usize) -> Result<Self> {
        if hops < 2 {
            return Err(Error::InvalidParameters(format!("hop radius must be >= 2, got {hops}")));
        }
        Ok(RewireState { tree, hops, round: 0, log: Vec::new(), moves: Vec::new(), rejected: 0, termination: None })
    }

    /// Runs one round; returns the number of accepted moves, or the reason
    /// to stop.
    pub fn step(&mut self, rng: Option<&mut ChaCha8Rng>) -> std::result::Result<usize, Termination> {
        let n = self.tree.len();
        let snapshot = self.tree.clone();
        let mut order: Vec<usize> = (0..n).collect();
        if let Some(rng) = rng {
            order.shuffle(rng);
        }
        let candidates: Vec<Candidate> =
            order.into_iter().filter_map(|i| candidate(&snapshot, i, self.hops)).collect();
        if candidates.is_empty() {
            return Err(Termination::NoCandidates);
        }
        self.round += 1;
        let mut claimed = vec![false; n];
        let mut accepted = 0;
        for c in candidates {
            if c.view.iter().any(|&v| claimed[v]) {
                continue;
            }
            let (next, delta) = self.tree.reattach(&[c.node], c.from, c.to).expect("valid leaf move");
            if delta >= 0 {
                self.rejected += 1;
                continue;
            }
            let before = self.tree.kirchhoff();
            let after = (before as i64 + delta) as u64;
            for &v in &c.view {
                claimed[v] = true;
            }
            self.log.push(RewireStep {
                round: self.round,
                node_moved: c.node,
                old_parent: c.from,
                new_parent: c.to,
                kf_before: before,
                kf_after: after,
            });
            self.moves.push(LocalMove {
                kind: MoveKind::RewireStep,
                source: c.from,
                target: c.to,
                moved: vec![c.node],
                predicted_sign: None,
            });
            self.tree = next;
            accepted += 1;
        }
        if accepted == 0 {
            self.round -= 1;
            return Err(Termination::Stalled);
        }
        Ok(accepted)
    }

    pub fn is_star(&self) -> bool {
        let n = self.tree.len();
        n <= 2 || (0..n).any(|v| self.tree.degree(v) == n - 1)
    }

    /// `round,node_moved,old_parent,new_parent,kf_before,kf_after`.
    pub fn log_csv(&self) -> Result<String> {
        let mut w = csv::WriterBuilder::new()
            .has_headers(false)
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        let io = |e: csv::Error| Error::InvalidParameters(e.to_string());
        w.write_record(["round", "node_moved", "old_parent", "new_parent", "kf_before", "kf_after"])
            .map_err(io)?;
        for s in &self.log {
            w.serialize(s).map_err(io)?;
        }
        Ok(String::from_utf8(w.into_inner().expect("in-memory writer")).expect("ascii"))
    }
}

pub fn decentralized_rewire(t: &Tree, cfg: RewireConfig) -> Result<RewireState> {
    let mut state = RewireState::new(t.clone(), cfg.hops)?;
    let mut rng = cfg.seed.map(ChaCha8Rng::seed_from_u64);
    loop {
        if state.round >= cfg.max_rounds {
            state.termination = Some(Termination::MaxRounds);
            break;
        }
        if let Err(reason) = state.step(rng.as_mut()) {
            state.termination = Some(reason);
            break;
        }
    }
    Ok(state)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(hops: usize) -> RewireConfig {
        RewireConfig { hops, max_rounds: 100, seed: None }
    }

    #[test]
    fn path5_reaches_star() {
        let s = decentralized_rewire(&Tree::path(5), cfg(2)).unwrap();
        assert!(s.is_star());
        let kfs: Vec<u64> = std::iter::once(s.log[0].kf_before).chain(s.log.iter().map(|r| r.kf_after)).collect();
        assert_eq!(kfs, vec![20, 18, 16]);
        assert_eq!(s.termination, Some(Termination::NoCandidates));
    }

    #[test]
    fn star_is_immediately_terminal() {
        let s = decentralized_rewire(&Tree::star(8), cfg(3)).unwrap();
        assert!(s.log.is_empty());
        assert_eq!(s.round, 0);
        assert_eq!(s.termination, Some(Termination::NoCandidates));
    }

    #[test]
    fn log_is_strictly_decreasing_and_chained() {
        let s = decentralized_rewire(&Tree::path(12), RewireConfig { hops: 3, max_rounds: 50, seed: Some(7) }).unwrap();
        for w in s.log.windows(2) {
            assert_eq!(w[0].kf_after, w[1].kf_before);
        }
        assert!(s.log.iter().all(|r| r.kf_after < r.kf_before));
        assert_eq!(s.tree.kirchhoff(), s.log.last().unwrap().kf_after);
        let csv = s.log_csv().unwrap();
        assert!(csv.starts_with("round,node_moved,old_parent,new_parent,kf_before,kf_after\n"));
        assert_eq!(csv.matches("round").count(), 1);
        assert_eq!(csv.lines().count(), s.log.len() + 1);
    }

    #[test]
    fn rejects_small_radius() {
        assert!(decentralized_rewire(&Tree::path(4), cfg(1)).is_err());
    }
}
