//! Plain-text edge lists.
//!
//! ```text
//! # comment
//! nodes 4
//! undirected
//! 0 1 1
//! 1 2 0.5
//! ```
//!
//! `nodes N` must precede the first edge. `undirected` is optional and, when
//! present, expands each listed edge into its symmetric pair.

use std::fmt::Write;

use super::{Edge, WeightedDigraph};
use crate::error::{Error, Result};

pub fn parse_edge_list(text: &str) -> Result<WeightedDigraph> {
    let mut nodes: Option<usize> = None;
    let mut undirected = false;
    let mut edges = Vec::new();
    let mut lines_of = Vec::new();
    let err = |line: usize, msg: String| Error::Parse { line, msg };
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let fields: Vec<&str> = body.split_whitespace().collect();
        match fields.as_slice() {
            ["nodes", n] => {
                if nodes.is_some() {
                    return Err(err(line, "repeated `nodes` header".into()));
                }
                let n: usize = n
                    .parse()
                    .map_err(|_| err(line, format!("invalid node count `{n}`")))?;
                if n == 0 {
                    return Err(err(line, "node count must be positive".into()));
                }
                nodes = Some(n);
            }
            ["undirected"] => {
                if !edges.is_empty() {
                    return Err(err(line, "`undirected` must precede the edges".into()));
                }
                undirected = true;
            }
            [i, j, w] => {
                if nodes.is_none() {
                    return Err(err(line, "edge before `nodes N` header".into()));
                }
                let parse_id = |s: &str| {
                    s.parse::<usize>()
                        .map_err(|_| err(line, format!("invalid node id `{s}`")))
                };
                let (i, j) = (parse_id(i)?, parse_id(j)?);
                let w: f64 = w
                    .parse()
                    .map_err(|_| err(line, format!("invalid weight `{w}`")))?;
                edges.push(Edge::new(i, j, w));
                lines_of.push(line);
            }
            _ => return Err(err(line, format!("unrecognised line `{body}`"))),
        }
    }
    let n = nodes.ok_or_else(|| err(0, "missing `nodes N` header".into()))?;
    // Validate edge by edge so that errors carry the offending line.
    let mut accepted = Vec::with_capacity(edges.len());
    for (e, &line) in edges.iter().zip(&lines_of) {
        accepted.push(*e);
        if let Err(e) = WeightedDigraph::build(n, &accepted, undirected) {
            return Err(err(line, e.to_string()));
        }
    }
    WeightedDigraph::build(n, &edges, undirected)
}

/// Writes `g` in the edge-list format. Undirected graphs list each edge once.
pub fn write_edge_list(g: &WeightedDigraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "nodes {}", g.node_count());
    if g.is_undirected() {
        out.push_str("undirected\n");
        for (i, j, w) in g.undirected_edges() {
            let _ = writeln!(out, "{i} {j} {}", crate::format::sig12(w));
        }
    } else {
        for e in g.edges() {
            let _ = writeln!(out, "{} {} {}", e.source, e.target, crate::format::sig12(e.weight));
        }
    }
    out
}
