use serde::Serialize;

use super::lyapunov::{h2_lyapunov, LYAPUNOV_MAX_NODES};
use super::resistance::{resistance_directed, resistance_undirected, wiener_index};
use super::spectrum::{h2_eigen, spectrum};
use crate::error::{Error, Result};
use crate::format::round12;
use crate::graph::WeightedDigraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum H2Method {
    Eigen,
    Lyapunov,
    Resistance,
}

impl std::str::FromStr for H2Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "eig" => Ok(H2Method::Eigen),
            "lyap" => Ok(H2Method::Lyapunov),
            "resist" => Ok(H2Method::Resistance),
            other => Err(Error::InvalidParameters(format!("unknown method `{other}`"))),
        }
    }
}

impl H2Method {
    pub fn name(self) -> &'static str {
        match self {
            H2Method::Eigen => "eig",
            H2Method::Lyapunov => "lyap",
            H2Method::Resistance => "resist",
        }
    }
}

/// Per-graph metrics report. Floats are rounded to 12 significant digits;
/// quantities undefined for the graph (for example `h2_eigen` on a digraph,
/// or the diameter when some pair is unreachable) are `null`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GraphReport {
    pub n: usize,
    pub undirected: bool,
    pub connected: bool,
    pub eigenvalues: Vec<[f64; 2]>,
    pub h2_eigen: Option<f64>,
    pub h2_lyapunov: Option<f64>,
    pub kirchhoff: Option<f64>,
    pub wiener: Option<f64>,
    pub diameter: Option<f64>,
    pub method: &'static str,
    pub h2: Option<f64>,
}

impl GraphReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }
}

pub fn graph_report(g: &WeightedDigraph, method: H2Method) -> Result<GraphReport> {
    let n = g.node_count();
    let undirected = g.is_undirected();
    let connected = g.is_connected();
    if method == H2Method::Eigen && !undirected {
        return Err(Error::NotUndirected);
    }
    if n > LYAPUNOV_MAX_NODES {
        return Err(Error::NTooLarge { what: "Lyapunov solve", n, max: LYAPUNOV_MAX_NODES });
    }
    let eigenvalues = spectrum(g)
        .eigenvalues
        .iter()
        .map(|l| [round12(l.re), round12(l.im)])
        .collect();
    let (h2_eig, h2_lyap, kirchhoff) = if connected && n >= 2 {
        let he = if undirected { Some(h2_eigen(g)?) } else { None };
        let hl = h2_lyapunov(g)?.h2;
        let kf = if undirected {
            resistance_undirected(g)?.kirchhoff
        } else {
            resistance_directed(g)?.kirchhoff
        };
        (he, Some(hl), Some(kf))
    } else {
        (None, None, if n == 1 { Some(0.0) } else { None })
    };
    let h2 = match method {
        H2Method::Eigen => h2_eig,
        H2Method::Lyapunov => h2_lyap,
        H2Method::Resistance => kirchhoff.map(|kf| (kf / (2.0 * n as f64)).sqrt()),
    };
    let wiener = if undirected { wiener_index(g).ok() } else { None };
    Ok(GraphReport {
        n,
        undirected,
        connected,
        eigenvalues,
        h2_eigen: h2_eig.map(round12),
        h2_lyapunov: h2_lyap.map(round12),
        kirchhoff: kirchhoff.map(round12),
        wiener: wiener.map(round12),
        diameter: g.distances().diameter().finite().map(round12),
        method: method.name(),
        h2: h2.map(round12),
    })
}
