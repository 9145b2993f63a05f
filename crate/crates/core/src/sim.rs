//! Euler-Maruyama simulation of `dx = -L x dt + dW`, noise covariance
//! `(alpha/2) I dt`, and estimation of the stationary mean-square
//! dispersion `E ||y||^2` with `y = Q x`. With `alpha = 2` that expectation
//! equals `H^2`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::format::{round12, sig12};
use crate::graph::WeightedDigraph;
use crate::metrics::{h2_eigen, h2_lyapunov, spectrum, ProjectionBasis, LYAPUNOV_MAX_NODES};

pub const BATCHES: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseModel {
    pub alpha: f64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimParams {
    /// Defaults to `1e-3 / max Re(lambda)`.
    pub dt: Option<f64>,
    pub steps: usize,
    pub burn_in: usize,
    /// Record every `stride`-th step.
    pub stride: usize,
    /// Defaults to the zero vector.
    pub x0: Option<Vec<f64>>,
}

impl SimParams {
    pub fn new(steps: usize, burn_in: usize) -> Self {
        SimParams { dt: None, steps, burn_in, stride: 1000, x0: None }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Sample {
    pub t: f64,
    pub dispersion_sq: f64,
    pub mean_state: f64,
}

/// Batch-means estimate of the stationary mean of `||y||^2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DispersionEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub batch_len: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimulationRun {
    pub n: usize,
    pub undirected: bool,
    pub alpha: f64,
    pub seed: u64,
    pub dt: f64,
    pub steps: usize,
    pub burn_in: usize,
    pub stride: usize,
    pub samples: Vec<Sample>,
    pub estimate: Option<DispersionEstimate>,
    /// `H^2` of the graph, when computable.
    pub h2_sq: Option<f64>,
}

impl SimulationRun {
    /// Analytic stationary `E ||y||^2 = (alpha/2) H^2`.
    pub fn predicted_dispersion_sq(&self) -> Option<f64> {
        self.h2_sq.map(|h| self.alpha / 2.0 * h)
    }

    /// `(estimate - predicted) / stderr`.
    pub fn z_score(&self) -> Option<f64> {
        let e = self.estimate?;
        let p = self.predicted_dispersion_sq()?;
        Some((e.mean - p) / e.stderr)
    }

    /// `t,dispersion_sq,mean_state`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,dispersion_sq,mean_state\n");
        for s in &self.samples {
            out.push_str(&format!("{},{},{}\n", sig12(s.t), sig12(s.dispersion_sq), sig12(s.mean_state)));
        }
        out
    }

    pub fn summary(&self) -> SimulationSummary {
        let r = |x: Option<f64>| x.map(round12);
        SimulationSummary {
            h2_predicted: r(self.h2_sq.map(f64::sqrt)),
            predicted_dispersion_sq: r(self.predicted_dispersion_sq()),
            e_dispersion_sq: r(self.estimate.map(|e| e.mean)),
            stderr: r(self.estimate.map(|e| e.stderr)),
            z_score: r(self.z_score()),
            params: SummaryParams {
                n: self.n,
                alpha: round12(self.alpha),
                seed: self.seed,
                dt: round12(self.dt),
                steps: self.steps,
                burn_in: self.burn_in,
                stride: self.stride,
                batches: BATCHES,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulationSummary {
    pub h2_predicted: Option<f64>,
    pub predicted_dispersion_sq: Option<f64>,
    pub e_dispersion_sq: Option<f64>,
    pub stderr: Option<f64>,
    pub z_score: Option<f64>,
    pub params: SummaryParams,
}

impl SimulationSummary {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("summary serialises")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummaryParams {
    pub n: usize,
    pub alpha: f64,
    pub seed: u64,
    pub dt: f64,
    pub steps: usize,
    pub burn_in: usize,
    pub stride: usize,
    pub batches: usize,
}

pub fn simulate(g: &WeightedDigraph, noise: NoiseModel, params: &SimParams) -> Result<SimulationRun> {
    simulate_with_basis(g, &ProjectionBasis::new(g.node_count())?, noise, params)
}

pub fn simulate_with_basis(
    g: &WeightedDigraph,
    basis: &ProjectionBasis,
    noise: NoiseModel,
    params: &SimParams,
) -> Result<SimulationRun> {
    let n = g.node_count();
    if basis.dim() != n {
        return Err(Error::InvalidParameters(format!("basis is for {} nodes, graph has {n}", basis.dim())));
    }
    if !(noise.alpha >= 0.0 && noise.alpha.is_finite()) {
        return Err(Error::InvalidParameters(format!("noise intensity must be >= 0, got {}", noise.alpha)));
    }
    if params.burn_in >= params.steps {
        return Err(Error::InvalidParameters(format!(
            "burn-in ({}) must be smaller than the step count ({})",
            params.burn_in, params.steps
        )));
    }
    if params.stride == 0 {
        return Err(Error::InvalidParameters("stride must be >= 1".into()));
    }
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    let lambda_max = spectrum(g).max_real_part();
    let bound = 2.0 / lambda_max;
    let dt = params.dt.unwrap_or(1e-3 / lambda_max);
    if !(dt > 0.0 && dt < bound) {
        return Err(Error::UnstableStep { dt, bound });
    }
    let mut x = match &params.x0 {
        Some(v) if v.len() != n => {
            return Err(Error::InvalidParameters(format!("initial state has {} entries, expected {n}", v.len())))
        }
        Some(v) => v.clone(),
        None => vec![0.0; n],
    };
    let h2_sq = if g.is_undirected() {
        h2_eigen(g).ok().map(|h| h * h)
    } else if n <= LYAPUNOV_MAX_NODES {
        h2_lyapunov(g).ok().map(|s| s.h2 * s.h2)
    } else {
        None
    };

    let edges: Vec<(usize, usize, f64)> = g.edges().iter().map(|e| (e.source, e.target, e.weight)).collect();
    let q: Vec<f64> = basis.matrix().transpose().as_slice().to_vec(); // row-major Q
    let dispersion = |x: &[f64]| -> f64 {
        q.chunks_exact(n).map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum::<f64>().powi(2)).sum()
    };
    let mean = |x: &[f64]| x.iter().sum::<f64>() / n as f64;
    let scale = (noise.alpha * dt / 2.0).sqrt();
    let mut rng = ChaCha8Rng::seed_from_u64(noise.seed);
    let mut drift = vec![0.0; n];

    let record = params.steps - params.burn_in;
    let batch_len = record / BATCHES;
    let mut batch_sums = vec![0.0; BATCHES];
    let mut samples = Vec::with_capacity(params.steps / params.stride + 1);
    samples.push(Sample { t: 0.0, dispersion_sq: dispersion(&x), mean_state: mean(&x) });
    for step in 1..=params.steps {
        drift.iter_mut().for_each(|d| *d = 0.0);
        for &(i, j, w) in &edges {
            drift[i] -= w * (x[i] - x[j]);
        }
        for i in 0..n {
            let eta: f64 = StandardNormal.sample(&mut rng);
            x[i] += dt * drift[i] + scale * eta;
        }
        let on_stride = step % params.stride == 0;
        if step > params.burn_in || on_stride {
            let disp = dispersion(&x);
            if step > params.burn_in {
                let b = (step - params.burn_in - 1) / batch_len.max(1);
                if b < BATCHES {
                    batch_sums[b] += disp;
                }
            }
            if on_stride {
                samples.push(Sample { t: step as f64 * dt, dispersion_sq: disp, mean_state: mean(&x) });
            }
        }
    }
    let estimate = (batch_len >= 1).then(|| {
        let means: Vec<f64> = batch_sums.iter().map(|s| s / batch_len as f64).collect();
        let m = means.iter().sum::<f64>() / BATCHES as f64;
        let var = means.iter().map(|b| (b - m).powi(2)).sum::<f64>() / (BATCHES - 1) as f64;
        DispersionEstimate { mean: m, stderr: (var / BATCHES as f64).sqrt(), batch_len }
    });
    Ok(SimulationRun {
        n,
        undirected: g.is_undirected(),
        alpha: noise.alpha,
        seed: noise.seed,
        dt,
        steps: params.steps,
        burn_in: params.burn_in,
        stride: params.stride,
        samples,
        estimate,
        h2_sq,
    })
}

/// Growth of the mean state's quadratic variation over the recorded
/// samples: a least-squares line through the cumulative sum of squared
/// increments against time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeanStateDiagnostic {
    pub slope: f64,
    pub r_squared: f64,
    /// `alpha / (2N)` for undirected graphs; no claim for directed ones.
    pub expected_slope: Option<f64>,
}

pub fn mean_state_series(run: &SimulationRun) -> (Vec<(f64, f64)>, MeanStateDiagnostic) {
    let series: Vec<(f64, f64)> = run.samples.iter().map(|s| (s.t, s.mean_state)).collect();
    let mut acc = 0.0;
    let mut cumulative = vec![(series[0].0, 0.0)];
    for w in series.windows(2) {
        acc += (w[1].1 - w[0].1).powi(2);
        cumulative.push((w[1].0, acc));
    }
    let (slope, _, r_squared) = linear_fit(&cumulative);
    let expected_slope = run.undirected.then(|| run.alpha / (2.0 * run.n as f64));
    (series, MeanStateDiagnostic { slope, r_squared, expected_slope })
}

/// Least-squares slope of `ln ||y||` against time over samples with
/// `t >= from`. For a noiseless undirected run this tends to `-lambda_2`.
pub fn log_decay_slope(run: &SimulationRun, from: f64) -> f64 {
    let pts: Vec<(f64, f64)> = run
        .samples
        .iter()
        .filter(|s| s.t >= from && s.dispersion_sq > 0.0)
        .map(|s| (s.t, 0.5 * s.dispersion_sq.ln()))
        .collect();
    linear_fit(&pts).0
}

/// Returns `(slope, intercept, r_squared)`.
fn linear_fit(pts: &[(f64, f64)]) -> (f64, f64, f64) {
    let k = pts.len() as f64;
    let (mx, my) = (pts.iter().map(|p| p.0).sum::<f64>() / k, pts.iter().map(|p| p.1).sum::<f64>() / k);
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let syy: f64 = pts.iter().map(|p| (p.1 - my).powi(2)).sum();
    let slope = sxy / sxx;
    let r2 = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
    (slope, my - slope * mx, r2)
}
