//! Personalized PageRank on hypergraphs.
//!
//! pr_α(s) is the unique p with (I + ((1−α)/(2α))·𝓛_H)(p) ∋ s, or, with
//! β = 2α/(1+α), β(s − p) ∈ (1−β)·𝓛_H(p).
//!
//! * [`euler_ppr`] simulates dρ/dt = β(s − ρ) − (1−β)𝓛_H(ρ) with a fixed step,
//!   as used by the clustering algorithms.
//! * [`exact_ppr`] solves the stationarity condition to machine precision by
//!   dual block-coordinate ascent; the lemma checkers run on it.
//! * [`graph_ppr_power`] and [`graph_ppr_exact`] are references for ordinary
//!   graphs (every edge of size two).

mod euler;
mod exact;
mod graph;

pub use euler::euler_ppr;
pub use exact::{exact_ppr, ExactParams, ExactPpr};
pub use graph::{graph_ppr_exact, graph_ppr_power, DENSE_LIMIT};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::laplacian::apply_laplacian;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PprParams {
    pub alpha: f64,
    /// Euler step Δ.
    pub dt: f64,
    /// Simulated time T; the run takes ⌈T/Δ⌉ steps.
    pub total_time: f64,
    /// After every step, entries with |ρ(v)| < θ are set to zero.
    pub truncation: f64,
    pub tie_tol: f64,
    /// Stop before ⌈T/Δ⌉ steps once the residual drops below this.
    pub early_stop: Option<f64>,
}

impl PprParams {
    pub fn new(alpha: f64) -> Self {
        Self { alpha, dt: 1.0, total_time: 30.0, truncation: 1e-5, tie_tol: 0.0, early_stop: None }
    }

    /// No truncation, long horizon, stop at residual `tol`.
    pub fn converged(alpha: f64, dt: f64, tol: f64) -> Self {
        Self { alpha, dt, total_time: 1e6, truncation: 0.0, tie_tol: 0.0, early_stop: Some(tol) }
    }

    pub fn beta(&self) -> f64 {
        beta(self.alpha)
    }

    pub fn steps(&self) -> usize {
        (self.total_time / self.dt).ceil() as usize
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |what: &str| Err(Error::InvalidParameter(what.to_string()));
        if !(self.alpha > 0.0 && self.alpha <= 1.0) {
            return bad("alpha must lie in (0, 1]");
        }
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return bad("dt must be positive");
        }
        if !(self.total_time >= self.dt && self.total_time.is_finite()) {
            return bad("total time must be finite and at least dt");
        }
        if !(self.truncation >= 0.0) || !(self.tie_tol >= 0.0) {
            return bad("truncation and tie tolerance must be non-negative");
        }
        Ok(())
    }
}

/// β = 2α/(1+α).
pub fn beta(alpha: f64) -> f64 {
    2.0 * alpha / (1.0 + alpha)
}

pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha <= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("alpha = {alpha} is outside (0, 1]")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PprResult {
    pub vector: Vec<f64>,
    pub iterations: usize,
    pub final_residual: f64,
    /// Σρ.
    pub mass: f64,
}

/// ‖β(s − ρ) − (1−β)·𝓛_H(ρ)‖₁ with the averaged selection.
pub fn residual(h: &Hypergraph, rho: &[f64], s: &[f64], alpha: f64, tie_tol: f64) -> f64 {
    let b = beta(alpha);
    let lap = apply_laplacian(h, rho, true, tie_tol);
    (0..h.n()).map(|v| (b * (s[v] - rho[v]) - (1.0 - b) * lap[v]).abs()).sum()
}
