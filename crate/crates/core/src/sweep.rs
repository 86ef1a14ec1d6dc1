//! Sweep cuts, φ^μ, the Lovász–Simonovits curve, and the key-lemma check.
//!
//! Vertices are ordered by x(v)/d_v descending, ties by ascending id. S_j is
//! the set of the first j vertices. Only proper prefixes (1 ≤ j ≤ n−1) get a
//! conductance.

use std::fmt::Write as _;

use serde::Serialize;

use crate::diffusion::{exact_ppr, ExactParams};
use crate::error::{Error, Result};
use crate::exact_sum::ExactSum;
use crate::hypergraph::{pi, Hypergraph, VertexId, VertexSubset};

#[derive(Debug, Clone, PartialEq)]
pub struct SweepProfile {
    /// The whole ordering, length n.
    pub order: Vec<VertexId>,
    /// vol(S_j) for j = 1..=n−1 (index j−1).
    pub volumes: Vec<f64>,
    pub cuts: Vec<f64>,
    pub conductances: Vec<f64>,
    total_volume: f64,
}

/// The vertex order x(v)/d_v descending, ties by ascending id.
pub fn sweep_order(h: &Hypergraph, x: &[f64]) -> Vec<VertexId> {
    let ratio: Vec<f64> = x.iter().zip(h.degrees()).map(|(a, d)| a / d).collect();
    let mut order: Vec<VertexId> = (0..h.n()).collect();
    order.sort_by(|&u, &v| ratio[v].total_cmp(&ratio[u]).then(u.cmp(&v)));
    order
}

pub fn sweep_profile(h: &Hypergraph, x: &[f64]) -> Result<SweepProfile> {
    h.check_len(x.len())?;
    Ok(SweepProfile::from_order(h, sweep_order(h, x)))
}

impl SweepProfile {
    /// Profile of an explicit ordering of all vertices. Edge counters are
    /// updated as each vertex enters; an edge is cut while 0 < count < |e|.
    pub fn from_order(h: &Hypergraph, order: Vec<VertexId>) -> Self {
        assert_eq!(order.len(), h.n(), "order must be a permutation of the vertices");
        let n = h.n();
        let mut count = vec![0usize; h.m()];
        let mut cut = ExactSum::new();
        let mut vol = ExactSum::new();
        let mut rest = h.volume_accumulator().clone();
        let cap = n.saturating_sub(1);
        let (mut volumes, mut cuts, mut conductances) =
            (Vec::with_capacity(cap), Vec::with_capacity(cap), Vec::with_capacity(cap));
        for &v in order.iter().take(cap) {
            for &id in h.incident_edges(v) {
                let e = h.edge(id);
                count[id] += 1;
                if count[id] == 1 && e.len() > 1 {
                    cut.add(e.weight());
                }
                if count[id] == e.len() && e.len() > 1 {
                    cut.sub(e.weight());
                }
            }
            vol.add(h.degree(v));
            rest.sub(h.degree(v));
            let (vs, c) = (vol.value(), cut.value());
            volumes.push(vs);
            cuts.push(c);
            conductances.push(c / vs.min(rest.value()));
        }
        Self { order, volumes, cuts, conductances, total_volume: h.volume() }
    }

    pub fn n(&self) -> usize {
        self.order.len()
    }

    /// ℓ_μ: the unique ℓ with vol(S_{ℓ−1}) < μ·vol(V) ≤ vol(S_ℓ).
    pub fn ell(&self, mu: f64) -> usize {
        let target = mu * self.total_volume;
        // volumes are increasing; S_n = V always reaches the target
        self.volumes.partition_point(|&v| v < target) + 1
    }

    pub fn prefix(&self, j: usize) -> VertexSubset {
        VertexSubset::new(self.n(), self.order[..j].iter().copied()).expect("order holds valid ids")
    }

    /// argmin of φ(S_j) over 1 ≤ j ≤ min(ℓ_μ, n−1); ties go to the smaller j.
    pub fn best(&self, mu: f64) -> Result<BestSweep> {
        check_mu(mu)?;
        if self.conductances.is_empty() {
            return Err(Error::DegenerateSubset);
        }
        let ell = self.ell(mu);
        let last = ell.min(self.conductances.len());
        let mut j = 1;
        for k in 2..=last {
            if self.conductances[k - 1] < self.conductances[j - 1] {
                j = k;
            }
        }
        Ok(BestSweep {
            set: self.prefix(j),
            conductance: self.conductances[j - 1],
            volume: self.volumes[j - 1],
            j,
            ell,
        })
    }

    /// CSV with header `j,vertex,vol,cut,phi`, one row per proper prefix.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("j,vertex,vol,cut,phi\n");
        for j in 1..=self.volumes.len() {
            writeln!(
                out,
                "{},{},{},{},{}",
                j,
                self.order[j - 1],
                self.volumes[j - 1],
                self.cuts[j - 1],
                self.conductances[j - 1]
            )
            .unwrap();
        }
        out
    }
}

pub(crate) fn check_mu(mu: f64) -> Result<()> {
    if mu > 0.0 && mu <= 0.5 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("mu = {mu} is outside (0, 1/2]")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BestSweep {
    pub set: VertexSubset,
    pub conductance: f64,
    pub volume: f64,
    /// Prefix length of the chosen set.
    pub j: usize,
    pub ell: usize,
}

/// φ^μ(x) and the prefix attaining it.
pub fn best_sweep(h: &Hypergraph, x: &[f64], mu: f64) -> Result<BestSweep> {
    sweep_profile(h, x)?.best(mu)
}

/// The piecewise-linear curve through (vol(S_j), p(S_j)), j = 0..n.
#[derive(Debug, Clone, PartialEq)]
pub struct LsCurve {
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
}

pub fn ls_curve(h: &Hypergraph, p: &[f64]) -> Result<LsCurve> {
    h.check_len(p.len())?;
    let total: f64 = crate::exact_sum::exact_sum(p.iter().copied());
    if p.iter().any(|&v| !(v >= -1e-9)) || (total - 1.0).abs() > 1e-6 {
        return Err(Error::NotADistribution);
    }
    let order = sweep_order(h, p);
    let (mut vol, mut mass) = (ExactSum::new(), ExactSum::new());
    let mut xs = vec![0.0];
    let mut ys = vec![0.0];
    for &v in &order {
        vol.add(h.degree(v));
        mass.add(p[v]);
        xs.push(vol.value());
        ys.push(mass.value());
    }
    Ok(LsCurve { xs, ys })
}

impl LsCurve {
    /// p[x] for x in [0, vol(V)], clamped outside.
    pub fn eval(&self, x: f64) -> f64 {
        let k = self.xs.partition_point(|&b| b < x);
        if k == 0 {
            return self.ys[0];
        }
        if k == self.xs.len() {
            return *self.ys.last().unwrap();
        }
        let (x0, x1, y0, y1) = (self.xs[k - 1], self.xs[k], self.ys[k - 1], self.ys[k]);
        y0 + (y1 - y0) * (x - x0) / (x1 - x0)
    }

    /// Segment slopes p(v_j)/d_{v_j}.
    pub fn slopes(&self) -> Vec<f64> {
        self.xs.windows(2).zip(self.ys.windows(2)).map(|(x, y)| (y[1] - y[0]) / (x[1] - x[0])).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KeyLemmaReport {
    pub applicable: bool,
    /// Why the lemma does not apply, when it does not.
    pub reason: Option<String>,
    /// pr_α(s)(S) − π_V(S).
    pub excess: f64,
    pub observed_phi: f64,
    /// √(24α·log(4/δ)/δ).
    pub bound: f64,
    /// √(12α·log(vol(V))/δ), the form before rescaling the weights.
    pub bound_unscaled: f64,
    pub holds: bool,
}

/// Checks φ^μ(pr_α(s)) < √(24α·log(4/δ)/δ) whenever vol(S)/vol(V) ≤ μ,
/// δ ≥ 4/√vol(V) and pr_α(s)(S) − π_V(S) > δ. The PPR is computed exactly.
pub fn check_key_lemma(
    h: &Hypergraph,
    s: &[f64],
    alpha: f64,
    mu: f64,
    set: &VertexSubset,
    delta: f64,
) -> Result<KeyLemmaReport> {
    check_mu(mu)?;
    h.check_len(set.universe())?;
    let p = exact_ppr(h, s, alpha, &ExactParams::default())?.result.vector;
    let pv = pi(h, &VertexSubset::full(h.n()))?;
    let excess = crate::hypergraph::mass(&p, set) - crate::hypergraph::mass(&pv, set);
    let observed_phi = best_sweep(h, &p, mu)?.conductance;
    let vol = h.volume();
    let bound = (24.0 * alpha * (4.0 / delta).ln() / delta).sqrt();
    let bound_unscaled = (12.0 * alpha * vol.ln() / delta).sqrt();
    let reason = if set.volume(h) / vol > mu {
        Some("vol(S)/vol(V) exceeds mu".to_string())
    } else if delta < 4.0 / vol.sqrt() {
        Some("delta is below 4/sqrt(vol(V))".to_string())
    } else if excess <= delta {
        Some("PPR excess on S does not exceed delta".to_string())
    } else {
        None
    };
    let applicable = reason.is_none();
    Ok(KeyLemmaReport {
        applicable,
        reason,
        excess,
        observed_phi,
        bound,
        bound_unscaled,
        holds: !applicable || observed_phi < bound,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MixingReport {
    /// φ used in the bound: the smallest sweep conductance up to ℓ_μ.
    pub phi: f64,
    /// max over t and prefixes j ≤ ℓ_μ with vol(S_j) ≤ μ·vol(V) of
    /// (p(S_j) − π_V(S_j)) − (αt + √vol(S_j)·(1 − φ²/8)^t).
    pub worst_margin: f64,
    pub holds: bool,
}

/// Checks p(S) − π_V(S) ≤ αt + √vol(S)·(1 − φ²/8)^t for t = 0..=t_max on the
/// sweep sets of `p`, which must be an exact PPR vector. Sweep sets are the
/// extremal sets for their volume, so they are the binding case.
pub fn check_mixing(h: &Hypergraph, p: &[f64], alpha: f64, mu: f64, t_max: u32, slack: f64) -> Result<MixingReport> {
    let prof = sweep_profile(h, p)?;
    let best = prof.best(mu)?;
    let phi = best.conductance;
    let vol = h.volume();
    let mut mass = ExactSum::new();
    let mut worst = f64::NEG_INFINITY;
    for j in 1..=best.ell.min(prof.volumes.len()) {
        mass.add(p[prof.order[j - 1]]);
        let x = prof.volumes[j - 1];
        if x > mu * vol {
            break;
        }
        let lhs = mass.value() - x / vol;
        for t in 0..=t_max {
            let rhs = alpha * t as f64 + x.sqrt() * (1.0 - phi * phi / 8.0).powi(t as i32);
            worst = worst.max(lhs - rhs);
        }
    }
    Ok(MixingReport { phi, worst_margin: worst, holds: worst <= slack })
}
