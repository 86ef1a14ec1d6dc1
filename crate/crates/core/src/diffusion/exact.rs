//! Exact PPR by dual block-coordinate ascent.
//!
//! With z = D⁻¹p and σ = D⁻¹s, pr_α(s) = D·z* where z* minimizes
//!
//!   F(z) = (β/2)·Σ_v d_v (z_v − σ_v)² + ((1−β)/2)·Σ_e w(e)·gap_e(z)².
//!
//! The dual keeps one vector y_e per edge, supported on e with zero sum. With
//! Y = Σ_e y_e the primal point is z = σ − Y/(βd), i.e. p = s − Y/β, so every
//! iterate has the mass of s. Each block update solves the edge's proximal
//! problem in closed form: the top vertices are lowered to a common level M,
//! the bottom ones raised to m, and the flow moved equals (1−β)·w(e)·(M − m).
//!
//! At the optimum y_e = (1−β)·w(e)·gap_e·b_e for a b_e in the argmax face of
//! B_e, so y_e also tells which subgradient realizes the stationary point.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact_sum::exact_sum;
use crate::hypergraph::{Hypergraph, VertexId};
use crate::laplacian::{induced_graph_from_weights, InducedGraph};

use super::{beta, check_alpha, PprResult};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExactParams {
    /// Target for the stationarity residual (see [`ExactPpr`]).
    pub tol: f64,
    pub max_sweeps: usize,
}

impl Default for ExactParams {
    fn default() -> Self {
        Self { tol: 1e-13, max_sweeps: 200_000 }
    }
}

#[derive(Debug, Clone)]
pub struct ExactPpr {
    /// `final_residual` is Σ_e r_e, where r_e measures how far y_e is from
    /// (1−β)·w(e)·gap_e(z)·b_e with b_e in the argmax face: flow on vertices
    /// that are not extremal, plus the mismatch between the flow and
    /// (1−β)·w(e)·gap_e. It is zero exactly at pr_α(s).
    pub result: PprResult,
    /// F(z) minus the dual objective; non-negative up to rounding.
    pub duality_gap: f64,
    pub sweeps: usize,
    offsets: Vec<usize>,
    flows: Vec<f64>,
}

impl ExactPpr {
    /// y_e, aligned with `h.edge(id).members()`.
    pub fn edge_flow(&self, id: usize) -> &[f64] {
        &self.flows[self.offsets[id]..self.offsets[id + 1]]
    }

    /// The graph H_p induced by the subgradient that the solver found:
    /// within edge e, pair (u, v) gets w(e)·y_u/Y⁺·|y_v|/Y⁻ where Y± are the
    /// positive and negative flow totals.
    pub fn induced_graph(&self, h: &Hypergraph) -> InducedGraph {
        let per_edge = (0..h.m()).map(|id| {
            let y = self.edge_flow(id);
            let m = h.edge(id).members();
            let pos: f64 = y.iter().filter(|&&v| v > 0.0).sum();
            let neg: f64 = -y.iter().filter(|&&v| v < 0.0).sum::<f64>();
            if pos <= 0.0 || neg <= 0.0 {
                return (Vec::new(), Vec::new());
            }
            let tops: Vec<(VertexId, f64)> =
                m.iter().zip(y).filter(|(_, &v)| v > 0.0).map(|(&u, &v)| (u, v / pos)).collect();
            let bottoms: Vec<(VertexId, f64)> =
                m.iter().zip(y).filter(|(_, &v)| v < 0.0).map(|(&u, &v)| (u, -v / neg)).collect();
            (tops, bottoms)
        });
        induced_graph_from_weights(h, per_edge)
    }
}

pub fn exact_ppr(h: &Hypergraph, s: &[f64], alpha: f64, params: &ExactParams) -> Result<ExactPpr> {
    h.check_len(s.len())?;
    check_alpha(alpha)?;
    if s.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidParameter("seed vector is not finite".into()));
    }
    let n = h.n();
    let b = beta(alpha);
    let d = h.degrees();
    let sigma: Vec<f64> = (0..n).map(|v| s[v] / d[v]).collect();
    let a: Vec<f64> = d.iter().map(|&dv| b * dv).collect();

    let mut offsets = Vec::with_capacity(h.m() + 1);
    offsets.push(0);
    for e in h.edges() {
        offsets.push(offsets.last().unwrap() + e.len());
    }
    let mut flows = vec![0.0; h.total_size()];
    let mut big_y = vec![0.0; n];

    let max_k = h.edges().iter().map(|e| e.len()).max().unwrap_or(0);
    let mut z0 = Vec::with_capacity(max_k);
    let mut ae = Vec::with_capacity(max_k);
    let mut y_new = vec![0.0; max_k];
    let mut order = Vec::with_capacity(max_k);

    let mut sweeps = 0;
    let mut best = f64::INFINITY;
    let mut best_at = 0;
    let mut res = kkt_residual(h, &sigma, &a, b, &offsets, &flows, &big_y);
    if b < 1.0 {
        while res > params.tol && sweeps < params.max_sweeps {
            for (id, e) in h.edges().iter().enumerate() {
                let c = (1.0 - b) * e.weight();
                let m = e.members();
                let y = &mut flows[offsets[id]..offsets[id + 1]];
                z0.clear();
                ae.clear();
                for (i, &v) in m.iter().enumerate() {
                    z0.push(sigma[v] - (big_y[v] - y[i]) / a[v]);
                    ae.push(a[v]);
                }
                edge_update(&z0, &ae, c, &mut order, &mut y_new[..m.len()]);
                for (i, &v) in m.iter().enumerate() {
                    big_y[v] += y_new[i] - y[i];
                    y[i] = y_new[i];
                }
            }
            sweeps += 1;
            if sweeps % 4 == 0 || sweeps < 8 {
                // rebuild Y from the flows so round-off does not accumulate
                recompute_total(h, &offsets, &flows, &mut big_y);
                res = kkt_residual(h, &sigma, &a, b, &offsets, &flows, &big_y);
                if res < 0.5 * best {
                    best = res;
                    best_at = sweeps;
                } else if sweeps - best_at > 4000 {
                    break;
                }
            }
        }
        recompute_total(h, &offsets, &flows, &mut big_y);
        res = kkt_residual(h, &sigma, &a, b, &offsets, &flows, &big_y);
    }

    let vector: Vec<f64> = if b < 1.0 { (0..n).map(|v| s[v] - big_y[v] / b).collect() } else { s.to_vec() };
    let z: Vec<f64> = (0..n).map(|v| vector[v] / d[v]).collect();
    let duality_gap = primal(h, &z, &sigma, b) - dual(h, &sigma, &a, b, &offsets, &flows, &big_y);
    let mass = exact_sum(vector.iter().copied());
    Ok(ExactPpr {
        result: PprResult { vector, iterations: sweeps, final_residual: res, mass },
        duality_gap,
        sweeps,
        offsets,
        flows,
    })
}

fn recompute_total(h: &Hypergraph, offsets: &[usize], flows: &[f64], big_y: &mut [f64]) {
    big_y.fill(0.0);
    for (id, e) in h.edges().iter().enumerate() {
        for (&v, &y) in e.members().iter().zip(&flows[offsets[id]..offsets[id + 1]]) {
            big_y[v] += y;
        }
    }
}

fn kkt_residual(
    h: &Hypergraph,
    sigma: &[f64],
    a: &[f64],
    b: f64,
    offsets: &[usize],
    flows: &[f64],
    big_y: &[f64],
) -> f64 {
    let z: Vec<f64> = (0..h.n()).map(|v| sigma[v] - big_y[v] / a[v]).collect();
    let zmax = z.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let tau = 1e-12 * zmax;
    let mut total = 0.0;
    for (id, e) in h.edges().iter().enumerate() {
        let y = &flows[offsets[id]..offsets[id + 1]];
        let m = e.members();
        let hi = m.iter().map(|&v| z[v]).fold(f64::NEG_INFINITY, f64::max);
        let lo = m.iter().map(|&v| z[v]).fold(f64::INFINITY, f64::min);
        let mut pos = 0.0;
        for (&v, &yv) in m.iter().zip(y) {
            if yv > 0.0 {
                pos += yv;
                if z[v] < hi - tau {
                    total += yv;
                }
            } else if yv < 0.0 && z[v] > lo + tau {
                total -= yv;
            }
        }
        let want = if hi - lo <= tau { 0.0 } else { (1.0 - b) * e.weight() * (hi - lo) };
        total += (pos - want).abs();
    }
    total
}

fn primal(h: &Hypergraph, z: &[f64], sigma: &[f64], b: f64) -> f64 {
    let fit = exact_sum((0..h.n()).map(|v| 0.5 * b * h.degree(v) * (z[v] - sigma[v]).powi(2)));
    let smooth = exact_sum(h.edges().iter().map(|e| {
        let hi = e.members().iter().map(|&v| z[v]).fold(f64::NEG_INFINITY, f64::max);
        let lo = e.members().iter().map(|&v| z[v]).fold(f64::INFINITY, f64::min);
        0.5 * (1.0 - b) * e.weight() * (hi - lo).powi(2)
    }));
    fit + smooth
}

fn dual(h: &Hypergraph, sigma: &[f64], a: &[f64], b: f64, offsets: &[usize], flows: &[f64], big_y: &[f64]) -> f64 {
    let lin = exact_sum((0..h.n()).map(|v| big_y[v] * sigma[v] - big_y[v] * big_y[v] / (2.0 * a[v])));
    let pen = exact_sum(h.edges().iter().enumerate().filter(|_| b < 1.0).map(|(id, e)| {
        let l1: f64 = flows[offsets[id]..offsets[id + 1]].iter().map(|y| y.abs()).sum();
        l1 * l1 / (8.0 * (1.0 - b) * e.weight())
    }));
    lin - pen
}

/// Solves min_z Σ_i (a_i/2)(z_i − z0_i)² + (c/2)·(max z − min z)² and writes
/// y_i = a_i·(z0_i − z_i).
///
/// The top i values are clamped to M and the bottom j to m, where the flow
/// P = c(M − m) leaves through the top and enters the bottom. Starting from
/// one vertex on each side, a side grows while its level passes the next
/// value; each candidate flow underestimates the optimal one, so the scan
/// only moves forward.
pub(crate) fn edge_update(z0: &[f64], a: &[f64], c: f64, order: &mut Vec<usize>, y: &mut [f64]) {
    let k = z0.len();
    y.fill(0.0);
    if k < 2 || c <= 0.0 {
        return;
    }
    order.clear();
    order.extend(0..k);
    order.sort_by(|&i, &j| z0[j].total_cmp(&z0[i]).then(i.cmp(&j)));
    if z0[order[0]] <= z0[order[k - 1]] {
        return;
    }
    let (mut top, mut bot) = (1, 1);
    let (mut dt, mut st) = (a[order[0]], a[order[0]] * z0[order[0]]);
    let (mut db, mut sb) = (a[order[k - 1]], a[order[k - 1]] * z0[order[k - 1]]);
    let (hi, lo) = loop {
        let flow = c * (st / dt - sb / db) / (1.0 + c / dt + c / db);
        let hi = (st - flow) / dt;
        let lo = (sb + flow) / db;
        if top + bot < k {
            let next_top = order[top];
            if hi < z0[next_top] {
                dt += a[next_top];
                st += a[next_top] * z0[next_top];
                top += 1;
                continue;
            }
            let next_bot = order[k - 1 - bot];
            if lo > z0[next_bot] {
                db += a[next_bot];
                sb += a[next_bot] * z0[next_bot];
                bot += 1;
                continue;
            }
        }
        break (hi, lo);
    };
    for &i in &order[..top] {
        y[i] = a[i] * (z0[i] - hi);
    }
    for &i in &order[k - bot..] {
        y[i] = a[i] * (z0[i] - lo);
    }
}
