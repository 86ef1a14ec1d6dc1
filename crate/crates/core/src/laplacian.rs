//! The hypergraph Laplacian L_H and its normalized form 𝓛_H(x) = L_H(D⁻¹x).
//!
//! L_H is set-valued: on edge e it contributes w(e)·b_e·b_eᵀz for any b_e in
//! the face of B_e maximizing b_eᵀz. Where several vertices share the maximum
//! (or minimum) of z on e, this module averages over them: every vertex of
//! S_max(e) receives +w(e)·gap(e)/|S_max(e)| and every vertex of S_min(e)
//! receives −w(e)·gap(e)/|S_min(e)|.

use crate::hypergraph::{Hypergraph, VertexId, VertexSubset};

/// Extremal vertex sets of one edge under a compared vector z.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeChoice {
    pub max_set: Vec<VertexId>,
    pub min_set: Vec<VertexId>,
    /// max_e z − min_e z, or 0 when the edge is flat within the tolerance.
    pub gap: f64,
}

impl EdgeChoice {
    pub fn is_flat(&self) -> bool {
        self.gap == 0.0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EdgeSelection {
    pub edges: Vec<EdgeChoice>,
}

/// Max and min of z over e, and whether the edge counts as flat.
#[inline]
fn extremes(z: &[f64], members: &[VertexId], tie_tol: f64) -> (f64, f64, bool) {
    let mut hi = f64::NEG_INFINITY;
    let mut lo = f64::INFINITY;
    for &u in members {
        hi = hi.max(z[u]);
        lo = lo.min(z[u]);
    }
    (hi, lo, hi - lo <= tie_tol)
}

pub fn select_subgradient(h: &Hypergraph, z: &[f64], tie_tol: f64) -> EdgeSelection {
    let edges = h
        .edges()
        .iter()
        .map(|e| {
            let m = e.members();
            let (hi, lo, flat) = extremes(z, m, tie_tol);
            if flat {
                return EdgeChoice { max_set: m.to_vec(), min_set: m.to_vec(), gap: 0.0 };
            }
            EdgeChoice {
                max_set: m.iter().copied().filter(|&u| z[u] >= hi - tie_tol).collect(),
                min_set: m.iter().copied().filter(|&u| z[u] <= lo + tie_tol).collect(),
                gap: hi - lo,
            }
        })
        .collect();
    EdgeSelection { edges }
}

/// y = L_H(z) with z = x, or 𝓛_H(x) = L_H(D⁻¹x) when `normalized`.
pub fn apply_laplacian(h: &Hypergraph, x: &[f64], normalized: bool, tie_tol: f64) -> Vec<f64> {
    let mut y = vec![0.0; h.n()];
    if normalized {
        let z: Vec<f64> = x.iter().zip(h.degrees()).map(|(a, d)| a / d).collect();
        accumulate(h, &z, tie_tol, &mut y);
    } else {
        accumulate(h, x, tie_tol, &mut y);
    }
    y
}

/// Adds L_H(z) into `y`, edge by edge in id order.
pub(crate) fn accumulate(h: &Hypergraph, z: &[f64], tie_tol: f64, y: &mut [f64]) {
    for e in h.edges() {
        let m = e.members();
        let (hi, lo, flat) = extremes(z, m, tie_tol);
        if flat {
            continue;
        }
        let (mut n_hi, mut n_lo) = (0usize, 0usize);
        for &u in m {
            if z[u] >= hi - tie_tol {
                n_hi += 1;
            }
            if z[u] <= lo + tie_tol {
                n_lo += 1;
            }
        }
        let flow = e.weight() * (hi - lo);
        let (up, down) = (flow / n_hi as f64, flow / n_lo as f64);
        for &u in m {
            if z[u] >= hi - tie_tol {
                y[u] += up;
            }
            if z[u] <= lo + tie_tol {
                y[u] -= down;
            }
        }
    }
}

/// Σ_e w(e)·gap_e(z)², which equals zᵀL_H(z).
pub fn quadratic_form(h: &Hypergraph, z: &[f64], tie_tol: f64) -> f64 {
    h.edges()
        .iter()
        .map(|e| {
            let (hi, lo, flat) = extremes(z, e.members(), tie_tol);
            if flat {
                0.0
            } else {
                e.weight() * (hi - lo) * (hi - lo)
            }
        })
        .sum()
}

/// The graph H_z: each edge's weight spread over S_max×S_min pairs, with
/// self-loops absorbing the rest so every vertex keeps its degree d_v.
#[derive(Debug, Clone, PartialEq)]
pub struct InducedGraph {
    /// (u, v, weight) with u ≠ v.
    pub pairs: Vec<(VertexId, VertexId, f64)>,
    pub loops: Vec<f64>,
}

impl InducedGraph {
    pub fn n(&self) -> usize {
        self.loops.len()
    }

    /// Degree of every vertex, self-loops counted once.
    pub fn degrees(&self) -> Vec<f64> {
        let mut d = self.loops.clone();
        for &(u, v, w) in &self.pairs {
            d[u] += w;
            d[v] += w;
        }
        d
    }

    /// (D − A)z; self-loops do not contribute.
    pub fn apply_laplacian(&self, z: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.n()];
        for &(u, v, w) in &self.pairs {
            let f = w * (z[u] - z[v]);
            y[u] += f;
            y[v] -= f;
        }
        y
    }

    /// Σ_{u∈C} Σ_{v∉C} w(uv)·p(u)/d_u, the right-hand side of the PPR
    /// cut inequality (without the (1−α)/(2α) factor).
    pub fn outflow(&self, h: &Hypergraph, c: &VertexSubset, p: &[f64]) -> f64 {
        self.pairs
            .iter()
            .map(|&(u, v, w)| match (c.contains(u), c.contains(v)) {
                (true, false) => w * p[u] / h.degree(u),
                (false, true) => w * p[v] / h.degree(v),
                _ => 0.0,
            })
            .sum()
    }
}

pub fn induced_graph(h: &Hypergraph, z: &[f64], tie_tol: f64) -> InducedGraph {
    let sel = select_subgradient(h, z, tie_tol);
    let weights = sel.edges.iter().map(|c| {
        if c.is_flat() {
            (Vec::new(), Vec::new())
        } else {
            let a = 1.0 / c.max_set.len() as f64;
            let b = 1.0 / c.min_set.len() as f64;
            (c.max_set.iter().map(|&u| (u, a)).collect(), c.min_set.iter().map(|&v| (v, b)).collect())
        }
    });
    induced_graph_from_weights(h, weights)
}

/// Induced graph for an explicit choice of b_e per edge: `tops` and `bottoms`
/// are convex weights over the upper and lower vertices, and pair (u, v) gets
/// w(e)·a_u·b_v. An edge with empty weight lists puts all its weight on
/// self-loops.
pub fn induced_graph_from_weights<I>(h: &Hypergraph, per_edge: I) -> InducedGraph
where
    I: IntoIterator<Item = (Vec<(VertexId, f64)>, Vec<(VertexId, f64)>)>,
{
    let mut pairs = Vec::new();
    let mut loops = vec![0.0; h.n()];
    for (e, (tops, bottoms)) in h.edges().iter().zip(per_edge) {
        let w = e.weight();
        if tops.is_empty() || bottoms.is_empty() {
            for &u in e.members() {
                loops[u] += w;
            }
            continue;
        }
        let mut used = vec![0.0; e.len()];
        let slot = |u: VertexId| e.members().binary_search(&u).expect("selected vertex belongs to the edge");
        for &(u, a) in &tops {
            for &(v, b) in &bottoms {
                let pw = w * a * b;
                if u == v {
                    continue;
                }
                pairs.push((u, v, pw));
                used[slot(u)] += pw;
                used[slot(v)] += pw;
            }
        }
        for (i, &u) in e.members().iter().enumerate() {
            loops[u] += (w - used[i]).max(0.0);
        }
    }
    InducedGraph { pairs, loops }
}

/// Q(x̃) = (β/2)‖x̃ − s̃‖² + (1−β)·Σ_e w(e)·gap_e(D^{-1/2}x̃)², for D^{-1/2}-scaled
/// vectors x̃ and s̃.
pub fn energy_q(h: &Hypergraph, x_tilde: &[f64], s_tilde: &[f64], beta: f64, tie_tol: f64) -> f64 {
    let dist: f64 = x_tilde.iter().zip(s_tilde).map(|(a, b)| (a - b) * (a - b)).sum();
    let z: Vec<f64> = x_tilde.iter().zip(h.degrees()).map(|(a, d)| a / d.sqrt()).collect();
    beta / 2.0 * dist + (1.0 - beta) * quadratic_form(h, &z, tie_tol)
}
