//! Brute-force oracles and executable forms of the PPR lemmas.
//!
//! Every checker solves for the exact PPR and reports `applicable = false`
//! when the solver's residual is not below 1e-8, so truncation or
//! discretization error never shows up as a lemma violation.

use rayon::prelude::*;
use serde::Serialize;

use crate::diffusion::{check_alpha, exact_ppr, ExactParams, ExactPpr};
use crate::error::{Error, Result};
use crate::exact_sum::ExactSum;
use crate::hypergraph::{connectivity, interior, mass, measure, pi, Hypergraph, VertexId, VertexSubset};
use crate::sweep::{best_sweep, check_mu};

/// Residual the exact solver must reach before a lemma is checked.
pub const RESIDUAL_GATE: f64 = 1e-8;
/// Additive slack on the lemma inequalities.
pub const SLACK: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LemmaReport {
    pub name: &'static str,
    pub applicable: bool,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    /// lhs ≤ rhs + slack. Only meaningful when `applicable`.
    pub holds: bool,
    /// Offending vertex or set, if any.
    pub witness: Option<Vec<VertexId>>,
    pub note: Option<String>,
}

impl LemmaReport {
    fn compare(name: &'static str, lhs: f64, rhs: f64, slack: f64) -> Self {
        Self { name, applicable: true, lhs, rhs, slack, holds: lhs <= rhs + slack, witness: None, note: None }
    }

    fn inapplicable(name: &'static str, note: impl Into<String>) -> Self {
        Self {
            name,
            applicable: false,
            lhs: f64::NAN,
            rhs: f64::NAN,
            slack: 0.0,
            holds: false,
            witness: None,
            note: Some(note.into()),
        }
    }

    fn with_witness(mut self, w: Vec<VertexId>) -> Self {
        self.witness = Some(w);
        self
    }

    /// Applicable and failing.
    pub fn violated(&self) -> bool {
        self.applicable && !self.holds
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }
}

/// Exact PPR, or `None` when the solver stalls above the residual gate.
fn solve(h: &Hypergraph, s: &[f64], alpha: f64) -> Result<Option<ExactPpr>> {
    let r = exact_ppr(h, s, alpha, &ExactParams::default())?;
    Ok((r.result.final_residual < RESIDUAL_GATE).then_some(r))
}

fn not_converged(name: &'static str) -> LemmaReport {
    LemmaReport::inapplicable(name, "exact PPR did not reach the residual gate")
}

fn unit(n: usize, v: VertexId) -> Vec<f64> {
    crate::hypergraph::indicator(n, v)
}

/// Ordering used to break conductance ties: smaller sets first, then
/// lexicographic on the sorted member list.
fn set_order(a: u32, b: u32) -> std::cmp::Ordering {
    a.count_ones().cmp(&b.count_ones()).then_with(|| {
        // the first differing bit decides; the side holding it is smaller
        let diff = a ^ b;
        if diff == 0 {
            std::cmp::Ordering::Equal
        } else if a & (diff & diff.wrapping_neg()) != 0 {
            std::cmp::Ordering::Less
        } else {
            std::cmp::Ordering::Greater
        }
    })
}

/// Largest n accepted by [`brute_force_conductance`].
pub const BRUTE_FORCE_LIMIT: usize = 20;

/// Exhaustive minimum conductance over proper non-empty subsets.
///
/// With `mu`, only sets with vol(S) ≤ μ·vol(V) count; with `seed`, only sets
/// containing it (μ defaults to 1/2 then). Ties go to the smaller set, then
/// to the lexicographically smaller member list.
pub fn brute_force_conductance(h: &Hypergraph, mu: Option<f64>, seed: Option<VertexId>) -> Result<(VertexSubset, f64)> {
    let n = h.n();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge(n));
    }
    if let Some(v) = seed {
        h.check_vertex(v)?;
    }
    let cap = match (mu, seed) {
        (Some(m), _) => Some(m * h.volume()),
        (None, Some(_)) => Some(0.5 * h.volume()),
        (None, None) => None,
    };
    let edges: Vec<(u32, f64)> =
        h.edges().iter().map(|e| (e.members().iter().fold(0u32, |m, &v| m | 1 << v), e.weight())).collect();
    let full: u32 = if n == 0 { 0 } else { u32::MAX >> (32 - n) };
    let score = |s: u32| -> Option<f64> {
        if seed.is_some_and(|v| s & 1 << v == 0) {
            return None;
        }
        let (mut inside, mut outside) = (ExactSum::new(), ExactSum::new());
        for v in 0..n {
            if s & 1 << v != 0 {
                inside.add(h.degree(v));
            } else {
                outside.add(h.degree(v));
            }
        }
        let vol = inside.value();
        if cap.is_some_and(|c| vol > c) {
            return None;
        }
        let mut cut = ExactSum::new();
        for &(m, w) in &edges {
            let k = s & m;
            if k != 0 && k != m {
                cut.add(w);
            }
        }
        Some(cut.value() / vol.min(outside.value()))
    };
    let better = |a: (u32, f64), b: (u32, f64)| {
        if a.1.total_cmp(&b.1).then_with(|| set_order(a.0, b.0)).is_le() {
            a
        } else {
            b
        }
    };
    let best = (1..full)
        .into_par_iter()
        .filter_map(|s| score(s).map(|phi| (s, phi)))
        .reduce_with(better)
        .ok_or(Error::DegenerateSubset)?;
    let set = VertexSubset::new(n, (0..n).filter(|&v| best.0 & 1 << v != 0))?;
    Ok((set, best.1))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PprAxioms {
    /// |Σ pr − 1| ≤ 1e-6.
    pub mass: LemmaReport,
    /// −min pr ≤ 1e-9.
    pub nonnegative: LemmaReport,
    /// π_V(u) − pr(u) ≤ 1e-8.
    pub seed_bound: LemmaReport,
    /// max_{v≠u} pr(v) − π_V(v) ≤ 1e-8.
    pub other_bound: LemmaReport,
}

impl PprAxioms {
    pub fn reports(&self) -> [&LemmaReport; 4] {
        [&self.mass, &self.nonnegative, &self.seed_bound, &self.other_bound]
    }

    pub fn holds(&self) -> bool {
        self.reports().iter().all(|r| r.applicable && r.holds)
    }
}

/// Distribution property of pr_α(χ_u) and the bounds pr(u) ≥ π_V(u),
/// pr(v) ≤ π_V(v) for v ≠ u on a connected hypergraph.
///
/// The last bound is false in general: a leaf hanging off the seed can hold
/// far more than its stationary share. The checker reports it as stated.
pub fn check_ppr_axioms(h: &Hypergraph, alpha: f64, u: VertexId) -> Result<PprAxioms> {
    h.check_vertex(u)?;
    let all = |why: &str| PprAxioms {
        mass: LemmaReport::inapplicable("ppr-mass", why),
        nonnegative: LemmaReport::inapplicable("ppr-nonnegative", why),
        seed_bound: LemmaReport::inapplicable("ppr-seed-bound", why),
        other_bound: LemmaReport::inapplicable("ppr-other-bound", why),
    };
    if !connectivity(h).is_connected() {
        return Ok(all("hypergraph is not connected"));
    }
    let Some(r) = solve(h, &unit(h.n(), u), alpha)? else {
        return Ok(all("exact PPR did not reach the residual gate"));
    };
    let p = &r.result.vector;
    let vol = h.volume();
    let mass = LemmaReport::compare("ppr-mass", (r.result.mass - 1.0).abs(), 0.0, 1e-6);
    let (low, low_at) = (0..h.n()).map(|v| (p[v], v)).fold((f64::INFINITY, 0), |a, b| if b.0 < a.0 { b } else { a });
    let mut nonnegative = LemmaReport::compare("ppr-nonnegative", -low, 0.0, 1e-9);
    if !nonnegative.holds {
        nonnegative.witness = Some(vec![low_at]);
    }
    let mut seed_bound = LemmaReport::compare("ppr-seed-bound", h.degree(u) / vol - p[u], 0.0, SLACK);
    if !seed_bound.holds {
        seed_bound.witness = Some(vec![u]);
    }
    let (excess, at) = (0..h.n())
        .filter(|&v| v != u)
        .map(|v| (p[v] - h.degree(v) / vol, v))
        .fold((f64::NEG_INFINITY, u), |a, b| if b.0 > a.0 { b } else { a });
    let mut other_bound = LemmaReport::compare("ppr-other-bound", excess, 0.0, SLACK);
    if !other_bound.holds {
        other_bound.witness = Some(vec![at]);
    }
    Ok(PprAxioms { mass, nonnegative, seed_bound, other_bound })
}

/// p(C̄) against ((1−α)/(2α))·Σ_{u∈C, v∉C} w_p(uv)·p(u)/d_u on the graph
/// induced by the solver's subgradient.
fn ppr_cuts(h: &Hypergraph, c: &VertexSubset, alpha: f64, r: &ExactPpr) -> LemmaReport {
    let p = &r.result.vector;
    let out = mass(p, &c.complement());
    let rhs = (1.0 - alpha) / (2.0 * alpha) * r.induced_graph(h).outflow(h, c, p);
    LemmaReport::compare("ppr-cuts", out, rhs, SLACK)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LocalLeak {
    /// pr_α(χ_v)(C̄) ≤ φ(C)/(4α).
    pub leak: LemmaReport,
    pub ppr_cuts: LemmaReport,
}

/// Leak of pr_α(χ_v) out of C for v in the interior of C, vol(C) ≤ vol(V)/2.
pub fn check_leak_local(h: &Hypergraph, c: &VertexSubset, v: VertexId, alpha: f64) -> Result<LocalLeak> {
    const NAME: &str = "leak-local";
    h.check_vertex(v)?;
    let m = measure(h, c)?;
    let skip = |why: &str| LocalLeak {
        leak: LemmaReport::inapplicable(NAME, why),
        ppr_cuts: LemmaReport::inapplicable("ppr-cuts", why),
    };
    if m.volume > h.volume() / 2.0 {
        return Ok(skip("vol(C) exceeds vol(V)/2"));
    }
    if !interior(h, c).contains(v) {
        return Ok(skip("seed is not in the interior of C"));
    }
    let Some(r) = solve(h, &unit(h.n(), v), alpha)? else {
        return Ok(LocalLeak { leak: not_converged(NAME), ppr_cuts: not_converged("ppr-cuts") });
    };
    let out = mass(&r.result.vector, &c.complement());
    Ok(LocalLeak {
        leak: LemmaReport::compare(NAME, out, m.conductance / (4.0 * alpha), SLACK),
        ppr_cuts: ppr_cuts(h, c, alpha, &r),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GlobalLeak {
    /// max over boundary vertices v of (Σ_w π_C(w)·pr_α(χ_w))(v) − π_C(v).
    pub assumption: LemmaReport,
    /// Σ_w π_C(w)·pr_α(χ_w)(C̄) ≤ φ(C)/(2α).
    pub leak: LemmaReport,
    /// lhs = vol(C)/2, rhs = vol(C_α).
    pub c_alpha: LemmaReport,
    /// The worst ppr-cuts margin over the seeds w ∈ C.
    pub ppr_cuts: LemmaReport,
    /// {v ∈ C : pr_α(χ_v)(C̄) ≤ φ(C)/α}.
    pub c_alpha_set: Option<VertexSubset>,
}

impl GlobalLeak {
    pub fn reports(&self) -> [&LemmaReport; 4] {
        [&self.assumption, &self.leak, &self.c_alpha, &self.ppr_cuts]
    }
}

/// The π_C-averaged leak bound and the volume of C_α. Both conclusions are
/// only asserted when the boundary assumption verifies.
pub fn check_leak_global(h: &Hypergraph, c: &VertexSubset, alpha: f64) -> Result<GlobalLeak> {
    let m = measure(h, c)?;
    let n = h.n();
    let pc = pi(h, c)?;
    let solved: Vec<Option<ExactPpr>> =
        c.members().par_iter().map(|&w| solve(h, &unit(n, w), alpha)).collect::<Result<_>>()?;
    if solved.iter().any(Option::is_none) {
        return Ok(GlobalLeak {
            assumption: not_converged("assumption"),
            leak: not_converged("leak-global"),
            c_alpha: not_converged("c-alpha"),
            ppr_cuts: not_converged("ppr-cuts"),
            c_alpha_set: None,
        });
    }
    let runs: Vec<ExactPpr> = solved.into_iter().map(Option::unwrap).collect();

    let mut avg = vec![ExactSum::new(); n];
    let mut leak = ExactSum::new();
    let mut cuts_worst: Option<(f64, LemmaReport, VertexId)> = None;
    let mut c_alpha = Vec::new();
    let complement = c.complement();
    for (&w, r) in c.members().iter().zip(&runs) {
        let p = &r.result.vector;
        for v in 0..n {
            avg[v].add(pc[w] * p[v]);
        }
        let out = mass(p, &complement);
        leak.add(pc[w] * out);
        if out <= m.conductance / alpha + SLACK {
            c_alpha.push(w);
        }
        let rep = ppr_cuts(h, c, alpha, r);
        let margin = rep.lhs - rep.rhs;
        if cuts_worst.as_ref().is_none_or(|(b, _, _)| margin > *b) {
            cuts_worst = Some((margin, rep, w));
        }
    }
    let (_, cuts, cuts_w) = cuts_worst.expect("C is non-empty");
    let cuts = if cuts.holds { cuts } else { cuts.with_witness(vec![cuts_w]) };

    let inner = interior(h, c);
    let mut worst = (f64::NEG_INFINITY, None);
    for &v in c.members() {
        if !inner.contains(v) {
            let x = avg[v].value() - pc[v];
            if x > worst.0 {
                worst = (x, Some(v));
            }
        }
    }
    let assumption = match worst {
        (x, Some(v)) => {
            let rep = LemmaReport::compare("assumption", x, 0.0, SLACK);
            if rep.holds {
                rep
            } else {
                rep.with_witness(vec![v])
            }
        }
        (_, None) => LemmaReport::compare("assumption", 0.0, 0.0, SLACK),
    };

    let c_alpha_set = VertexSubset::new(n, c_alpha)?;
    if !assumption.holds {
        let why = "boundary assumption fails";
        let w = assumption.witness.clone().unwrap_or_default();
        return Ok(GlobalLeak {
            assumption,
            leak: LemmaReport::inapplicable("leak-global", why).with_witness(w.clone()),
            c_alpha: LemmaReport::inapplicable("c-alpha", why).with_witness(w),
            ppr_cuts: cuts,
            c_alpha_set: Some(c_alpha_set),
        });
    }
    Ok(GlobalLeak {
        assumption,
        leak: LemmaReport::compare("leak-global", leak.value(), m.conductance / (2.0 * alpha), SLACK),
        c_alpha: LemmaReport::compare("c-alpha", m.volume / 2.0, c_alpha_set.volume(h), 0.0),
        ppr_cuts: cuts,
        c_alpha_set: Some(c_alpha_set),
    })
}

/// (1/2 − d_max/vol)/(1 − d_max/vol), written as (vol − 2d)/(2(vol − d)) so
/// that integer inputs give the correctly rounded quotient.
pub fn criterion2_threshold(h: &Hypergraph) -> f64 {
    let (d, vol) = (h.max_degree(), h.volume());
    (vol - 2.0 * d) / (2.0 * (vol - d))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SufficientConditions {
    /// max_v pr_α(χ_v)(v) ≤ 1/2.
    pub criterion1: LemmaReport,
    /// α ≤ criterion2_threshold(H).
    pub criterion2: LemmaReport,
}

impl SufficientConditions {
    /// Whether either criterion certifies the boundary assumption.
    pub fn implies_assumption(&self) -> bool {
        (self.criterion1.applicable && self.criterion1.holds) || (self.criterion2.applicable && self.criterion2.holds)
    }
}

/// The two sufficient conditions for the boundary assumption. Criterion 1
/// needs vol(C) ≤ vol(V)/2 when C is given and solves n exact PPRs.
pub fn check_sufficient_conditions(
    h: &Hypergraph,
    alpha: f64,
    c: Option<&VertexSubset>,
) -> Result<SufficientConditions> {
    check_alpha(alpha)?;
    let criterion2 = LemmaReport::compare("criterion-2", alpha, criterion2_threshold(h), 0.0);
    let too_big = match c {
        Some(c) => {
            h.check_len(c.universe())?;
            c.volume(h) > h.volume() / 2.0
        }
        None => false,
    };
    let criterion1 = if too_big {
        LemmaReport::inapplicable("criterion-1", "vol(C) exceeds vol(V)/2")
    } else {
        let selves: Vec<Option<f64>> = (0..h.n())
            .into_par_iter()
            .map(|v| Ok(solve(h, &unit(h.n(), v), alpha)?.map(|r| r.result.vector[v])))
            .collect::<Result<_>>()?;
        if selves.iter().any(Option::is_none) {
            not_converged("criterion-1")
        } else {
            let (v, x) = selves.iter().map(|x| x.unwrap()).enumerate().fold((0, f64::NEG_INFINITY), |b, (v, x)| {
                if x > b.1 {
                    (v, x)
                } else {
                    b
                }
            });
            let rep = LemmaReport::compare("criterion-1", x, 0.5, 0.0);
            if rep.holds {
                rep
            } else {
                rep.with_witness(vec![v])
            }
        }
    };
    Ok(SufficientConditions { criterion1, criterion2 })
}

/// Largest L1 distance between PPR vectors at adjacent α values. Asserts a
/// gap ≤ 0.1 when every spacing is at most 1e-3.
pub fn check_continuity(h: &Hypergraph, s: &[f64], alphas: &[f64]) -> Result<LemmaReport> {
    const NAME: &str = "continuity";
    h.check_len(s.len())?;
    if alphas.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::InvalidParameter("alphas must be ascending".into()));
    }
    if alphas.len() < 2 {
        return Ok(LemmaReport::inapplicable(NAME, "need at least two alpha values"));
    }
    let mut vectors = Vec::with_capacity(alphas.len());
    for &a in alphas {
        match solve(h, s, a)? {
            Some(r) => vectors.push(r.result.vector),
            None => return Ok(not_converged(NAME)),
        }
    }
    let gap =
        vectors.windows(2).map(|w| w[0].iter().zip(&w[1]).map(|(a, b)| (a - b).abs()).sum::<f64>()).fold(0.0, f64::max);
    // allow for 0.501 − 0.5 rounding slightly above 1e-3
    if alphas.windows(2).any(|w| w[1] - w[0] > 1e-3 * (1.0 + 1e-9)) {
        let mut rep = LemmaReport::inapplicable(NAME, "alpha spacing exceeds 1e-3");
        rep.lhs = gap;
        return Ok(rep);
    }
    Ok(LemmaReport::compare(NAME, gap, 0.1, 0.0))
}

/// 8/√(3−ε−4μ)·√(6φ·ln(2/(3−ε−4μ))).
pub fn main_local_bound(phi: f64, epsilon: f64, mu: f64) -> f64 {
    let k = 3.0 - epsilon - 4.0 * mu;
    8.0 / k.sqrt() * (6.0 * phi * (2.0 / k).ln()).sqrt()
}

/// 20/√(4−ε)·√(3φ·ln(40/(4−ε))).
pub fn global_bound(phi: f64, epsilon: f64) -> f64 {
    20.0 / (4.0 - epsilon).sqrt() * (3.0 * phi * (40.0 / (4.0 - epsilon)).ln()).sqrt()
}

/// φ^μ(pr_α(χ_v)) against [`main_local_bound`] of φ(C*), for v in the
/// interior of C*, vol(C*) ≤ μ·vol(V) and α ≤ φ(C*) ≤ (1+ε)α.
pub fn check_main_local(
    h: &Hypergraph,
    c_star: &VertexSubset,
    v: VertexId,
    alpha: f64,
    epsilon: f64,
    mu: f64,
) -> Result<LemmaReport> {
    const NAME: &str = "main-local";
    check_mu(mu)?;
    h.check_vertex(v)?;
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::InvalidParameter(format!("epsilon = {epsilon} is outside (0, 1)")));
    }
    let m = measure(h, c_star)?;
    if m.volume > mu * h.volume() {
        return Ok(LemmaReport::inapplicable(NAME, "vol(C) exceeds mu vol(V)"));
    }
    if !interior(h, c_star).contains(v) {
        return Ok(LemmaReport::inapplicable(NAME, "seed is not in the interior of C"));
    }
    if !(alpha <= m.conductance && m.conductance <= (1.0 + epsilon) * alpha) {
        return Ok(LemmaReport::inapplicable(NAME, "alpha does not bracket phi(C)"));
    }
    let Some(r) = solve(h, &unit(h.n(), v), alpha)? else {
        return Ok(not_converged(NAME));
    };
    let found = best_sweep(h, &r.result.vector, mu)?;
    let rep = LemmaReport::compare(NAME, found.conductance, main_local_bound(m.conductance, epsilon, mu), 0.0);
    Ok(if rep.holds { rep } else { rep.with_witness(found.set.members().to_vec()) })
}

/// φ^{1/2}(pr_α(χ_v)) against [`global_bound`] of φ(C*), for vol(C*) ≤
/// vol(V)/2, α ≤ 10φ(C*) ≤ (1+ε)α, the boundary assumption, and v ∈ C*_α.
pub fn check_main_global(
    h: &Hypergraph,
    c_star: &VertexSubset,
    v: VertexId,
    alpha: f64,
    epsilon: f64,
) -> Result<LemmaReport> {
    const NAME: &str = "main-global";
    h.check_vertex(v)?;
    let m = measure(h, c_star)?;
    if m.volume > h.volume() / 2.0 {
        return Ok(LemmaReport::inapplicable(NAME, "vol(C) exceeds vol(V)/2"));
    }
    let ten = 10.0 * m.conductance;
    if !(alpha <= ten && ten <= (1.0 + epsilon) * alpha) {
        return Ok(LemmaReport::inapplicable(NAME, "alpha does not bracket 10 phi(C)"));
    }
    let g = check_leak_global(h, c_star, alpha)?;
    if !g.assumption.applicable || !g.assumption.holds {
        return Ok(LemmaReport::inapplicable(NAME, "boundary assumption fails"));
    }
    if !g.c_alpha_set.as_ref().is_some_and(|s| s.contains(v)) {
        return Ok(LemmaReport::inapplicable(NAME, "seed is not in C_alpha"));
    }
    let Some(r) = solve(h, &unit(h.n(), v), alpha)? else {
        return Ok(not_converged(NAME));
    };
    let found = best_sweep(h, &r.result.vector, 0.5)?;
    Ok(LemmaReport::compare(NAME, found.conductance, global_bound(m.conductance, epsilon), 0.0))
}
