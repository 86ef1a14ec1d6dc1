//! Local and global clustering by PPR sweeps, plus the clique/star baselines.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::diffusion::{euler_ppr, graph_ppr_power, PprParams};
use crate::error::{Error, Result};
use crate::expansion::{clique_expansion, clique_pair_count, star_expansion};
use crate::hypergraph::{indicator, measure, Hypergraph, VertexId, VertexSubset};
use crate::sweep::{check_mu, sweep_order, SweepProfile};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Local,
    Global,
    Clique,
    Star,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClusterResult {
    pub method: Method,
    pub set: VertexSubset,
    /// Recomputed with `measure` on the returned set.
    pub conductance: f64,
    pub volume: f64,
    pub seed: VertexId,
    pub alpha: f64,
    /// Prefix length in the sweep that produced the set.
    pub j: usize,
}

#[derive(Serialize)]
struct ClusterJson<'a> {
    method: Method,
    seed: VertexId,
    alpha: f64,
    phi: f64,
    volume: f64,
    size: usize,
    members_sorted: &'a [VertexId],
}

impl ClusterResult {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&ClusterJson {
            method: self.method,
            seed: self.seed,
            alpha: self.alpha,
            phi: self.conductance,
            volume: self.volume,
            size: self.set.len(),
            members_sorted: self.set.members(),
        })
        .expect("plain data serializes")
    }

    fn new(h: &Hypergraph, method: Method, set: VertexSubset, seed: VertexId, alpha: f64, j: usize) -> Result<Self> {
        let m = measure(h, &set)?;
        Ok(Self { method, set, conductance: m.conductance, volume: m.volume, seed, alpha, j })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LocalParams {
    pub mu: f64,
    pub epsilon: f64,
    /// Diffusion settings; the `alpha` field is replaced per candidate.
    pub ppr: PprParams,
    /// Overrides the α grid when set.
    pub alphas: Option<Vec<f64>>,
}

impl LocalParams {
    /// ε = 0.9 and the default Euler settings (Δ = 1, T = 30, θ = 1e-5).
    pub fn new(mu: f64) -> Self {
        Self { mu, epsilon: 0.9, ppr: PprParams::new(1.0), alphas: None }
    }

    pub fn validate(&self) -> Result<()> {
        check_mu(self.mu)?;
        check_epsilon(self.epsilon)?;
        if let Some(a) = &self.alphas {
            if a.is_empty() {
                return Err(Error::InvalidParameter("empty alpha list".into()));
            }
        }
        PprParams { alpha: 1.0, ..self.ppr }.validate()
    }

    fn candidates(&self, h: &Hypergraph) -> Result<Vec<f64>> {
        match &self.alphas {
            Some(a) => Ok(a.clone()),
            None => alpha_candidates(h, self.epsilon),
        }
    }
}

fn check_epsilon(eps: f64) -> Result<()> {
    if eps > 0.0 && eps < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("epsilon = {eps} is outside (0, 1)")))
    }
}

/// base·(1+ε)^i for i = 0, 1, … while ≤ 1, then 1.0 if the grid stopped
/// short of it. base = w_min / (w_max Σ|e|).
pub fn alpha_candidates(h: &Hypergraph, epsilon: f64) -> Result<Vec<f64>> {
    check_epsilon(epsilon)?;
    let base = h.w_min() / (h.w_max() * h.total_size() as f64);
    let mut out = Vec::new();
    for i in 0.. {
        let a = base * (1.0 + epsilon).powi(i);
        if a > 1.0 {
            break;
        }
        out.push(a);
    }
    if out.last() != Some(&1.0) {
        out.push(1.0);
    }
    Ok(out)
}

/// Best sweep prefix of `profile` that contains `v`, within the μ cap.
fn best_containing(profile: &SweepProfile, mu: f64, v: VertexId) -> Option<(usize, f64)> {
    let pos = profile.order.iter().position(|&u| u == v)?;
    let last = profile.ell(mu).min(profile.conductances.len());
    let mut best: Option<(usize, f64)> = None;
    for j in pos + 1..=last {
        let phi = profile.conductances[j - 1];
        if best.is_none_or(|(_, b)| phi < b) {
            best = Some((j, phi));
        }
    }
    best
}

/// For each α in the grid, sweeps the Euler PPR of χ_v and keeps the
/// lowest-conductance prefix within the volume cap. Ties go to the smaller α.
///
/// Only prefixes that contain `v` are considered. With the exact PPR the
/// seed always leads the order, but a truncated Euler vector may rank it
/// lower.
pub fn local_clustering(h: &Hypergraph, v: VertexId, params: &LocalParams) -> Result<ClusterResult> {
    h.check_vertex(v)?;
    params.validate()?;
    let s = indicator(h.n(), v);
    let mut best: Option<(f64, usize, f64, SweepProfile)> = None;
    for alpha in params.candidates(h)? {
        let pr = euler_ppr(h, &s, &PprParams { alpha, ..params.ppr })?;
        let profile = SweepProfile::from_order(h, sweep_order(h, &pr.vector));
        if let Some((j, phi)) = best_containing(&profile, params.mu, v) {
            if best.as_ref().is_none_or(|b| phi < b.0) {
                best = Some((phi, j, alpha, profile));
            }
        }
    }
    let (_, j, alpha, profile) = best.ok_or(Error::DegenerateSubset)?;
    ClusterResult::new(h, Method::Local, profile.prefix(j), v, alpha, j)
}

/// Which vertices global clustering starts from.
#[derive(Debug, Clone, PartialEq)]
pub enum Seeds {
    All,
    List(Vec<VertexId>),
    /// k distinct vertices drawn uniformly with the run's RNG seed.
    Sample(usize),
}

/// The seed list in ascending order.
pub fn resolve_seeds(h: &Hypergraph, seeds: &Seeds, rng_seed: u64) -> Result<Vec<VertexId>> {
    let mut out = match seeds {
        Seeds::All => (0..h.n()).collect(),
        Seeds::List(list) => {
            for &v in list {
                h.check_vertex(v)?;
            }
            list.clone()
        }
        Seeds::Sample(k) => {
            let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
            rand::seq::index::sample(&mut rng, h.n(), (*k).min(h.n())).into_vec()
        }
    };
    out.sort_unstable();
    out.dedup();
    if out.is_empty() {
        return Err(Error::InvalidParameter("no seed vertices".into()));
    }
    Ok(out)
}

/// Local clustering with μ = 1/2 from every seed, in parallel. Returns the
/// minimum under (φ, |S|, seed).
pub fn global_clustering(h: &Hypergraph, params: &LocalParams, seeds: &Seeds, rng_seed: u64) -> Result<ClusterResult> {
    let list = resolve_seeds(h, seeds, rng_seed)?;
    let results = global_candidates(h, params, &list)?;
    let best = results
        .into_iter()
        .min_by(|a, b| {
            a.conductance.total_cmp(&b.conductance).then(a.set.len().cmp(&b.set.len())).then(a.seed.cmp(&b.seed))
        })
        .expect("seed list is non-empty");
    Ok(ClusterResult { method: Method::Global, ..best })
}

/// Local results with μ = 1/2 for each seed, in seed order.
pub fn global_candidates(h: &Hypergraph, params: &LocalParams, seeds: &[VertexId]) -> Result<Vec<ClusterResult>> {
    let params = LocalParams { mu: 0.5, ..params.clone() };
    seeds.par_iter().map(|&v| local_clustering(h, v, &params)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpansionMode {
    Clique,
    Star,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BaselineParams {
    pub mode: ExpansionMode,
    pub mu: f64,
    /// Clique mode refuses hypergraphs whose expansion has more pairs.
    pub edge_budget: u64,
    /// Divide w(e) by C(|e|,2) (clique) or |e| (star).
    pub normalized: bool,
    pub alphas: Vec<f64>,
    /// L1 stopping tolerance of the power method.
    pub tol: f64,
    pub max_iter: usize,
}

impl BaselineParams {
    pub fn new(mode: ExpansionMode, mu: f64) -> Self {
        Self {
            mode,
            mu,
            edge_budget: 20_000_000,
            normalized: false,
            alphas: (1..=19).map(|i| i as f64 * 0.05).collect(),
            tol: 1e-10,
            max_iter: 100_000,
        }
    }
}

/// Graph PPR on the clique or star expansion for each α, swept by the
/// expanded graph's x(v)/d_v over the original vertices only, with every
/// prefix scored by its conductance in `h`.
pub fn baseline_expansion_clustering(h: &Hypergraph, v: VertexId, p: &BaselineParams) -> Result<ClusterResult> {
    h.check_vertex(v)?;
    check_mu(p.mu)?;
    let (g, method) = match p.mode {
        ExpansionMode::Clique => {
            let needed = clique_pair_count(h);
            if needed > p.edge_budget {
                return Err(Error::ExpansionBudgetExceeded { needed, budget: p.edge_budget });
            }
            (clique_expansion(h, p.normalized)?, Method::Clique)
        }
        ExpansionMode::Star => (star_expansion(h, p.normalized).0, Method::Star),
    };
    let s = indicator(g.n(), v);
    let mut best: Option<(f64, usize, f64, SweepProfile)> = None;
    for &alpha in &p.alphas {
        let x = graph_ppr_power(&g, &s, alpha, p.tol, p.max_iter)?;
        let ratio: Vec<f64> = (0..h.n()).map(|u| x[u] / g.degree(u)).collect();
        let mut order: Vec<VertexId> = (0..h.n()).collect();
        order.sort_by(|&a, &b| ratio[b].total_cmp(&ratio[a]).then(a.cmp(&b)));
        let profile = SweepProfile::from_order(h, order);
        let b = profile.best(p.mu)?;
        if best.as_ref().is_none_or(|c| b.conductance < c.0) {
            best = Some((b.conductance, b.j, alpha, profile));
        }
    }
    let (_, j, alpha, profile) = best.ok_or_else(|| Error::InvalidParameter("empty alpha list".into()))?;
    ClusterResult::new(h, method, profile.prefix(j), v, alpha, j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{planted_partition, random_graph, random_hypergraph, PlantedParams};
    use crate::hypergraph::{interior, Hyperedge};
    use rand::Rng;

    fn f1() -> Hypergraph {
        Hypergraph::new(4, vec![Hyperedge::new(1.0, vec![0, 1, 2]), Hyperedge::new(1.0, vec![2, 3])]).unwrap()
    }

    #[test]
    fn f1_alpha_grid() {
        let a = alpha_candidates(&f1(), 0.9).unwrap();
        let want = [0.2, 0.38, 0.722, 1.0];
        assert_eq!(a.len(), 4);
        for (x, y) in a.iter().zip(want) {
            assert!((x - y).abs() <= 1e-12, "{a:?}");
        }
        assert!(alpha_candidates(&f1(), 1.0).is_err());
        assert!(alpha_candidates(&f1(), 0.0).is_err());
    }

    #[test]
    fn alpha_grid_brackets_every_target() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let h = random_hypergraph(&mut rng, 30, 40, 6);
        for eps in [0.1, 0.5, 0.9] {
            let a = alpha_candidates(&h, eps).unwrap();
            assert!(a.windows(2).all(|w| w[0] < w[1]));
            let base = a[0];
            for _ in 0..1000 {
                let phi = rng.random_range(base..=1.0);
                assert!(a.iter().any(|&x| x <= phi && phi <= (1.0 + eps) * x), "phi = {phi}");
            }
        }
    }

    #[test]
    fn f1_local_from_vertex_zero() {
        let r = local_clustering(&f1(), 0, &LocalParams::new(0.5)).unwrap();
        assert_eq!(r.set.members(), &[0, 1]);
        assert_eq!(r.conductance, 0.5);
        assert!(r.json_roundtrip_ok());
    }

    impl ClusterResult {
        fn json_roundtrip_ok(&self) -> bool {
            let v: serde_json::Value = serde_json::from_str(&self.to_json()).unwrap();
            v["phi"].as_f64() == Some(self.conductance)
                && v["size"].as_u64() == Some(self.set.len() as u64)
                && v["method"].is_string()
        }
    }

    #[test]
    fn alpha_one_sweeps_the_indicator() {
        let h = f1();
        let params = LocalParams { alphas: Some(vec![1.0]), ..LocalParams::new(0.5) };
        for v in 0..4 {
            let r = local_clustering(&h, v, &params).unwrap();
            assert!(r.set.contains(v));
            assert!(r.volume <= 0.5 * h.volume() + h.max_degree());
        }
        // χ_0 puts 0 first and the rest by id; {0} has φ = 1 and {0,1} has 1/2
        assert_eq!(local_clustering(&h, 0, &params).unwrap().set.members(), &[0, 1]);
    }

    #[test]
    fn planted_cluster_is_recovered_from_interior_seeds() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let p = planted_partition(&mut rng, &PlantedParams::default());
        let h = &p.hypergraph;
        for c in &p.clusters {
            for &v in interior(h, c).members() {
                let r = local_clustering(h, v, &LocalParams::new(0.5)).unwrap();
                assert_eq!(&r.set, c, "seed {v}");
            }
        }
    }

    #[test]
    fn local_invariants_on_random_inputs() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..15 {
            let h = random_hypergraph(&mut rng, 20, 25, 5);
            let v = rng.random_range(0..20);
            let mu = rng.random_range(0.05..=0.5);
            let r = local_clustering(&h, v, &LocalParams::new(mu)).unwrap();
            assert!(r.set.contains(v));
            assert!(r.volume <= mu * h.volume() + h.max_degree());
            assert_eq!(measure(&h, &r.set).unwrap().conductance, r.conductance);
        }
    }

    #[test]
    fn global_on_f1_and_single_seed() {
        let h = f1();
        let params = LocalParams::new(0.5);
        let g = global_clustering(&h, &params, &Seeds::All, 0).unwrap();
        assert_eq!(g.conductance, 0.5);
        assert_eq!(g.method, Method::Global);
        for v in 0..4 {
            let one = global_clustering(&h, &params, &Seeds::List(vec![v]), 0).unwrap();
            let local = local_clustering(&h, v, &params).unwrap();
            assert_eq!(ClusterResult { method: Method::Local, ..one }, local);
        }
    }

    #[test]
    fn global_is_the_minimum_over_seeds_and_deterministic() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let h = random_hypergraph(&mut rng, 50, 60, 4);
        let params = LocalParams::new(0.5);
        let all = global_clustering(&h, &params, &Seeds::All, 0).unwrap();
        let sampled = global_clustering(&h, &params, &Seeds::Sample(50), 17).unwrap();
        assert_eq!(all, sampled);
        let each = global_candidates(&h, &params, &(0..50).collect::<Vec<_>>()).unwrap();
        assert!(each.iter().all(|r| all.conductance <= r.conductance));
        let a = resolve_seeds(&h, &Seeds::Sample(10), 99).unwrap();
        assert_eq!(a, resolve_seeds(&h, &Seeds::Sample(10), 99).unwrap());
        assert_eq!(a.len(), 10);
    }

    #[test]
    fn clique_baseline_on_a_graph_matches_direct_sweeps() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let g = random_graph(&mut rng, 15, 0.3);
        let p = BaselineParams::new(ExpansionMode::Clique, 0.5);
        let r = baseline_expansion_clustering(&g, 0, &p).unwrap();
        let mut best = f64::INFINITY;
        for &alpha in &p.alphas {
            let x = graph_ppr_power(&g, &indicator(15, 0), alpha, p.tol, p.max_iter).unwrap();
            best = best.min(crate::sweep::best_sweep(&g, &x, 0.5).unwrap().conductance);
        }
        assert_eq!(r.conductance, best);
    }

    #[test]
    fn star_baseline_on_f1() {
        let r = baseline_expansion_clustering(&f1(), 0, &BaselineParams::new(ExpansionMode::Star, 0.5)).unwrap();
        assert!(r.conductance >= 0.5);
        assert_eq!(r.method, Method::Star);
        assert_eq!(measure(&f1(), &r.set).unwrap().conductance, r.conductance);
    }

    #[test]
    fn clique_budget_is_enforced() {
        let h = Hypergraph::new(1000, vec![Hyperedge::new(1.0, (0..1000).collect::<Vec<_>>())]).unwrap();
        let p = BaselineParams { edge_budget: 1000, ..BaselineParams::new(ExpansionMode::Clique, 0.5) };
        assert_eq!(
            baseline_expansion_clustering(&h, 0, &p).unwrap_err(),
            Error::ExpansionBudgetExceeded { needed: 499_500, budget: 1000 }
        );
    }

    #[test]
    fn bad_parameters_are_rejected() {
        let h = f1();
        assert!(local_clustering(&h, 4, &LocalParams::new(0.5)).is_err());
        assert!(local_clustering(&h, 0, &LocalParams::new(0.6)).is_err());
        assert!(local_clustering(&h, 0, &LocalParams { epsilon: 1.5, ..LocalParams::new(0.5) }).is_err());
        assert!(global_clustering(&h, &LocalParams::new(0.5), &Seeds::List(vec![]), 0).is_err());
    }
}
