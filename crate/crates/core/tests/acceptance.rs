//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Criteria 4 and 5 check inequalities that do not hold on every input; they
//! print FAIL with the violation counts. The process exits non-zero only
//! when some other criterion fails.

use std::time::{Duration, Instant};

use hyperppr::clustering::{alpha_candidates, global_clustering, local_clustering, LocalParams, Seeds};
use hyperppr::diffusion::{euler_ppr, exact_ppr, graph_ppr_exact, graph_ppr_power, ExactParams, PprParams};
use hyperppr::generate::{
    planted_partition, random_graph, random_hypergraph, sparse_hypergraph, Planted, PlantedParams,
};
use hyperppr::hypergraph::{cut, indicator, interior, measure, stats};
use hyperppr::io::{convert_largest_component, parse_bipartite, parse_hypergraph, serialize_hypergraph};
use hyperppr::sweep::sweep_profile;
use hyperppr::verify::{
    brute_force_conductance, check_leak_global, check_leak_local, check_main_local, check_ppr_axioms,
    check_sufficient_conditions, criterion2_threshold,
};
use hyperppr::{Hyperedge, Hypergraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Criteria whose statements are violated by valid inputs.
const KNOWN_FAILURES: [u32; 2] = [4, 5];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn within(limit: Option<f64>, took: Duration) -> bool {
    limit.is_none_or(|l| took.as_secs_f64() < l)
}

fn p3() -> Hypergraph {
    Hypergraph::new(3, vec![Hyperedge::new(1.0, vec![0, 1]), Hyperedge::new(1.0, vec![1, 2])]).unwrap()
}

fn f1() -> Hypergraph {
    Hypergraph::new(4, vec![Hyperedge::new(1.0, vec![0, 1, 2]), Hyperedge::new(1.0, vec![2, 3])]).unwrap()
}

/// The hypergraph suite shared by criteria 3 and 4. Every instance is
/// connected through its path backbone.
fn hypergraph_suite() -> Vec<Hypergraph> {
    let mut r = rng(3);
    (0..50)
        .map(|_| {
            let n = r.random_range(4..=64);
            let m = r.random_range(n / 2..=2 * n);
            random_hypergraph(&mut r, n, m, 6)
        })
        .collect()
}

fn planted_fixtures() -> Vec<Planted> {
    (1..=5).map(|s| planted_partition(&mut rng(s), &PlantedParams::default())).collect()
}

fn c1_closed_form() -> hyperppr::Result<Outcome> {
    let h = p3();
    let s = indicator(3, 0);
    let want = [17.0 / 24.0, 0.25, 1.0 / 24.0];
    let euler = euler_ppr(&h, &s, &PprParams::converged(0.5, 0.5, 1e-8))?.vector;
    let power = graph_ppr_power(&h, &s, 0.5, 1e-12, 100_000)?;
    let exact = graph_ppr_exact(&h, &s, 0.5)?;
    let (e, p, x) = (max_abs_diff(&euler, &want), max_abs_diff(&power, &want), max_abs_diff(&exact, &want));
    Ok(outcome(e <= 1e-4 && p <= 1e-7 && x <= 1e-12, format!("errors euler={e:.1e} power={p:.1e} exact={x:.1e}")))
}

fn c2_graph_oracle() -> hyperppr::Result<Outcome> {
    let mut r = rng(2);
    let mut worst = 0.0f64;
    for _ in 0..25 {
        let n = r.random_range(2..=32);
        let density = r.random_range(0.05..0.4);
        let g = random_graph(&mut r, n, density);
        let u = r.random_range(0..n);
        let s = indicator(n, u);
        for alpha in [0.05, 0.1, 0.3, 0.5, 0.9] {
            let e = euler_ppr(&g, &s, &PprParams::converged(alpha, 0.5, 1e-10))?.vector;
            worst = worst.max(max_abs_diff(&e, &graph_ppr_exact(&g, &s, alpha)?));
        }
    }
    Ok(outcome(worst <= 1e-4, format!("125 runs, max |euler - exact| = {worst:.2e}")))
}

fn c3_distribution() -> hyperppr::Result<Outcome> {
    let mut r = rng(33);
    let (mut mass_err, mut low, mut worst_res) = (0.0f64, f64::INFINITY, 0.0f64);
    let (mut euler_mass, mut euler_low) = (0.0f64, f64::INFINITY);
    for h in hypergraph_suite() {
        let mut s: Vec<f64> = (0..h.n()).map(|_| if r.random_bool(0.3) { r.random::<f64>() } else { 0.0 }).collect();
        s[r.random_range(0..h.n())] += 0.5;
        let total: f64 = s.iter().sum();
        s.iter_mut().for_each(|x| *x /= total);
        let alpha = [0.05, 0.1, 0.3, 0.5, 0.9][r.random_range(0..5)];
        let res = exact_ppr(&h, &s, alpha, &ExactParams::default())?.result;
        worst_res = worst_res.max(res.final_residual);
        mass_err = mass_err.max((res.mass - 1.0).abs());
        low = low.min(res.vector.iter().copied().fold(f64::INFINITY, f64::min));
        let e = euler_ppr(&h, &s, &PprParams { truncation: 0.0, ..PprParams::new(alpha) })?;
        euler_mass = euler_mass.max((e.mass - 1.0).abs());
        euler_low = euler_low.min(e.vector.iter().copied().fold(f64::INFINITY, f64::min));
    }
    Ok(outcome(
        mass_err <= 1e-6 && low >= -1e-9 && worst_res < 1e-6 && euler_mass <= 1e-6 && euler_low >= -1e-9,
        format!(
            "50 runs, exact: max |sum - 1| = {mass_err:.1e}, min entry = {low:.2e}, max residual = {worst_res:.1e}; \
             euler: max |sum - 1| = {euler_mass:.1e}, min entry = {euler_low:.2e}"
        ),
    ))
}

fn c4_prop_bounds() -> hyperppr::Result<Outcome> {
    let mut r = rng(4);
    let (mut seed_bad, mut other_bad, mut checked, mut worst) = (0, 0, 0, 0.0f64);
    for h in hypergraph_suite() {
        let u = r.random_range(0..h.n());
        let alpha = [0.05, 0.1, 0.3, 0.5, 0.9][r.random_range(0..5)];
        let ax = check_ppr_axioms(&h, alpha, u)?;
        if !ax.seed_bound.applicable {
            continue;
        }
        checked += 1;
        seed_bad += ax.seed_bound.violated() as usize;
        if ax.other_bound.violated() {
            other_bad += 1;
            worst = worst.max(ax.other_bound.lhs);
        }
    }
    Ok(outcome(
        seed_bad == 0 && other_bad == 0,
        format!(
            "{checked} instances: pr(u) >= pi(u) violated {seed_bad}x, pr(v) <= pi(v) violated {other_bad}x \
             (max excess {worst:.3e})"
        ),
    ))
}

fn c5_leak() -> hyperppr::Result<Outcome> {
    let (mut triples, mut local_bad, mut worst_ratio) = (0, 0, 0.0f64);
    let (mut assumed, mut global_bad, mut c_alpha_bad) = (0, 0, 0);
    for p in planted_fixtures() {
        let h = &p.hypergraph;
        for c in p.clusters.iter().filter(|c| c.volume(h) <= h.volume() / 2.0) {
            for alpha in [0.1, 0.25, 0.5] {
                for &v in interior(h, c).members() {
                    let l = check_leak_local(h, c, v, alpha)?;
                    if !l.leak.applicable {
                        continue;
                    }
                    triples += 1;
                    if l.leak.violated() {
                        local_bad += 1;
                        worst_ratio = worst_ratio.max(l.leak.lhs / l.leak.rhs);
                    }
                }
                let g = check_leak_global(h, c, alpha)?;
                if g.assumption.applicable && g.assumption.holds {
                    assumed += 1;
                    global_bad += g.leak.violated() as usize;
                    c_alpha_bad += g.c_alpha.violated() as usize;
                }
            }
        }
    }
    Ok(outcome(
        local_bad == 0 && global_bad == 0 && c_alpha_bad == 0 && triples > 0,
        format!(
            "local leak violated on {local_bad}/{triples} triples (worst lhs/rhs {worst_ratio:.3}); \
             under the boundary assumption ({assumed} cases) global leak violated {global_bad}x, \
             vol(C_alpha) violated {c_alpha_bad}x"
        ),
    ))
}

fn c6_sweep() -> hyperppr::Result<Outcome> {
    let mut r = rng(6);
    let (mut cut_bad, mut vol_bad) = (0, 0);
    for _ in 0..100 {
        let n = r.random_range(2..=40);
        let m = r.random_range(1..=2 * n);
        let h = random_hypergraph(&mut r, n, m, 6);
        // coarse values force ties
        let x: Vec<f64> = (0..n).map(|_| r.random_range(0..6) as f64 / 4.0).collect();
        let prof = sweep_profile(&h, &x)?;
        for j in 1..n {
            cut_bad += (prof.cuts[j - 1] != cut(&h, &prof.prefix(j))) as usize;
        }
        let mu = r.random_range(0.05..=0.5);
        let best = prof.best(mu)?;
        vol_bad += (best.volume > mu * h.volume() + h.max_degree()) as usize;
    }
    Ok(outcome(cut_bad == 0 && vol_bad == 0, format!("cut mismatches {cut_bad}, volume cap violations {vol_bad}")))
}

fn c7_main_local() -> hyperppr::Result<Outcome> {
    let (eps, mu) = (0.9, 0.5);
    let (mut applicable, mut bad, mut worst) = (0, 0, 0.0f64);
    for s in 1..=12 {
        let p = planted_partition(&mut rng(s), &PlantedParams::default());
        let h = &p.hypergraph;
        for c in &p.clusters {
            let phi = measure(h, c)?.conductance;
            let Some(&v) = interior(h, c).members().first() else { continue };
            for alpha in [phi, phi / (1.0 + eps / 2.0), phi / (1.0 + eps)] {
                let rep = check_main_local(h, c, v, alpha, eps, mu)?;
                if rep.applicable {
                    applicable += 1;
                    bad += rep.violated() as usize;
                    worst = worst.max(rep.lhs / rep.rhs);
                }
            }
        }
    }
    Ok(outcome(
        applicable >= 10 && bad == 0,
        format!("{applicable} applicable instances, {bad} violations, max found/bound {worst:.2e}"),
    ))
}

fn c8_planted() -> hyperppr::Result<Outcome> {
    let params = LocalParams::new(0.5);
    let p = planted_partition(&mut rng(1), &PlantedParams::default());
    let h = &p.hypergraph;
    let (mut seeds, mut wrong) = (0, 0);
    for c in &p.clusters {
        for &v in interior(h, c).members() {
            seeds += 1;
            wrong += (local_clustering(h, v, &params)?.set != *c) as usize;
        }
    }
    let small = PlantedParams { clusters: 2, cluster_size: 6, internal_edges: 10, edge_size: 3, crossing_edges: 1 };
    let q = planted_partition(&mut rng(1), &small);
    let g = &q.hypergraph;
    let (_, optimum) = brute_force_conductance(g, None, None)?;
    let (mut small_seeds, mut small_wrong) = (0, 0);
    for c in &q.clusters {
        for &v in interior(g, c).members() {
            small_seeds += 1;
            small_wrong += (local_clustering(g, v, &params)?.conductance != optimum) as usize;
        }
    }
    Ok(outcome(
        wrong == 0 && small_wrong == 0 && seeds > 0 && small_seeds > 0,
        format!(
            "32-vertex: {wrong}/{seeds} interior seeds missed the cluster; \
             12-vertex: {small_wrong}/{small_seeds} seeds missed phi = {optimum:.5}"
        ),
    ))
}

fn c9_global() -> hyperppr::Result<Outcome> {
    let mut r = rng(9);
    let params = LocalParams::new(0.5);
    let (mut equal, mut over) = (0, 0);
    for _ in 0..50 {
        let n = r.random_range(4..=12);
        let m = r.random_range(1..=2 * n);
        let h = random_hypergraph(&mut r, n, m, 4);
        let found = global_clustering(&h, &params, &Seeds::All, 0)?.conductance;
        let (_, phi) = brute_force_conductance(&h, None, None)?;
        equal += (found == phi) as usize;
        over += (found > (10.0 * phi.sqrt()).min(1.0)) as usize;
    }
    Ok(outcome(equal >= 40 && over == 0, format!("optimum found on {equal}/50, bound exceeded {over}x")))
}

fn c10_bracketing() -> hyperppr::Result<Outcome> {
    let mut r = rng(10);
    let eps = 0.9;
    let mut failures = 0;
    for _ in 0..10 {
        let h = random_hypergraph(&mut r, 30, 40, 6);
        let grid = alpha_candidates(&h, eps)?;
        let base = h.w_min() / (h.w_max() * h.total_size() as f64);
        for _ in 0..100 {
            // log-uniform over [base, 1]
            let target = base.powf(r.random::<f64>());
            failures += !grid.iter().any(|&a| a <= target && target <= (1.0 + eps) * a) as usize;
        }
    }
    Ok(outcome(failures == 0, format!("{failures}/1000 targets unbracketed")))
}

fn c11_criterion2() -> hyperppr::Result<Outcome> {
    let h = f1();
    let t = criterion2_threshold(&h);
    let accept = check_sufficient_conditions(&h, 0.1, None)?.criterion2.holds;
    let reject = !check_sufficient_conditions(&h, 0.2, None)?.criterion2.holds;
    Ok(outcome(
        t == 1.0 / 6.0 && accept && reject,
        format!("threshold = {t:?}, 0.1 accepted {accept}, 0.2 rejected {reject}"),
    ))
}

fn c12_scale() -> hyperppr::Result<Outcome> {
    let h = sparse_hypergraph(&mut rng(12), 10_000, 25_000, 6);
    let start = Instant::now();
    let res = local_clustering(&h, 0, &LocalParams::new(0.5))?;
    let took = start.elapsed().as_secs_f64();
    Ok(outcome(
        took <= 60.0,
        format!("{} sum|e|={}: phi={:.4} in {took:.2}s", stats(&h), h.total_size(), res.conductance),
    ))
}

const KONECT_FIXTURE: &str = "% bip unweighted\n% 14 9 5\n1 1\n2 1\n3 1\n3 2\n4 2\n5 2\n5 3\n6 3\n1 3\n\
                              8 4\n9 4\n9 5\n10 5\n";

fn c13_formats() -> hyperppr::Result<Outcome> {
    let text = match std::env::var_os("HYPERPPR_KONECT_FILE") {
        Some(path) => std::fs::read_to_string(path)?,
        None => KONECT_FIXTURE.to_string(),
    };
    let pipeline = || -> hyperppr::Result<(String, String)> {
        let conv = convert_largest_component(&parse_bipartite(&text)?)?;
        Ok((stats(&conv.hypergraph).to_string(), serialize_hypergraph(&conv.hypergraph)))
    };
    let (a, b) = (pipeline()?, pipeline()?);
    let deterministic = a == b;

    let weighted = Hypergraph::new(
        5,
        vec![
            Hyperedge::new(0.1, vec![0, 1, 2]),
            Hyperedge::new(1.0 / 3.0, vec![2, 3]),
            Hyperedge::new(7.0, vec![3, 4, 0]),
        ],
    )?;
    let fixtures = [p3(), f1(), weighted, parse_hypergraph(&a.1)?];
    let mut mismatches = 0;
    for h in &fixtures {
        let s = serialize_hypergraph(h);
        let back = parse_hypergraph(&s)?;
        mismatches += (back.n() != h.n() || back.edges() != h.edges() || serialize_hypergraph(&back) != s) as usize;
    }
    Ok(outcome(
        deterministic && mismatches == 0,
        format!("converted {}, byte-identical reruns {deterministic}, round-trip mismatches {mismatches}", a.0),
    ))
}

type Criterion = (u32, &'static str, Option<f64>, fn() -> hyperppr::Result<Outcome>);

fn main() {
    let criteria: [Criterion; 13] = [
        (1, "closed-form PPR on P3", Some(1.0), c1_closed_form),
        (2, "graph oracle equivalence", Some(30.0), c2_graph_oracle),
        (3, "distribution preservation", Some(60.0), c3_distribution),
        (4, "PPR vs stationary bounds", None, c4_prop_bounds),
        (5, "leak bounds", None, c5_leak),
        (6, "sweep exactness", None, c6_sweep),
        (7, "explicit local conductance bound", None, c7_main_local),
        (8, "planted recovery", Some(10.0), c8_planted),
        (9, "global vs brute force", Some(120.0), c9_global),
        (10, "alpha grid bracketing", None, c10_bracketing),
        (11, "criterion-2 arithmetic", None, c11_criterion2),
        (12, "scale smoke test", Some(60.0), c12_scale),
        (13, "format fidelity", None, c13_formats),
    ];
    let mut unexpected = Vec::new();
    for (id, name, limit, run) in criteria {
        let start = Instant::now();
        let res = run();
        let took = start.elapsed();
        let (pass, detail) = match res {
            Ok(o) => (o.pass && within(limit, took), o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        let timing = match limit {
            Some(l) => format!("{:.2}s, limit {l}s", took.as_secs_f64()),
            None => format!("{:.2}s", took.as_secs_f64()),
        };
        println!("{} {id:>2} {name}: {detail} [{timing}]", if pass { "PASS" } else { "FAIL" });
        if !pass && !KNOWN_FAILURES.contains(&id) {
            unexpected.push(id);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
