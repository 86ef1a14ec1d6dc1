//! The `hyperppr` command line.
//!
//! Exit codes: 0 success, 1 usage error, 2 input error, 3 computation error.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::clustering::{
    baseline_expansion_clustering, global_clustering, local_clustering, resolve_seeds, BaselineParams, ExpansionMode,
    LocalParams, Seeds,
};
use crate::diffusion::{euler_ppr, exact_ppr, ExactParams, PprParams};
use crate::error::Error;
use crate::generate::{planted_partition, random_hypergraph, PlantedParams};
use crate::hypergraph::{connectivity, indicator, stats, Hypergraph, VertexId, VertexSubset};
use crate::io::{convert_largest_component, format_g17, parse_edges, read_bipartite, serialize_hypergraph};
use crate::sweep::sweep_profile;
use crate::verify::{
    brute_force_conductance, check_continuity, check_leak_global, check_leak_local, check_main_local, check_ppr_axioms,
    check_sufficient_conditions, LemmaReport, BRUTE_FORCE_LIMIT,
};

#[derive(Parser, Debug)]
#[command(name = "hyperppr", version, about = "Personalized PageRank clustering on hypergraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print n, m, average degree and average edge size.
    Stats(Input),
    /// Convert a bipartite edge list into a hypergraph on its largest component.
    Convert {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dump the PPR vector of a seed vertex, one value per line.
    Ppr {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        diffusion: Diffusion,
        #[arg(long, default_value_t = 0.1)]
        alpha: f64,
        #[arg(long)]
        seed_vertex: VertexId,
    },
    /// Dump the sweep profile of a seed vertex's PPR as CSV.
    Sweep {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        diffusion: Diffusion,
        #[arg(long, default_value_t = 0.1)]
        alpha: f64,
        #[arg(long)]
        seed_vertex: VertexId,
    },
    /// Local clustering around one seed vertex.
    Local {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        diffusion: Diffusion,
        #[arg(long, default_value_t = 0.1)]
        mu: f64,
        #[arg(long, default_value_t = 0.9)]
        epsilon: f64,
        #[arg(long)]
        seed_vertex: VertexId,
    },
    /// Global clustering: local clustering with mu = 1/2 from many seeds.
    Global {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        diffusion: Diffusion,
        #[command(flatten)]
        seeds: SeedArgs,
        #[arg(long, default_value_t = 0.9)]
        epsilon: f64,
    },
    /// Clique or star expansion baseline around one seed vertex.
    Baseline {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long, default_value_t = 0.1)]
        mu: f64,
        #[arg(long)]
        seed_vertex: VertexId,
    },
    /// Run the lemma checkers and print one JSON report per line.
    Verify {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 0.1)]
        alpha: f64,
        #[arg(long, default_value_t = 0.9)]
        epsilon: f64,
        #[arg(long, default_value_t = 0.5)]
        mu: f64,
        #[arg(long)]
        seed_vertex: VertexId,
        /// Comma-separated candidate cluster for the leak checks.
        #[arg(long, value_delimiter = ',')]
        cluster: Option<Vec<VertexId>>,
    },
    /// Time local clustering (mu = 1/2) per seed and emit CSV.
    Bench {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        diffusion: Diffusion,
        #[command(flatten)]
        seeds: SeedArgs,
        #[arg(long, default_value_t = 0.9)]
        epsilon: f64,
    },
    /// Write a synthetic hypergraph.
    Gen {
        #[arg(long, value_enum, default_value_t = Model::Planted)]
        model: Model,
        #[arg(long, default_value_t = 0)]
        rng_seed: u64,
        #[arg(long, default_value_t = 2)]
        clusters: usize,
        #[arg(long, default_value_t = 16)]
        cluster_size: usize,
        #[arg(long, default_value_t = 40)]
        internal_edges: usize,
        #[arg(long, default_value_t = 3)]
        edge_size: usize,
        #[arg(long, default_value_t = 1)]
        crossing_edges: usize,
        /// Vertices of the random model.
        #[arg(long, default_value_t = 1000)]
        vertices: usize,
        /// Extra edges of the random model, on top of its path backbone.
        #[arg(long, default_value_t = 2000)]
        edges: usize,
        #[arg(long, default_value_t = 6)]
        max_size: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct Input {
    input: PathBuf,
    /// Remove vertices of degree zero (renumbering the rest) instead of failing.
    #[arg(long)]
    drop_isolated: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct Diffusion {
    #[arg(long, default_value_t = 1.0)]
    dt: f64,
    #[arg(long, default_value_t = 30.0)]
    total_time: f64,
    #[arg(long, default_value_t = 1e-5)]
    theta: f64,
    #[arg(long, default_value_t = 0.0)]
    tie_tol: f64,
    /// Solve the PPR exactly instead of running Euler (ppr and sweep only).
    #[arg(long)]
    exact: bool,
}

impl Diffusion {
    fn params(&self, alpha: f64) -> PprParams {
        PprParams {
            alpha,
            dt: self.dt,
            total_time: self.total_time,
            truncation: self.theta,
            tie_tol: self.tie_tol,
            early_stop: None,
        }
    }
}

#[derive(Args, Debug)]
struct SeedArgs {
    /// Seed vertices; repeat or comma-separate. Defaults to every vertex.
    #[arg(long, value_delimiter = ',')]
    seed_vertex: Vec<VertexId>,
    /// Draw this many distinct seeds uniformly instead.
    #[arg(long, conflicts_with = "seed_vertex")]
    sample: Option<usize>,
    #[arg(long, default_value_t = 0)]
    rng_seed: u64,
}

impl SeedArgs {
    fn seeds(&self) -> Seeds {
        match self.sample {
            Some(k) => Seeds::Sample(k),
            None if self.seed_vertex.is_empty() => Seeds::All,
            None => Seeds::List(self.seed_vertex.clone()),
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Mode {
    Clique,
    Star,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq)]
enum Model {
    Planted,
    Random,
}

struct Failure {
    code: i32,
    message: String,
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure { code: 1, message: e.to_string() }
}

fn input(path: &Path, e: Error) -> Failure {
    Failure { code: 2, message: format!("{}: {e}", path.display()) }
}

/// Parameter and vertex-id problems are the caller's; the rest is numerical.
fn compute(e: Error) -> Failure {
    match e {
        Error::InvalidParameter(_) | Error::VertexOutOfRange { .. } => usage(e),
        Error::Io(_) => Failure { code: 2, message: e.to_string() },
        _ => Failure { code: 3, message: e.to_string() },
    }
}

fn load(inp: &Input) -> Result<Hypergraph, Failure> {
    let fail = |e| input(&inp.input, e);
    let text = std::fs::read_to_string(&inp.input).map_err(|e| fail(e.into()))?;
    let (n, edges) = parse_edges(&text).map_err(fail)?;
    if inp.drop_isolated {
        Ok(Hypergraph::new_dropping_isolated(n, edges).map_err(fail)?.0)
    } else {
        Hypergraph::new(n, edges).map_err(fail)
    }
}

fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| input(p, e.into())),
        None => out.write_all(text.as_bytes()).map_err(|e| Failure { code: 2, message: e.to_string() }),
    }
}

fn warn_if_disconnected(h: &Hypergraph, err: &mut dyn Write) {
    if !connectivity(h).is_connected() {
        let _ = writeln!(err, "warning: hypergraph is not connected");
    }
}

fn ppr_vector(h: &Hypergraph, d: &Diffusion, alpha: f64, v: VertexId) -> Result<Vec<f64>, Failure> {
    h.check_vertex(v).map_err(usage)?;
    let s = indicator(h.n(), v);
    if d.exact {
        Ok(exact_ppr(h, &s, alpha, &ExactParams::default()).map_err(compute)?.result.vector)
    } else {
        Ok(euler_ppr(h, &s, &d.params(alpha)).map_err(compute)?.vector)
    }
}

fn local_params(d: &Diffusion, mu: f64, epsilon: f64) -> Result<LocalParams, Failure> {
    if d.exact {
        return Err(usage("--exact applies to ppr and sweep only"));
    }
    Ok(LocalParams { mu, epsilon, ppr: d.params(1.0), alphas: None })
}

fn execute(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    match cmd {
        Command::Stats(inp) => {
            let h = load(&inp)?;
            emit(out, inp.out.as_deref(), &format!("{}\n", stats(&h)))
        }
        Command::Convert { input: path, out: dest } => {
            let pairs = read_bipartite(&path).map_err(|e| input(&path, e))?;
            let c = convert_largest_component(&pairs).map_err(|e| input(&path, e))?;
            let _ = writeln!(err, "{}", stats(&c.hypergraph));
            emit(out, dest.as_deref(), &serialize_hypergraph(&c.hypergraph))
        }
        Command::Ppr { input: inp, diffusion, alpha, seed_vertex } => {
            let h = load(&inp)?;
            let p = ppr_vector(&h, &diffusion, alpha, seed_vertex)?;
            let mut text = String::with_capacity(24 * p.len());
            for x in p {
                writeln!(text, "{}", format_g17(x)).unwrap();
            }
            emit(out, inp.out.as_deref(), &text)
        }
        Command::Sweep { input: inp, diffusion, alpha, seed_vertex } => {
            let h = load(&inp)?;
            let p = ppr_vector(&h, &diffusion, alpha, seed_vertex)?;
            let prof = sweep_profile(&h, &p).map_err(compute)?;
            emit(out, inp.out.as_deref(), &prof.to_csv())
        }
        Command::Local { input: inp, diffusion, mu, epsilon, seed_vertex } => {
            let h = load(&inp)?;
            warn_if_disconnected(&h, err);
            let r = local_clustering(&h, seed_vertex, &local_params(&diffusion, mu, epsilon)?).map_err(compute)?;
            emit(out, inp.out.as_deref(), &(r.to_json() + "\n"))
        }
        Command::Global { input: inp, diffusion, seeds, epsilon } => {
            let h = load(&inp)?;
            warn_if_disconnected(&h, err);
            let params = local_params(&diffusion, 0.5, epsilon)?;
            let r = global_clustering(&h, &params, &seeds.seeds(), seeds.rng_seed).map_err(compute)?;
            emit(out, inp.out.as_deref(), &(r.to_json() + "\n"))
        }
        Command::Baseline { input: inp, mode, mu, seed_vertex } => {
            let h = load(&inp)?;
            let mode = match mode {
                Mode::Clique => ExpansionMode::Clique,
                Mode::Star => ExpansionMode::Star,
            };
            let r = baseline_expansion_clustering(&h, seed_vertex, &BaselineParams::new(mode, mu)).map_err(compute)?;
            emit(out, inp.out.as_deref(), &(r.to_json() + "\n"))
        }
        Command::Verify { input: inp, alpha, epsilon, mu, seed_vertex, cluster } => {
            let h = load(&inp)?;
            h.check_vertex(seed_vertex).map_err(usage)?;
            let reports = verify_reports(&h, alpha, epsilon, mu, seed_vertex, cluster).map_err(compute)?;
            let mut text = String::new();
            for r in reports {
                text.push_str(&r.to_json());
                text.push('\n');
            }
            emit(out, inp.out.as_deref(), &text)
        }
        Command::Bench { input: inp, diffusion, seeds, epsilon } => {
            let h = load(&inp)?;
            let list = resolve_seeds(&h, &seeds.seeds(), seeds.rng_seed).map_err(compute)?;
            let params = local_params(&diffusion, 0.5, epsilon)?;
            let started = Instant::now();
            let rows: Vec<(VertexId, crate::clustering::ClusterResult, f64)> = list
                .par_iter()
                .map(|&v| {
                    let t = Instant::now();
                    let r = local_clustering(&h, v, &params)?;
                    Ok((v, r, t.elapsed().as_secs_f64() * 1e3))
                })
                .collect::<crate::Result<_>>()
                .map_err(compute)?;
            let mut text = String::from("seed,phi,size,volume,alpha,millis\n");
            let mut best = f64::INFINITY;
            for (v, r, ms) in &rows {
                writeln!(text, "{v},{},{},{},{},{ms:.3}", r.conductance, r.set.len(), r.volume, r.alpha).unwrap();
                best = best.min(r.conductance);
            }
            writeln!(
                text,
                "# seeds={} best_phi={} total_millis={:.3}",
                rows.len(),
                best,
                started.elapsed().as_secs_f64() * 1e3
            )
            .unwrap();
            emit(out, inp.out.as_deref(), &text)
        }
        Command::Gen {
            model,
            rng_seed,
            clusters,
            cluster_size,
            internal_edges,
            edge_size,
            crossing_edges,
            vertices,
            edges,
            max_size,
            out: dest,
        } => {
            let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
            let h = match model {
                Model::Planted => {
                    if clusters == 0 || cluster_size < edge_size || edge_size < 2 {
                        return Err(usage("need clusters ≥ 1 and 2 ≤ edge-size ≤ cluster-size"));
                    }
                    let p = PlantedParams { clusters, cluster_size, internal_edges, edge_size, crossing_edges };
                    planted_partition(&mut rng, &p).hypergraph
                }
                Model::Random => {
                    if vertices < 2 || max_size < 2 {
                        return Err(usage("need vertices ≥ 2 and max-size ≥ 2"));
                    }
                    random_hypergraph(&mut rng, vertices, edges, max_size)
                }
            };
            emit(out, dest.as_deref(), &serialize_hypergraph(&h))
        }
    }
}

fn verify_reports(
    h: &Hypergraph,
    alpha: f64,
    epsilon: f64,
    mu: f64,
    v: VertexId,
    cluster: Option<Vec<VertexId>>,
) -> crate::Result<Vec<LemmaReport>> {
    let mut reports: Vec<LemmaReport> = check_ppr_axioms(h, alpha, v)?.reports().into_iter().cloned().collect();
    let suff = check_sufficient_conditions(h, alpha, None)?;
    reports.push(suff.criterion1);
    reports.push(suff.criterion2);
    let hi = (alpha + 1e-3).min(1.0);
    reports.push(check_continuity(h, &indicator(h.n(), v), &[hi - 1e-3, hi])?);
    if let Some(c) = cluster {
        let c = VertexSubset::new(h.n(), c)?;
        let local = check_leak_local(h, &c, v, alpha)?;
        reports.push(local.leak);
        reports.push(local.ppr_cuts);
        reports.extend(check_leak_global(h, &c, alpha)?.reports().into_iter().cloned());
        reports.push(check_main_local(h, &c, v, alpha, epsilon, mu)?);
    }
    if h.n() <= BRUTE_FORCE_LIMIT {
        let (set, phi) = brute_force_conductance(h, None, None)?;
        reports.push(LemmaReport {
            name: "brute-force-conductance",
            applicable: true,
            lhs: phi,
            rhs: phi,
            slack: 0.0,
            holds: true,
            witness: Some(set.members().to_vec()),
            note: None,
        });
    }
    Ok(reports)
}

/// Runs the command line `argv` (program name first), writing results to
/// `out` and diagnostics to `err`. Returns the exit code.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

/// [`run_with`] on the process's standard streams.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}
