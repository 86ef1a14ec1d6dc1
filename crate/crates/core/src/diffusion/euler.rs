use crate::error::{Error, Result};
use crate::exact_sum::exact_sum;
use crate::hypergraph::Hypergraph;
use crate::laplacian::accumulate;

use super::{residual, PprParams, PprResult};

/// Forward Euler on dρ/dt = β(s − ρ) − (1−β)𝓛_H(ρ) from ρ₀ = s.
///
/// Runs ⌈T/Δ⌉ steps, or fewer when `early_stop` is set and the residual
/// falls below it. Steps with Δ ≤ 1 keep ρ non-negative for non-negative s.
pub fn euler_ppr(h: &Hypergraph, s: &[f64], p: &PprParams) -> Result<PprResult> {
    h.check_len(s.len())?;
    p.validate()?;
    if s.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidParameter("seed vector is not finite".into()));
    }
    let b = p.beta();
    let n = h.n();
    let mut rho = s.to_vec();
    let mut z = vec![0.0; n];
    let mut lap = vec![0.0; n];
    let mut iterations = 0;
    for step in 0..p.steps() {
        for v in 0..n {
            z[v] = rho[v] / h.degree(v);
        }
        lap.fill(0.0);
        accumulate(h, &z, p.tie_tol, &mut lap);
        if let Some(tol) = p.early_stop {
            let r: f64 = (0..n).map(|v| (b * (s[v] - rho[v]) - (1.0 - b) * lap[v]).abs()).sum();
            if r < tol {
                break;
            }
        }
        for v in 0..n {
            let mut x = rho[v] + p.dt * (b * (s[v] - rho[v]) - (1.0 - b) * lap[v]);
            if x.abs() < p.truncation {
                x = 0.0;
            }
            if !x.is_finite() {
                return Err(Error::NonFiniteState(step + 1));
            }
            rho[v] = x;
        }
        iterations = step + 1;
    }
    let final_residual = residual(h, &rho, s, p.alpha, p.tie_tol);
    let mass = exact_sum(rho.iter().copied());
    Ok(PprResult { vector: rho, iterations, final_residual, mass })
}
