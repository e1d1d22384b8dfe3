use super::config::{for_each_tuple, AnsatzConfig};
use crate::derivop::{ideal_stable, Derivation, IdealWitness};
use crate::error::{Error, Result};
use crate::exactalg::{MultiPoly, UniPoly, VarId};

/// Looks for a `d`-stable principal ideal `(g)` with
/// `g = Y_k + Σ_(j>k) λ_j Y_j + t(X)`, all coefficients from the grid and
/// `deg t ≤ max_degree`. Candidates are visited by `k`, then
/// lexicographically in `(λ, t)` over the sorted grid; the first stable one
/// is returned. `None` only means nothing was found in this range.
pub fn oracle_ideal_search(d: &Derivation, cfg: &AnsatzConfig) -> Result<Option<IdealWitness>> {
    let n = d.nvars();
    let tail_len = cfg.max_degree + 1;
    let total = (1..n)
        .fold(0u64, |acc, k| acc.saturating_add(cfg.grid_power(n - 1 - k).saturating_mul(cfg.grid_power(tail_len))));
    let mut explored = 0u64;
    let mut found = None;
    for k in 1..n {
        let free = n - 1 - k;
        for_each_tuple(&cfg.grid, free + tail_len, |tuple| {
            if explored == cfg.budget {
                return Err(Error::BudgetExceeded { explored, total });
            }
            explored += 1;
            let (lambdas, tail) = tuple.split_at(free);
            let mut g = MultiPoly::var(n, VarId(k));
            for (j, l) in lambdas.iter().enumerate() {
                g = &g + &MultiPoly::var(n, VarId(k + 1 + j)).scale(l);
            }
            if n > 0 {
                g = &g + &MultiPoly::from_uni(n, VarId::X, &UniPoly::from_coeffs(tail.to_vec()));
            }
            if let Some(w) = ideal_stable(d, &g)? {
                found = Some(w);
                return Ok(false);
            }
            Ok(true)
        })?;
        if found.is_some() {
            break;
        }
    }
    Ok(found)
}
