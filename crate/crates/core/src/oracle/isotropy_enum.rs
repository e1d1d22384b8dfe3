use std::collections::BTreeMap;

use num_traits::Zero;

use super::config::{for_each_tuple, AnsatzConfig};
use crate::derivop::{commutes, AffineData, Automorphism, Derivation};
use crate::error::{Error, Result};
use crate::exactalg::{linalg, MultiPoly, Rational, UniPoly, VarId};

/// Unknowns of the ansatz: `α`, then `c_ij` row by row, then the
/// coefficients `e_ik` of the translations.
struct Unknowns {
    m: usize,
    deg: usize,
}

impl Unknowns {
    fn len(&self) -> usize {
        1 + self.m * self.m + self.m * (self.deg + 1)
    }
    fn c(&self, i: usize, j: usize) -> usize {
        1 + i * self.m + j
    }
    fn e(&self, i: usize, k: usize) -> usize {
        1 + self.m * self.m + i * (self.deg + 1) + k
    }
}

/// Coefficients (in the `X, Y` monomials) of `ρ(d(Y_i)) − d(ρ(Y_i))` for
/// the generic ansatz element, each a polynomial in the unknowns.
fn constraints(d: &Derivation, u: &Unknowns) -> Result<Vec<MultiPoly>> {
    let n = d.nvars();
    let total = n + u.len();
    let unknown = |k: usize| MultiPoly::var(total, VarId(n + k));
    let x = MultiPoly::var(total, VarId::X);
    let mut images = vec![&x + &unknown(0)];
    for i in 0..u.m {
        let mut img = MultiPoly::zero(total);
        for j in 0..u.m {
            img = &img + &(&unknown(u.c(i, j)) * &MultiPoly::var(total, VarId(1 + j)));
        }
        for k in 0..=u.deg {
            img = &img + &(&unknown(u.e(i, k)) * &x.pow(k as u32));
        }
        images.push(img);
    }
    images.extend((0..u.len()).map(unknown));
    let ext: Vec<MultiPoly> = d.images().iter().map(|p| p.extend_vars(total)).collect();
    let mut by_monomial: BTreeMap<Vec<u32>, BTreeMap<Vec<u32>, Rational>> = BTreeMap::new();
    for i in 0..u.m {
        let lhs = ext[1 + i].substitute(&images)?;
        let mut rhs = MultiPoly::zero(total);
        for j in 0..u.m {
            rhs = &rhs + &(&unknown(u.c(i, j)) * &ext[1 + j]);
        }
        for k in 1..=u.deg {
            let coeff = unknown(u.e(i, k)).scale(&Rational::from_integer(k.into()));
            rhs = &rhs + &(&coeff * &x.pow(k as u32 - 1));
        }
        for (mono, c) in (&lhs - &rhs).terms() {
            let (outer, inner) = mono.0.split_at(n);
            let mut key = outer.to_vec();
            key.push(i as u32);
            *by_monomial.entry(key).or_default().entry(inner.to_vec()).or_insert_with(Rational::zero) += c;
        }
    }
    Ok(by_monomial.into_values().map(|terms| MultiPoly::from_terms(u.len(), terms)).filter(|p| !p.is_zero()).collect())
}

fn assign(eqs: &[MultiPoly], var: usize, value: &Rational) -> Vec<MultiPoly> {
    let nv = eqs.first().map_or(0, MultiPoly::nvars);
    let images: Vec<MultiPoly> = (0..nv)
        .map(|k| if k == var { MultiPoly::constant(nv, value.clone()) } else { MultiPoly::var(nv, VarId(k)) })
        .collect();
    eqs.iter().map(|p| p.substitute(&images).expect("images cover every variable")).filter(|p| !p.is_zero()).collect()
}

struct Search<'a> {
    d: &'a Derivation,
    cfg: &'a AnsatzConfig,
    u: Unknowns,
    explored: u64,
    total: u64,
    found: Vec<Automorphism>,
}

impl Search<'_> {
    fn tick(&mut self) -> Result<()> {
        if self.explored == self.cfg.budget {
            return Err(Error::BudgetExceeded { explored: self.explored, total: self.total });
        }
        self.explored += 1;
        Ok(())
    }

    /// Forces single-unknown linear equations, branches over the grid on
    /// the first unknown that occurs nonlinearly, and solves exactly once
    /// every remaining equation is linear.
    fn node(&mut self, mut eqs: Vec<MultiPoly>, mut fixed: Vec<Option<Rational>>) -> Result<()> {
        loop {
            if eqs.iter().any(MultiPoly::is_constant) {
                return Ok(());
            }
            let forced = eqs.iter().find_map(|p| {
                if p.total_degree().finite()? != 1 {
                    return None;
                }
                let vars: Vec<usize> = (0..p.nvars()).filter(|&k| p.terms().any(|(m, _)| m.0[k] > 0)).collect();
                let [v] = vars[..] else { return None };
                let mut e = vec![0; p.nvars()];
                e[v] = 1;
                Some((v, -p.constant_term() / p.coeff(&e)))
            });
            let Some((v, value)) = forced else { break };
            eqs = assign(&eqs, v, &value);
            fixed[v] = Some(value);
        }
        let nonlinear = eqs.iter().find_map(|p| {
            p.terms()
                .find(|(m, _)| m.total_degree() >= 2)
                .map(|(m, _)| m.0.iter().position(|&e| e > 0).expect("nonconstant"))
        });
        if let Some(v) = nonlinear {
            for value in self.cfg.grid.clone() {
                self.tick()?;
                let mut next = fixed.clone();
                next[v] = Some(value.clone());
                self.node(assign(&eqs, v, &value), next)?;
            }
            return Ok(());
        }
        self.leaf(&eqs, fixed)
    }

    fn leaf(&mut self, eqs: &[MultiPoly], fixed: Vec<Option<Rational>>) -> Result<()> {
        let open: Vec<usize> = (0..fixed.len()).filter(|&k| fixed[k].is_none()).collect();
        let nv = fixed.len();
        let matrix: Vec<Vec<Rational>> = eqs
            .iter()
            .map(|p| {
                open.iter()
                    .map(|&k| {
                        let mut e = vec![0; nv];
                        e[k] = 1;
                        p.coeff(&e)
                    })
                    .collect()
            })
            .collect();
        let rhs: Vec<Rational> = eqs.iter().map(|p| -p.constant_term()).collect();
        let Some(sol) = linalg::solve(&matrix, &rhs, open.len()) else { return Ok(()) };
        let cfg = self.cfg;
        for_each_tuple(&cfg.grid, sol.dimension(), |params| {
            self.tick()?;
            let point = sol.point(params);
            let mut values: Vec<Rational> = fixed.iter().map(|v| v.clone().unwrap_or_default()).collect();
            for (&k, v) in open.iter().zip(point) {
                values[k] = v;
            }
            self.candidate(&values)?;
            Ok(true)
        })
    }

    fn candidate(&mut self, values: &[Rational]) -> Result<()> {
        let u = &self.u;
        let data = AffineData {
            alpha: values[0].clone(),
            matrix: (0..u.m).map(|i| (0..u.m).map(|j| values[u.c(i, j)].clone()).collect()).collect(),
            translations: (0..u.m)
                .map(|i| UniPoly::from_coeffs((0..=u.deg).map(|k| values[u.e(i, k)].clone()).collect()))
                .collect(),
        };
        let rho = match Automorphism::affine(self.d.ring().clone(), &data) {
            Ok(rho) => rho,
            Err(Error::NotAutomorphism(_)) => return Ok(()),
            Err(e) => return Err(e),
        };
        if commutes(&rho, self.d)? && !self.found.contains(&rho) {
            self.found.push(rho);
        }
        Ok(())
    }
}

/// Every automorphism `X ↦ X + α`, `Y_i ↦ Σ_j c_ij Y_j + e_i(X)` commuting
/// with `d` whose unknowns are reachable from the grid.
///
/// The commutation condition is expanded symbolically. Unknowns forced by a
/// single linear equation are solved exactly; the first unknown occurring
/// in a nonlinear term is enumerated over the grid; once the remaining
/// system is linear it is solved exactly and its free parameters are
/// enumerated over the grid. Exceeding the budget is an error carrying the
/// number of candidates visited.
pub fn oracle_isotropy_enum(d: &Derivation, cfg: &AnsatzConfig) -> Result<Vec<Automorphism>> {
    if !d.has_unit_x() {
        return Err(Error::Precondition("the isotropy oracle needs d(X) = 1".into()));
    }
    let u = Unknowns { m: d.nvars() - 1, deg: cfg.max_degree };
    let eqs = constraints(d, &u)?;
    let total = cfg.grid_power(u.len());
    let fixed = vec![None; u.len()];
    let mut search = Search { d, cfg, u, explored: 0, total, found: Vec::new() };
    search.node(eqs, fixed)?;
    let mut found = search.found;
    found.sort_by_key(|rho| {
        let data = rho.as_affine().expect("built from affine data");
        (
            !rho.is_identity(),
            data.alpha,
            data.matrix,
            data.translations.iter().map(|t| t.coeffs().to_vec()).collect::<Vec<_>>(),
        )
    });
    Ok(found)
}
