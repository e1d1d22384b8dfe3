use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::{Completeness, IsotropyResult};
use crate::derivop::{commutes, AffineData, Automorphism, Derivation};
use crate::error::{Error, Result};
use crate::exactalg::linalg::{self, AffineSolution, Rref};
use crate::exactalg::{rat, rational_roots, MultiPoly, RatFunc, Rational, Ring, UniPoly, VarId};

/// Which translations `X ↦ X + α` a branch covers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlphaChoice {
    Fixed(Rational),
    /// Every α except the listed exceptional values (handled by their own
    /// `Fixed` branches). Coefficients of the branch depend on α.
    Generic {
        excluded: Vec<Rational>,
    },
}

/// `Σ coeffs[u]·unknown[u] = rhs`, coefficients rational in α.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearEquation {
    pub coeffs: Vec<RatFunc>,
    pub rhs: RatFunc,
}

impl LinearEquation {
    pub fn display(&self, unknowns: &[String]) -> String {
        let mut lhs = String::new();
        for (c, name) in self.coeffs.iter().zip(unknowns) {
            if c.is_zero() {
                continue;
            }
            let (neg, body) = signed_text(c);
            let term = if body == "1" { name.clone() } else { format!("{body}*{name}") };
            match (lhs.is_empty(), neg) {
                (true, true) => lhs.push('-'),
                (true, false) => {}
                (false, true) => lhs.push_str(" - "),
                (false, false) => lhs.push_str(" + "),
            }
            lhs.push_str(&term);
        }
        if lhs.is_empty() {
            lhs.push('0');
        }
        format!("{lhs} = {}", self.rhs.display_in("alpha"))
    }
}

fn signed_text(c: &RatFunc) -> (bool, String) {
    if c.is_constant() {
        let v = c.eval(&Rational::zero()).expect("constant");
        let neg = v < Rational::zero();
        return (neg, (if neg { -v } else { v }).to_string());
    }
    (false, format!("({})", c.display_in("alpha")))
}

/// One piece of the solution set: a fixed or generic α together with the
/// linear conditions on the matrix entries and translation coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilyBranch {
    pub alpha: AlphaChoice,
    /// Reduced row echelon form of the conditions.
    pub equations: Vec<LinearEquation>,
    pub solution: AffineSolution<RatFunc>,
    layout: Layout,
    ring: Ring,
}

impl FamilyBranch {
    /// A branch with every unknown determined: `values` lists the `c_ij`
    /// row by row, then the translation coefficients, each a function of α.
    pub(super) fn determined(ring: Ring, deg_bound: usize, alpha: AlphaChoice, values: Vec<RatFunc>) -> Self {
        let layout = Layout { m: ring.len() - 1, deg_bound };
        assert_eq!(values.len(), layout.len(), "one value per unknown");
        let equations = values
            .iter()
            .enumerate()
            .map(|(u, v)| {
                let mut coeffs = vec![RatFunc::zero(); values.len()];
                coeffs[u] = RatFunc::one();
                LinearEquation { coeffs, rhs: v.clone() }
            })
            .collect();
        let solution = AffineSolution { particular: values, free: vec![], basis: vec![] };
        FamilyBranch { alpha, equations, solution, layout, ring }
    }

    /// Number of free unknowns (not counting a generic α).
    pub fn dimension(&self) -> usize {
        self.solution.dimension()
    }

    /// Whether the branch has infinitely many members.
    pub fn is_infinite(&self) -> bool {
        self.dimension() > 0 || matches!(self.alpha, AlphaChoice::Generic { .. })
    }

    /// The affine data at the given free parameters; a generic branch also
    /// needs a value for α. `None` if α is exceptional.
    pub fn data_at(&self, params: &[Rational], alpha: Option<&Rational>) -> Result<Option<AffineData>> {
        if params.len() != self.dimension() {
            return Err(Error::Precondition(format!(
                "branch has {} free parameters, got {}",
                self.dimension(),
                params.len()
            )));
        }
        let alpha = match (&self.alpha, alpha) {
            (AlphaChoice::Fixed(a), _) => a.clone(),
            (AlphaChoice::Generic { excluded }, Some(a)) => {
                if excluded.contains(a) {
                    return Ok(None);
                }
                a.clone()
            }
            (AlphaChoice::Generic { .. }, None) => {
                return Err(Error::Precondition("a generic branch needs a value for alpha".into()))
            }
        };
        let params: Vec<RatFunc> = params.iter().cloned().map(RatFunc::constant).collect();
        let point = self.solution.point(&params);
        let values: Option<Vec<Rational>> = point.iter().map(|v| v.eval(&alpha)).collect();
        let Some(values) = values else { return Ok(None) };
        Ok(Some(self.layout.data(&alpha, &values)))
    }

    /// The automorphism at the given parameters; `None` if the linear part
    /// is singular there (or α exceptional).
    pub fn member(&self, params: &[Rational], alpha: Option<&Rational>) -> Result<Option<Automorphism>> {
        let Some(data) = self.data_at(params, alpha)? else { return Ok(None) };
        match Automorphism::affine(self.ring.clone(), &data) {
            Ok(rho) => Ok(Some(rho)),
            Err(Error::NotAutomorphism(_)) => Ok(None),
            Err(e) => Err(e),
        }
    }

    /// Deterministically walks small integer parameters until it finds a
    /// member.
    pub fn some_member(&self) -> Result<Option<Automorphism>> {
        let alphas: Vec<Rational> = match &self.alpha {
            AlphaChoice::Fixed(a) => vec![a.clone()],
            AlphaChoice::Generic { .. } => (0..8).map(rat).collect(),
        };
        let dim = self.dimension();
        for a in &alphas {
            for radius in 0..4i64 {
                let grid: Vec<Rational> = (-radius..=radius).map(rat).collect();
                let mut idx = vec![0usize; dim];
                loop {
                    let params: Vec<Rational> = idx.iter().map(|&i| grid[i].clone()).collect();
                    if let Some(rho) = self.member(&params, Some(a))? {
                        return Ok(Some(rho));
                    }
                    if !advance(&mut idx, grid.len()) {
                        break;
                    }
                }
            }
        }
        Ok(None)
    }
}

fn advance(idx: &mut [usize], base: usize) -> bool {
    for slot in idx.iter_mut().rev() {
        *slot += 1;
        if *slot < base {
            return true;
        }
        *slot = 0;
    }
    false
}

/// An infinite solution set of the affine ansatz.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineFamily {
    pub ring: Ring,
    pub deg_bound: usize,
    /// Names of the unknowns: `c(Yi,Yj)` is the coefficient of `Yj` in
    /// `ρ(Yi)`, and `e(Yi,k)` the coefficient of `X^k` in its translation.
    pub unknowns: Vec<String>,
    /// `det(C) ≠ 0`, written in the unknown names.
    pub determinant: MultiPoly,
    pub branches: Vec<FamilyBranch>,
    pub completeness: Completeness,
}

impl AffineFamily {
    pub(super) fn new(ring: Ring, deg_bound: usize, branches: Vec<FamilyBranch>, completeness: Completeness) -> Self {
        let layout = Layout { m: ring.len() - 1, deg_bound };
        let unknowns = layout.names(&ring);
        let nvars = unknowns.len();
        let cmat: Vec<Vec<MultiPoly>> = (0..layout.m)
            .map(|i| (0..layout.m).map(|j| MultiPoly::var(nvars, VarId(layout.c(i, j)))).collect())
            .collect();
        let determinant = linalg::determinant_poly(&cmat, nvars.max(1));
        AffineFamily { ring, deg_bound, unknowns, determinant, branches, completeness }
    }

    pub fn determinant_text(&self) -> String {
        if self.determinant.is_constant() {
            return format!("det C = {}", self.determinant.display_with(&self.unknowns));
        }
        format!("{} != 0", self.determinant.display_with(&self.unknowns))
    }
}

/// Index bookkeeping for the unknowns `c_ij` followed by the `e_ik`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Layout {
    m: usize,
    deg_bound: usize,
}

impl Layout {
    fn c(&self, i: usize, j: usize) -> usize {
        i * self.m + j
    }

    fn e(&self, i: usize, k: usize) -> usize {
        self.m * self.m + i * (self.deg_bound + 1) + k
    }

    fn len(&self) -> usize {
        self.m * self.m + self.m * (self.deg_bound + 1)
    }

    fn names(&self, ring: &Ring) -> Vec<String> {
        let y: Vec<&str> = ring.y_vars().map(|v| ring.name(v)).collect();
        let mut names = Vec::with_capacity(self.len());
        for a in &y[..self.m] {
            for b in &y[..self.m] {
                names.push(format!("c({a},{b})"));
            }
        }
        for a in &y[..self.m] {
            for k in 0..=self.deg_bound {
                names.push(format!("e({a},{k})"));
            }
        }
        names
    }

    fn data(&self, alpha: &Rational, values: &[Rational]) -> AffineData {
        AffineData {
            alpha: alpha.clone(),
            matrix: (0..self.m).map(|i| (0..self.m).map(|j| values[self.c(i, j)].clone()).collect()).collect(),
            translations: (0..self.m)
                .map(|i| UniPoly::from_coeffs((0..=self.deg_bound).map(|k| values[self.e(i, k)].clone()).collect()))
                .collect(),
        }
    }
}

/// Coefficients of `p(X + α)` in `X`, each a polynomial in α.
fn shift_symbolic(p: &UniPoly) -> Vec<UniPoly> {
    let n = p.coeffs().len();
    let mut out = vec![UniPoly::zero(); n];
    for (deg, c) in p.coeffs().iter().enumerate() {
        let mut binom = Rational::one();
        for q in (0..=deg).rev() {
            // c·C(deg, q)·α^(deg−q)·X^q
            out[q] = &out[q] + &UniPoly::monomial(c * &binom, deg - q);
            binom = binom * rat(q as i64) / rat((deg - q + 1) as i64);
        }
    }
    out
}

/// Linear system in the unknowns with coefficients in ℚ[α].
struct System {
    unknowns: usize,
    rows: BTreeMap<(usize, usize, usize), (Vec<UniPoly>, UniPoly)>,
}

impl System {
    fn row(&mut self, key: (usize, usize, usize)) -> &mut (Vec<UniPoly>, UniPoly) {
        let n = self.unknowns;
        self.rows.entry(key).or_insert_with(|| (vec![UniPoly::zero(); n], UniPoly::zero()))
    }

    fn add(&mut self, key: (usize, usize, usize), unknown: usize, coeff: &UniPoly) {
        let row = self.row(key);
        row.0[unknown] = &row.0[unknown] + coeff;
    }

    fn add_rhs(&mut self, key: (usize, usize, usize), value: &UniPoly) {
        let row = self.row(key);
        row.1 = &row.1 + value;
    }

    fn augmented(&self, at: Option<&Rational>) -> Vec<Vec<RatFunc>> {
        let conv = |p: &UniPoly| match at {
            Some(a) => RatFunc::constant(p.eval(a)),
            None => RatFunc::from_poly(p.clone()),
        };
        self.rows
            .values()
            .map(|(coeffs, rhs)| {
                let mut r: Vec<RatFunc> = coeffs.iter().map(conv).collect();
                r.push(conv(rhs));
                r
            })
            .collect()
    }
}

/// Coefficient matching for `ρ(d(Y_i)) = d(ρ(Y_i))` where
/// `d(Y_i) = Σ_j A_ij Y_j + B_i` and `ρ(Y_i) = Σ_j c_ij Y_j + e_i`:
///
/// * `Y_k`: `Σ_j A_ij(X+α) c_jk − Σ_j c_ij A_jk(X) = 0`
/// * free part: `Σ_j A_ij(X+α) e_j − e_i' − Σ_j c_ij B_j = −B_i(X+α)`
#[allow(clippy::needless_range_loop)]
fn build_system(a: &[Vec<UniPoly>], b: &[UniPoly], layout: Layout) -> System {
    let m = layout.m;
    let mut sys = System { unknowns: layout.len(), rows: BTreeMap::new() };
    let shifted: Vec<Vec<Vec<UniPoly>>> = a.iter().map(|row| row.iter().map(shift_symbolic).collect()).collect();
    for i in 0..m {
        for k in 0..m {
            for j in 0..m {
                for (q, s) in shifted[i][j].iter().enumerate() {
                    sys.add((i, k, q), layout.c(j, k), s);
                }
                for (q, c) in a[j][k].coeffs().iter().enumerate() {
                    sys.add((i, k, q), layout.c(i, j), &UniPoly::constant(-c));
                }
            }
        }
        let free = m;
        for j in 0..m {
            for (q, s) in shifted[i][j].iter().enumerate() {
                for t in 0..=layout.deg_bound {
                    sys.add((i, free, q + t), layout.e(j, t), s);
                }
            }
            for (q, c) in b[j].coeffs().iter().enumerate() {
                sys.add((i, free, q), layout.c(i, j), &UniPoly::constant(-c));
            }
        }
        for t in 1..=layout.deg_bound {
            sys.add((i, free, t - 1), layout.e(i, t), &UniPoly::constant(rat(-(t as i64))));
        }
        for (q, s) in shift_symbolic(&b[i]).iter().enumerate() {
            sys.add_rhs((i, free, q), &-s);
        }
    }
    sys
}

/// Whether `det C` vanishes identically on the solution set. Works in the
/// polynomial ring `ℚ[α, t_1 … t_f]` after clearing α-denominators.
fn determinant_vanishes(sol: &AffineSolution<RatFunc>, layout: Layout) -> bool {
    let m = layout.m;
    let nvars = 1 + sol.dimension();
    let mut lcm = UniPoly::one();
    for i in 0..m {
        for j in 0..m {
            let u = layout.c(i, j);
            for v in std::iter::once(&sol.particular[u]).chain(sol.basis.iter().map(|dir| &dir[u])) {
                let g = lcm.gcd(v.den());
                lcm = (&lcm * v.den()).div_exact(&g).expect("gcd divides").expect("exact");
            }
        }
    }
    let lift = |v: &RatFunc| -> MultiPoly {
        let scaled = (v.num() * &lcm).div_exact(v.den()).expect("nonzero").expect("lcm is a multiple");
        MultiPoly::from_uni(nvars, VarId(0), &scaled)
    };
    let matrix: Vec<Vec<MultiPoly>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let u = layout.c(i, j);
                    sol.basis.iter().enumerate().fold(lift(&sol.particular[u]), |acc, (f, dir)| {
                        &acc + &(&lift(&dir[u]) * &MultiPoly::var(nvars, VarId(f + 1)))
                    })
                })
                .collect()
        })
        .collect();
    linalg::determinant_poly(&matrix, nvars).is_zero()
}

fn rref_equations(rr: &Rref<RatFunc>, ncols: usize) -> Vec<LinearEquation> {
    rr.rows[..rr.rank()]
        .iter()
        .map(|row| LinearEquation { coeffs: row[..ncols].to_vec(), rhs: row[ncols].clone() })
        .collect()
}

fn collect_roots(p: &UniPoly, into: &mut Vec<Rational>) -> Result<()> {
    if !p.is_constant() {
        into.extend(rational_roots(p)?);
    }
    Ok(())
}

/// Finds every isotropy element of `d` of the form `X ↦ X + α`,
/// `Y_i ↦ Σ_j c_ij Y_j + e_i(X)` with `deg e_i ≤ deg_bound`.
///
/// Requires `d(X) = 1` and every `d(Y_i)` affine in the `Y` variables. The
/// conditions are linear in the `c_ij` and the coefficients of the `e_i`
/// with coefficients polynomial in α; they are solved over ℚ(α), and the
/// finitely many rational α where a pivot degenerates are solved separately.
/// Non-affine isotropy elements are outside the ansatz, so the result is
/// always labelled ansatz-only.
pub fn affine_isotropy_search(d: &Derivation, deg_bound: usize) -> Result<IsotropyResult> {
    if !d.has_unit_x() {
        return Err(Error::Precondition("the affine search needs d(X) = 1".into()));
    }
    let (a, b) = d
        .linear_parts()
        .ok_or_else(|| Error::Unsupported("the affine search needs every d(Y) affine in the Y variables".into()))?;
    let ring = d.ring().clone();
    let layout = Layout { m: ring.len() - 1, deg_bound };
    let ncols = layout.len();
    let sys = build_system(&a, &b, layout);

    let generic = linalg::rref(sys.augmented(None), ncols);
    let mut special = Vec::new();
    for pv in &generic.pivot_values {
        collect_roots(pv.num(), &mut special)?;
        collect_roots(pv.den(), &mut special)?;
    }
    for row in &generic.rows {
        for v in row {
            collect_roots(v.den(), &mut special)?;
        }
    }
    for row in &generic.rows[generic.rank()..] {
        if !row[ncols].is_zero() {
            collect_roots(row[ncols].num(), &mut special)?;
        }
    }
    special.sort();
    special.dedup();

    let mut branches = Vec::new();
    if let Some(sol) = linalg::solution_from_rref(&generic, ncols) {
        if !determinant_vanishes(&sol, layout) {
            branches.push(FamilyBranch {
                alpha: AlphaChoice::Generic { excluded: special.clone() },
                equations: rref_equations(&generic, ncols),
                solution: sol,
                layout,
                ring: ring.clone(),
            });
        }
    }
    for alpha in &special {
        let rr = linalg::rref(sys.augmented(Some(alpha)), ncols);
        let Some(sol) = linalg::solution_from_rref(&rr, ncols) else { continue };
        if determinant_vanishes(&sol, layout) {
            continue;
        }
        branches.push(FamilyBranch {
            alpha: AlphaChoice::Fixed(alpha.clone()),
            equations: rref_equations(&rr, ncols),
            solution: sol,
            layout,
            ring: ring.clone(),
        });
    }

    for branch in &branches {
        let rho = branch
            .some_member()?
            .ok_or_else(|| Error::InvariantViolation("nonempty branch without a sampled member".into()))?;
        if !commutes(&rho, d)? {
            return Err(Error::InvariantViolation("a family member does not commute with d".into()));
        }
    }

    if branches.iter().any(FamilyBranch::is_infinite) {
        return Ok(IsotropyResult::Family(AffineFamily::new(ring, deg_bound, branches, Completeness::AnsatzOnly)));
    }

    let mut elements = Vec::new();
    for branch in &branches {
        if let Some(rho) = branch.member(&[], None)? {
            elements.push(rho);
        }
    }
    sort_elements(&mut elements);
    Ok(IsotropyResult::Finite { elements, completeness: Completeness::AnsatzOnly })
}

/// Identity first, then by `(α, matrix, translation coefficients)`.
pub(crate) fn sort_elements(elements: &mut [Automorphism]) {
    let key = |rho: &Automorphism| {
        let data = rho.as_affine();
        (
            !rho.is_identity(),
            data.map(|d| (d.alpha, d.matrix, d.translations.iter().map(|t| t.coeffs().to_vec()).collect::<Vec<_>>())),
        )
    };
    elements.sort_by_key(key);
}
