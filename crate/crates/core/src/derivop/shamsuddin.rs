use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::exactalg::{MultiPoly, Ring, UniPoly, VarId};

use super::Derivation;

/// One canonical component: the variables `vars` all satisfy
/// `d(vars[j]) = a·vars[j] + bs[j]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub a: UniPoly,
    pub bs: Vec<UniPoly>,
    pub vars: Vec<VarId>,
}

/// A Shamsuddin derivation `∂_X + Σ (a_i Y_{i,j} + b_{i,j}) ∂_{i,j}` grouped
/// by distinct `a_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShamsuddinForm {
    ring: Ring,
    components: Vec<Component>,
}

/// Components are ordered by the degree of `a`, then by its coefficients
/// from the constant term upwards.
fn component_order(a: &UniPoly, b: &UniPoly) -> Ordering {
    a.degree().cmp(&b.degree()).then_with(|| a.coeffs().cmp(b.coeffs()))
}

impl ShamsuddinForm {
    pub fn new(ring: Ring, mut components: Vec<Component>) -> Result<Self> {
        let mut seen: Vec<VarId> = Vec::new();
        for (i, c) in components.iter().enumerate() {
            if c.bs.is_empty() || c.bs.len() != c.vars.len() {
                return Err(Error::Precondition(format!("component {i} needs one b polynomial per variable")));
            }
            if components[..i].iter().any(|o| o.a == c.a) {
                return Err(Error::Precondition("canonical components need pairwise distinct a polynomials".into()));
            }
            for &v in &c.vars {
                if v == VarId::X || v.0 >= ring.len() || seen.contains(&v) {
                    return Err(Error::Precondition(format!("variable #{} is not a fresh Y variable", v.0)));
                }
                seen.push(v);
            }
        }
        if seen.len() + 1 != ring.len() {
            return Err(Error::Precondition("every Y variable must belong to a component".into()));
        }
        components.sort_by(|p, q| component_order(&p.a, &q.a));
        Ok(ShamsuddinForm { ring, components })
    }

    /// Builds a form over fresh variables `Y1, Y2, …` from `(a_i, [b_{i,j}])`.
    pub fn from_parts(parts: Vec<(UniPoly, Vec<UniPoly>)>) -> Result<Self> {
        let total: usize = parts.iter().map(|(_, bs)| bs.len()).sum();
        let mut names = vec!["X".to_string()];
        names.extend((1..=total).map(|k| format!("Y{k}")));
        let ring = Ring::new(names)?;
        let mut next = 1;
        let components = parts
            .into_iter()
            .map(|(a, bs)| {
                let vars = (next..next + bs.len()).map(VarId).collect();
                next += bs.len();
                Component { a, bs, vars }
            })
            .collect();
        Self::new(ring, components)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    /// Number of canonical components.
    pub fn s(&self) -> usize {
        self.components.len()
    }

    pub fn to_derivation(&self) -> Derivation {
        let n = self.ring.len();
        let mut images = vec![MultiPoly::zero(n); n];
        images[0] = MultiPoly::one(n);
        for c in &self.components {
            let a = MultiPoly::from_uni(n, VarId::X, &c.a);
            for (b, &v) in c.bs.iter().zip(&c.vars) {
                images[v.0] = &(&a * &MultiPoly::var(n, v)) + &MultiPoly::from_uni(n, VarId::X, b);
            }
        }
        Derivation::new(self.ring.clone(), images).expect("images cover the ring")
    }
}

/// Recognizes `d(X) = 1`, `d(Y_i) = a_i(X) Y_i + b_i(X)` and groups the
/// variables sharing the same `a_i`. `None` when `d` has another shape.
pub fn recognize_shamsuddin(d: &Derivation) -> Option<ShamsuddinForm> {
    if !d.has_unit_x() {
        return None;
    }
    let n = d.nvars();
    let mut components: Vec<Component> = Vec::new();
    for y in d.ring().y_vars() {
        let image = d.image(y);
        if !image.depends_only_on(&[VarId::X, y]) || image.degree_in(y) > 1.into() {
            return None;
        }
        let mut cs = image.coeffs_in(y).into_iter();
        let b = cs.next().unwrap_or_else(|| MultiPoly::zero(n)).to_uni(VarId::X)?;
        let a = cs.next().unwrap_or_else(|| MultiPoly::zero(n)).to_uni(VarId::X)?;
        match components.iter_mut().find(|c| c.a == a) {
            Some(c) => {
                c.bs.push(b);
                c.vars.push(y);
            }
            None => components.push(Component { a, bs: vec![b], vars: vec![y] }),
        }
    }
    Some(ShamsuddinForm::new(d.ring().clone(), components).expect("grouping is canonical"))
}
