use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::unipoly::write_term;
use super::{Degree, Rational, Ring, UniPoly, VarId};
use crate::error::{Error, Result};

/// Exponent vector, one entry per ring variable.
///
/// Ordered by total degree, then by exponents in *descending* lexicographic
/// order, so a term map iterates `1, X, Y, X^2, X*Y, Y^2, …`. That iteration
/// order is the canonical printing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn lex_cmp(&self, other: &Monomial) -> Ordering {
        self.0.cmp(&other.0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree().cmp(&other.total_degree()).then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial over ℚ in a fixed number of variables.
///
/// Zero coefficients are never stored, so derived equality is polynomial
/// equality. Arithmetic operators panic when the operands have different
/// variable counts; the `checked_*` methods report [`Error::RingMismatch`]
/// instead.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn var(nvars: usize, v: VarId) -> Self {
        assert!(v.0 < nvars, "variable {} outside a ring of {nvars} variables", v.0);
        let mut exps = vec![0; nvars];
        exps[v.0] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(Monomial(exps), Rational::one());
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, summing
    /// repeated monomials.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, Rational)>) -> Self {
        let mut p = Self::zero(nvars);
        for (exps, c) in terms {
            assert_eq!(exps.len(), nvars, "exponent vector length");
            p.add_term(Monomial(exps), c);
        }
        p
    }

    /// Embeds a univariate polynomial in `v`.
    pub fn from_uni(nvars: usize, v: VarId, u: &UniPoly) -> Self {
        Self::from_terms(
            nvars,
            u.coeffs().iter().enumerate().map(|(i, c)| {
                let mut exps = vec![0; nvars];
                exps[v.0] = i as u32;
                (exps, c.clone())
            }),
        )
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.total_degree() == 0)
    }

    pub fn coeff(&self, exps: &[u32]) -> Rational {
        self.terms.get(&Monomial(exps.to_vec())).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&vec![0; self.nvars])
    }

    pub fn total_degree(&self) -> Degree {
        self.terms.keys().map(|m| m.total_degree() as usize).max().map_or(Degree::NegInfinity, Degree::Finite)
    }

    /// Largest exponent of `v` across the terms; `-inf` for the zero polynomial.
    pub fn degree_in(&self, v: VarId) -> Degree {
        self.terms.keys().map(|m| m.0[v.0] as usize).max().map_or(Degree::NegInfinity, Degree::Finite)
    }

    /// Total degree in the given subset of variables.
    pub fn degree_in_vars(&self, vars: &[VarId]) -> Degree {
        self.terms
            .keys()
            .map(|m| vars.iter().map(|v| m.0[v.0] as usize).sum())
            .max()
            .map_or(Degree::NegInfinity, Degree::Finite)
    }

    /// True when every term only involves variables in `vars`.
    pub fn depends_only_on(&self, vars: &[VarId]) -> bool {
        self.terms.keys().all(|m| m.0.iter().enumerate().all(|(i, &e)| e == 0 || vars.contains(&VarId(i))))
    }

    fn check_same_ring(&self, other: &MultiPoly) -> Result<()> {
        if self.nvars == other.nvars {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn checked_add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_same_ring(other)?;
        Ok(self + other)
    }

    pub fn checked_sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_same_ring(other)?;
        Ok(self - other)
    }

    pub fn checked_mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_same_ring(other)?;
        Ok(self * other)
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly { nvars: self.nvars, terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn pow(&self, exp: u32) -> MultiPoly {
        let mut acc = Self::one(self.nvars);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Partial derivative with respect to `v`.
    pub fn partial(&self, v: VarId) -> MultiPoly {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[v.0];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[v.0] -= 1;
            out.add_term(Monomial(exps), c * Rational::from_integer(e.into()));
        }
        out
    }

    /// Simultaneous substitution `v ↦ images[v]`. All images must live in the
    /// same ring, which becomes the ring of the result.
    pub fn substitute(&self, images: &[MultiPoly]) -> Result<MultiPoly> {
        let target = images.first().map_or(self.nvars, MultiPoly::nvars);
        if images.iter().any(|im| im.nvars != target) {
            return Err(Error::RingMismatch);
        }
        let mut powers: Vec<Vec<MultiPoly>> = vec![Vec::new(); images.len()];
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut term = Self::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let image = images.get(i).ok_or_else(|| Error::MissingImage(format!("#{i}")))?;
                let cache = &mut powers[i];
                if cache.is_empty() {
                    cache.push(Self::one(target));
                }
                while cache.len() <= e as usize {
                    let next = cache.last().expect("non-empty") * image;
                    cache.push(next);
                }
                term = &term * &cache[e as usize];
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Reinterprets the polynomial in a ring with `nvars` variables, keeping
    /// the existing variables as a prefix.
    pub fn extend_vars(&self, nvars: usize) -> MultiPoly {
        assert!(nvars >= self.nvars);
        MultiPoly {
            nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut exps = m.0.clone();
                    exps.resize(nvars, 0);
                    (Monomial(exps), c.clone())
                })
                .collect(),
        }
    }

    /// The polynomial as a univariate one in `v`, when it involves no other
    /// variable.
    pub fn to_uni(&self, v: VarId) -> Option<UniPoly> {
        if !self.depends_only_on(&[v]) {
            return None;
        }
        let deg = self.degree_in(v).finite().map_or(0, |d| d + 1);
        let mut coeffs = vec![Rational::zero(); deg];
        for (m, c) in &self.terms {
            coeffs[m.0[v.0] as usize] = c.clone();
        }
        Some(UniPoly::from_coeffs(coeffs))
    }

    /// Coefficients with respect to `v`: `self = Σ out[k]·v^k`, where no
    /// `out[k]` involves `v`.
    pub fn coeffs_in(&self, v: VarId) -> Vec<MultiPoly> {
        let len = self.degree_in(v).finite().map_or(0, |d| d + 1);
        let mut out = vec![Self::zero(self.nvars); len];
        for (m, c) in &self.terms {
            let mut exps = m.0.clone();
            let k = std::mem::replace(&mut exps[v.0], 0) as usize;
            out[k].add_term(Monomial(exps), c.clone());
        }
        out
    }

    fn lex_leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().max_by(|a, b| a.0.lex_cmp(b.0))
    }

    /// Exact division: `Some(q)` with `self = q·divisor` when `divisor`
    /// divides `self`, `None` otherwise.
    ///
    /// Leading terms are taken in lexicographic order. With a single divisor
    /// the division remainder is zero exactly when the divisor divides.
    pub fn div_exact(&self, divisor: &MultiPoly) -> Result<Option<MultiPoly>> {
        self.check_same_ring(divisor)?;
        let (lm, lc) = divisor.lex_leading().ok_or(Error::DivisionByZero)?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut rem = self.clone();
        let mut quot = Self::zero(self.nvars);
        while let Some((m, c)) = rem.lex_leading() {
            if !lm.divides(m) {
                return Ok(None);
            }
            let exps: Vec<u32> = m.0.iter().zip(&lm.0).map(|(a, b)| a - b).collect();
            let coef = c / &lc;
            let mut step = Self::zero(self.nvars);
            step.add_term(Monomial(exps), coef);
            rem = &rem - &(&step * divisor);
            quot = &quot + &step;
        }
        Ok(Some(quot))
    }

    /// Canonical text using the ring's variable names, e.g. `1 - X*Y`.
    pub fn display(&self, ring: &Ring) -> String {
        self.display_with(ring.names())
    }

    pub fn display_with<S: AsRef<str>>(&self, names: &[S]) -> String {
        let mut out = String::new();
        for (m, c) in &self.terms {
            let mono: Vec<String> =
                m.0.iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| match e {
                        1 => names[i].as_ref().to_string(),
                        e => format!("{}^{e}", names[i].as_ref()),
                    })
                    .collect();
            write_term(&mut out, c, &mono.join("*"));
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "ring mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "ring mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "ring mismatch");
        let mut out = MultiPoly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let exps = ma.0.iter().zip(&mb.0).map(|(a, b)| a + b).collect();
                out.add_term(Monomial(exps), ca * cb);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Rational::one())
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;
    use proptest::prelude::*;

    const X: VarId = VarId(0);
    const Y: VarId = VarId(1);
    const Z: VarId = VarId(2);

    fn v(id: VarId) -> MultiPoly {
        MultiPoly::var(3, id)
    }

    fn c(n: i64) -> MultiPoly {
        MultiPoly::constant(3, rat(n))
    }

    fn ring() -> Ring {
        Ring::new(["X", "Y", "Z"]).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        assert!((&(&v(Y) - &v(Z)) + &(&v(Z) - &v(Y))).is_zero());
        assert_eq!(&v(Y) * &v(Y), v(Y).pow(2));
        let p = &(&v(X) * &v(Y)) + &c(1);
        assert_eq!(p.scale(&rat(2)).display(&ring()), "2 + 2*X*Y");
    }

    #[test]
    fn checked_ops_report_ring_mismatch() {
        let a = MultiPoly::var(2, X);
        let b = MultiPoly::var(3, X);
        assert_eq!(a.checked_add(&b), Err(Error::RingMismatch));
        assert_eq!(a.checked_mul(&b), Err(Error::RingMismatch));
    }

    #[test]
    fn substitute_examples() {
        let xy1 = &(&v(X) * &v(Y)) + &c(1);
        let flipped = xy1.substitute(&[v(X), -v(Y), v(Z)]).unwrap();
        assert_eq!(flipped, &c(1) - &(&v(X) * &v(Y)));

        let b0 = &v(X) + &c(3);
        let affine = &b0 + &v(Y).scale(&rat(-1));
        assert_eq!(v(Y).substitute(&[v(X), affine.clone(), v(Z)]).unwrap(), affine);

        assert_eq!(v(Y).pow(3).substitute(&[v(X), -v(Y), v(Z)]).unwrap(), -v(Y).pow(3));
    }

    #[test]
    fn substitute_reports_missing_images() {
        let p = v(Z);
        assert!(matches!(p.substitute(&[v(X), v(Y)]), Err(Error::MissingImage(_))));
        // Variables that do not occur need no image.
        assert_eq!(v(X).substitute(&[v(Y)]).unwrap(), v(Y));
    }

    #[test]
    fn degree_in_examples() {
        let p = &(&v(X) * &v(Y).pow(2)) + &v(Y);
        assert_eq!(p.degree_in(Y), Degree::Finite(2));
        assert_eq!(v(X).pow(3).degree_in(Y), Degree::Finite(0));
        assert_eq!(MultiPoly::zero(3).degree_in(Y), Degree::NegInfinity);
    }

    #[test]
    fn canonical_printing() {
        let p = &c(1) - &(&v(X) * &v(Y));
        assert_eq!(p.display(&ring()), "1 - X*Y");
        assert_eq!(MultiPoly::zero(3).display(&ring()), "0");
        let q = &(&v(Y).pow(2) + &v(X).pow(2)) + &(&v(Z) + &(&v(X) * &v(Y)));
        assert_eq!(q.display(&ring()), "Z + X^2 + X*Y + Y^2");
    }

    #[test]
    fn exact_division() {
        let g = &v(Y) - &v(Z);
        let f = &v(X) * &g;
        assert_eq!(f.div_exact(&g).unwrap(), Some(v(X)));
        let h = &f + &c(1);
        assert_eq!(h.div_exact(&g).unwrap(), None);
        assert_eq!(f.div_exact(&MultiPoly::zero(3)), Err(Error::DivisionByZero));
        assert_eq!(MultiPoly::zero(3).div_exact(&g).unwrap(), Some(MultiPoly::zero(3)));
    }

    #[test]
    fn coefficient_extraction() {
        let p = &(&v(X) * &v(Y).pow(2)) + &(&v(Z) + &c(2));
        let cs = p.coeffs_in(Y);
        assert_eq!(cs.len(), 3);
        assert_eq!(cs[0], &v(Z) + &c(2));
        assert!(cs[1].is_zero());
        assert_eq!(cs[2], v(X));
        assert_eq!(v(X).pow(2).to_uni(X), Some(UniPoly::from_ints(&[0, 0, 1])));
        assert_eq!(v(Y).to_uni(X), None);
    }

    fn arb_poly() -> impl Strategy<Value = MultiPoly> {
        prop::collection::vec(((0u32..3, 0u32..3, 0u32..2), -4i64..=4), 0..5)
            .prop_map(|ts| MultiPoly::from_terms(3, ts.into_iter().map(|((a, b, c), k)| (vec![a, b, c], rat(k)))))
    }

    proptest! {
        #[test]
        fn ring_laws(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
            prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
            prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
            prop_assert_eq!(&p + &q, &q + &p);
            prop_assert_eq!(&p * &q, &q * &p);
            prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
            prop_assert!((&p - &p).is_zero());
        }

        #[test]
        fn substitution_is_a_ring_homomorphism(p in arb_poly(), q in arb_poly(),
                                                 a in arb_poly(), b in arb_poly()) {
            let images = [a, b, v(Z)];
            let lhs = (&p * &q).substitute(&images).unwrap();
            let rhs = &p.substitute(&images).unwrap() * &q.substitute(&images).unwrap();
            prop_assert_eq!(lhs, rhs);
            let lhs = (&p + &q).substitute(&images).unwrap();
            let rhs = &p.substitute(&images).unwrap() + &q.substitute(&images).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn exact_division_recovers_factors(p in arb_poly(), g in arb_poly()) {
            prop_assume!(!g.is_zero());
            prop_assert_eq!((&p * &g).div_exact(&g).unwrap(), Some(p));
        }

        #[test]
        fn partial_derivative_leibniz(p in arb_poly(), q in arb_poly()) {
            for var in [X, Y, Z] {
                prop_assert_eq!((&p * &q).partial(var),
                                &(&p.partial(var) * &q) + &(&p * &q.partial(var)));
            }
        }
    }
}
