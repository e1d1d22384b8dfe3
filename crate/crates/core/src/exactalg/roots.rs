use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Rational, UniPoly};
use crate::error::{Error, Result};

const TRIAL_DIVISION_LIMIT: u64 = 1_000_000;

/// All rational roots of `p`, sorted ascending, without multiplicity.
///
/// Uses the rational root test on the primitive integer form. Fails with
/// [`Error::BudgetExceeded`] when a coefficient cannot be factored by trial
/// division up to one million. The zero polynomial has no finite root set
/// and is rejected.
pub fn rational_roots(p: &UniPoly) -> Result<Vec<Rational>> {
    if p.is_zero() {
        return Err(Error::Precondition("the zero polynomial vanishes everywhere".into()));
    }
    let mut ints = p.primitive_integer_coeffs();
    let mut roots = Vec::new();
    // Strip X^k; zero is then a root.
    let lead_zeros = ints.iter().take_while(|c| c.is_zero()).count();
    if lead_zeros > 0 {
        roots.push(Rational::zero());
        ints.drain(..lead_zeros);
    }
    if ints.len() > 1 {
        let a0 = ints[0].abs();
        let an = ints.last().expect("nonempty").abs();
        let ps = divisors(&a0)?;
        let qs = divisors(&an)?;
        let poly = UniPoly::from_coeffs(ints.iter().cloned().map(Rational::from_integer).collect());
        for pn in &ps {
            for qd in &qs {
                if !pn.gcd(qd).is_one() {
                    continue;
                }
                for sign in [BigInt::one(), -BigInt::one()] {
                    let cand = Rational::new(pn * &sign, qd.clone());
                    if poly.eval(&cand).is_zero() {
                        roots.push(cand);
                    }
                }
            }
        }
    }
    roots.sort();
    roots.dedup();
    Ok(roots)
}

fn divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let mut rest = n.clone();
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let mut d = 2u64;
    let mut steps = 0u64;
    while BigInt::from(d) * BigInt::from(d) <= rest {
        if d > TRIAL_DIVISION_LIMIT {
            return Err(Error::BudgetExceeded { explored: steps, total: steps });
        }
        let bd = BigInt::from(d);
        let mut e = 0;
        while (&rest % &bd).is_zero() {
            rest /= &bd;
            e += 1;
        }
        if e > 0 {
            factors.push((bd, e));
        }
        d += if d == 2 { 1 } else { 2 };
        steps += 1;
    }
    if rest > BigInt::one() {
        factors.push((rest, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (f, e) in factors {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for dv in &divs {
            let mut pw = BigInt::one();
            for _ in 0..=e {
                next.push(dv * &pw);
                pw *= &f;
            }
        }
        divs = next;
    }
    Ok(divs)
}
