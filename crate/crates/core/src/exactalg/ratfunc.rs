use std::ops::{Add, Mul, Sub};

use super::{Rational, UniPoly};

/// A rational function `num/den` in one parameter, kept in lowest terms with
/// a monic denominator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: UniPoly,
    den: UniPoly,
}

impl RatFunc {
    pub fn zero() -> Self {
        Self::from_poly(UniPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(UniPoly::one())
    }

    pub fn from_poly(num: UniPoly) -> Self {
        RatFunc { num, den: UniPoly::one() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(UniPoly::constant(c))
    }

    /// `None` when `den` is zero.
    pub fn new(num: UniPoly, den: UniPoly) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(Self::zero());
        }
        let g = num.gcd(&den);
        let num = num.div_exact(&g).ok()??;
        let den = den.div_exact(&g).ok()??;
        let lc = den.leading_coeff()?.clone();
        let inv = lc.recip();
        Some(RatFunc { num: num.scale(&inv), den: den.scale(&inv) })
    }

    pub fn num(&self) -> &UniPoly {
        &self.num
    }

    pub fn den(&self) -> &UniPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// Sum of numerator and denominator degrees; constants weigh zero.
    pub fn weight(&self) -> usize {
        self.num.degree().finite().unwrap_or(0) + self.den.degree().finite().unwrap_or(0)
    }

    pub fn checked_div(&self, rhs: &RatFunc) -> Option<RatFunc> {
        RatFunc::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    /// Text in the parameter `var`, parenthesized when it has several terms.
    pub fn display_in(&self, var: &str) -> String {
        let wrap = |p: &UniPoly| {
            let t = p.display_in(var);
            if p.coeffs().iter().filter(|c| !num_traits::Zero::is_zero(*c)).count() > 1 {
                format!("({t})")
            } else {
                t
            }
        };
        if self.den.is_constant() {
            self.num.display_in(var)
        } else {
            format!("{}/{}", wrap(&self.num), wrap(&self.den))
        }
    }

    /// Value at `at`, `None` at a pole.
    pub fn eval(&self, at: &Rational) -> Option<Rational> {
        let d = self.den.eval(at);
        if num_traits::Zero::is_zero(&d) {
            return None;
        }
        Some(self.num.eval(at) / d)
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.den == rhs.den {
            return RatFunc::new(&self.num + &rhs.num, self.den.clone()).expect("nonzero den");
        }
        RatFunc::new(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den).expect("nonzero den")
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        if self.den == rhs.den {
            return RatFunc::new(&self.num - &rhs.num, self.den.clone()).expect("nonzero den");
        }
        RatFunc::new(&(&self.num * &rhs.den) - &(&rhs.num * &self.den), &self.den * &rhs.den).expect("nonzero den")
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("nonzero den")
    }
}
