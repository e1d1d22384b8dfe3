use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Elements of the base field ℚ. `BigRational` keeps values reduced with a
/// positive denominator, and equality is value equality.
pub type Rational = BigRational;

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Scales `values` by a positive rational so that every entry is an integer
/// and the entries are coprime. The zero vector maps to all zeros.
pub fn clear_denominators(values: &[Rational]) -> Vec<BigInt> {
    let lcm = values.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let ints: Vec<BigInt> = values.iter().map(|v| (v * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if gcd.is_zero() {
        return ints;
    }
    ints.into_iter().map(|v| v / gcd.abs()).collect()
}
