//! Exact linear algebra over fields of rationals and rational functions.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{clear_denominators, MultiPoly, RatFunc, Rational};

/// The field operations the eliminations need.
pub trait Field: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    /// Panics on division by zero; callers only divide by pivots.
    fn div(&self, rhs: &Self) -> Self;
    /// Pivot preference: among nonzero candidates the lowest weight wins.
    fn weight(&self) -> usize {
        0
    }
}

impl Field for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Self {
        self / rhs
    }
}

impl Field for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn one() -> Self {
        RatFunc::one()
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Self {
        self.checked_div(rhs).expect("division by a zero pivot")
    }
    fn weight(&self) -> usize {
        self.weight()
    }
}

/// Reduced row echelon form produced by Gauss–Jordan elimination.
#[derive(Debug, Clone)]
pub struct Rref<F> {
    /// The reduced matrix, same shape as the input.
    pub rows: Vec<Vec<F>>,
    /// `pivots[k]` is the pivot column of row `k`, for the first `rank` rows.
    pub pivots: Vec<usize>,
    /// Pivot entries as found, before their rows were normalized.
    pub pivot_values: Vec<F>,
}

impl<F: Field> Rref<F> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn free_columns(&self, ncols: usize) -> Vec<usize> {
        (0..ncols).filter(|c| !self.pivots.contains(c)).collect()
    }
}

/// Gauss–Jordan elimination over the first `ncols` columns. Columns beyond
/// `ncols` (an augmented right-hand side) are carried along but never pivoted.
pub fn rref<F: Field>(mut rows: Vec<Vec<F>>, ncols: usize) -> Rref<F> {
    let mut pivots = Vec::new();
    let mut pivot_values = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let best = (r..rows.len()).filter(|&i| !rows[i][col].is_zero()).min_by_key(|&i| rows[i][col].weight());
        let Some(p) = best else { continue };
        rows.swap(r, p);
        let pivot = rows[r][col].clone();
        let inv = F::one().div(&pivot);
        for x in rows[r].iter_mut() {
            *x = x.mul(&inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x = x.sub(&factor.mul(p));
                }
            }
        }
        pivots.push(col);
        pivot_values.push(pivot);
        r += 1;
    }
    Rref { rows, pivots, pivot_values }
}

/// Solution set `particular + span(basis)` of a consistent linear system.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineSolution<F> {
    pub particular: Vec<F>,
    pub free: Vec<usize>,
    /// One direction per free column, in the order of `free`.
    pub basis: Vec<Vec<F>>,
}

impl<F: Field> AffineSolution<F> {
    pub fn dimension(&self) -> usize {
        self.free.len()
    }

    /// The point with the free unknowns set to `params`.
    pub fn point(&self, params: &[F]) -> Vec<F> {
        let mut x = self.particular.clone();
        for (dir, t) in self.basis.iter().zip(params) {
            for (xi, di) in x.iter_mut().zip(dir) {
                *xi = xi.add(&di.mul(t));
            }
        }
        x
    }
}

/// Reads the solution set off a reduced augmented matrix with `ncols`
/// unknowns (the last column is the right-hand side). `None` if inconsistent.
pub fn solution_from_rref<F: Field>(rr: &Rref<F>, ncols: usize) -> Option<AffineSolution<F>> {
    let rank = rr.rank();
    if rr.rows[rank..].iter().any(|row| !row[ncols].is_zero()) {
        return None;
    }
    let mut particular = vec![F::zero(); ncols];
    for (k, &pc) in rr.pivots.iter().enumerate() {
        particular[pc] = rr.rows[k][ncols].clone();
    }
    let free = rr.free_columns(ncols);
    let basis = free
        .iter()
        .map(|&fc| {
            let mut dir = vec![F::zero(); ncols];
            dir[fc] = F::one();
            for (k, &pc) in rr.pivots.iter().enumerate() {
                dir[pc] = F::zero().sub(&rr.rows[k][fc]);
            }
            dir
        })
        .collect();
    Some(AffineSolution { particular, free, basis })
}

/// Solves `matrix · x = rhs`.
pub fn solve<F: Field>(matrix: &[Vec<F>], rhs: &[F], ncols: usize) -> Option<AffineSolution<F>> {
    let aug: Vec<Vec<F>> = matrix
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    solution_from_rref(&rref(aug, ncols), ncols)
}

/// Rank by Bareiss fraction-free elimination: each row is scaled to integers
/// and every intermediate division is exact.
pub fn rank_fraction_free(matrix: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = matrix.iter().map(|row| clear_denominators(row)).collect();
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut r = 0;
    for col in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][col].is_zero()) else { continue };
        m.swap(r, p);
        for i in r + 1..nrows {
            for j in col + 1..ncols {
                let v = (&m[r][col] * &m[i][j] - &m[i][col] * &m[r][j]) / &prev;
                m[i][j] = v;
            }
            m[i][col] = BigInt::zero();
        }
        prev = m[r][col].clone();
        r += 1;
    }
    r
}

/// A nonzero kernel vector of `matrix` (`ncols` columns) scaled to coprime
/// integers with a positive first nonzero entry; `None` for full column rank.
pub fn kernel_vector(matrix: &[Vec<Rational>], ncols: usize) -> Option<Vec<BigInt>> {
    let rr = rref(matrix.to_vec(), ncols);
    let free = *rr.free_columns(ncols).first()?;
    let mut x = vec![<Rational as Zero>::zero(); ncols];
    x[free] = <Rational as One>::one();
    for (k, &pc) in rr.pivots.iter().enumerate() {
        x[pc] = -rr.rows[k][free].clone();
    }
    let mut ints = clear_denominators(&x);
    if ints.iter().find(|v| !v.is_zero()).is_some_and(|v| v.is_negative()) {
        ints.iter_mut().for_each(|v| *v = -v.clone());
    }
    Some(ints)
}

/// Inverse of a square matrix, `None` when singular.
pub fn inverse(matrix: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = matrix.len();
    let aug: Vec<Vec<Rational>> = matrix
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { <Rational as One>::one() } else { <Rational as Zero>::zero() }));
            r
        })
        .collect();
    let rr = rref(aug, n);
    if rr.rank() < n {
        return None;
    }
    Some(rr.rows.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Determinant of a square matrix of polynomials by cofactor expansion.
/// The empty matrix has determinant one.
pub fn determinant_poly(matrix: &[Vec<MultiPoly>], nvars: usize) -> MultiPoly {
    let n = matrix.len();
    if n == 0 {
        return MultiPoly::one(nvars);
    }
    let mut total = MultiPoly::zero(nvars);
    for (j, entry) in matrix[0].iter().enumerate() {
        if entry.is_zero() {
            continue;
        }
        let minor: Vec<Vec<MultiPoly>> = matrix[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, e)| e.clone()).collect())
            .collect();
        let term = entry * &determinant_poly(&minor, nvars);
        total = if j % 2 == 0 { &total + &term } else { &total - &term };
    }
    total
}
