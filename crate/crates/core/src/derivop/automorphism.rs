use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactalg::{linalg, MultiPoly, Rational, Ring, UniPoly, VarId};

/// A ℚ-algebra automorphism given by the images of the generators, together
/// with the images of its inverse. Construction checks that the two
/// substitutions undo each other on every generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Automorphism {
    ring: Ring,
    forward: Vec<MultiPoly>,
    inverse: Vec<MultiPoly>,
}

/// Coefficients of an affine automorphism
/// `X ↦ X + alpha`, `Y_i ↦ Σ_j matrix[i][j] Y_j + translations[i](X)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineData {
    pub alpha: Rational,
    pub matrix: Vec<Vec<Rational>>,
    pub translations: Vec<UniPoly>,
}

impl Automorphism {
    pub fn new(ring: Ring, forward: Vec<MultiPoly>, inverse: Vec<MultiPoly>) -> Result<Self> {
        let n = ring.len();
        for images in [&forward, &inverse] {
            if images.len() != n {
                let missing = ring.names().get(images.len()).cloned().unwrap_or_default();
                return Err(Error::MissingImage(missing));
            }
            if images.iter().any(|p| p.nvars() != n) {
                return Err(Error::RingMismatch);
            }
        }
        for v in ring.vars() {
            let generator = MultiPoly::var(n, v);
            if forward[v.0].substitute(&inverse)? != generator {
                return Err(Error::NotAutomorphism(format!(
                    "the inverse does not undo the image of `{}`",
                    ring.name(v)
                )));
            }
            if inverse[v.0].substitute(&forward)? != generator {
                return Err(Error::NotAutomorphism(format!(
                    "the forward map does not undo the inverse image of `{}`",
                    ring.name(v)
                )));
            }
        }
        Ok(Automorphism { ring, forward, inverse })
    }

    pub fn identity(ring: Ring) -> Self {
        let n = ring.len();
        let images: Vec<MultiPoly> = ring.vars().map(|v| MultiPoly::var(n, v)).collect();
        Automorphism { ring, forward: images.clone(), inverse: images }
    }

    /// Builds the affine automorphism described by `data`, computing its
    /// inverse `X ↦ X − α`, `Y ↦ C⁻¹(Y − e(X − α))` exactly.
    pub fn affine(ring: Ring, data: &AffineData) -> Result<Self> {
        let n = ring.len();
        let m = n - 1;
        if data.matrix.len() != m || data.matrix.iter().any(|row| row.len() != m) || data.translations.len() != m {
            return Err(Error::Precondition(format!("affine data must describe {m} Y variables")));
        }
        let inv = linalg::inverse(&data.matrix)
            .ok_or_else(|| Error::NotAutomorphism("the linear part is singular".into()))?;
        let x = MultiPoly::var(n, VarId::X);
        let shift = |c: &Rational| &x + &MultiPoly::constant(n, c.clone());
        let ys: Vec<MultiPoly> = ring.y_vars().map(|v| MultiPoly::var(n, v)).collect();
        let linear = |mat: &[Vec<Rational>], i: usize, vecs: &[MultiPoly]| {
            mat[i].iter().zip(vecs).fold(MultiPoly::zero(n), |acc, (c, y)| &acc + &y.scale(c))
        };

        let mut forward = vec![shift(&data.alpha)];
        for i in 0..m {
            let e = MultiPoly::from_uni(n, VarId::X, &data.translations[i]);
            forward.push(&linear(&data.matrix, i, &ys) + &e);
        }

        let back = -data.alpha.clone();
        let centered: Vec<MultiPoly> = (0..m)
            .map(|i| {
                let e = MultiPoly::from_uni(n, VarId::X, &data.translations[i].shift(&back));
                &ys[i] - &e
            })
            .collect();
        let mut inverse = vec![shift(&back)];
        for i in 0..m {
            inverse.push(linear(&inv, i, &centered));
        }
        Self::new(ring, forward, inverse)
    }

    /// Recovers affine data from the forward images, if they have that shape.
    pub fn affine_data_of(ring: &Ring, forward: &[MultiPoly]) -> Option<AffineData> {
        let n = ring.len();
        let x = MultiPoly::var(n, VarId::X);
        let alpha_poly = &forward[0] - &x;
        if !alpha_poly.is_constant() {
            return None;
        }
        let ys: Vec<VarId> = ring.y_vars().collect();
        let mut matrix = Vec::new();
        let mut translations = Vec::new();
        for image in &forward[1..] {
            if image.degree_in_vars(&ys) > 1.into() {
                return None;
            }
            let mut row = Vec::new();
            let mut rest = image.clone();
            for &y in &ys {
                let cs = rest.coeffs_in(y);
                let c = cs.get(1).cloned().unwrap_or_else(|| MultiPoly::zero(n));
                if !c.is_constant() {
                    return None;
                }
                row.push(c.constant_term());
                rest = cs.into_iter().next().unwrap_or_else(|| MultiPoly::zero(n));
            }
            translations.push(rest.to_uni(VarId::X)?);
            matrix.push(row);
        }
        Some(AffineData { alpha: alpha_poly.constant_term(), matrix, translations })
    }

    /// The affine data of this automorphism, if it is affine.
    pub fn as_affine(&self) -> Option<AffineData> {
        Self::affine_data_of(&self.ring, &self.forward)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn forward(&self) -> &[MultiPoly] {
        &self.forward
    }

    pub fn inverse_images(&self) -> &[MultiPoly] {
        &self.inverse
    }

    pub fn image(&self, v: VarId) -> &MultiPoly {
        &self.forward[v.0]
    }

    /// `ρ(p)`: substitutes the forward images into `p`.
    pub fn apply(&self, p: &MultiPoly) -> Result<MultiPoly> {
        if p.nvars() != self.ring.len() {
            return Err(Error::RingMismatch);
        }
        p.substitute(&self.forward)
    }

    /// `ρ⁻¹(p)`.
    pub fn apply_inverse(&self, p: &MultiPoly) -> Result<MultiPoly> {
        if p.nvars() != self.ring.len() {
            return Err(Error::RingMismatch);
        }
        p.substitute(&self.inverse)
    }

    /// The composite `self ∘ other`, acting as `p ↦ self(other(p))`.
    pub fn compose(&self, other: &Automorphism) -> Result<Automorphism> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        let forward = other.forward.iter().map(|p| p.substitute(&self.forward)).collect::<Result<Vec<_>>>()?;
        let inverse = self.inverse.iter().map(|p| p.substitute(&other.inverse)).collect::<Result<Vec<_>>>()?;
        Ok(Automorphism { ring: self.ring.clone(), forward, inverse })
    }

    pub fn inverse(&self) -> Automorphism {
        Automorphism { ring: self.ring.clone(), forward: self.inverse.clone(), inverse: self.forward.clone() }
    }

    pub fn is_identity(&self) -> bool {
        let n = self.ring.len();
        self.ring.vars().all(|v| self.forward[v.0] == MultiPoly::var(n, v))
    }
}

impl AffineData {
    pub fn identity(m: usize) -> Self {
        AffineData {
            alpha: Rational::zero(),
            matrix: (0..m)
                .map(|i| (0..m).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
                .collect(),
            translations: vec![UniPoly::zero(); m],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    fn xyz() -> Ring {
        Ring::new(["X", "Y", "Z"]).unwrap()
    }

    #[test]
    fn affine_inverse_is_exact() {
        let data = AffineData {
            alpha: rat(2),
            matrix: vec![vec![rat(2), rat(-1)], vec![rat(0), rat(1)]],
            translations: vec![UniPoly::from_ints(&[1, 0, 3]), UniPoly::from_ints(&[0, -1])],
        };
        let rho = Automorphism::affine(xyz(), &data).unwrap();
        assert_eq!(rho.as_affine().unwrap(), data);
        let id = rho.compose(&rho.inverse()).unwrap();
        assert!(id.is_identity());
    }

    #[test]
    fn singular_linear_part_is_rejected() {
        let data = AffineData {
            alpha: rat(0),
            matrix: vec![vec![rat(1), rat(1)], vec![rat(1), rat(1)]],
            translations: vec![UniPoly::zero(); 2],
        };
        assert!(matches!(Automorphism::affine(xyz(), &data), Err(Error::NotAutomorphism(_))));
    }

    #[test]
    fn wrong_inverse_is_rejected() {
        let ring = Ring::xy();
        let x = MultiPoly::var(2, VarId(0));
        let y = MultiPoly::var(2, VarId(1));
        let fwd = vec![x.clone(), &y + &x.pow(2)];
        let bad = vec![x.clone(), &y + &x.pow(2)];
        assert!(matches!(Automorphism::new(ring.clone(), fwd.clone(), bad), Err(Error::NotAutomorphism(_))));
        // A non-affine automorphism with a caller-supplied inverse.
        let fwd = vec![&x + &y.pow(2), y.clone()];
        let inv = vec![&x - &y.pow(2), y.clone()];
        let rho = Automorphism::new(ring, fwd, inv).unwrap();
        assert!(rho.as_affine().is_none());
    }

    #[test]
    fn composition_acts_right_to_left() {
        let ring = Ring::xy();
        let n = 2;
        let x = MultiPoly::var(n, VarId(0));
        let y = MultiPoly::var(n, VarId(1));
        // σ: Y ↦ Y + X, τ: Y ↦ 2Y
        let sigma = Automorphism::new(ring.clone(), vec![x.clone(), &y + &x], vec![x.clone(), &y - &x]).unwrap();
        let tau = Automorphism::new(
            ring,
            vec![x.clone(), y.scale(&rat(2))],
            vec![x.clone(), y.scale(&Rational::new(1.into(), 2.into()))],
        )
        .unwrap();
        // (σ∘τ)(Y) = σ(2Y) = 2Y + 2X
        let st = sigma.compose(&tau).unwrap();
        assert_eq!(st.image(VarId(1)), &(&y + &x).scale(&rat(2)));
        assert_eq!(st.apply(&y).unwrap(), sigma.apply(&tau.apply(&y).unwrap()).unwrap());
    }
}
