use crate::error::{Error, Result};
use crate::exactalg::{MultiPoly, Ring, UniPoly, VarId};

/// A derivation of `ℚ[X; Y…]`, stored as its images on the generators and
/// extended to all polynomials by the Leibniz rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    ring: Ring,
    images: Vec<MultiPoly>,
}

impl Derivation {
    pub fn new(ring: Ring, images: Vec<MultiPoly>) -> Result<Self> {
        if images.len() != ring.len() {
            let missing = ring.names().get(images.len()).cloned().unwrap_or_default();
            return Err(Error::MissingImage(missing));
        }
        if images.iter().any(|p| p.nvars() != ring.len()) {
            return Err(Error::RingMismatch);
        }
        Ok(Derivation { ring, images })
    }

    /// `∂_X + Σ y_images[i] ∂_{Y_i}`.
    pub fn with_unit_x(ring: Ring, y_images: Vec<MultiPoly>) -> Result<Self> {
        let mut images = vec![MultiPoly::one(ring.len())];
        images.extend(y_images);
        Self::new(ring, images)
    }

    /// The Shamsuddin derivation `d(Y_i) = a_i Y_i + b_i` on a ring whose
    /// `Y` variables are named by `ring`.
    pub fn shamsuddin(ring: Ring, coeffs: &[(UniPoly, UniPoly)]) -> Result<Self> {
        let n = ring.len();
        if coeffs.len() + 1 != n {
            return Err(Error::Precondition(format!("{} Shamsuddin images for {} Y variables", coeffs.len(), n - 1)));
        }
        let y_images = coeffs
            .iter()
            .enumerate()
            .map(|(i, (a, b))| {
                let y = MultiPoly::var(n, VarId(i + 1));
                &(&MultiPoly::from_uni(n, VarId::X, a) * &y) + &MultiPoly::from_uni(n, VarId::X, b)
            })
            .collect();
        Self::with_unit_x(ring, y_images)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn images(&self) -> &[MultiPoly] {
        &self.images
    }

    pub fn image(&self, v: VarId) -> &MultiPoly {
        &self.images[v.0]
    }

    pub fn nvars(&self) -> usize {
        self.ring.len()
    }

    /// Whether `d(X) = 1`, as for every family studied here.
    pub fn has_unit_x(&self) -> bool {
        self.images[0] == MultiPoly::one(self.nvars())
    }

    /// `d(p) = Σ_v ∂p/∂v · d(v)`.
    pub fn apply(&self, p: &MultiPoly) -> Result<MultiPoly> {
        if p.nvars() != self.nvars() {
            return Err(Error::RingMismatch);
        }
        let mut out = MultiPoly::zero(self.nvars());
        for (v, image) in self.images.iter().enumerate() {
            let partial = p.partial(VarId(v));
            if !partial.is_zero() {
                out = &out + &(&partial * image);
            }
        }
        Ok(out)
    }

    /// Each `d(Y_i)` as `Σ_j A_ij(X) Y_j + B_i(X)`, when every image is affine
    /// in the `Y` variables with coefficients in `ℚ[X]`.
    pub fn linear_parts(&self) -> Option<(Vec<Vec<UniPoly>>, Vec<UniPoly>)> {
        let n = self.nvars();
        let ys: Vec<VarId> = self.ring.y_vars().collect();
        let mut a = Vec::with_capacity(ys.len());
        let mut b = Vec::with_capacity(ys.len());
        for &yi in &ys {
            let image = self.image(yi);
            if image.degree_in_vars(&ys) > 1.into() {
                return None;
            }
            let mut row = Vec::with_capacity(ys.len());
            let mut rest = image.clone();
            for &yj in &ys {
                let cs = rest.coeffs_in(yj);
                let coef = cs.get(1).cloned().unwrap_or_else(|| MultiPoly::zero(n));
                row.push(coef.to_uni(VarId::X)?);
                rest = cs.into_iter().next().unwrap_or_else(|| MultiPoly::zero(n));
            }
            b.push(rest.to_uni(VarId::X)?);
            a.push(row);
        }
        Some((a, b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    fn xyz() -> Ring {
        Ring::new(["X", "Y", "Z"]).unwrap()
    }

    fn var(i: usize) -> MultiPoly {
        MultiPoly::var(3, VarId(i))
    }

    fn sec5_ex1() -> Derivation {
        let one = MultiPoly::one(3);
        Derivation::with_unit_x(xyz(), vec![&one + &(&var(0) * &var(1)), &one + &(&var(0) * &var(2))]).unwrap()
    }

    #[test]
    fn apply_examples() {
        let d = sec5_ex1();
        let xy1 = &(&var(0) * &var(1)) + &MultiPoly::one(3);
        assert_eq!(d.apply(&var(1)).unwrap(), xy1);
        assert_eq!(d.apply(&var(1).pow(2)).unwrap(), &var(1).scale(&rat(2)) * &xy1);
        let g = &var(1) - &var(2);
        assert_eq!(d.apply(&g).unwrap(), &var(0) * &g);
    }

    #[test]
    fn apply_rejects_foreign_polynomials() {
        let d = sec5_ex1();
        assert_eq!(d.apply(&MultiPoly::var(2, VarId(1))), Err(Error::RingMismatch));
    }

    #[test]
    fn construction_requires_every_image() {
        let err = Derivation::new(xyz(), vec![MultiPoly::one(3)]).unwrap_err();
        assert_eq!(err, Error::MissingImage("Y".into()));
    }

    #[test]
    fn linear_parts_of_affine_images() {
        let d = sec5_ex1();
        let (a, b) = d.linear_parts().unwrap();
        assert_eq!(a[0], vec![UniPoly::x(), UniPoly::zero()]);
        assert_eq!(a[1], vec![UniPoly::zero(), UniPoly::x()]);
        assert_eq!(b, vec![UniPoly::one(), UniPoly::one()]);
        let nonlinear = Derivation::with_unit_x(xyz(), vec![&var(1) * &var(2), var(0)]).unwrap();
        assert!(nonlinear.linear_parts().is_none());
    }
}
