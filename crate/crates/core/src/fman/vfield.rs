use std::ops::{Add, Neg, Sub};

use rand::Rng;

use crate::error::{Error, Result};
use crate::kernel::{Poly, Rational, TruncSeries};

/// A vector field `Σ X^i ∂_i` with truncated-series coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct VField {
    coeffs: Vec<TruncSeries>,
}

impl VField {
    /// Every coefficient must be a series in `coeffs.len()` variables.
    pub fn new(coeffs: Vec<TruncSeries>) -> Result<Self> {
        let n = coeffs.len();
        if let Some(bad) = coeffs.iter().find(|s| s.nvars() != n) {
            return Err(Error::ShapeMismatch(format!(
                "coefficient in {} variables for a field on {n} coordinates",
                bad.nvars()
            )));
        }
        Ok(VField { coeffs })
    }

    pub fn zero(n: usize, cap: u32) -> Self {
        VField {
            coeffs: vec![TruncSeries::zero(n, cap); n],
        }
    }

    /// The coordinate field `∂_i`.
    pub fn coordinate(n: usize, i: usize, cap: u32) -> Self {
        let mut v = Self::zero(n, cap);
        v.coeffs[i] = TruncSeries::one(n, cap);
        v
    }

    pub fn n(&self) -> usize {
        self.coeffs.len()
    }

    /// The smallest cap among the coefficients.
    pub fn cap(&self) -> u32 {
        self.coeffs.iter().map(TruncSeries::cap).min().unwrap_or(0)
    }

    pub fn coeff(&self, i: usize) -> &TruncSeries {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[TruncSeries] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(TruncSeries::is_zero)
    }

    /// `g · X`.
    pub fn scale_by(&self, g: &TruncSeries) -> VField {
        VField {
            coeffs: self.coeffs.iter().map(|c| g * c).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> VField {
        VField {
            coeffs: self.coeffs.iter().map(|s| s.scale(c)).collect(),
        }
    }

    /// Derivation `X(g) = Σ X^i ∂_i g`.
    pub fn apply(&self, g: &TruncSeries) -> TruncSeries {
        let n = self.n();
        let mut acc = TruncSeries::zero(n, self.cap().min(g.cap()));
        for (i, x) in self.coeffs.iter().enumerate() {
            if !x.is_zero() {
                acc = &acc + &(x * &g.diff(i));
            }
        }
        acc
    }

    pub fn with_cap(&self, cap: u32) -> VField {
        VField {
            coeffs: self.coeffs.iter().map(|c| c.with_cap(cap)).collect(),
        }
    }

    pub(crate) fn check_same_n(&self, other: &VField) -> Result<()> {
        if self.n() != other.n() {
            return Err(Error::ShapeMismatch(format!(
                "fields on {} and {} coordinates",
                self.n(),
                other.n()
            )));
        }
        Ok(())
    }
}

impl Add for &VField {
    type Output = VField;
    fn add(self, rhs: &VField) -> VField {
        VField {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &VField {
    type Output = VField;
    fn sub(self, rhs: &VField) -> VField {
        VField {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &VField {
    type Output = VField;
    fn neg(self) -> VField {
        VField {
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }
}

/// Lie bracket `[X,Y]^k = Σ_i (X^i ∂_i Y^k − Y^i ∂_i X^k)`.
pub fn vf_bracket(x: &VField, y: &VField) -> Result<VField> {
    x.check_same_n(y)?;
    Ok(VField {
        coeffs: (0..x.n()).map(|k| &x.apply(&y.coeffs[k]) - &y.apply(&x.coeffs[k])).collect(),
    })
}

/// A sparse random polynomial series: up to `terms` monomials of total
/// degree at most `max_deg`, small integer coefficients.
pub fn random_series<R: Rng>(rng: &mut R, n: usize, cap: u32, max_deg: u32, terms: usize) -> TruncSeries {
    let poly = Poly::from_terms(
        n,
        (0..terms).map(|_| {
            let mut e = vec![0u32; n];
            let deg = rng.gen_range(0..=max_deg);
            for _ in 0..deg {
                e[rng.gen_range(0..n)] += 1;
            }
            (e, Rational::from_integer(rng.gen_range(-3i64..=3).into()))
        }),
    );
    TruncSeries::new(poly, cap)
}

pub fn random_vfield<R: Rng>(rng: &mut R, n: usize, cap: u32) -> VField {
    VField {
        coeffs: (0..n).map(|_| random_series(rng, n, cap, 2, 2)).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rat;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn coordinate_fields_commute() {
        let d1 = VField::coordinate(2, 0, 4);
        let d2 = VField::coordinate(2, 1, 4);
        assert!(vf_bracket(&d1, &d2).unwrap().is_zero());
    }

    #[test]
    fn euler_bracket() {
        // [u1 ∂1, ∂1] = −∂1
        let d1 = VField::coordinate(2, 0, 4);
        let u1d1 = d1.scale_by(&TruncSeries::var(2, 0, 4));
        let b = vf_bracket(&u1d1, &d1).unwrap();
        assert_eq!(b.coeff(0).poly(), &Poly::constant(2, rat(-1, 1)));
        assert!(b.coeff(1).is_zero());
    }

    #[test]
    fn jacobi_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let [x, y, z] = [0; 3].map(|_| random_vfield(&mut rng, 2, 5));
            let j = &(&vf_bracket(&x, &vf_bracket(&y, &z).unwrap()).unwrap()
                + &vf_bracket(&y, &vf_bracket(&z, &x).unwrap()).unwrap())
                + &vf_bracket(&z, &vf_bracket(&x, &y).unwrap()).unwrap();
            assert!(j.is_zero());
        }
    }

    #[test]
    fn mismatched_dimensions() {
        let a = VField::zero(2, 3);
        let b = VField::zero(3, 3);
        assert!(vf_bracket(&a, &b).is_err());
    }
}
