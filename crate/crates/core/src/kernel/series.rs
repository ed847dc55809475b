use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use super::{Poly, Rational};
use crate::error::{Error, Result};

/// A multivariate power series known up to total degree `cap`, i.e. an
/// element of `Q[[u]] / m^(cap+1)`.
///
/// Sums and products take the smaller cap of their operands. A partial
/// derivative is only determined modulo `m^cap`, so [`TruncSeries::diff`]
/// lowers the cap by one.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TruncSeries {
    poly: Poly,
    cap: u32,
}

impl TruncSeries {
    pub fn new(poly: Poly, cap: u32) -> Self {
        TruncSeries {
            poly: poly.truncate(cap),
            cap,
        }
    }

    pub fn zero(nvars: usize, cap: u32) -> Self {
        TruncSeries {
            poly: Poly::zero(nvars),
            cap,
        }
    }

    pub fn one(nvars: usize, cap: u32) -> Self {
        Self::new(Poly::one(nvars), cap)
    }

    pub fn constant(nvars: usize, c: Rational, cap: u32) -> Self {
        Self::new(Poly::constant(nvars, c), cap)
    }

    pub fn var(nvars: usize, var: usize, cap: u32) -> Self {
        Self::new(Poly::var(nvars, var), cap)
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn nvars(&self) -> usize {
        self.poly.nvars()
    }

    /// Reinterprets the stored terms at another cap. Raising the cap is only
    /// meaningful when the series is known to be a polynomial of degree
    /// at most the old cap.
    pub fn with_cap(&self, cap: u32) -> Self {
        Self::new(self.poly.clone(), cap)
    }

    /// Zero to the known precision.
    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn constant_term(&self) -> Rational {
        self.poly.constant_term()
    }

    pub fn is_unit(&self) -> bool {
        !self.constant_term().is_zero()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        TruncSeries {
            poly: self.poly.scale(c),
            cap: self.cap,
        }
    }

    /// Partial derivative; the result is valid through degree `cap - 1`.
    /// At cap 0 nothing survives and the zero series at cap 0 is returned.
    pub fn diff(&self, var: usize) -> Self {
        let cap = self.cap.saturating_sub(1);
        if self.cap == 0 {
            return TruncSeries::zero(self.nvars(), 0);
        }
        TruncSeries::new(self.poly.diff(var), cap)
    }

    /// Multiplicative inverse modulo `m^(cap+1)`.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = self.constant_term();
        if c0.is_zero() {
            return Err(Error::NotUnit);
        }
        let inv0 = c0.recip();
        // s = c0 (1 - r) with r in m, so s^-1 = c0^-1 * sum_k r^k, and r^k is
        // in m^k, hence vanishes once k > cap.
        let n = self.nvars();
        let r = (&TruncSeries::one(n, self.cap) - &self.scale(&inv0)).poly;
        let mut power = Poly::one(n);
        let mut acc = Poly::one(n);
        for _ in 0..self.cap {
            power = power.mul_truncated(&r, Some(self.cap));
            if power.is_zero() {
                break;
            }
            acc = &acc + &power;
        }
        Ok(TruncSeries::new(acc.scale(&inv0), self.cap))
    }

    /// True when the series depends on no variable other than `var`.
    pub fn depends_only_on(&self, var: usize) -> bool {
        (0..self.nvars()).filter(|&v| v != var).all(|v| self.poly.is_free_of(v))
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        self.poly.eval(point)
    }
}

impl Add for &TruncSeries {
    type Output = TruncSeries;
    fn add(self, rhs: &TruncSeries) -> TruncSeries {
        TruncSeries::new(&self.poly + &rhs.poly, self.cap.min(rhs.cap))
    }
}

impl Sub for &TruncSeries {
    type Output = TruncSeries;
    fn sub(self, rhs: &TruncSeries) -> TruncSeries {
        TruncSeries::new(&self.poly - &rhs.poly, self.cap.min(rhs.cap))
    }
}

impl Neg for &TruncSeries {
    type Output = TruncSeries;
    fn neg(self) -> TruncSeries {
        TruncSeries {
            poly: -&self.poly,
            cap: self.cap,
        }
    }
}

impl Mul for &TruncSeries {
    type Output = TruncSeries;
    fn mul(self, rhs: &TruncSeries) -> TruncSeries {
        let cap = self.cap.min(rhs.cap);
        if self.poly.is_zero() || rhs.poly.is_zero() {
            return TruncSeries::zero(self.nvars(), cap);
        }
        TruncSeries {
            poly: self.poly.mul_truncated(&rhs.poly, Some(cap)),
            cap,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rat;
    use proptest::prelude::*;

    #[test]
    fn geometric_series() {
        let t = TruncSeries::var(1, 0, 4);
        let s = &TruncSeries::one(1, 4) - &t;
        let inv = s.inverse().unwrap();
        let expected = Poly::from_terms(1, (0..=4).map(|k| (vec![k], rat(1, 1))));
        assert_eq!(inv, TruncSeries::new(expected, 4));
    }

    #[test]
    fn non_unit_has_no_inverse() {
        let t = TruncSeries::var(2, 1, 3);
        assert_eq!(t.inverse(), Err(Error::NotUnit));
    }

    #[test]
    fn products_truncate_at_cap() {
        let t = TruncSeries::var(1, 0, 2);
        let t3 = &(&t * &t) * &t;
        assert!(t3.is_zero());
        assert_eq!(t3.cap(), 2);
    }

    #[test]
    fn derivative_lowers_cap() {
        let s = TruncSeries::new(Poly::monomial(2, vec![2, 1], rat(1, 1)), 5);
        let d = s.diff(0);
        assert_eq!(d.cap(), 4);
        assert_eq!(d.poly(), &Poly::monomial(2, vec![1, 1], rat(2, 1)));
    }

    fn unit_series() -> impl Strategy<Value = TruncSeries> {
        (
            prop::collection::vec((0u32..3, 0u32..3, -4i64..=4), 0..6),
            prop::sample::select(vec![-3i64, -1, 1, 2, 5]),
            1u32..6,
        )
            .prop_map(|(terms, c0, cap)| {
                let mut p = Poly::constant(2, rat(c0, 1));
                for (a, b, c) in terms {
                    if a + b > 0 {
                        p = &p + &Poly::monomial(2, vec![a, b], rat(c, 1));
                    }
                }
                TruncSeries::new(p, cap)
            })
    }

    proptest! {
        #[test]
        fn inverse_multiplies_back_to_one(s in unit_series()) {
            let inv = s.inverse().unwrap();
            // multiply-back oracle, computed with untruncated polynomial product
            let full = s.poly() * inv.poly();
            prop_assert_eq!(full.truncate(s.cap()), Poly::one(2));
        }
    }
}
