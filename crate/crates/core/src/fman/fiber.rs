use num_traits::Zero;
use serde::Serialize;

use super::structure::FStructure;
use crate::error::{Error, Result};
use crate::kernel::{Matrix, Rational};

/// The finite commutative algebra `(T_{u0} M, •)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberAlgebra {
    pub n: usize,
    /// `c[(i*n + j)*n + k]`.
    #[serde(with = "crate::kernel::serde_rational::seq")]
    pub c: Vec<Rational>,
}

impl FiberAlgebra {
    /// Matrix of multiplication by `x` in the coordinate basis.
    pub fn left_mul(&self, x: &[Rational]) -> Matrix {
        let n = self.n;
        Matrix::from_fn(n, n, |k, j| {
            (0..n).fold(Rational::zero(), |acc, i| acc + &x[i] * &self.c[(i * n + j) * n + k])
        })
    }

    /// `T(∂_i, ∂_j) = tr(L_{∂_i•∂_j})`.
    pub fn trace_form(&self) -> Matrix {
        let n = self.n;
        let traces: Vec<Rational> = (0..n)
            .map(|k| {
                let mut unit = vec![Rational::zero(); n];
                unit[k] = Rational::from_integer(1.into());
                let l = self.left_mul(&unit);
                (0..n).fold(Rational::zero(), |acc, r| acc + l.get(r, r))
            })
            .collect();
        Matrix::from_fn(n, n, |i, j| {
            (0..n).fold(Rational::zero(), |acc, k| acc + &self.c[(i * n + j) * n + k] * &traces[k])
        })
    }
}

/// Evaluates the structure functions at `u0`. Away from the origin every
/// structure function must be a polynomial of degree below its cap, since
/// otherwise dropped terms could contribute.
pub fn fiber_algebra(f: &FStructure, u0: &[Rational]) -> Result<FiberAlgebra> {
    let n = f.n();
    if u0.len() != n {
        return Err(Error::ShapeMismatch(format!("point has {} coordinates, expected {n}", u0.len())));
    }
    let at_origin = u0.iter().all(Zero::is_zero);
    let c = f.structure_functions();
    if !at_origin && c.iter().any(|s| s.poly().total_degree().is_some_and(|d| d >= s.cap())) {
        return Err(Error::CapOverflow);
    }
    Ok(FiberAlgebra {
        n,
        c: c.iter().map(|s| s.eval(u0)).collect(),
    })
}

/// Semisimple iff the trace form is nondegenerate (characteristic zero).
pub fn is_semisimple_fiber(alg: &FiberAlgebra) -> bool {
    alg.trace_form().rank() == alg.n
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fman::structure::{i2_3, semisimple};
    use crate::kernel::rat;

    #[test]
    fn semisimple_everywhere() {
        let f = semisimple(3, 4);
        for p in [[0, 0, 0], [1, 2, 3], [-1, 5, 0]] {
            let u0: Vec<Rational> = p.iter().map(|&x| rat(x, 1)).collect();
            assert!(is_semisimple_fiber(&fiber_algebra(&f, &u0).unwrap()));
        }
    }

    #[test]
    fn i2_3_nilpotent_at_zero() {
        let f = i2_3(6);
        let at = |u2| fiber_algebra(&f, &[rat(0, 1), rat(u2, 1)]).unwrap();
        assert_eq!(at(0).trace_form().rank(), 1);
        assert!(!is_semisimple_fiber(&at(0)));
        assert!(is_semisimple_fiber(&at(1)));
    }

    #[test]
    fn truncated_series_rejected_away_from_origin() {
        let f = i2_3(1);
        assert_eq!(fiber_algebra(&f, &[rat(0, 1), rat(1, 1)]), Err(Error::CapOverflow));
        assert!(fiber_algebra(&f, &[rat(0, 1), rat(0, 1)]).is_ok());
    }
}
