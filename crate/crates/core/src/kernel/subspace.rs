use num_traits::{One, Zero};

use super::matrix::rref_rows;
use super::{Matrix, Rational};
use crate::error::{Error, Result};

/// A linear subspace of `Q^ambient`, stored by its reduced row-echelon
/// basis. The basis is canonical, so derived equality is equality of
/// subspaces.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::zeros(0, ambient),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::identity(ambient),
        }
    }

    /// Span of the given vectors.
    pub fn span(ambient: usize, vectors: Vec<Vec<Rational>>) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != ambient) {
            return Err(Error::AmbientMismatch(v.len(), ambient));
        }
        let (rows, _) = rref_rows(vectors, ambient);
        Ok(Subspace {
            ambient,
            basis: Matrix::from_rows(ambient, rows)?,
        })
    }

    /// Row space of `m`.
    pub fn row_space(m: &Matrix) -> Self {
        Subspace {
            ambient: m.cols(),
            basis: m.rref(),
        }
    }

    pub fn span_i64(ambient: usize, vectors: &[&[i64]]) -> Result<Self> {
        Self::span(
            ambient,
            vectors
                .iter()
                .map(|v| v.iter().map(|&x| Rational::from_integer(x.into())).collect())
                .collect(),
        )
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// Canonical (RREF) basis, one vector per row.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Rational>> {
        self.basis.row_vecs()
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(self.ambient, other.ambient));
        }
        Ok(())
    }

    /// Smallest subspace containing both.
    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let mut rows = self.basis_vectors();
        rows.extend(other.basis_vectors());
        Subspace::span(self.ambient, rows)
    }

    /// Largest subspace contained in both, read off the kernel of the
    /// transposed stacked bases.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.ambient));
        }
        let k = self.dim();
        let mut stacked = self.basis_vectors();
        stacked.extend(other.basis_vectors());
        let stacked = Matrix::from_rows(self.ambient, stacked)?;
        let relations = stacked.transpose().nullspace();
        let vectors = (0..relations.rows())
            .map(|r| {
                let coeffs = &relations.row(r)[..k];
                combine(coeffs, &self.basis, self.ambient)
            })
            .collect();
        Subspace::span(self.ambient, vectors)
    }

    /// Complement for the standard dot pairing on coordinates.
    pub fn orthogonal_complement(&self) -> Subspace {
        if self.is_zero() {
            return Subspace::full(self.ambient);
        }
        Subspace {
            ambient: self.ambient,
            basis: self.basis.nullspace().rref(),
        }
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        if v.len() != self.ambient {
            return false;
        }
        // Reduce against the RREF basis using its pivots.
        let mut w = v.to_vec();
        for r in 0..self.dim() {
            let row = self.basis.row(r);
            let p = row.iter().position(|x| !x.is_zero()).expect("basis rows are nonzero");
            if w[p].is_zero() {
                continue;
            }
            let f = w[p].clone();
            for (x, y) in w.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        w.iter().all(Zero::is_zero)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient
            && self.dim() <= other.dim()
            && (0..self.dim()).all(|r| other.contains(self.basis.row(r)))
    }

    /// Image under `f` (a `target x source` matrix acting on columns).
    pub fn image(&self, f: &Matrix) -> Result<Subspace> {
        if f.cols() != self.ambient {
            return Err(Error::ShapeMismatch(format!(
                "map with {} columns applied to subspace of ambient {}",
                f.cols(),
                self.ambient
            )));
        }
        let vectors = (0..self.dim()).map(|r| f.apply(self.basis.row(r))).collect();
        Subspace::span(f.rows(), vectors)
    }

    /// Full preimage `{x : f x in self}`.
    pub fn preimage(&self, f: &Matrix) -> Result<Subspace> {
        if f.rows() != self.ambient {
            return Err(Error::ShapeMismatch(format!(
                "map with {} rows pulled back along subspace of ambient {}",
                f.rows(),
                self.ambient
            )));
        }
        let annihilator = self.orthogonal_complement();
        if annihilator.is_zero() {
            return Ok(Subspace::full(f.cols()));
        }
        let constraints = annihilator.basis.checked_mul(f)?;
        Ok(Subspace {
            ambient: f.cols(),
            basis: constraints.nullspace().rref(),
        })
    }

    /// The subspace `self ⊗ other` of `Q^(a*b)`, coordinates ordered
    /// lexicographically (left factor major).
    pub fn tensor(&self, other: &Subspace) -> Subspace {
        let ambient = self.ambient * other.ambient;
        let mut vectors = Vec::with_capacity(self.dim() * other.dim());
        for i in 0..self.dim() {
            for j in 0..other.dim() {
                vectors.push(kron_vec(self.basis.row(i), other.basis.row(j)));
            }
        }
        // A tensor of two RREF bases is independent but not itself reduced.
        Subspace::span(ambient, vectors).expect("tensor ambient")
    }
}

fn combine(coeffs: &[Rational], basis: &Matrix, ambient: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); ambient];
    for (r, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (x, y) in v.iter_mut().zip(basis.row(r)) {
            if !y.is_zero() {
                *x += c * y;
            }
        }
    }
    v
}

pub(crate) fn kron_vec(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            if x.is_zero() || y.is_zero() {
                out.push(Rational::zero());
            } else if x.is_one() {
                out.push(y.clone());
            } else {
                out.push(x * y);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::kron;
    use proptest::prelude::*;

    fn sp(ambient: usize, v: &[&[i64]]) -> Subspace {
        Subspace::span_i64(ambient, v).unwrap()
    }

    #[test]
    fn sum_examples() {
        let x = sp(2, &[&[1, 0]]);
        let y = sp(2, &[&[0, 1]]);
        assert_eq!(x.sum(&y).unwrap(), Subspace::full(2));
        assert_eq!(x.sum(&x).unwrap(), x);
        let s = sp(3, &[&[1, 1, 0]]).sum(&sp(3, &[&[0, 1, 1]])).unwrap();
        assert_eq!(s.dim(), 2);
        // rref of [[1,1,0],[0,1,1]] is [[1,0,-1],[0,1,1]]
        assert_eq!(s, sp(3, &[&[1, 0, -1], &[0, 1, 1]]));
    }

    #[test]
    fn intersect_examples() {
        let plane = Subspace::full(2);
        let diag = sp(2, &[&[1, 1]]);
        assert_eq!(plane.intersect(&diag).unwrap(), diag);
        assert!(diag.intersect(&Subspace::zero(2)).unwrap().is_zero());
    }

    #[test]
    fn ambient_mismatch_is_error() {
        let a = Subspace::full(2);
        let b = Subspace::full(3);
        assert_eq!(a.sum(&b), Err(Error::AmbientMismatch(2, 3)));
        assert!(a.intersect(&b).is_err());
    }

    #[test]
    fn complement_examples() {
        assert_eq!(Subspace::zero(4).orthogonal_complement(), Subspace::full(4));
        assert_eq!(sp(2, &[&[1, 1]]).orthogonal_complement(), sp(2, &[&[1, -1]]));
    }

    #[test]
    fn image_identity_and_preimage_shape_error() {
        let u = sp(3, &[&[1, 2, 3]]);
        assert_eq!(u.image(&Matrix::identity(3)).unwrap(), u);
        assert!(u.preimage(&Matrix::identity(2)).is_err());
        assert!(u.image(&Matrix::identity(2)).is_err());
    }

    #[test]
    fn tensor_dimension_and_kron_agree() {
        let u = sp(2, &[&[1, 1]]);
        let w = sp(3, &[&[1, 0, 2], &[0, 1, 0]]);
        let t = u.tensor(&w);
        assert_eq!(t.dim(), 2);
        // Independent route: rows of kron(U, W) basis matrices.
        assert_eq!(t, Subspace::row_space(&kron(u.basis(), w.basis())));
    }

    fn small_subspace(max_ambient: usize) -> impl Strategy<Value = Subspace> {
        (1..=max_ambient).prop_flat_map(|n| {
            prop::collection::vec(prop::collection::vec(-3i64..=3, n), 0..=n + 1).prop_map(move |rows| {
                let rows: Vec<Vec<Rational>> = rows
                    .into_iter()
                    .map(|r| r.into_iter().map(|x| Rational::from_integer(x.into())).collect())
                    .collect();
                Subspace::span(n, rows).unwrap()
            })
        })
    }

    fn pair(max_ambient: usize) -> impl Strategy<Value = (Subspace, Subspace)> {
        (1..=max_ambient).prop_flat_map(|n| {
            let one = prop::collection::vec(prop::collection::vec(-3i64..=3, n), 0..=n);
            (one.clone(), one).prop_map(move |(a, b)| {
                let mk = |rows: Vec<Vec<i64>>| {
                    Subspace::span(
                        n,
                        rows.into_iter()
                            .map(|r| r.into_iter().map(|x| Rational::from_integer(x.into())).collect())
                            .collect(),
                    )
                    .unwrap()
                };
                (mk(a), mk(b))
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(120))]

        #[test]
        fn dimension_formula((u, w) in pair(12)) {
            let s = u.sum(&w).unwrap();
            let i = u.intersect(&w).unwrap();
            prop_assert_eq!(u.dim() + w.dim(), s.dim() + i.dim());
            prop_assert!(i.is_subspace_of(&u) && i.is_subspace_of(&w));
            prop_assert!(u.is_subspace_of(&s) && w.is_subspace_of(&s));
        }

        #[test]
        fn complement_is_involutive(u in small_subspace(10)) {
            let c = u.orthogonal_complement();
            prop_assert_eq!(u.dim() + c.dim(), u.ambient());
            prop_assert_eq!(c.orthogonal_complement(), u);
        }

        #[test]
        fn complement_reverses_order((u, w) in pair(8)) {
            let s = u.sum(&w).unwrap();
            prop_assert!(s.orthogonal_complement().is_subspace_of(&u.orthogonal_complement()));
        }

        #[test]
        fn preimage_contains_original(
            u in small_subspace(5),
            entries in prop::collection::vec(-2i64..=2, 25),
            target in 1usize..=5,
        ) {
            let n = u.ambient();
            let f = Matrix::from_fn(target, n, |i, j| Rational::from_integer(entries[i * 5 + j].into()));
            let img = u.image(&f).unwrap();
            let pre = img.preimage(&f).unwrap();
            // membership oracle: every basis vector of u maps into img
            for v in u.basis_vectors() {
                prop_assert!(img.contains(&f.apply(&v)));
                prop_assert!(pre.contains(&v));
            }
        }
    }
}
