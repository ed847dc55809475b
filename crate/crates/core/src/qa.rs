//! Quadratic algebras as presentations `{A1, R(A)}` with `R(A) ⊆ A1 ⊗ A1`.
//!
//! Coordinates on `A1 ⊗ A1` are lexicographic: the basis tensor
//! `x_i ⊗ x_j` sits at index `i*n + j`. Dual spaces are identified with
//! the original coordinates through the standard dual basis, so the
//! Koszul dual is the dot-product complement of the relation space.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::gv::GvInstance;

use crate::error::{Error, Result};
use crate::kernel::{kron, Matrix, Rational, Subspace};

/// Default bound on `n^maxdeg` for [`hilbert_dims`].
pub const HILBERT_COORD_LIMIT: u128 = 1_000_000;

/// A quadratic algebra presentation. Generator names are labels only and
/// do not take part in equality.
#[derive(Clone, Debug)]
pub struct QuadAlgebra {
    n: usize,
    names: Option<Vec<String>>,
    rel: Subspace,
}

impl PartialEq for QuadAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.rel == other.rel
    }
}

impl Eq for QuadAlgebra {}

impl QuadAlgebra {
    pub fn new(n: usize, rel: Subspace) -> Result<Self> {
        if rel.ambient() != n * n {
            return Err(Error::AmbientMismatch(rel.ambient(), n * n));
        }
        Ok(QuadAlgebra { n, names: None, rel })
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.n {
            return Err(Error::InvalidPresentation(format!(
                "{} names for {} generators",
                names.len(),
                self.n
            )));
        }
        self.names = Some(names);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    /// Generator names, defaulting to `x0, x1, ...`.
    pub fn display_names(&self) -> Vec<String> {
        match &self.names {
            Some(v) => v.clone(),
            None => (0..self.n).map(|i| format!("x{i}")).collect(),
        }
    }

    pub fn rel(&self) -> &Subspace {
        &self.rel
    }

    /// Free algebra on `n` generators (no relations).
    pub fn free(n: usize) -> Self {
        QuadAlgebra::new(n, Subspace::zero(n * n)).expect("ambient")
    }

    /// Polynomial algebra `k[x_1..x_m]`: relations `x_i x_j - x_j x_i`.
    pub fn polynomial(m: usize) -> Self {
        let mut rows = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                let mut v = vec![Rational::zero(); m * m];
                v[i * m + j] = Rational::one();
                v[j * m + i] = -Rational::one();
                rows.push(v);
            }
        }
        QuadAlgebra::new(m, Subspace::span(m * m, rows).expect("ambient")).expect("ambient")
    }

    /// Exterior algebra: relations `x_i x_i` and `x_i x_j + x_j x_i`.
    pub fn exterior(m: usize) -> Self {
        let mut rows = Vec::new();
        for i in 0..m {
            for j in i..m {
                let mut v = vec![Rational::zero(); m * m];
                v[i * m + j] = Rational::one();
                v[j * m + i] = Rational::one();
                rows.push(v);
            }
        }
        QuadAlgebra::new(m, Subspace::span(m * m, rows).expect("ambient")).expect("ambient")
    }
}

/// Linear map `f1: A1 -> B1`, a `target x source` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinMap1(pub Matrix);

impl LinMap1 {
    pub fn matrix(&self) -> &Matrix {
        &self.0
    }
}

/// The unit `k[τ]/(τ²)`.
pub fn qa_unit() -> QuadAlgebra {
    QuadAlgebra::new(1, Subspace::full(1)).expect("ambient")
}

/// The dualizing object `k[t]`.
pub fn qa_dualizing() -> QuadAlgebra {
    QuadAlgebra::free(1)
}

pub fn qa_dual(a: &QuadAlgebra) -> QuadAlgebra {
    QuadAlgebra {
        n: a.n,
        names: a.names.clone(),
        rel: a.rel.orthogonal_complement(),
    }
}

/// Permutation `A1⊗A1⊗B1⊗B1 -> (A1⊗B1)⊗(A1⊗B1)` moving the middle two factors.
pub fn s23_perm(na: usize, nb: usize) -> Matrix {
    let dim = na * na * nb * nb;
    let mut m = Matrix::zeros(dim, dim);
    for i1 in 0..na {
        for i2 in 0..na {
            for j1 in 0..nb {
                for j2 in 0..nb {
                    let src = ((i1 * na + i2) * nb + j1) * nb + j2;
                    let dst = ((i1 * nb + j1) * na + i2) * nb + j2;
                    m.set(dst, src, Rational::one());
                }
            }
        }
    }
    m
}

/// Permutation `(A1⊗B1)^⊗2 -> (B1⊗A1)^⊗2` swapping the factors inside each slot.
pub fn flip_perm(na: usize, nb: usize) -> Matrix {
    let dim = na * na * nb * nb;
    let mut m = Matrix::zeros(dim, dim);
    for i1 in 0..na {
        for j1 in 0..nb {
            for i2 in 0..na {
                for j2 in 0..nb {
                    let src = ((i1 * nb + j1) * na + i2) * nb + j2;
                    let dst = ((j1 * na + i1) * nb + j2) * na + i2;
                    m.set(dst, src, Rational::one());
                }
            }
        }
    }
    m
}

fn product_with(a: &QuadAlgebra, b: &QuadAlgebra, rel_ab: Subspace, perm: &Matrix) -> QuadAlgebra {
    QuadAlgebra {
        n: a.n * b.n,
        names: None,
        rel: rel_ab.image(perm).expect("permutation shape"),
    }
}

/// Black product: relations `S23(R(A) ⊗ R(B))`.
pub fn qa_black(a: &QuadAlgebra, b: &QuadAlgebra) -> QuadAlgebra {
    product_with(a, b, a.rel.tensor(&b.rel), &s23_perm(a.n, b.n))
}

/// White product: relations `S23(R(A) ⊗ B1^⊗2 + A1^⊗2 ⊗ R(B))`.
pub fn qa_white(a: &QuadAlgebra, b: &QuadAlgebra) -> QuadAlgebra {
    product_with(a, b, white_rel_unpermuted(a, b), &s23_perm(a.n, b.n))
}

pub(crate) fn white_rel_unpermuted(a: &QuadAlgebra, b: &QuadAlgebra) -> Subspace {
    let left = a.rel.tensor(&Subspace::full(b.n * b.n));
    let right = Subspace::full(a.n * a.n).tensor(&b.rel);
    left.sum(&right).expect("same ambient")
}

/// Transports a presentation on `A1⊗B1` to `B1⊗A1`.
pub fn qa_flip(ab: &QuadAlgebra, na: usize, nb: usize) -> Result<QuadAlgebra> {
    if ab.n != na * nb {
        return Err(Error::ShapeMismatch(format!("{} generators is not {na}x{nb}", ab.n)));
    }
    Ok(QuadAlgebra {
        n: ab.n,
        names: None,
        rel: ab.rel.image(&flip_perm(na, nb))?,
    })
}

/// True iff `(f⊗f)(R(A)) ⊆ R(B)`.
pub fn is_morphism(f: &LinMap1, a: &QuadAlgebra, b: &QuadAlgebra) -> Result<bool> {
    let m = f.matrix();
    if m.rows() != b.n || m.cols() != a.n {
        return Err(Error::ShapeMismatch(format!(
            "map is {}x{}, expected {}x{}",
            m.rows(),
            m.cols(),
            b.n,
            a.n
        )));
    }
    Ok(a.rel.image(&kron(m, m))?.is_subspace_of(&b.rel))
}

/// Turns `g: A1⊗B1 -> k` (a `1 x na*nb` row) into `ĝ: A1 -> B1*` with
/// `ĝ(x)(y) = g(x⊗y)`.
pub fn curry(g: &LinMap1, na: usize, nb: usize) -> Result<LinMap1> {
    let m = g.matrix();
    if m.rows() != 1 || m.cols() != na * nb {
        return Err(Error::ShapeMismatch(format!(
            "expected a 1x{} functional, got {}x{}",
            na * nb,
            m.rows(),
            m.cols()
        )));
    }
    Ok(LinMap1(Matrix::from_fn(nb, na, |j, i| m.get(0, i * nb + j).clone())))
}

pub fn uncurry(h: &LinMap1, na: usize, nb: usize) -> Result<LinMap1> {
    let m = h.matrix();
    if m.rows() != nb || m.cols() != na {
        return Err(Error::ShapeMismatch(format!("expected {nb}x{na}, got {}x{}", m.rows(), m.cols())));
    }
    Ok(LinMap1(Matrix::from_fn(1, na * nb, |_, k| m.get(k % nb, k / nb).clone())))
}

/// Both sides of `Hom(A•B, K) ≅ Hom(A, B^!)` for one map `g`.
pub fn adjunction_witness(a: &QuadAlgebra, b: &QuadAlgebra, g: &LinMap1) -> Result<(bool, bool)> {
    let lhs = is_morphism(g, &qa_black(a, b), &qa_dualizing())?;
    let rhs = is_morphism(&curry(g, a.n, b.n)?, a, &qa_dual(b))?;
    Ok((lhs, rhs))
}

pub fn hilbert_dims(a: &QuadAlgebra, maxdeg: usize) -> Result<Vec<u64>> {
    hilbert_dims_with_limit(a, maxdeg, HILBERT_COORD_LIMIT)
}

/// Dimensions of the graded pieces `A_0..A_maxdeg`. The degree-d ideal
/// component is the span of all shifts `V^⊗i ⊗ R ⊗ V^⊗(d-2-i)`.
pub fn hilbert_dims_with_limit(a: &QuadAlgebra, maxdeg: usize, limit: u128) -> Result<Vec<u64>> {
    let n = a.n as u128;
    let needed = n.checked_pow(maxdeg as u32).unwrap_or(u128::MAX);
    if needed > limit {
        return Err(Error::ResourceLimit {
            what: "Hilbert series coordinates",
            needed,
            limit,
        });
    }
    let mut dims = Vec::with_capacity(maxdeg + 1);
    let rel = a.rel.basis_vectors();
    for d in 0..=maxdeg {
        let total = a.n.pow(d as u32) as u64;
        if d < 2 {
            dims.push(total);
            continue;
        }
        let mut ech = SparseEchelon::default();
        for i in 0..=d - 2 {
            let prefix = a.n.pow(i as u32);
            let suffix = a.n.pow((d - 2 - i) as u32);
            let mid = a.n * a.n;
            for r in &rel {
                for p in 0..prefix {
                    for s in 0..suffix {
                        let v: BTreeMap<usize, Rational> = r
                            .iter()
                            .enumerate()
                            .filter(|(_, c)| !c.is_zero())
                            .map(|(k, c)| ((p * mid + k) * suffix + s, c.clone()))
                            .collect();
                        ech.insert(v);
                    }
                }
            }
        }
        dims.push(total - ech.rank() as u64);
    }
    Ok(dims)
}

/// Incremental echelon basis over sparse rows, used for rank counting.
#[derive(Default)]
struct SparseEchelon {
    pivots: BTreeMap<usize, BTreeMap<usize, Rational>>,
}

impl SparseEchelon {
    fn rank(&self) -> usize {
        self.pivots.len()
    }

    fn insert(&mut self, mut v: BTreeMap<usize, Rational>) {
        while let Some((&lead, _)) = v.iter().next() {
            match self.pivots.get(&lead) {
                Some(row) => {
                    let f = v[&lead].clone();
                    for (k, c) in row {
                        let e = v.entry(*k).or_insert_with(Rational::zero);
                        *e -= &f * c;
                        if e.is_zero() {
                            v.remove(k);
                        }
                    }
                }
                None => {
                    let inv = v[&lead].recip();
                    for c in v.values_mut() {
                        *c *= &inv;
                    }
                    self.pivots.insert(lead, v);
                    return;
                }
            }
        }
    }
}

/// Random presentation with `1 <= n <= max_n`, small integer relation
/// vectors and a relation space of any dimension.
pub fn random_algebra<R: Rng>(rng: &mut R, max_n: usize) -> QuadAlgebra {
    let n = rng.gen_range(1..=max_n);
    let amb = n * n;
    let k = rng.gen_range(0..=amb);
    let rows = (0..k)
        .map(|_| {
            (0..amb)
                .map(|_| {
                    if rng.gen_bool(0.5) {
                        Rational::zero()
                    } else {
                        Rational::from_integer(rng.gen_range(-2i64..=2).into())
                    }
                })
                .collect()
        })
        .collect();
    QuadAlgebra::new(n, Subspace::span(amb, rows).expect("ambient")).expect("ambient")
}

/// Random functional `A1⊗B1 -> k`.
pub fn random_functional<R: Rng>(rng: &mut R, len: usize) -> LinMap1 {
    LinMap1(Matrix::from_fn(1, len, |_, _| {
        Rational::from_integer(rng.gen_range(-3i64..=3).into())
    }))
}

/// Which products the QA instance uses; the non-standard variants are
/// negative controls.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QaVariant {
    Standard,
    /// Black product built without the middle-factor permutation.
    BrokenS23,
}

/// The category of quadratic algebras as a [`GvInstance`].
#[derive(Clone, Debug)]
pub struct QaInstance {
    pub samples: usize,
    pub max_n: usize,
    pub variant: QaVariant,
}

impl Default for QaInstance {
    fn default() -> Self {
        QaInstance {
            samples: 50,
            max_n: 3,
            variant: QaVariant::Standard,
        }
    }
}

impl GvInstance for QaInstance {
    type Obj = QuadAlgebra;

    fn name(&self) -> String {
        match self.variant {
            QaVariant::Standard => "quadratic algebras".into(),
            QaVariant::BrokenS23 => "quadratic algebras [black product without S23]".into(),
        }
    }

    fn sample_objects(&self, seed: u64) -> Vec<QuadAlgebra> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..self.samples).map(|_| random_algebra(&mut rng, self.max_n)).collect()
    }

    fn black(&self, x: &QuadAlgebra, y: &QuadAlgebra) -> QuadAlgebra {
        match self.variant {
            QaVariant::Standard => qa_black(x, y),
            QaVariant::BrokenS23 => {
                product_with(x, y, x.rel.tensor(&y.rel), &Matrix::identity(x.n * x.n * y.n * y.n))
            }
        }
    }

    fn white(&self, x: &QuadAlgebra, y: &QuadAlgebra) -> QuadAlgebra {
        qa_white(x, y)
    }

    fn dual(&self, x: &QuadAlgebra) -> QuadAlgebra {
        qa_dual(x)
    }

    fn unit(&self) -> QuadAlgebra {
        qa_unit()
    }

    fn dualizing(&self) -> QuadAlgebra {
        qa_dualizing()
    }

    fn eq(&self, x: &QuadAlgebra, y: &QuadAlgebra) -> bool {
        x == y
    }

    fn rel_included(&self, x: &QuadAlgebra, y: &QuadAlgebra) -> bool {
        x.n == y.n && x.rel.is_subspace_of(&y.rel)
    }

    fn is_valid(&self, x: &QuadAlgebra) -> bool {
        x.rel.ambient() == x.n * x.n
    }

    fn flip(&self, product: &QuadAlgebra, left: &QuadAlgebra, right: &QuadAlgebra) -> QuadAlgebra {
        qa_flip(product, left.n, right.n).expect("product shape")
    }

    fn size(&self, x: &QuadAlgebra) -> usize {
        x.n
    }

    fn describe(&self, x: &QuadAlgebra) -> serde_json::Value {
        serde_json::to_value(crate::io::QaJson::from(x)).expect("serializable")
    }
}
