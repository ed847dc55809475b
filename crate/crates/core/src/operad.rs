//! Binary quadratic operads as presentations `{E, R ⊆ F(E)(3)}`.
//!
//! The arity-3 part of the free operad is encoded by triples `(t, a, b)`:
//! `t` is the leaf not attached to the inner vertex, `b` the inner
//! operation applied to the remaining two leaves in increasing order, and
//! `a` the root operation applied to (inner output, leaf `t`). The
//! coordinate index is `t*d² + a*d + b` with zero-based `t`. Leaf
//! permutations relabel the tree and apply `σ` to the inner operation
//! when they reverse its two inputs; the root is never reordered.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gv::GvInstance;
use crate::kernel::{kron, Matrix, Rational, Subspace};

/// A permutation of the leaves `{0,1,2}`: leaf `i` goes to `p[i]`.
pub type Perm3 = [usize; 3];

pub const S3: [Perm3; 6] = [[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];

/// Transpositions generating `S3`.
pub const S3_GENERATORS: [Perm3; 2] = [[1, 0, 2], [0, 2, 1]];

/// Triples in the operad axiom suite are limited to `d1*d2*d3` at most this.
pub const QO_TRIPLE_SIZE_BOUND: usize = 4;

/// Signs `s_t` of the duality pairing `⟨(t,a,b),(t,a,b)⟩ = s_t`.
pub const PAIRING_SIGNS: [i64; 3] = [1, -1, 1];

/// `(p ∘ q)(i) = p(q(i))`.
pub fn compose(p: &Perm3, q: &Perm3) -> Perm3 {
    [p[q[0]], p[q[1]], p[q[2]]]
}

pub fn perm_sign(p: &Perm3) -> i64 {
    let inversions = (0..3)
        .flat_map(|i| (i + 1..3).map(move |j| (i, j)))
        .filter(|&(i, j)| p[i] > p[j])
        .count();
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

fn inner_pair(t: usize) -> (usize, usize) {
    match t {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    }
}

#[inline]
fn tree_index(d: usize, t: usize, a: usize, b: usize) -> usize {
    (t * d + a) * d + b
}

/// An `S2`-module: a space `E` with an involution `σ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct S2Module {
    d: usize,
    sigma: Matrix,
}

impl S2Module {
    pub fn new(sigma: Matrix) -> Result<Self> {
        if !sigma.is_square() {
            return Err(Error::ShapeMismatch("involution must be square".into()));
        }
        let d = sigma.rows();
        if &sigma * &sigma != Matrix::identity(d) {
            return Err(Error::InvalidPresentation("σ² is not the identity".into()));
        }
        Ok(S2Module { d, sigma })
    }

    pub fn trivial() -> Self {
        S2Module::new(Matrix::identity(1)).expect("involution")
    }

    pub fn sign() -> Self {
        S2Module::new(Matrix::from_i64(&[&[-1]])).expect("involution")
    }

    /// The regular representation on `{μ, σμ}`.
    pub fn regular() -> Self {
        S2Module::new(Matrix::from_i64(&[&[0, 1], &[1, 0]])).expect("involution")
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn sigma(&self) -> &Matrix {
        &self.sigma
    }

    /// `E1 ⊗ E2` with the diagonal involution.
    pub fn tensor(&self, other: &S2Module) -> S2Module {
        S2Module {
            d: self.d * other.d,
            sigma: kron(&self.sigma, &other.sigma),
        }
    }

    /// `E ⊗ Sgn`.
    pub fn sign_twist(&self) -> S2Module {
        S2Module {
            d: self.d,
            sigma: self.sigma.scale(&-Rational::one()),
        }
    }

    /// `E* ⊗ Sgn`, with `E*` in the dual basis.
    pub fn twisted_dual(&self) -> S2Module {
        S2Module {
            d: self.d,
            sigma: self.sigma.transpose().scale(&-Rational::one()),
        }
    }

    /// Dimension of `F(E)(3)`.
    pub fn arity3_dim(&self) -> usize {
        3 * self.d * self.d
    }
}

/// Action of a leaf permutation on `F(E)(3)`.
pub fn s3_action(e: &S2Module, pi: &Perm3) -> Matrix {
    let d = e.d;
    let dim = e.arity3_dim();
    let mut m = Matrix::zeros(dim, dim);
    for t in 0..3 {
        let (i, j) = inner_pair(t);
        let reversed = pi[i] > pi[j];
        let t2 = pi[t];
        for a in 0..d {
            for b in 0..d {
                let src = tree_index(d, t, a, b);
                if reversed {
                    for b2 in 0..d {
                        let c = e.sigma.get(b2, b);
                        if !c.is_zero() {
                            m.set(tree_index(d, t2, a, b2), src, c.clone());
                        }
                    }
                } else {
                    m.set(tree_index(d, t2, a, b), src, Rational::one());
                }
            }
        }
    }
    m
}

pub fn is_s3_stable(e: &S2Module, rel: &Subspace) -> bool {
    rel.ambient() == e.arity3_dim()
        && S3_GENERATORS
            .iter()
            .all(|g| rel.image(&s3_action(e, g)).map(|r| &r == rel).unwrap_or(false))
}

/// `diag(s_t)` on `F(E)(3)` for `dim E = d`.
pub fn pairing_matrix(d: usize) -> Matrix {
    let dim = 3 * d * d;
    let mut m = Matrix::zeros(dim, dim);
    for i in 0..dim {
        m.set(i, i, Rational::from_integer(PAIRING_SIGNS[i / (d * d)].into()));
    }
    m
}

/// `F(f)(3)`: `(t,a,b) ↦ (t, f a, f b)`.
pub fn free_map3(f: &Matrix) -> Matrix {
    let (dq, dp) = (f.rows(), f.cols());
    let ff = kron(f, f);
    let mut m = Matrix::zeros(3 * dq * dq, 3 * dp * dp);
    for t in 0..3 {
        for r in 0..dq * dq {
            for c in 0..dp * dp {
                let x = ff.get(r, c);
                if !x.is_zero() {
                    m.set(t * dq * dq + r, t * dp * dp + c, x.clone());
                }
            }
        }
    }
    m
}

/// A binary quadratic operad presentation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadOperad {
    e: S2Module,
    rel: Subspace,
}

impl QuadOperad {
    /// Checks the ambient dimension and `S3`-stability of `rel`.
    pub fn new(e: S2Module, rel: Subspace) -> Result<Self> {
        if rel.ambient() != e.arity3_dim() {
            return Err(Error::AmbientMismatch(rel.ambient(), e.arity3_dim()));
        }
        if !is_s3_stable(&e, &rel) {
            return Err(Error::InvalidPresentation("relation space is not S3-stable".into()));
        }
        Ok(QuadOperad { e, rel })
    }

    pub fn e(&self) -> &S2Module {
        &self.e
    }

    pub fn d(&self) -> usize {
        self.e.d
    }

    pub fn rel(&self) -> &Subspace {
        &self.rel
    }

    pub fn is_valid(&self) -> bool {
        &self.e.sigma * &self.e.sigma == Matrix::identity(self.e.d) && is_s3_stable(&self.e, &self.rel)
    }
}

/// Lie: one antisymmetric bracket, Jacobi relation.
pub fn op_lie() -> QuadOperad {
    let rel = Subspace::span_i64(3, &[&[1, -1, 1]]).expect("ambient");
    QuadOperad::new(S2Module::sign(), rel).expect("stable")
}

/// Comm: one symmetric product, all three trees identified.
pub fn op_comm() -> QuadOperad {
    let rel = Subspace::span_i64(3, &[&[1, -1, 0], &[0, 1, -1]]).expect("ambient");
    QuadOperad::new(S2Module::trivial(), rel).expect("stable")
}

/// `(x_i x_j) x_k` in the tree encoding for `E = {μ, σμ}`.
fn assoc_left(i: usize, j: usize, k: usize) -> usize {
    tree_index(2, k, 0, usize::from(i > j))
}

/// `x_i (x_j x_k) = (σμ)(x_j x_k, x_i)`.
fn assoc_right(i: usize, j: usize, k: usize) -> usize {
    tree_index(2, i, 1, usize::from(j > k))
}

/// Assoc: `E` the regular representation, six associativity relators.
pub fn op_assoc() -> QuadOperad {
    let rows = S3
        .iter()
        .map(|p| {
            let mut v = vec![Rational::zero(); 12];
            v[assoc_left(p[0], p[1], p[2])] += Rational::one();
            v[assoc_right(p[0], p[1], p[2])] -= Rational::one();
            v
        })
        .collect();
    QuadOperad::new(S2Module::regular(), Subspace::span(12, rows).expect("ambient")).expect("stable")
}

/// Quadratic dual: `{E* ⊗ Sgn, R^⊥}` for the signed pairing.
pub fn op_dual(p: &QuadOperad) -> QuadOperad {
    let signed = p.rel.image(&pairing_matrix(p.d())).expect("shape");
    QuadOperad {
        e: p.e.twisted_dual(),
        rel: signed.orthogonal_complement(),
    }
}

/// `φ3: F(E1⊗E2)(3) → F(E1)(3) ⊗ F(E2)(3)`, `(t, a⊗c, b⊗d) ↦ (t,a,b)⊗(t,c,d)`.
pub fn phi3(e1: &S2Module, e2: &S2Module) -> Matrix {
    let (d1, d2) = (e1.d, e2.d);
    let d = d1 * d2;
    let f2 = 3 * d2 * d2;
    let mut m = Matrix::zeros(3 * d1 * d1 * f2, 3 * d * d);
    for t in 0..3 {
        for a in 0..d1 {
            for b in 0..d1 {
                for c in 0..d2 {
                    for dd in 0..d2 {
                        let col = tree_index(d, t, a * d2 + c, b * d2 + dd);
                        let row = tree_index(d1, t, a, b) * f2 + tree_index(d2, t, c, dd);
                        m.set(row, col, Rational::one());
                    }
                }
            }
        }
    }
    m
}

/// `ψ3`, zero on pairs of different trees: the transpose of [`phi3`].
pub fn psi3(e1: &S2Module, e2: &S2Module) -> Matrix {
    phi3(e1, e2).transpose()
}

/// `(R1 ⊗ F(E2)(3)) ∩ (F(E1)(3) ⊗ R2)`.
fn black_source(p: &QuadOperad, q: &QuadOperad) -> Subspace {
    let f1 = Subspace::full(p.e.arity3_dim());
    let f2 = Subspace::full(q.e.arity3_dim());
    p.rel.tensor(&f2).intersect(&f1.tensor(&q.rel)).expect("same ambient")
}

/// `ψ3` image without the sign twist, the relation space of the untwisted
/// black product.
pub fn black_rel_untwisted(p: &QuadOperad, q: &QuadOperad) -> Subspace {
    black_source(p, q).image(&psi3(&p.e, &q.e)).expect("shape")
}

/// Black product. Generated by `E1 ⊗ E2 ⊗ Sgn`; relations are the `ψ3`
/// image transported along `F(E1⊗E2)(3) ≅ F(E1⊗E2⊗Sgn)(3) ⊗ Sgn3`
/// (multiplication by the pairing signs).
pub fn op_black(p: &QuadOperad, q: &QuadOperad) -> QuadOperad {
    let e = p.e.tensor(&q.e).sign_twist();
    let rel = black_rel_untwisted(p, q).image(&pairing_matrix(e.d)).expect("shape");
    QuadOperad { e, rel }
}

/// White product: `φ3⁻¹((R1 ⊗ F(E2)(3)) + (F(E1)(3) ⊗ R2))`.
pub fn op_white(p: &QuadOperad, q: &QuadOperad) -> QuadOperad {
    let f1 = Subspace::full(p.e.arity3_dim());
    let f2 = Subspace::full(q.e.arity3_dim());
    let target = p.rel.tensor(&f2).sum(&f1.tensor(&q.rel)).expect("same ambient");
    QuadOperad {
        e: p.e.tensor(&q.e),
        rel: target.preimage(&phi3(&p.e, &q.e)).expect("shape"),
    }
}

/// Transports `p` along an invertible `j: E → E'`.
pub fn op_transport(p: &QuadOperad, j: &Matrix) -> Result<QuadOperad> {
    let inv = j
        .inverse()
        .ok_or_else(|| Error::InvalidPresentation("identification is not invertible".into()))?;
    if j.cols() != p.d() {
        return Err(Error::ShapeMismatch("identification has wrong source".into()));
    }
    let sigma = &(j * p.e.sigma()) * &inv;
    Ok(QuadOperad {
        e: S2Module::new(sigma)?,
        rel: p.rel.image(&free_map3(j))?,
    })
}

/// `J: E(Assoc^!) → E(Assoc)`, `μ* ↦ μ`, `(σμ)* ↦ −σμ`, with
/// `op_transport(op_dual(op_assoc()), J) = op_assoc()`.
pub fn assoc_dual_identification() -> Matrix {
    Matrix::from_i64(&[&[1, 0], &[0, -1]])
}

/// Moves a presentation on `E1⊗E2` to `E2⊗E1`.
pub fn op_flip(p: &QuadOperad, d1: usize, d2: usize) -> Result<QuadOperad> {
    if p.d() != d1 * d2 {
        return Err(Error::ShapeMismatch(format!("{} is not {d1}x{d2}", p.d())));
    }
    let swap = Matrix::from_fn(p.d(), p.d(), |r, c| {
        if r == (c % d2) * d1 + c / d2 {
            Rational::one()
        } else {
            Rational::zero()
        }
    });
    op_transport(p, &swap)
}

fn check_equivariant(f: &Matrix, src: &S2Module, dst: &S2Module) -> Result<()> {
    if f.rows() != dst.d || f.cols() != src.d {
        return Err(Error::ShapeMismatch(format!(
            "map is {}x{}, expected {}x{}",
            f.rows(),
            f.cols(),
            dst.d,
            src.d
        )));
    }
    if f * &src.sigma != &dst.sigma * f {
        return Err(Error::NotEquivariant);
    }
    Ok(())
}

/// True iff the equivariant `f: E_p → E_q` maps `R_p` into `R_q`.
pub fn op_morphism_check(f: &Matrix, p: &QuadOperad, q: &QuadOperad) -> Result<bool> {
    check_equivariant(f, &p.e, &q.e)?;
    Ok(p.rel.image(&free_map3(f))?.is_subspace_of(&q.rel))
}

/// `g: E_p⊗E_q → E_r` curried to `ĝ: E_p → E_q* ⊗ E_r`.
pub fn op_curry(g: &Matrix, dp: usize, dq: usize, dr: usize) -> Result<Matrix> {
    if g.rows() != dr || g.cols() != dp * dq {
        return Err(Error::ShapeMismatch(format!(
            "expected {dr}x{}, got {}x{}",
            dp * dq,
            g.rows(),
            g.cols()
        )));
    }
    Ok(Matrix::from_fn(dq * dr, dp, |row, a| {
        let (c, k) = (row / dr, row % dr);
        g.get(k, a * dq + c).clone()
    }))
}

/// Both sides of `Hom(P•Q, R) = Hom(P, Q^! ∘ R)` for one map `g`.
pub fn op_adjunction_witness(p: &QuadOperad, q: &QuadOperad, r: &QuadOperad, g: &Matrix) -> Result<(bool, bool)> {
    let pq = op_black(p, q);
    let lhs = op_morphism_check(g, &pq, r)?;
    let curried = op_curry(g, p.d(), q.d(), r.d())?;
    let rhs = op_morphism_check(&curried, p, &op_white(&op_dual(q), r))?;
    Ok((lhs, rhs))
}

/// Averages a random matrix into an equivariant map `src → dst`.
pub fn random_equivariant<R: Rng>(rng: &mut R, src: &S2Module, dst: &S2Module) -> Matrix {
    let m = Matrix::from_fn(dst.d, src.d, |_, _| Rational::from_integer(rng.gen_range(-3i64..=3).into()));
    let conj = &(&dst.sigma * &m) * &src.sigma;
    m.checked_add(&conj).expect("shape")
}

pub fn random_s2_module<R: Rng>(rng: &mut R, max_d: usize) -> S2Module {
    let d = rng.gen_range(1..=max_d);
    let sigma = match (d, rng.gen_range(0..5)) {
        (1, k) if k % 2 == 0 => Matrix::from_i64(&[&[1]]),
        (1, _) => Matrix::from_i64(&[&[-1]]),
        (_, 0) => Matrix::identity(d),
        (_, 1) => Matrix::identity(d).scale(&-Rational::one()),
        (_, 2) => Matrix::from_i64(&[&[0, 1], &[1, 0]]),
        (_, 3) => Matrix::from_i64(&[&[1, 0], &[0, -1]]),
        _ => Matrix::from_i64(&[&[0, -1], &[-1, 0]]),
    };
    S2Module::new(sigma).expect("involution")
}

/// Random `S3`-stable presentation: the orbit span of a few random vectors.
pub fn random_stable_operad<R: Rng>(rng: &mut R, max_d: usize) -> QuadOperad {
    let e = random_s2_module(rng, max_d);
    let dim = e.arity3_dim();
    let actions: Vec<Matrix> = S3.iter().map(|p| s3_action(&e, p)).collect();
    let seeds = rng.gen_range(0..=2);
    let mut vectors = Vec::new();
    for _ in 0..seeds {
        let v: Vec<Rational> = (0..dim)
            .map(|_| {
                if rng.gen_bool(0.6) {
                    Rational::zero()
                } else {
                    Rational::from_integer(rng.gen_range(-2i64..=2).into())
                }
            })
            .collect();
        vectors.extend(actions.iter().map(|a| a.apply(&v)));
    }
    let rel = Subspace::span(dim, vectors).expect("ambient");
    QuadOperad::new(e, rel).expect("orbit spans are stable")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QoVariant {
    Standard,
    /// Duality that forgets the `Sgn` twist on `E*`.
    DropSgnTwist,
}

/// Binary quadratic operads as a [`GvInstance`].
#[derive(Clone, Debug)]
pub struct QoInstance {
    pub samples: usize,
    pub max_d: usize,
    pub variant: QoVariant,
}

impl Default for QoInstance {
    fn default() -> Self {
        QoInstance {
            samples: 50,
            max_d: 2,
            variant: QoVariant::Standard,
        }
    }
}

impl QoInstance {
    /// Lie, Comm, Assoc followed by random stable presentations.
    pub fn objects(&self, seed: u64) -> Vec<QuadOperad> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out = vec![op_lie(), op_comm(), op_assoc()];
        while out.len() < self.samples {
            out.push(random_stable_operad(&mut rng, self.max_d));
        }
        out.truncate(self.samples);
        out
    }
}

impl GvInstance for QoInstance {
    type Obj = QuadOperad;

    fn name(&self) -> String {
        match self.variant {
            QoVariant::Standard => "binary quadratic operads".into(),
            QoVariant::DropSgnTwist => "binary quadratic operads [dual without Sgn twist]".into(),
        }
    }

    fn sample_objects(&self, seed: u64) -> Vec<QuadOperad> {
        self.objects(seed)
    }

    fn black(&self, x: &QuadOperad, y: &QuadOperad) -> QuadOperad {
        op_black(x, y)
    }

    fn white(&self, x: &QuadOperad, y: &QuadOperad) -> QuadOperad {
        op_white(x, y)
    }

    fn dual(&self, x: &QuadOperad) -> QuadOperad {
        match self.variant {
            QoVariant::Standard => op_dual(x),
            QoVariant::DropSgnTwist => {
                let d = op_dual(x);
                QuadOperad {
                    e: S2Module {
                        d: x.d(),
                        sigma: x.e.sigma.transpose(),
                    },
                    rel: d.rel,
                }
            }
        }
    }

    fn unit(&self) -> QuadOperad {
        op_lie()
    }

    fn dualizing(&self) -> QuadOperad {
        op_comm()
    }

    fn eq(&self, x: &QuadOperad, y: &QuadOperad) -> bool {
        x == y
    }

    fn rel_included(&self, x: &QuadOperad, y: &QuadOperad) -> bool {
        x.rel.is_subspace_of(&y.rel)
    }

    fn is_valid(&self, x: &QuadOperad) -> bool {
        x.is_valid()
    }

    fn flip(&self, product: &QuadOperad, left: &QuadOperad, right: &QuadOperad) -> QuadOperad {
        op_flip(product, left.d(), right.d()).expect("product shape")
    }

    fn size(&self, x: &QuadOperad) -> usize {
        x.d()
    }

    fn describe(&self, x: &QuadOperad) -> serde_json::Value {
        serde_json::to_value(crate::io::QoJson::from(x)).expect("serializable")
    }

    /// Lie, Comm and Assoc.
    fn anchors(&self) -> usize {
        3.min(self.samples)
    }
}
