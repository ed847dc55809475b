//! The spectral cover: the kernel of `Sym(T_M) → (T_M, •)` sending
//! `p_i ↦ ∂_i`, and its stability under the canonical Poisson bracket.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use super::structure::{vf_mul, FStructure};
use super::vfield::VField;
use crate::error::{Error, Result};
use crate::kernel::{Matrix, Rational, TruncSeries};

/// A function on `T*M` polynomial along the fibres: `Σ_α g_α(u) p^α`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PPoly {
    n: usize,
    cap: u32,
    terms: BTreeMap<Vec<u32>, TruncSeries>,
}

impl PPoly {
    pub fn zero(n: usize, cap: u32) -> Self {
        PPoly {
            n,
            cap,
            terms: BTreeMap::new(),
        }
    }

    /// `g(u) p^α`.
    pub fn term(alpha: Vec<u32>, g: TruncSeries) -> Self {
        let n = g.nvars();
        assert_eq!(alpha.len(), n, "fibre exponent length");
        let mut out = PPoly::zero(n, g.cap());
        out.add_term(alpha, g);
        out
    }

    pub fn constant(g: TruncSeries) -> Self {
        let n = g.nvars();
        Self::term(vec![0; n], g)
    }

    /// The fibre coordinate `p_i`.
    pub fn p(n: usize, i: usize, cap: u32) -> Self {
        let mut alpha = vec![0; n];
        alpha[i] = 1;
        Self::term(alpha, TruncSeries::one(n, cap))
    }

    /// The base coordinate `u_i`.
    pub fn u(n: usize, i: usize, cap: u32) -> Self {
        Self::constant(TruncSeries::var(n, i, cap))
    }

    fn add_term(&mut self, alpha: Vec<u32>, g: TruncSeries) {
        self.cap = self.cap.min(g.cap());
        let merged = match self.terms.remove(&alpha) {
            Some(old) => &old + &g,
            None => g,
        };
        if !merged.is_zero() {
            self.terms.insert(alpha, merged);
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &TruncSeries)> {
        self.terms.iter()
    }

    pub fn p_degree(&self) -> Option<u32> {
        self.terms.keys().map(|a| a.iter().sum()).max()
    }

    pub fn add(&self, other: &PPoly) -> PPoly {
        let mut out = self.clone();
        out.cap = out.cap.min(other.cap);
        for (a, g) in &other.terms {
            out.add_term(a.clone(), g.clone());
        }
        out
    }

    pub fn neg(&self) -> PPoly {
        PPoly {
            n: self.n,
            cap: self.cap,
            terms: self.terms.iter().map(|(a, g)| (a.clone(), -g)).collect(),
        }
    }

    pub fn sub(&self, other: &PPoly) -> PPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &PPoly) -> PPoly {
        let mut out = PPoly::zero(self.n, self.cap.min(other.cap));
        for (a, g) in &self.terms {
            for (b, h) in &other.terms {
                let ab = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.add_term(ab, g * h);
            }
        }
        out
    }

    pub fn diff_p(&self, k: usize) -> PPoly {
        let mut out = PPoly::zero(self.n, self.cap);
        for (a, g) in &self.terms {
            if a[k] > 0 {
                let mut b = a.clone();
                b[k] -= 1;
                out.add_term(b, g.scale(&Rational::from_integer(a[k].into())));
            }
        }
        out
    }

    /// Lowers the cap by one, like every derivative of a truncated series.
    pub fn diff_u(&self, k: usize) -> PPoly {
        let mut out = PPoly::zero(self.n, self.cap.saturating_sub(1));
        for (a, g) in &self.terms {
            out.add_term(a.clone(), g.diff(k));
        }
        out
    }
}

impl fmt::Debug for PPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (a, g) in &self.terms {
            let mono: Vec<String> = a
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { format!("p{}", i + 1) } else { format!("p{}^{e}", i + 1) })
                .collect();
            parts.push(format!("({:?}){}", g.poly(), if mono.is_empty() { String::new() } else { format!("*{}", mono.join("*")) }));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// `{a,b} = Σ_k (∂a/∂p_k ∂b/∂u_k − ∂a/∂u_k ∂b/∂p_k)`.
pub fn canonical_poisson(a: &PPoly, b: &PPoly) -> PPoly {
    let mut out = PPoly::zero(a.n, a.cap.min(b.cap).saturating_sub(1));
    for k in 0..a.n {
        out = out.add(&a.diff_p(k).mul(&b.diff_u(k)));
        out = out.sub(&a.diff_u(k).mul(&b.diff_p(k)));
    }
    out
}

/// `1 − Σ e^k p_k` followed by `p_i p_j − Σ c_ij^k p_k` for `i ≤ j`.
pub fn spectral_ideal_generators(f: &FStructure) -> Vec<PPoly> {
    let n = f.n();
    let cap = f.cap();
    let linear = |coeffs: &dyn Fn(usize) -> TruncSeries| {
        (0..n).fold(PPoly::zero(n, cap), |acc, k| {
            let mut alpha = vec![0; n];
            alpha[k] = 1;
            acc.add(&PPoly::term(alpha, coeffs(k)))
        })
    };
    let mut out = vec![PPoly::constant(TruncSeries::one(n, cap)).sub(&linear(&|k| f.e().coeff(k).clone()))];
    for i in 0..n {
        for j in i..n {
            let pij = PPoly::p(n, i, cap).mul(&PPoly::p(n, j, cap));
            out.push(pij.sub(&linear(&|k| f.c(i, j, k).clone())));
        }
    }
    out
}

/// Image of `h` under `p_i ↦ ∂_i`, products to `•`, `g ↦ g·e`.
pub fn eval_hom(f: &FStructure, h: &PPoly) -> Result<VField> {
    let n = f.n();
    if h.n != n {
        return Err(Error::ShapeMismatch(format!("function on T*M with {} coordinates, structure on {n}", h.n)));
    }
    let mut cache: BTreeMap<Vec<u32>, VField> = BTreeMap::new();
    let mut acc = VField::zero(n, f.cap().min(h.cap));
    for (alpha, g) in &h.terms {
        let image = monomial_image(f, alpha, &mut cache)?;
        acc = &acc + &image.scale_by(g);
    }
    Ok(acc)
}

fn monomial_image(f: &FStructure, alpha: &[u32], cache: &mut BTreeMap<Vec<u32>, VField>) -> Result<VField> {
    if let Some(v) = cache.get(alpha) {
        return Ok(v.clone());
    }
    let v = match alpha.iter().position(|&a| a > 0) {
        None => f.e().clone(),
        Some(k) => {
            let mut rest = alpha.to_vec();
            rest[k] -= 1;
            let r = monomial_image(f, &rest, cache)?;
            vf_mul(f, &r, &f.coordinate(k))?
        }
    };
    cache.insert(alpha.to_vec(), v.clone());
    Ok(v)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankCheck {
    pub expected: usize,
    pub found: usize,
}

impl RankCheck {
    pub fn passed(&self) -> bool {
        self.expected == self.found
    }
}

/// Rank at the origin of the degree `≤ 2` part of the ideal, which must be
/// `dim Sym^{≤2} − n` for the quotient to have rank `n`.
pub fn generator_rank_check(f: &FStructure) -> RankCheck {
    let n = f.n();
    let gens = spectral_ideal_generators(f);
    let mut spanning = vec![gens[0].clone()];
    spanning.extend((0..n).map(|k| PPoly::p(n, k, f.cap()).mul(&gens[0])));
    spanning.extend(gens[1..].iter().cloned());
    let mut monomials: Vec<Vec<u32>> = vec![vec![0; n]];
    for i in 0..n {
        let mut a = vec![0; n];
        a[i] = 1;
        monomials.push(a);
    }
    for i in 0..n {
        for j in i..n {
            let mut a = vec![0; n];
            a[i] += 1;
            a[j] += 1;
            monomials.push(a);
        }
    }
    let m = Matrix::from_fn(spanning.len(), monomials.len(), |r, c| {
        spanning[r].terms.get(&monomials[c]).map(TruncSeries::constant_term).unwrap_or_else(Rational::zero)
    });
    RankCheck {
        expected: monomials.len() - n,
        found: m.rank(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoisotropyReport {
    pub generators: usize,
    pub pairs_checked: usize,
    /// Index pairs into the generator list whose bracket leaves the ideal.
    pub failing_pairs: Vec<(usize, usize)>,
    pub rank: RankCheck,
}

impl CoisotropyReport {
    pub fn passed(&self) -> bool {
        self.failing_pairs.is_empty() && self.rank.passed()
    }
}

/// Checks that `eval_hom({g_a, g_b}) = 0` for all generator pairs.
pub fn check_coisotropy(f: &FStructure) -> Result<CoisotropyReport> {
    let gens = spectral_ideal_generators(f);
    let mut failing_pairs = Vec::new();
    let mut pairs_checked = 0;
    for a in 0..gens.len() {
        for b in a + 1..gens.len() {
            pairs_checked += 1;
            if !eval_hom(f, &canonical_poisson(&gens[a], &gens[b]))?.is_zero() {
                failing_pairs.push((a, b));
            }
        }
    }
    Ok(CoisotropyReport {
        generators: gens.len(),
        pairs_checked,
        failing_pairs,
        rank: generator_rank_check(f),
    })
}

/// `1` as a function on `T*M`.
pub fn ppoly_one(n: usize, cap: u32) -> PPoly {
    PPoly::constant(TruncSeries::constant(n, Rational::one(), cap))
}
