use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::structure::{poisson_tensor, vf_mul, CheckConfig, FStructure};
use super::vfield::{random_series, vf_bracket, VField};
use crate::error::{Error, Result};
use crate::kernel::{Matrix, Rational, TruncSeries};

/// `M[k][j] = (ε•∂_j)^k`, the matrix of multiplication by `ε`.
pub fn multiplication_matrix(f: &FStructure, eps: &VField) -> Result<Vec<Vec<TruncSeries>>> {
    let n = f.n();
    let cols = (0..n)
        .map(|j| vf_mul(f, eps, &f.coordinate(j)))
        .collect::<Result<Vec<_>>>()?;
    Ok((0..n).map(|k| (0..n).map(|j| cols[j].coeff(k).clone()).collect()).collect())
}

/// Invertibility of `ε`: the multiplication matrix is invertible at the
/// origin, i.e. its determinant has nonzero constant term.
pub fn is_invertible(f: &FStructure, eps: &VField) -> Result<bool> {
    let m = multiplication_matrix(f, eps)?;
    let n = f.n();
    let m0 = Matrix::from_fn(n, n, |r, c| m[r][c].constant_term());
    Ok(!m0.determinant()?.is_zero())
}

/// Solves `M v = b` over the truncated series ring.
fn solve(mut m: Vec<Vec<TruncSeries>>, mut b: Vec<TruncSeries>) -> Result<Vec<TruncSeries>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| m[r][col].is_unit()).ok_or(Error::NotInvertible)?;
        m.swap(col, pivot);
        b.swap(col, pivot);
        let inv = m[col][col].inverse()?;
        for c in col..n {
            m[col][c] = &m[col][c] * &inv;
        }
        b[col] = &b[col] * &inv;
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            for c in col..n {
                let t = &factor * &m[col][c];
                m[r][c] = &m[r][c] - &t;
            }
            let t = &factor * &b[col];
            b[r] = &b[r] - &t;
        }
    }
    Ok(b)
}

/// `ε^{-1}` with `ε • ε^{-1} = e`.
pub fn vf_inverse(f: &FStructure, eps: &VField) -> Result<VField> {
    let m = multiplication_matrix(f, eps)?;
    VField::new(solve(m, f.e().coeffs().to_vec())?)
}

/// `ε^{•n}` for any integer `n`; `ε^{•0} = e`.
pub fn vf_power(f: &FStructure, eps: &VField, n: i64) -> Result<VField> {
    let base = if n < 0 { vf_inverse(f, eps)? } else { eps.clone() };
    let mut acc = f.e().clone();
    for _ in 0..n.unsigned_abs() {
        acc = vf_mul(f, &acc, &base)?;
    }
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EventualReport {
    pub invertible: bool,
    pub criterion: bool,
    pub pairs_checked: usize,
    pub failures: Vec<String>,
}

impl EventualReport {
    pub fn passed(&self) -> bool {
        self.invertible && self.criterion
    }
}

/// `ε` is an eventual identity iff it is invertible and
/// `P_ε(X,Y) = [e,ε]•X•Y`, checked on coordinate pairs and on `samples`
/// pairs of random multiples of coordinate fields.
pub fn is_eventual_identity(f: &FStructure, eps: &VField, cfg: &CheckConfig) -> Result<EventualReport> {
    eps.check_same_n(f.e())?;
    let n = f.n();
    let invertible = is_invertible(f, eps)?;
    let e_eps = vf_bracket(f.e(), eps)?;
    let defect = |x: &VField, y: &VField| -> Result<bool> {
        let lhs = poisson_tensor(f, eps, x, y)?;
        let rhs = vf_mul(f, &vf_mul(f, &e_eps, x)?, y)?;
        Ok((&lhs - &rhs).is_zero())
    };
    let d: Vec<VField> = (0..n).map(|i| f.coordinate(i)).collect();
    let mut failures = Vec::new();
    let mut pairs_checked = 0;
    for i in 0..n {
        for j in i..n {
            pairs_checked += 1;
            if !defect(&d[i], &d[j])? {
                failures.push(format!("P_ε(∂{}, ∂{}) ≠ [e,ε]•∂{}•∂{}", i + 1, j + 1, i + 1, j + 1));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for s in 0..cfg.samples {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let x = d[i].scale_by(&random_series(&mut rng, n, f.cap(), 2, 3));
        let y = d[j].scale_by(&random_series(&mut rng, n, f.cap(), 2, 3));
        pairs_checked += 1;
        if !defect(&x, &y)? {
            failures.push(format!("criterion fails on random pair #{s}"));
        }
    }
    if !invertible {
        failures.push("ε is not invertible at the origin".into());
    }
    Ok(EventualReport {
        invertible,
        criterion: failures.iter().all(|m| m.starts_with("ε is not")),
        pairs_checked,
        failures,
    })
}

/// The structure `X∘Y = X•Y•ε^{-1}` with identity `ε`.
pub fn dubrovin_dual(f: &FStructure, eps: &VField, cfg: &CheckConfig) -> Result<FStructure> {
    let report = is_eventual_identity(f, eps, cfg)?;
    if !report.invertible {
        return Err(Error::NotInvertible);
    }
    if !report.criterion {
        return Err(Error::NotEventualIdentity(report.failures.join("; ")));
    }
    let n = f.n();
    let inv = vf_inverse(f, eps)?;
    let mut c = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            let p = vf_mul(f, &vf_mul(f, &f.coordinate(i), &f.coordinate(j))?, &inv)?;
            c.extend(p.coeffs().iter().cloned());
        }
    }
    FStructure::new(n, c, eps.clone())
}

/// `[ε^n, ε^m] = (m − n) ε^{m+n−1} • [e, ε]`.
pub fn commutator_identity_3_8(f: &FStructure, eps: &VField, n: i64, m: i64) -> Result<bool> {
    let lhs = vf_bracket(&vf_power(f, eps, n)?, &vf_power(f, eps, m)?)?;
    let rhs = vf_mul(f, &vf_power(f, eps, m + n - 1)?, &vf_bracket(f.e(), eps)?)?
        .scale(&Rational::from_integer((m - n).into()));
    Ok((&lhs - &rhs).is_zero())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupReport {
    pub inputs_eventual: bool,
    pub product_eventual: bool,
    pub commutator_invertible: bool,
    /// Present when the commutator is invertible.
    pub commutator_eventual: Option<bool>,
    /// Whether `ε1^{-1}` is again an eventual identity; informational only.
    pub inverse_eventual: bool,
}

impl GroupReport {
    pub fn passed(&self) -> bool {
        self.inputs_eventual && self.product_eventual && self.commutator_eventual.unwrap_or(true)
    }
}

pub fn eventual_group_check(f: &FStructure, eps1: &VField, eps2: &VField, cfg: &CheckConfig) -> Result<GroupReport> {
    let ok = |v: &VField| -> Result<bool> { Ok(is_eventual_identity(f, v, cfg)?.passed()) };
    let inputs_eventual = ok(eps1)? && ok(eps2)?;
    let product_eventual = ok(&vf_mul(f, eps1, eps2)?)?;
    let comm = vf_bracket(eps1, eps2)?;
    let commutator_invertible = is_invertible(f, &comm)?;
    let commutator_eventual = if commutator_invertible { Some(ok(&comm)?) } else { None };
    let inverse_eventual = is_invertible(f, eps1)? && ok(&vf_inverse(f, eps1)?)?;
    Ok(GroupReport {
        inputs_eventual,
        product_eventual,
        commutator_invertible,
        commutator_eventual,
        inverse_eventual,
    })
}
