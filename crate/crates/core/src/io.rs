//! JSON forms of presentations and F-structures. Rationals are strings
//! `"p/q"` (plain integers are accepted on input); indices are zero-based.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fman::{FStructure, VField};
use crate::kernel::{parse_rational, serde_rational, Matrix, Poly, Rational, Subspace, TruncSeries};
use crate::operad::{QuadOperad, S2Module};
use crate::qa::QuadAlgebra;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QaJson {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
    #[serde(with = "serde_rational::rows")]
    pub rel: Vec<Vec<Rational>>,
}

impl From<&QuadAlgebra> for QaJson {
    fn from(a: &QuadAlgebra) -> Self {
        QaJson {
            n: a.n(),
            names: a.names().map(<[String]>::to_vec),
            rel: a.rel().basis_vectors(),
        }
    }
}

impl TryFrom<QaJson> for QuadAlgebra {
    type Error = Error;
    fn try_from(j: QaJson) -> Result<Self> {
        let a = QuadAlgebra::new(j.n, Subspace::span(j.n * j.n, j.rel)?)?;
        match j.names {
            Some(names) => a.with_names(names),
            None => Ok(a),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QoJson {
    pub d: usize,
    #[serde(with = "serde_rational::rows")]
    pub sigma: Vec<Vec<Rational>>,
    #[serde(with = "serde_rational::rows")]
    pub rel: Vec<Vec<Rational>>,
}

impl From<&QuadOperad> for QoJson {
    fn from(p: &QuadOperad) -> Self {
        QoJson {
            d: p.d(),
            sigma: p.e().sigma().row_vecs(),
            rel: p.rel().basis_vectors(),
        }
    }
}

impl TryFrom<QoJson> for QuadOperad {
    type Error = Error;
    fn try_from(j: QoJson) -> Result<Self> {
        let e = S2Module::new(Matrix::from_rows(j.d, j.sigma)?)?;
        if e.d() != j.d {
            return Err(Error::ShapeMismatch(format!("sigma is {0}x{0}, d is {1}", e.d(), j.d)));
        }
        QuadOperad::new(e, Subspace::span(3 * j.d * j.d, j.rel)?)
    }
}

/// A series as a list of `[exponents, coefficient]` terms.
pub type SeriesJson = Vec<(Vec<u32>, String)>;

pub fn series_to_json(s: &TruncSeries) -> SeriesJson {
    s.poly().terms().map(|(e, c)| (e.clone(), c.to_string())).collect()
}

pub fn series_from_json(terms: &[(Vec<u32>, String)], n: usize, cap: u32) -> Result<TruncSeries> {
    let mut parsed = Vec::with_capacity(terms.len());
    for (e, c) in terms {
        if e.len() != n {
            return Err(Error::ShapeMismatch(format!("exponent {e:?} is not of length {n}")));
        }
        parsed.push((e.clone(), parse_rational(c)?));
    }
    Ok(TruncSeries::new(Poly::from_terms(n, parsed), cap))
}

pub fn vfield_from_json(coeffs: &[SeriesJson], n: usize, cap: u32) -> Result<VField> {
    if coeffs.len() != n {
        return Err(Error::ShapeMismatch(format!("{} coefficients for {n} coordinates", coeffs.len())));
    }
    VField::new(coeffs.iter().map(|s| series_from_json(s, n, cap)).collect::<Result<_>>()?)
}

pub fn vfield_to_json(v: &VField) -> Vec<SeriesJson> {
    v.coeffs().iter().map(series_to_json).collect()
}

/// `c` maps `"i,j,k"` to the series `c_ij^k`; absent keys are zero and a
/// key given for `(i,j)` only also fills `(j,i)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FJson {
    pub n: usize,
    pub cap: u32,
    pub c: BTreeMap<String, SeriesJson>,
    pub e: Vec<SeriesJson>,
}

fn parse_key(key: &str, n: usize) -> Result<(usize, usize, usize)> {
    let parts: Vec<usize> = key
        .split(',')
        .map(|s| s.trim().parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::Json(format!("bad structure key {key:?}")))?;
    match parts[..] {
        [i, j, k] if i < n && j < n && k < n => Ok((i, j, k)),
        _ => Err(Error::Json(format!("structure key {key:?} is not i,j,k below {n}"))),
    }
}

impl From<&FStructure> for FJson {
    fn from(f: &FStructure) -> Self {
        let n = f.n();
        let mut c = BTreeMap::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let s = f.c(i, j, k);
                    if !s.is_zero() {
                        c.insert(format!("{i},{j},{k}"), series_to_json(s));
                    }
                }
            }
        }
        FJson {
            n,
            cap: f.cap(),
            c,
            e: vfield_to_json(f.e()),
        }
    }
}

impl TryFrom<FJson> for FStructure {
    type Error = Error;
    fn try_from(j: FJson) -> Result<Self> {
        let n = j.n;
        let mut given: BTreeMap<(usize, usize, usize), TruncSeries> = BTreeMap::new();
        for (key, terms) in &j.c {
            given.insert(parse_key(key, n)?, series_from_json(terms, n, j.cap)?);
        }
        let mut c = vec![TruncSeries::zero(n, j.cap); n * n * n];
        for i in 0..n {
            for j2 in 0..n {
                for k in 0..n {
                    if let Some(s) = given.get(&(i, j2, k)).or_else(|| given.get(&(j2, i, k))) {
                        c[(i * n + j2) * n + k] = s.clone();
                    }
                }
            }
        }
        FStructure::new(n, c, vfield_from_json(&j.e, n, j.cap)?)
    }
}

/// A point `u0` given as rational strings or integers.
pub fn point_from_json(v: &serde_json::Value) -> Result<Vec<Rational>> {
    match v {
        serde_json::Value::Array(xs) => xs
            .iter()
            .map(|x| serde_rational::from_value(x).map_err(Error::BadRational))
            .collect(),
        other => Err(Error::Json(format!("expected an array of rationals, got {other}"))),
    }
}
