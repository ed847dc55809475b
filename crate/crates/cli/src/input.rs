//! Reading algebras, operads, F-structures, vector fields and points from
//! files, inline JSON or `@stock` names.

use std::fmt;
use std::fs;

use gvdual::dsl::{parse_named, ParseError};
use gvdual::fman::{i2_3, non_f_control, semisimple, FStructure, VField};
use gvdual::io::{point_from_json, vfield_from_json, FJson, QaJson, QoJson, SeriesJson};
use gvdual::kernel::parse_rational;
use gvdual::operad::{op_assoc, op_comm, op_lie, QuadOperad};
use gvdual::qa::QuadAlgebra;
use gvdual::Rational;

/// Anything that makes the input unusable; reported with exit code 2.
#[derive(Debug)]
pub struct InputError(pub String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<gvdual::Error> for InputError {
    fn from(e: gvdual::Error) -> Self {
        InputError(e.to_string())
    }
}

pub type Input<T> = Result<T, InputError>;

fn read(path: &str) -> Input<String> {
    fs::read_to_string(path).map_err(|e| InputError(format!("{path}: {e}")))
}

fn json<T: serde::de::DeserializeOwned>(path: &str, text: &str) -> Input<T> {
    serde_json::from_str(text).map_err(|e| InputError(format!("{path}: {e}")))
}

fn stem(path: &str) -> String {
    let base = path.rsplit('/').next().unwrap_or(path);
    let base = base.split('.').next().unwrap_or(base);
    let cleaned: String = base.chars().map(|c| if c.is_ascii_alphanumeric() { c } else { '_' }).collect();
    match cleaned.chars().next() {
        Some(c) if c.is_ascii_alphabetic() => cleaned,
        _ => format!("A{cleaned}"),
    }
}

/// A quadratic algebra in the text syntax or as JSON (leading `{`).
pub fn algebra(path: &str) -> Input<(String, QuadAlgebra)> {
    let text = read(path)?;
    if text.trim_start().starts_with('{') {
        let j: QaJson = json(path, &text)?;
        Ok((stem(path), QuadAlgebra::try_from(j)?))
    } else {
        parse_named(&text).map_err(|e: ParseError| InputError(format!("{path}: {e}")))
    }
}

/// `@lie`, `@comm`, `@assoc`, or a JSON file.
pub fn operad(path: &str) -> Input<(String, QuadOperad)> {
    match path {
        "@lie" => Ok(("Lie".into(), op_lie())),
        "@comm" => Ok(("Comm".into(), op_comm())),
        "@assoc" => Ok(("Assoc".into(), op_assoc())),
        p if p.starts_with('@') => Err(InputError(format!("unknown stock operad {p}; expected @lie, @comm or @assoc"))),
        p => {
            let j: QoJson = json(p, &read(p)?)?;
            Ok((stem(p), QuadOperad::try_from(j)?))
        }
    }
}

/// `@semisimple2`, `@semisimple3`, `@i2_3`, `@control`, or a JSON file.
pub fn fstructure(path: &str, cap: u32) -> Input<FStructure> {
    match path {
        "@semisimple2" => Ok(semisimple(2, cap)),
        "@semisimple3" => Ok(semisimple(3, cap)),
        "@i2_3" => Ok(i2_3(cap)),
        "@control" => Ok(non_f_control(cap)),
        p if p.starts_with('@') => Err(InputError(format!(
            "unknown stock F-structure {p}; expected @semisimple2, @semisimple3, @i2_3 or @control"
        ))),
        p => {
            let j: FJson = json(p, &read(p)?)?;
            Ok(FStructure::try_from(j)?)
        }
    }
}

/// `@e` for the unit field, an inline JSON list of series, or a file holding one.
pub fn vfield(arg: &str, f: &FStructure) -> Input<VField> {
    if arg == "@e" {
        return Ok(f.e().clone());
    }
    let text = if arg.trim_start().starts_with('[') { arg.to_string() } else { read(arg)? };
    let coeffs: Vec<SeriesJson> = json(arg, &text)?;
    Ok(vfield_from_json(&coeffs, f.n(), f.cap())?)
}

/// `0,1/2` or a JSON array of rationals.
pub fn point(arg: &str, n: usize) -> Input<Vec<Rational>> {
    let p = if arg.trim_start().starts_with('[') {
        let v: serde_json::Value = json("--point", arg)?;
        point_from_json(&v)?
    } else {
        arg.split(',').map(|s| parse_rational(s.trim())).collect::<Result<Vec<_>, _>>()?
    };
    if p.len() != n {
        return Err(InputError(format!("point has {} coordinates, expected {n}", p.len())));
    }
    Ok(p)
}
