//! Plain-text rendering of the objects the commands print.

use gvdual::fman::{FStructure, VField};
use gvdual::io::series_to_json;
use gvdual::operad::QuadOperad;
use gvdual::{Matrix, Rational, TruncSeries};

pub fn row(xs: &[Rational]) -> String {
    let parts: Vec<String> = xs.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}

pub fn matrix(m: &Matrix) -> String {
    let rows: Vec<String> = (0..m.rows()).map(|i| row(m.row(i))).collect();
    format!("[{}]", rows.join(", "))
}

/// Series in `u0, u1, ...` followed by its truncation order.
pub fn series(s: &TruncSeries) -> String {
    let terms = series_to_json(s);
    if terms.is_empty() {
        return format!("O(u^{})", s.cap() + 1);
    }
    let mut out = String::new();
    for (k, (exps, coeff)) in terms.iter().enumerate() {
        let mono: Vec<String> = exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| if e == 1 { format!("u{i}") } else { format!("u{i}^{e}") })
            .collect();
        let (neg, mag) = match coeff.strip_prefix('-') {
            Some(m) => (true, m),
            None => (false, coeff.as_str()),
        };
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        match (mono.is_empty(), mag) {
            (true, _) => out.push_str(mag),
            (false, "1") => out.push_str(&mono.join("*")),
            (false, _) => out.push_str(&format!("{mag}*{}", mono.join("*"))),
        }
    }
    format!("{out} + O(u^{})", s.cap() + 1)
}

pub fn vfield(v: &VField) -> String {
    let parts: Vec<String> = v
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| format!("({})*d{i}", series(c)))
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

pub fn operad(name: &str, p: &QuadOperad) -> String {
    let mut s = format!("operad {name}: d = {}\n", p.d());
    s.push_str(&format!("  sigma = {}\n", matrix(p.e().sigma())));
    s.push_str(&format!("  relations: {} of {}\n", p.rel().dim(), p.rel().ambient()));
    for r in p.rel().basis_vectors() {
        s.push_str(&format!("    {}\n", row(&r)));
    }
    s
}

/// Nonzero structure functions `c_ij^k` with `i <= j`, and the unit field.
pub fn fstructure(f: &FStructure) -> String {
    let n = f.n();
    let mut s = format!("F-structure on {n} coordinates, cap {}\n", f.cap());
    for i in 0..n {
        for j in i..n {
            for k in 0..n {
                let c = f.c(i, j, k);
                if !c.is_zero() {
                    s.push_str(&format!("  c[{i},{j},{k}] = {}\n", series(c)));
                }
            }
        }
    }
    s.push_str(&format!("  e = {}\n", vfield(f.e())));
    s
}
