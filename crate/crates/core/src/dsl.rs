//! Text syntax for quadratic algebra presentations:
//!
//! ```text
//! algebra P { gens x, y; rels x*y - y*x; }
//! ```
//!
//! Each relation is a rational combination of degree-two words and becomes
//! one coefficient row, with the word `g_i g_j` at index `i*n + j`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::kernel::{Rational, Subspace};
use crate::qa::QuadAlgebra;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}, column {col}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Lexical(char),
    Unexpected { expected: String, found: String },
    UnknownGenerator(String),
    DuplicateGenerator(String),
    NonQuadratic(usize),
    EmptyGenerators,
    ZeroDenominator,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Lexical(c) => write!(f, "unexpected character {c:?}"),
            ParseErrorKind::Unexpected { expected, found } => write!(f, "expected {expected}, found {found}"),
            ParseErrorKind::UnknownGenerator(g) => write!(f, "unknown generator `{g}`"),
            ParseErrorKind::DuplicateGenerator(g) => write!(f, "generator `{g}` declared twice"),
            ParseErrorKind::NonQuadratic(d) => write!(f, "non-quadratic term (degree {d})"),
            ParseErrorKind::EmptyGenerators => write!(f, "empty generator list"),
            ParseErrorKind::ZeroDenominator => write!(f, "zero denominator"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Sym(char),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Sym(c) => write!(f, "`{c}`"),
            Tok::Eof => write!(f, "end of input"),
        }
    }
}

struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(src: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let (mut line, mut col) = (1, 1);
    let mut chars = src.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (l0, c0) = (line, col);
        if c == '\n' {
            chars.next();
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            col += 1;
            continue;
        }
        if c == '#' {
            while chars.peek().is_some_and(|&c| c != '\n') {
                chars.next();
            }
            continue;
        }
        let tok = if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&c) = chars.peek().filter(|c| c.is_ascii_alphanumeric() || **c == '_') {
                s.push(c);
                chars.next();
                col += 1;
            }
            Tok::Ident(s)
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&c) = chars.peek().filter(|c| c.is_ascii_digit()) {
                s.push(c);
                chars.next();
                col += 1;
            }
            Tok::Int(s.parse().expect("digits"))
        } else if "{};,+-*/".contains(c) {
            chars.next();
            col += 1;
            Tok::Sym(c)
        } else {
            return Err(ParseError {
                line: l0,
                col: c0,
                kind: ParseErrorKind::Lexical(c),
            });
        };
        out.push(Spanned { tok, line: l0, col: c0 });
    }
    out.push(Spanned {
        tok: Tok::Eof,
        line,
        col,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn err_here(&self, kind: ParseErrorKind) -> ParseError {
        let t = &self.toks[self.pos];
        ParseError {
            line: t.line,
            col: t.col,
            kind,
        }
    }

    fn unexpected(&self, expected: &str) -> ParseError {
        self.err_here(ParseErrorKind::Unexpected {
            expected: expected.into(),
            found: self.peek().to_string(),
        })
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if t != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn sym(&mut self, c: char) -> Result<(), ParseError> {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(&format!("`{c}`")))
        }
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        match self.peek() {
            Tok::Ident(s) if s == kw => {
                self.bump();
                Ok(())
            }
            _ => Err(self.unexpected(&format!("`{kw}`"))),
        }
    }

    fn ident(&mut self, what: &str) -> Result<String, ParseError> {
        match self.peek() {
            Tok::Ident(s) => {
                let s = s.clone();
                self.bump();
                Ok(s)
            }
            _ => Err(self.unexpected(what)),
        }
    }

    /// `factor := ID | INT ('/' INT)?`
    fn factor(&mut self, gens: &[String], coeff: &mut Rational, word: &mut Vec<usize>) -> Result<(), ParseError> {
        let start = self.pos;
        match self.bump() {
            Tok::Ident(g) => match gens.iter().position(|x| *x == g) {
                Some(i) => word.push(i),
                None => {
                    self.pos = start;
                    return Err(self.err_here(ParseErrorKind::UnknownGenerator(g)));
                }
            },
            Tok::Int(p) => {
                let mut q = BigInt::one();
                if self.eat_sym('/') {
                    let at = self.pos;
                    match self.bump() {
                        Tok::Int(d) if d.is_zero() => {
                            self.pos = at;
                            return Err(self.err_here(ParseErrorKind::ZeroDenominator));
                        }
                        Tok::Int(d) => q = d,
                        _ => {
                            self.pos = at;
                            return Err(self.unexpected("denominator"));
                        }
                    }
                }
                *coeff *= Rational::new(p, q);
            }
            _ => {
                self.pos = start;
                return Err(self.unexpected("generator or number"));
            }
        }
        Ok(())
    }

    /// `expr := ['-'] term (('+'|'-') term)*`, `term := factor ('*' factor)*`.
    fn expr(&mut self, gens: &[String]) -> Result<Vec<Rational>, ParseError> {
        let n = gens.len();
        let mut row = vec![Rational::zero(); n * n];
        let mut sign = if self.eat_sym('-') {
            -Rational::one()
        } else {
            self.eat_sym('+');
            Rational::one()
        };
        loop {
            let start = self.pos;
            let mut coeff = sign.clone();
            let mut word = Vec::new();
            self.factor(gens, &mut coeff, &mut word)?;
            while self.eat_sym('*') {
                self.factor(gens, &mut coeff, &mut word)?;
            }
            if word.len() != 2 {
                let t = &self.toks[start];
                return Err(ParseError {
                    line: t.line,
                    col: t.col,
                    kind: ParseErrorKind::NonQuadratic(word.len()),
                });
            }
            row[word[0] * n + word[1]] += coeff;
            sign = if self.eat_sym('+') {
                Rational::one()
            } else if self.eat_sym('-') {
                -Rational::one()
            } else {
                return Ok(row);
            };
        }
    }
}

/// Parses one `algebra NAME { gens ...; rels ...; }` block, returning the name.
pub fn parse_named(src: &str) -> Result<(String, QuadAlgebra), ParseError> {
    let mut p = Parser { toks: lex(src)?, pos: 0 };
    p.keyword("algebra")?;
    let name = p.ident("algebra name")?;
    p.sym('{')?;
    p.keyword("gens")?;
    let mut gens: Vec<String> = Vec::new();
    if *p.peek() == Tok::Sym(';') {
        return Err(p.err_here(ParseErrorKind::EmptyGenerators));
    }
    loop {
        let at = p.pos;
        let g = p.ident("generator name")?;
        if gens.contains(&g) {
            p.pos = at;
            return Err(p.err_here(ParseErrorKind::DuplicateGenerator(g)));
        }
        gens.push(g);
        if !p.eat_sym(',') {
            break;
        }
    }
    p.sym(';')?;
    p.keyword("rels")?;
    let mut rows = Vec::new();
    if *p.peek() != Tok::Sym(';') {
        loop {
            rows.push(p.expr(&gens)?);
            if !p.eat_sym(',') {
                break;
            }
        }
    }
    p.sym(';')?;
    p.sym('}')?;
    if *p.peek() != Tok::Eof {
        return Err(p.unexpected("end of input"));
    }
    let n = gens.len();
    let rel = Subspace::span(n * n, rows).expect("rows have length n²");
    let alg = QuadAlgebra::new(n, rel).expect("ambient n²").with_names(gens).expect("distinct names");
    Ok((name, alg))
}

pub fn parse_algebra(src: &str) -> Result<QuadAlgebra, ParseError> {
    parse_named(src).map(|(_, a)| a)
}

fn coeff_prefix(c: &Rational, first: bool) -> String {
    let sign = match (c.is_negative(), first) {
        (true, true) => "-",
        (true, false) => " - ",
        (false, true) => "",
        (false, false) => " + ",
    };
    let a = c.abs();
    if a.is_one() {
        sign.to_string()
    } else {
        format!("{sign}{a}*")
    }
}

/// Renders a presentation in the text syntax; relation rows are the
/// canonical basis of the relation space.
pub fn to_dsl(name: &str, a: &QuadAlgebra) -> String {
    let names = a.display_names();
    let n = a.n();
    let rels: Vec<String> = a
        .rel()
        .basis_vectors()
        .iter()
        .map(|row| {
            let mut s = String::new();
            for (idx, c) in row.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                s.push_str(&coeff_prefix(c, s.is_empty()));
                s.push_str(&format!("{}*{}", names[idx / n], names[idx % n]));
            }
            s
        })
        .collect();
    format!("algebra {name} {{ gens {}; rels {}; }}\n", names.join(", "), rels.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qa::qa_dual;

    #[test]
    fn polynomial_algebra() {
        let a = parse_algebra("algebra P { gens x,y; rels x*y - y*x; }").unwrap();
        assert_eq!(a.n(), 2);
        assert_eq!(a, QuadAlgebra::polynomial(2));
    }

    #[test]
    fn exterior_is_dual_of_polynomial() {
        let p = parse_algebra("algebra P { gens x,y; rels x*y - y*x; }").unwrap();
        let e = parse_algebra("algebra E { gens x,y; rels x*x, y*y, x*y + y*x; }").unwrap();
        assert_eq!(e, qa_dual(&p));
    }

    #[test]
    fn coefficients_and_signs() {
        let a = parse_algebra("algebra A {\n gens a, b;\n rels -a*b + 3/2*b*a, 2*a*2*a;\n}").unwrap();
        let b = QuadAlgebra::new(
            2,
            Subspace::span(
                4,
                vec![
                    vec![Rational::zero(), -Rational::one(), Rational::new(3.into(), 2.into()), Rational::zero()],
                    vec![Rational::one(), Rational::zero(), Rational::zero(), Rational::zero()],
                ],
            )
            .unwrap(),
        )
        .unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn cubic_term_rejected_with_position() {
        let e = parse_algebra("algebra P {\n  gens x,y;\n  rels x*y*x;\n}").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::NonQuadratic(3));
        assert_eq!((e.line, e.col), (3, 8));
        assert!(e.to_string().contains("non-quadratic term"));
    }

    #[test]
    fn other_errors() {
        let kind = |s: &str| parse_algebra(s).unwrap_err().kind;
        assert_eq!(kind("algebra P { gens ; rels ; }"), ParseErrorKind::EmptyGenerators);
        assert_eq!(kind("algebra P { gens x; rels x*z; }"), ParseErrorKind::UnknownGenerator("z".into()));
        assert_eq!(kind("algebra P { gens x; rels x*x ? }"), ParseErrorKind::Lexical('?'));
        assert_eq!(kind("algebra P { gens x, x; rels ; }"), ParseErrorKind::DuplicateGenerator("x".into()));
        assert_eq!(kind("algebra P { gens x; rels 1/0*x*x; }"), ParseErrorKind::ZeroDenominator);
    }

    #[test]
    fn empty_relations_give_free_algebra() {
        let a = parse_algebra("algebra F { gens x, y; rels ; }").unwrap();
        assert_eq!(a, QuadAlgebra::free(2));
    }

    #[test]
    fn round_trip() {
        let src = "algebra Q { gens a, b, c; rels a*b - 2/3*b*a + c*c, b*c + c*b; }";
        let a = parse_algebra(src).unwrap();
        let text = to_dsl("Q", &a);
        let (name, b) = parse_named(&text).unwrap();
        assert_eq!(name, "Q");
        assert_eq!(a, b);
        assert_eq!(b.names(), a.names());
        assert_eq!(to_dsl("Q", &b), text);
    }
}
