//! Element expressions.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary ('*' unary)*
//! unary   := '-' unary | atom
//! atom    := scalar | BASIS '[' parts ']' | BASIS '{' elements '}' '@' n | '(' expr ')'
//! scalar  := rational | rational? 'i'
//! ```
//!
//! Sums of elements in different bases are converted to the basis of the left operand.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::combinatorics::{Composition, PeakSet};
use crate::error::{Error, Result};
use crate::field::{GaussianRational, Rational};
use crate::hopf::{convert, product, Basis, FreeElement, Index};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((start, Tok::Num(s.parse().expect("digits"))));
        } else if c.is_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_alphabetic() {
                i += 1;
            }
            out.push((start, Tok::Ident(chars[start..i].iter().collect())));
        } else if "+-*/()[]{},@".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(Error::Parse { position: i, expected: "number, basis name, operator or bracket".into() });
        }
    }
    Ok(out)
}

/// A parsed value: a bare scalar or an element of one basis.
#[derive(Clone, Debug, PartialEq)]
pub enum Parsed {
    Scalar(GaussianRational),
    Element(FreeElement),
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.0)
    }

    fn fail<T>(&self, expected: &str) -> Result<T> {
        Err(Error::Parse { position: self.here(), expected: expected.into() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.fail(&format!("'{c}'"))
        }
    }

    fn number(&mut self) -> Result<usize> {
        match self.peek() {
            Some(Tok::Num(n)) => {
                let v = n.to_string().parse().map_err(|_| Error::Parse { position: self.here(), expected: "small integer".into() });
                self.pos += 1;
                v
            }
            _ => self.fail("integer"),
        }
    }

    fn expr(&mut self) -> Result<Parsed> {
        let mut acc = self.term()?;
        loop {
            let at = self.here();
            if self.eat('+') {
                let rhs = self.term()?;
                acc = combine(acc, rhs, false, at)?;
            } else if self.eat('-') {
                let rhs = self.term()?;
                acc = combine(acc, rhs, true, at)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Parsed> {
        let mut acc = self.unary()?;
        loop {
            let at = self.here();
            if self.eat('*') {
                let rhs = self.unary()?;
                acc = multiply(acc, rhs, at)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Parsed> {
        if self.eat('-') {
            return Ok(match self.unary()? {
                Parsed::Scalar(s) => Parsed::Scalar(-s),
                Parsed::Element(x) => Parsed::Element(x.neg()),
            });
        }
        self.atom()
    }

    fn rational(&mut self) -> Result<Rational> {
        let p = match self.peek() {
            Some(Tok::Num(n)) => n.clone(),
            _ => return self.fail("integer"),
        };
        self.pos += 1;
        if self.eat('/') {
            let at = self.here();
            let q = match self.peek() {
                Some(Tok::Num(n)) => n.clone(),
                _ => return self.fail("denominator"),
            };
            if q.is_zero() {
                return Err(Error::Parse { position: at, expected: "nonzero denominator".into() });
            }
            self.pos += 1;
            Ok(Rational::new(p, q))
        } else {
            Ok(Rational::from_integer(p))
        }
    }

    fn atom(&mut self) -> Result<Parsed> {
        match self.peek().cloned() {
            Some(Tok::Num(_)) => {
                let r = self.rational()?;
                if self.peek() == Some(&Tok::Ident("i".into())) {
                    self.pos += 1;
                    Ok(Parsed::Scalar(GaussianRational::new(Rational::zero(), r)))
                } else {
                    Ok(Parsed::Scalar(GaussianRational::real(r)))
                }
            }
            Some(Tok::Ident(name)) if name == "i" => {
                self.pos += 1;
                Ok(Parsed::Scalar(GaussianRational::i()))
            }
            Some(Tok::Ident(name)) => {
                let at = self.here();
                let basis = Basis::from_name(&name).ok_or(Error::Parse {
                    position: at,
                    expected: "basis name (H, E, R, Q, M, F, Xi, K, N, h, m, p, r, q, podd)".into(),
                })?;
                self.pos += 1;
                self.basis_element(basis, at)
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(')')?;
                Ok(v)
            }
            _ => self.fail("number, 'i', basis name or '('"),
        }
    }

    fn list(&mut self, close: char) -> Result<Vec<usize>> {
        let mut v = Vec::new();
        if self.eat(close) {
            return Ok(v);
        }
        loop {
            v.push(self.number()?);
            if self.eat(close) {
                return Ok(v);
            }
            if !self.eat(',') {
                return self.fail(&format!("',' or '{close}'"));
            }
        }
    }

    fn basis_element(&mut self, basis: Basis, at: usize) -> Result<Parsed> {
        let index = if basis.peak_indexed() {
            if !self.eat('{') {
                return self.fail("'{' (peak-set index)");
            }
            let set = self.list('}')?;
            self.expect('@')?;
            let n = self.number()?;
            Index::Peak(PeakSet::new(n, &set).map_err(|e| Error::Parse { position: at, expected: format!("peak set ({e})") })?)
        } else {
            if !self.eat('[') {
                return self.fail("'[' (composition index)");
            }
            let parts = self.list(']')?;
            let c = Composition::new(&parts).map_err(|e| Error::Parse { position: at, expected: format!("composition ({e})") })?;
            if basis.partition_indexed() && !c.is_partition() {
                return Err(Error::Parse { position: at, expected: "weakly decreasing parts".into() });
            }
            Index::Comp(c)
        };
        Ok(Parsed::Element(FreeElement::basis_element(basis, index)))
    }
}

fn real_part(s: &GaussianRational, at: usize) -> Result<Rational> {
    if s.is_real() {
        Ok(s.re.clone())
    } else {
        Err(Error::Parse { position: at, expected: "real coefficient for a basis element".into() })
    }
}

fn lift(at: usize, e: Error) -> Error {
    match e {
        Error::Parse { .. } => e,
        other => Error::Parse { position: at, expected: format!("compatible operands ({other})") },
    }
}

fn combine(a: Parsed, b: Parsed, negate: bool, at: usize) -> Result<Parsed> {
    let b = match b {
        Parsed::Scalar(s) => Parsed::Scalar(if negate { -s } else { s }),
        Parsed::Element(x) => Parsed::Element(if negate { x.neg() } else { x }),
    };
    Ok(match (a, b) {
        (Parsed::Scalar(s), Parsed::Scalar(t)) => Parsed::Scalar(s + t),
        (Parsed::Scalar(s), Parsed::Element(x)) | (Parsed::Element(x), Parsed::Scalar(s)) => {
            let unit = FreeElement::one(x.basis()).scale(&real_part(&s, at)?);
            Parsed::Element(x.add(&unit).map_err(|e| lift(at, e))?)
        }
        (Parsed::Element(x), Parsed::Element(y)) => {
            let y = if y.basis() == x.basis() { y } else { convert(&y, x.basis()).map_err(|e| lift(at, e))? };
            Parsed::Element(x.add(&y).map_err(|e| lift(at, e))?)
        }
    })
}

fn multiply(a: Parsed, b: Parsed, at: usize) -> Result<Parsed> {
    Ok(match (a, b) {
        (Parsed::Scalar(s), Parsed::Scalar(t)) => Parsed::Scalar(s * t),
        (Parsed::Scalar(s), Parsed::Element(x)) | (Parsed::Element(x), Parsed::Scalar(s)) => {
            Parsed::Element(x.scale(&real_part(&s, at)?))
        }
        (Parsed::Element(x), Parsed::Element(y)) => Parsed::Element(product(&x, &y).map_err(|e| lift(at, e))?),
    })
}

/// Parses an expression into a scalar or an element.
pub fn parse(src: &str) -> Result<Parsed> {
    let toks = tokenize(src)?;
    let mut p = Parser { toks, pos: 0, end: src.chars().count() };
    let v = p.expr()?;
    if p.pos < p.toks.len() {
        return p.fail("'+', '-', '*' or end of input");
    }
    Ok(v)
}

/// Parses an expression that must denote an element of some basis.
pub fn parse_element(src: &str) -> Result<FreeElement> {
    match parse(src)? {
        Parsed::Element(x) => Ok(x),
        Parsed::Scalar(_) => Err(Error::Parse { position: 0, expected: "an expression containing a basis element".into() }),
    }
}

/// Parses a scalar expression.
pub fn parse_scalar(src: &str) -> Result<GaussianRational> {
    match parse(src)? {
        Parsed::Scalar(s) => Ok(s),
        Parsed::Element(_) => Err(Error::Parse { position: 0, expected: "a scalar expression".into() }),
    }
}

/// Parses `2,1` or `(2,1)` into a composition.
pub fn parse_composition(src: &str) -> Result<Composition> {
    let s = src.trim().trim_start_matches('(').trim_end_matches(')');
    if s.is_empty() {
        return Ok(Composition::empty());
    }
    let mut parts = Vec::new();
    let mut offset = 0;
    for piece in s.split(',') {
        let v = piece.trim().parse::<usize>().map_err(|_| Error::Parse { position: offset, expected: "positive integer part".into() })?;
        parts.push(v);
        offset += piece.len() + 1;
    }
    Composition::new(&parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;

    #[test]
    fn basic_forms() {
        let x = parse_element("Q[4]").unwrap();
        assert_eq!(x, FreeElement::comp(Basis::Q, &[4]));
        let y = parse_element("2*H[2,1] - 1/2*H[3] + H[]").unwrap();
        assert_eq!(y.coeff_comp(&[2, 1]), rat(2));
        assert_eq!(y.coeff_comp(&[]), rat(1));
        let k = parse_element("K{2}@4 + (3)*K{}@4").unwrap();
        assert_eq!(k.len(), 2);
        assert_eq!(parse_scalar("(1/2 + 3i) * 2").unwrap(), GaussianRational::new(rat(1), rat(6)));
    }

    #[test]
    fn mixed_bases_convert_left() {
        let x = parse_element("R[2] + H[1,1]").unwrap();
        assert_eq!(x.basis(), Basis::R);
        assert_eq!(x, convert(&parse_element("H[2]").unwrap(), Basis::R).unwrap().add(&convert(&FreeElement::comp(Basis::H, &[1, 1]), Basis::R).unwrap()).unwrap());
    }

    #[test]
    fn display_round_trip() {
        let x = parse_element("3*K{2}@3 - (1/3)*K{}@3").unwrap();
        assert_eq!(parse_element(&x.to_string()).unwrap(), x);
    }

    #[test]
    fn errors_report_position() {
        match parse("H[2,1") {
            Err(Error::Parse { position, expected }) => {
                assert_eq!(position, 5);
                assert!(expected.contains("']'"));
            }
            other => panic!("{other:?}"),
        }
        match parse("2 + Z[1]") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 4),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse("i*H[1]"), Err(Error::Parse { .. })));
        assert!(matches!(parse("K{1}@3"), Err(Error::Parse { position: 0, .. })));
        assert!(matches!(parse("H[1] )"), Err(Error::Parse { position: 5, .. })));
    }
}
