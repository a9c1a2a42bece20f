//! Recursive-descent parser for noncommutative polynomial expressions.
//!
//! ```text
//! expr   := ('+'|'-')? term (('+'|'-') term)*
//! term   := factor (('*'|'/')? factor)*      -- juxtaposition multiplies
//! factor := atom ('^' nat)?
//! atom   := rational | name | '(' expr ')'
//! ```
//!
//! A name is a generator, a declared parameter, or a run of one-letter
//! generators such as `dud`. Division is only allowed by scalars.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{Alphabet, FreeAlgError, NcPoly, Word};
use crate::scalars::{ParamSpace, Scalar};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Name(String),
    Sym(char),
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, FreeAlgError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = text[start..i].parse().expect("digits");
            out.push((start, Tok::Num(n)));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Name(text[start..i].to_string())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(FreeAlgError::SyntaxError { pos: i, msg: format!("unexpected character {c:?}") });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    alphabet: &'a Arc<Alphabet>,
    params: &'a Arc<ParamSpace>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(o, _)| *o).unwrap_or(self.end)
    }

    fn err(&self, msg: impl Into<String>) -> FreeAlgError {
        FreeAlgError::SyntaxError { pos: self.offset(), msg: msg.into() }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<NcPoly, FreeAlgError> {
        let negate = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            if self.eat('+') {
                acc = acc.try_add(&self.term()?)?;
            } else if self.eat('-') {
                acc = acc.try_sub(&self.term()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Some(Tok::Num(_)) | Some(Tok::Name(_)) | Some(Tok::Sym('(')))
    }

    fn term(&mut self) -> Result<NcPoly, FreeAlgError> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                acc = acc.try_mul(&self.factor()?)?;
            } else if self.peek() == Some(&Tok::Sym('/')) {
                let at = self.offset();
                self.pos += 1;
                let rhs = self.factor()?;
                let c = match rhs.terms().next() {
                    None => return Err(FreeAlgError::SyntaxError { pos: at, msg: "division by zero".into() }),
                    Some((w, c)) if rhs.len() == 1 && w.is_empty() => c.clone(),
                    _ => {
                        return Err(FreeAlgError::SyntaxError { pos: at, msg: "division by a non-scalar".into() })
                    }
                };
                acc = acc.scale(&c.inv()?);
            } else if self.starts_factor() {
                acc = acc.try_mul(&self.factor()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<NcPoly, FreeAlgError> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let k: usize = n.try_into().map_err(|_| self.err("exponent too large"))?;
                    Ok(base.pow(k))
                }
                _ => Err(self.err("expected a natural-number exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<NcPoly, FreeAlgError> {
        let at = self.offset();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(NcPoly::constant(self.alphabet, Scalar::from_rational(BigRational::from_integer(n))))
            }
            Some(Tok::Name(name)) => {
                self.pos += 1;
                self.resolve(&name, at)
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(inner)
            }
            Some(t) => Err(self.err(format!("unexpected token {t:?}"))),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn resolve(&self, name: &str, at: usize) -> Result<NcPoly, FreeAlgError> {
        if let Some(w) = self.alphabet.letter(name) {
            return Ok(NcPoly::word(self.alphabet, w));
        }
        if let Some(s) = Scalar::param(self.params, name) {
            return Ok(NcPoly::constant(self.alphabet, s));
        }
        let mut letters = Vec::with_capacity(name.len());
        for ch in name.chars() {
            match self.alphabet.index_of(&ch.to_string()) {
                Some(i) => letters.push(i),
                None => return Err(FreeAlgError::UnknownSymbol { name: name.to_string(), pos: at }),
            }
        }
        Ok(NcPoly::word(self.alphabet, Word::from(letters)))
    }
}

/// Parse `text` into a polynomial over `alphabet` with coefficients in
/// `params`.
pub fn parse_poly(text: &str, alphabet: &Arc<Alphabet>, params: &Arc<ParamSpace>) -> Result<NcPoly, FreeAlgError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, end: text.len(), alphabet, params };
    if p.peek().is_none() {
        return Err(p.err("empty expression"));
    }
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn down_up_relation() {
        let a = Alphabet::new(["d", "u"]).unwrap();
        let ps = ParamSpace::new(["alpha", "beta"]).unwrap();
        let rel = parse_poly("d^2*u - alpha*d*u*d - beta*u*d^2", &a, &ps).unwrap();
        assert_eq!(rel.len(), 3);
        let dud = a.parse_word("dud").unwrap();
        assert_eq!(rel.coeff(&dud), -Scalar::param(&ps, "alpha").unwrap());
        assert_eq!(rel.leading().unwrap().0, &a.parse_word("u*d^2").unwrap());
    }

    #[test]
    fn scalar_prefix_and_division() {
        let a = Alphabet::new(["d", "u"]).unwrap();
        let e = ParamSpace::empty();
        let p = parse_poly("(1/2)*(d+u)", &a, &e).unwrap();
        assert_eq!(p.coeff(&a.parse_word("d").unwrap()), Scalar::from_ratio(1, 2));
        assert_eq!(p.coeff(&a.parse_word("u").unwrap()), Scalar::from_ratio(1, 2));
        assert!(parse_poly("d/u", &a, &e).is_err());
    }

    #[test]
    fn juxtaposition_and_runs() {
        let a = Alphabet::new(["x", "y"]).unwrap();
        let e = ParamSpace::empty();
        assert_eq!(parse_poly("x^3 - yxy", &a, &e).unwrap(), parse_poly("x*x*x - y*x*y", &a, &e).unwrap());
        assert_eq!(parse_poly("(x y)^2", &a, &e).unwrap(), parse_poly("x*y*x*y", &a, &e).unwrap());
    }

    #[test]
    fn errors_carry_positions() {
        let a = Alphabet::new(["x", "y"]).unwrap();
        let e = ParamSpace::empty();
        match parse_poly("x + q", &a, &e) {
            Err(FreeAlgError::UnknownSymbol { name, pos }) => assert_eq!((name.as_str(), pos), ("q", 4)),
            other => panic!("{other:?}"),
        }
        match parse_poly("x + (y", &a, &e) {
            Err(FreeAlgError::SyntaxError { pos, .. }) => assert_eq!(pos, 6),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_poly("x $ y", &a, &e), Err(FreeAlgError::SyntaxError { pos: 2, .. })));
    }
}
