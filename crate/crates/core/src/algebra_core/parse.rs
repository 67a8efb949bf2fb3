//! Text syntax for twisted polynomials.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor factor*
//! factor := atom ['^' int]
//! atom   := int ['/' int] | name ['*'] | 'i' | 'lam' | '(' expr ')'
//! ```
//! Juxtaposition multiplies. `lam` is λ and accepts negative exponents.

use std::sync::Arc;

use crate::algebra_core::{GeneratorSpec, TwistedPoly};
use crate::error::{NcgError, Result};
use crate::scalar::{ComplexScalar, Rational, Scalar};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(i64),
    Name(String),
    Plus,
    Minus,
    Slash,
    Caret,
    Open,
    Close,
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '+' => { out.push((pos, Tok::Plus)); i += 1; }
            '-' => { out.push((pos, Tok::Minus)); i += 1; }
            '/' => { out.push((pos, Tok::Slash)); i += 1; }
            '^' => { out.push((pos, Tok::Caret)); i += 1; }
            '(' => { out.push((pos, Tok::Open)); i += 1; }
            ')' => { out.push((pos, Tok::Close)); i += 1; }
            '·' => i += 1,
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().map(|x| x.1).collect();
                let n = s.parse().map_err(|_| NcgError::Parse { pos, msg: format!("integer too large: {s}") })?;
                out.push((pos, Tok::Int(n)));
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_') {
                    i += 1;
                }
                if i < chars.len() && chars[i].1 == '*' {
                    i += 1;
                }
                out.push((pos, Tok::Name(chars[start..i].iter().map(|x| x.1).collect())));
            }
            _ => return Err(NcgError::Parse { pos, msg: format!("unexpected character {c:?}") }),
        }
    }
    Ok(out)
}

struct Parser<'a, C> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    spec: &'a Arc<GeneratorSpec>,
    end: usize,
    _c: std::marker::PhantomData<C>,
}

impl<C: ComplexScalar> Parser<'_, C> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.0)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(NcgError::Parse { pos: self.pos(), msg: msg.into() })
    }

    fn expr(&mut self) -> Result<TwistedPoly<C>> {
        let mut acc = TwistedPoly::zero(self.spec);
        let mut sign = C::one();
        match self.peek() {
            Some(Tok::Plus) => self.at += 1,
            Some(Tok::Minus) => {
                self.at += 1;
                sign = -C::one();
            }
            _ => {}
        }
        loop {
            let t = self.term()?;
            acc = acc.add(&t.scale(&sign));
            match self.peek() {
                Some(Tok::Plus) => {
                    self.at += 1;
                    sign = C::one();
                }
                Some(Tok::Minus) => {
                    self.at += 1;
                    sign = -C::one();
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<TwistedPoly<C>> {
        let mut acc = self.factor()?;
        while matches!(self.peek(), Some(Tok::Int(_) | Tok::Name(_) | Tok::Open)) {
            let f = self.factor()?;
            acc = acc.mul(&f);
        }
        Ok(acc)
    }

    fn exponent(&mut self) -> Result<Option<i64>> {
        if self.peek() != Some(&Tok::Caret) {
            return Ok(None);
        }
        self.at += 1;
        let neg = if self.peek() == Some(&Tok::Minus) {
            self.at += 1;
            true
        } else {
            false
        };
        match self.peek() {
            Some(Tok::Int(n)) => {
                let n = *n;
                self.at += 1;
                Ok(Some(if neg { -n } else { n }))
            }
            _ => self.err("expected exponent"),
        }
    }

    fn factor(&mut self) -> Result<TwistedPoly<C>> {
        let start = self.pos();
        let tok = match self.peek() {
            Some(t) => t.clone(),
            None => return self.err("unexpected end of input"),
        };
        self.at += 1;
        let base = match tok {
            Tok::Int(n) => {
                if self.peek() == Some(&Tok::Slash) {
                    self.at += 1;
                    let Some(Tok::Int(d)) = self.peek().cloned() else {
                        return self.err("expected denominator");
                    };
                    self.at += 1;
                    if d == 0 {
                        return Err(NcgError::Parse { pos: start, msg: "zero denominator".into() });
                    }
                    TwistedPoly::constant(self.spec, C::from_rational(&Rational::from_ratio(n, d)))
                } else {
                    TwistedPoly::constant(self.spec, C::from_i64(n))
                }
            }
            Tok::Name(name) if name == "lam" || name == "λ" => {
                let e = self.exponent()?.unwrap_or(1);
                return Ok(TwistedPoly::constant(self.spec, self.spec.phase().lambda_pow(e)?));
            }
            Tok::Name(name) if name == "i" && self.spec.index_of("i").is_none() => TwistedPoly::constant(self.spec, C::i()),
            Tok::Name(name) => match self.spec.index_of(&name) {
                Some(_) => TwistedPoly::generator(self.spec, &name)?,
                None => return Err(NcgError::Parse { pos: start, msg: format!("unknown generator {name:?}") }),
            },
            Tok::Open => {
                let e = self.expr()?;
                if self.peek() != Some(&Tok::Close) {
                    return self.err("expected ')'");
                }
                self.at += 1;
                e
            }
            other => return Err(NcgError::Parse { pos: start, msg: format!("unexpected token {other:?}") }),
        };
        match self.exponent()? {
            None => Ok(base),
            Some(e) if e >= 0 => Ok(base.pow(e as u32)),
            Some(_) => self.err("negative exponent on a polynomial"),
        }
    }
}

/// Parses text such as `"a b* t^2 - (1/2) b a"` into normal form.
pub fn parse_poly<C: ComplexScalar>(src: &str, spec: &Arc<GeneratorSpec>) -> Result<TwistedPoly<C>> {
    let toks = lex(src)?;
    if toks.is_empty() {
        return Ok(TwistedPoly::zero(spec));
    }
    let mut p = Parser { toks, at: 0, spec, end: src.len(), _c: std::marker::PhantomData };
    let out = p.expr()?;
    if p.at != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(out)
}

/// Parses a whitespace-separated generator word such as `"b a b"`.
pub fn parse_word(src: &str, spec: &GeneratorSpec) -> Result<Vec<usize>> {
    src.split_whitespace().map(|n| spec.generator(n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra_core::Phase;
    use crate::Cyclotomic;
    use crate::Field;
    use num_traits::One;

    fn spec() -> Arc<GeneratorSpec> {
        Arc::new(GeneratorSpec::s4_theta(Phase::rational(1, 5).unwrap()).unwrap())
    }

    #[test]
    fn parses_the_reference_expression() {
        let s = spec();
        let p: TwistedPoly<Cyclotomic> = parse_poly("a b* t^2 - (1/2) b a", &s).unwrap();
        let lam: Cyclotomic = s.phase().lambda_pow(1).unwrap();
        let abt = TwistedPoly::term(&s, vec![1, 0, 0, 1, 2], Cyclotomic::one());
        let ab = TwistedPoly::term(&s, vec![1, 0, 1, 0, 0], Cyclotomic::one());
        let want = abt.sub(&ab.scale(&(lam.inv() * Cyclotomic::from_ratio(1, 2))));
        assert_eq!(p, want);
    }

    #[test]
    fn greek_aliases_and_scalars() {
        let s = spec();
        let p: TwistedPoly<Cyclotomic> = parse_poly("i lam^-1 α β", &s).unwrap();
        let q: TwistedPoly<Cyclotomic> = parse_poly("i lam^-1 a b", &s).unwrap();
        assert_eq!(p, q);
        let z: TwistedPoly<Cyclotomic> = parse_poly("b a - lam^-1 a b", &s).unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn unknown_generator_is_a_parse_error() {
        let s = spec();
        let e = parse_poly::<Cyclotomic>("a z", &s).unwrap_err();
        assert!(matches!(e, NcgError::Parse { pos: 2, .. }));
        assert!(parse_word("a q", &s).is_err());
        assert!(parse_poly::<Cyclotomic>("(a", &s).is_err());
        assert!(parse_poly::<Cyclotomic>("1/0", &s).is_err());
    }
}
