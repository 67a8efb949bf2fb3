//! JSON encoding `{monomial: [[re, im, lambda_exp], ...]}`.
//!
//! A coefficient may mix several powers of λ, so each monomial maps to a list
//! of `(re + i·im)·λ^e` triples. Exact parts are written as rational strings.

use std::sync::Arc;

use num_complex::Complex64;
use serde_json::{json, Map, Value};

use crate::algebra_core::{parse::parse_word, GeneratorSpec, Phase, TwistedPoly};
use crate::cyclotomic::Cyclotomic;
use crate::error::{NcgError, Result};
use crate::scalar::{parse_rational, ComplexScalar, Rational};

pub trait JsonCoeff: ComplexScalar {
    fn to_triples(&self, phase: Phase) -> Result<Vec<Value>>;
    fn from_triples(v: &[Value], phase: Phase) -> Result<Self>;
}

fn bad(msg: &str) -> NcgError {
    NcgError::Parse { pos: 0, msg: msg.into() }
}

impl JsonCoeff for Cyclotomic {
    fn to_triples(&self, phase: Phase) -> Result<Vec<Value>> {
        let Phase::Rational { p, q } = phase else {
            return Err(NcgError::Domain("exact coefficients need rational θ".into()));
        };
        Ok(self
            .decompose(p, q)?
            .into_iter()
            .map(|(re, im, e)| json!([re.to_string(), im.to_string(), e]))
            .collect())
    }

    fn from_triples(v: &[Value], phase: Phase) -> Result<Self> {
        let Phase::Rational { p, q } = phase else {
            return Err(NcgError::Domain("exact coefficients need rational θ".into()));
        };
        let mut terms: Vec<(Rational, Rational, i64)> = Vec::new();
        for t in v {
            let a = t.as_array().filter(|a| a.len() == 3).ok_or_else(|| bad("expected [re, im, e]"))?;
            let num = |x: &Value| match x {
                Value::String(s) => parse_rational(s),
                Value::Number(n) => parse_rational(&n.to_string()),
                _ => Err(bad("coefficient must be a rational string")),
            };
            let e = a[2].as_i64().ok_or_else(|| bad("λ exponent must be an integer"))?;
            terms.push((num(&a[0])?, num(&a[1])?, e));
        }
        Ok(Cyclotomic::compose(p, q, &terms))
    }
}

impl JsonCoeff for Complex64 {
    fn to_triples(&self, _phase: Phase) -> Result<Vec<Value>> {
        Ok(vec![json!([self.re, self.im, 0])])
    }

    fn from_triples(v: &[Value], phase: Phase) -> Result<Self> {
        let mut acc = Complex64::new(0.0, 0.0);
        for t in v {
            let a = t.as_array().filter(|a| a.len() == 3).ok_or_else(|| bad("expected [re, im, e]"))?;
            let f = |x: &Value| x.as_f64().ok_or_else(|| bad("expected a number"));
            let e = a[2].as_i64().ok_or_else(|| bad("λ exponent must be an integer"))?;
            let lam: Complex64 = phase.lambda_pow(e)?;
            acc += Complex64::new(f(&a[0])?, f(&a[1])?) * lam;
        }
        Ok(acc)
    }
}

pub fn to_json<C: JsonCoeff>(p: &TwistedPoly<C>) -> Result<Value> {
    let mut map = Map::new();
    for (m, c) in p.terms() {
        map.insert(p.spec().monomial_string(m), Value::Array(c.to_triples(p.spec().phase())?));
    }
    Ok(Value::Object(map))
}

pub fn from_json<C: JsonCoeff>(v: &Value, spec: &Arc<GeneratorSpec>) -> Result<TwistedPoly<C>> {
    let obj = v.as_object().ok_or_else(|| bad("expected an object"))?;
    let mut out = TwistedPoly::zero(spec);
    for (k, triples) in obj {
        let arr = triples.as_array().ok_or_else(|| bad("expected a list of triples"))?;
        let c = C::from_triples(arr, spec.phase())?;
        let mut mono = vec![0u32; spec.len()];
        if k != "1" {
            for tok in k.split_whitespace() {
                let (name, e) = match tok.split_once('^') {
                    Some((n, e)) => (n, e.parse::<u32>().map_err(|_| bad("bad exponent"))?),
                    None => (tok, 1),
                };
                let g = parse_word(name, spec)?[0];
                mono[g] += e;
            }
        }
        out.add_term(mono, c);
    }
    Ok(out)
}
