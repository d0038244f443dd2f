//! Text forms: `x1^2*x3*tau + w*x2` for polynomials and `<e1, ..., en>` for
//! transitions, with `SUPERPOLY` marking unbounded entries.

use super::coeff::{Coeff, Semiring};
use super::monomial::Monomial;
use super::multi::{Entry, MultiPoly, NatMultiPoly};
use super::polynomial::{NatPoly, Poly, Polynomial};
use super::PolyError;

/// Coefficient types that can be read back from text.
pub trait ParseCoeff: Semiring {
    fn from_int(k: u64) -> Option<Self>;
    /// The coefficient written `w`, if the type has one.
    fn omega() -> Option<Self>;
}

impl ParseCoeff for Coeff {
    fn from_int(k: u64) -> Option<Self> {
        Coeff::from_count(k)
    }

    fn omega() -> Option<Self> {
        Some(Coeff::Many)
    }
}

impl ParseCoeff for u64 {
    fn from_int(k: u64) -> Option<Self> {
        (k > 0).then_some(k)
    }

    fn omega() -> Option<Self> {
        None
    }
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn eat_word(&mut self, w: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(w.as_bytes()) {
            self.pos += w.len();
            true
        } else {
            false
        }
    }

    fn err(&self, msg: impl Into<String>) -> PolyError {
        PolyError::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn number(&mut self) -> Result<u64, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("number out of range"))
    }

    fn exponent(&mut self) -> Result<u32, PolyError> {
        if self.eat(b'^') {
            let e = self.number()?;
            u32::try_from(e).map_err(|_| self.err("exponent out of range"))
        } else {
            Ok(1)
        }
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }
}

fn term<C: ParseCoeff>(lx: &mut Lexer<'_>) -> Result<(Monomial, Option<C>), PolyError> {
    let mut coeff = C::one();
    let mut mono = Monomial::unit();
    loop {
        match lx.peek() {
            Some(b'x') => {
                lx.pos += 1;
                let v = lx.number()? as usize;
                if v == 0 {
                    return Err(lx.err("variable indices start at 1"));
                }
                let e = lx.exponent()?;
                mono = mono.mul(&Monomial::from_exps([(v, e)], 0));
            }
            Some(b't') => {
                if !lx.eat_word("tau") {
                    return Err(lx.err("expected `tau`"));
                }
                let e = lx.exponent()?;
                mono = mono.mul(&Monomial::tau_pow(e));
            }
            Some(b'w') => {
                lx.pos += 1;
                let w = C::omega().ok_or_else(|| lx.err("`w` is not allowed here"))?;
                coeff = coeff.mul(w);
            }
            Some(c) if c.is_ascii_digit() => {
                let k = lx.number()?;
                match C::from_int(k) {
                    Some(c) => coeff = coeff.mul(c),
                    // a zero factor wipes out the whole term
                    None => {
                        return term_rest::<C>(lx).map(|_| (mono, None));
                    }
                }
            }
            _ => return Err(lx.err("expected a variable, `tau`, `w` or a number")),
        }
        if !lx.eat(b'*') {
            return Ok((mono, Some(coeff)));
        }
    }
}

// consume the remaining factors of a term already known to be zero
fn term_rest<C: ParseCoeff>(lx: &mut Lexer<'_>) -> Result<(), PolyError> {
    if lx.eat(b'*') {
        term::<C>(lx)?;
    }
    Ok(())
}

fn poly<C: ParseCoeff>(lx: &mut Lexer<'_>) -> Result<Polynomial<C>, PolyError> {
    let mut terms = Vec::new();
    loop {
        let (m, c) = term::<C>(lx)?;
        if let Some(c) = c {
            terms.push((m, c));
        }
        if !lx.eat(b'+') {
            break;
        }
    }
    Ok(Polynomial::from_terms(terms))
}

fn finish<T>(lx: &mut Lexer<'_>, v: T) -> Result<T, PolyError> {
    if lx.at_end() {
        Ok(v)
    } else {
        Err(lx.err("unexpected trailing input"))
    }
}

pub fn parse_poly(s: &str) -> Result<Poly, PolyError> {
    let mut lx = Lexer::new(s);
    let p = poly(&mut lx)?;
    finish(&mut lx, p)
}

pub fn parse_nat_poly(s: &str) -> Result<NatPoly, PolyError> {
    let mut lx = Lexer::new(s);
    let p = poly(&mut lx)?;
    finish(&mut lx, p)
}

pub fn parse_entry(s: &str) -> Result<Entry, PolyError> {
    let mut lx = Lexer::new(s);
    let e = entry(&mut lx)?;
    finish(&mut lx, e)
}

fn entry(lx: &mut Lexer<'_>) -> Result<Entry, PolyError> {
    if lx.eat_word("SUPERPOLY") {
        Ok(Entry::SuperPoly)
    } else {
        poly(lx).map(Entry::Bound)
    }
}

fn tuple<T>(
    lx: &mut Lexer<'_>,
    mut item: impl FnMut(&mut Lexer<'_>) -> Result<T, PolyError>,
) -> Result<Vec<T>, PolyError> {
    if !lx.eat(b'<') {
        return Err(lx.err("expected `<`"));
    }
    let mut out = Vec::new();
    if lx.eat(b'>') {
        return Ok(out);
    }
    loop {
        out.push(item(lx)?);
        if lx.eat(b'>') {
            return Ok(out);
        }
        if !lx.eat(b',') {
            return Err(lx.err("expected `,` or `>`"));
        }
    }
}

pub fn parse_mp(s: &str) -> Result<MultiPoly, PolyError> {
    let mut lx = Lexer::new(s);
    let entries = tuple(&mut lx, entry)?;
    finish(&mut lx, MultiPoly::new(entries))
}

pub fn parse_nat_mp(s: &str) -> Result<NatMultiPoly, PolyError> {
    let mut lx = Lexer::new(s);
    let entries = tuple(&mut lx, poly::<u64>)?;
    finish(&mut lx, NatMultiPoly::new(entries))
}
