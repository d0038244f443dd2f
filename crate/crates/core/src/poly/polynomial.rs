use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;

use super::coeff::{Coeff, Semiring};
use super::monomial::{Monomial, Var};

/// Sparse polynomial over `x1..xn` and `tau` with coefficients in `C`.
///
/// Terms are kept sorted in the graded monomial order with no repeated
/// monomials and no zero coefficients, so structural equality is semantic
/// equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Polynomial<C> {
    terms: Vec<(Monomial, C)>,
}

/// Polynomial with saturated coefficients.
pub type Poly = Polynomial<Coeff>;
/// Polynomial with exact natural-number coefficients.
pub type NatPoly = Polynomial<u64>;

impl<C: Semiring> Default for Polynomial<C> {
    fn default() -> Self {
        Polynomial::zero()
    }
}

impl<C: Semiring> Polynomial<C> {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn var(i: Var) -> Self {
        Polynomial::monomial(Monomial::var(i), C::one())
    }

    pub fn monomial(m: Monomial, c: C) -> Self {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: vec![(m, c)],
        }
    }

    /// Normalizing constructor: sorts, merges repeated monomials with `+`, and
    /// drops zero coefficients.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut terms: Vec<(Monomial, C)> = terms.into_iter().collect();
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(Monomial, C)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = last.1.add(c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Polynomial { terms: out }
    }

    pub fn terms(&self) -> &[(Monomial, C)] {
        &self.terms
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.iter().map(|(m, _)| m)
    }

    pub fn coeff(&self, m: &Monomial) -> Option<C> {
        self.terms
            .binary_search_by(|(n, _)| n.cmp(m))
            .ok()
            .map(|k| self.terms[k].1)
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.coeff(m).is_some()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest degree in the program variables.
    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    /// Largest degree counting `tau`.
    pub fn total_degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|(m, _)| m.total_degree())
            .max()
            .unwrap_or(0)
    }

    pub fn is_tau_free(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_tau_free())
    }

    pub fn mentions(&self, i: Var) -> bool {
        self.terms.iter().any(|(m, _)| m.exp(i) > 0)
    }

    pub fn max_var(&self) -> Var {
        self.terms.iter().map(|(m, _)| m.max_var()).max().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0.clone(), a[i].1.add(b[j].1)));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Polynomial { terms: out }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut prods = Vec::with_capacity(self.len() * other.len());
        for (m, c) in &self.terms {
            for (n, d) in &other.terms {
                prods.push((m.mul(n), c.mul(*d)));
            }
        }
        Polynomial::from_terms(prods)
    }

    pub fn mul_monomial(&self, m: &Monomial, c: C) -> Self {
        // multiplying every term by the same monomial preserves the order
        let terms = self
            .terms
            .iter()
            .map(|(n, d)| (n.mul(m), d.mul(c)))
            .collect::<Vec<_>>();
        Polynomial::from_terms(terms)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Polynomial::monomial(Monomial::unit(), C::one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Substitute `subs[j - 1]` for every `xj`; `tau` is left untouched.
    pub fn compose(&self, subs: &[&Self]) -> Self {
        let mut cache = PowCache::new(subs);
        self.compose_cached(&mut cache)
    }

    pub(crate) fn compose_cached(&self, cache: &mut PowCache<'_, C>) -> Self {
        let mut acc: Vec<(Monomial, C)> = Vec::new();
        for (m, c) in &self.terms {
            let mut prod = Polynomial::monomial(Monomial::tau_pow(m.tau_exp()), *c);
            for (v, e) in m.exps() {
                prod = prod.mul(cache.power(v, e));
            }
            acc.extend(prod.terms);
        }
        Polynomial::from_terms(acc)
    }

    /// Replace `tau^k` by `e^k` in every term.
    pub fn subst_tau(&self, e: &Self) -> Self {
        let mut powers: Vec<Self> = vec![Polynomial::monomial(Monomial::unit(), C::one())];
        let mut acc = Vec::new();
        for (m, c) in &self.terms {
            let k = m.tau_exp() as usize;
            while powers.len() <= k {
                let next = powers.last().unwrap().mul(e);
                powers.push(next);
            }
            let base = m.without_tau();
            acc.extend(powers[k].mul_monomial(&base, *c).terms);
        }
        Polynomial::from_terms(acc)
    }

    /// `(linear, rest)`: the bare `xi` terms versus everything else.
    pub fn split_linear(&self) -> (Self, Self) {
        let (lin, rest): (Vec<_>, Vec<_>) =
            self.terms.iter().cloned().partition(|(m, _)| m.is_linear());
        (Polynomial { terms: lin }, Polynomial { terms: rest })
    }

    pub fn retain(&self, mut keep: impl FnMut(&Monomial, C) -> bool) -> Self {
        Polynomial {
            terms: self
                .terms
                .iter()
                .filter(|(m, c)| keep(m, *c))
                .cloned()
                .collect(),
        }
    }

    pub fn map_coeffs<D: Semiring>(&self, f: impl Fn(C) -> D) -> Polynomial<D> {
        Polynomial::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(*c))))
    }

    /// Evaluate as an ordinary polynomial, reading each coefficient through
    /// [`Semiring::weight`]. `xs[j - 1]` is the value of `xj`.
    pub fn eval(&self, xs: &[BigUint], t: &BigUint) -> BigUint {
        let mut sum = BigUint::zero();
        for (m, c) in &self.terms {
            let mut term = BigUint::from(c.weight());
            for (v, e) in m.exps() {
                term *= xs[v - 1].pow(e);
            }
            if m.tau_exp() > 0 {
                term *= t.pow(m.tau_exp());
            }
            sum += term;
        }
        sum
    }

    /// Evaluation in floating point, for ratio fitting.
    pub fn eval_f64(&self, xs: &[f64], t: f64) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut term = c.weight() as f64;
                for (v, e) in m.exps() {
                    term *= xs[v - 1].powi(e as i32);
                }
                term * t.powi(m.tau_exp() as i32)
            })
            .sum()
    }
}

impl Poly {
    /// Every coefficient becomes `One`.
    pub fn erase(&self) -> Poly {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, _)| (m.clone(), Coeff::One))
                .collect(),
        }
    }
}

impl NatPoly {
    /// Saturating abstraction: coefficient 1 stays `One`, anything larger is `Many`.
    pub fn alpha(&self) -> Poly {
        Polynomial {
            terms: self
                .terms
                .iter()
                .filter_map(|(m, c)| Coeff::from_count(*c).map(|k| (m.clone(), k)))
                .collect(),
        }
    }

    /// Monomial-wise maximum of coefficients.
    pub fn join(&self, other: &NatPoly) -> NatPoly {
        let mut map: HashMap<Monomial, u64> = HashMap::new();
        for (m, c) in self.terms.iter().chain(other.terms.iter()) {
            let slot = map.entry(m.clone()).or_insert(0);
            *slot = (*slot).max(*c);
        }
        Polynomial::from_terms(map)
    }
}

/// Memoized powers of the substituted polynomials used during composition.
pub(crate) struct PowCache<'a, C> {
    subs: &'a [&'a Polynomial<C>],
    powers: HashMap<(Var, u32), Polynomial<C>>,
}

impl<'a, C: Semiring> PowCache<'a, C> {
    pub(crate) fn new(subs: &'a [&'a Polynomial<C>]) -> Self {
        PowCache {
            subs,
            powers: HashMap::new(),
        }
    }

    fn power(&mut self, v: Var, e: u32) -> &Polynomial<C> {
        if e == 1 {
            return self.subs[v - 1];
        }
        if !self.powers.contains_key(&(v, e)) {
            let base = self.subs[v - 1];
            let mut acc = base.clone();
            for _ in 1..e {
                acc = acc.mul(base);
            }
            self.powers.insert((v, e), acc);
        }
        &self.powers[&(v, e)]
    }
}

/// How a coefficient is printed in front of its monomial.
pub trait CoeffText {
    fn write_prefix(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result;
    /// A term whose monomial is the unit.
    fn write_constant(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result;
}

impl CoeffText for Coeff {
    fn write_prefix(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::One => Ok(()),
            Coeff::Many => write!(f, "w*"),
        }
    }

    fn write_constant(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::One => write!(f, "1"),
            Coeff::Many => write!(f, "w"),
        }
    }
}

impl CoeffText for u64 {
    fn write_prefix(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if *self == 1 {
            Ok(())
        } else {
            write!(f, "{self}*")
        }
    }

    fn write_constant(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<C: Semiring + CoeffText> Polynomial<C> {
    /// Text form without spaces around `+`.
    pub fn to_compact_string(&self) -> String {
        struct Compact<'a, C>(&'a Polynomial<C>);
        impl<C: Semiring + CoeffText> fmt::Display for Compact<'_, C> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.write_with(f, "+")
            }
        }
        Compact(self).to_string()
    }

    fn write_with(&self, f: &mut fmt::Formatter<'_>, sep: &str) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, "{sep}")?;
            }
            if m.is_unit() {
                c.write_constant(f)?;
            } else {
                c.write_prefix(f)?;
                write!(f, "{m}")?;
            }
        }
        Ok(())
    }
}

impl<C: Semiring + CoeffText> fmt::Display for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_with(f, " + ")
    }
}

impl<C: Semiring + CoeffText> fmt::Debug for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
