use std::collections::BTreeSet;

use crate::poly::{Entry, Monomial, MultiPoly, Poly, Var};

use super::SdlError;

/// Indices `i` whose entry mentions `xi`. `SuperPoly` entries never count.
pub fn sd_set(p: &MultiPoly) -> BTreeSet<Var> {
    (1..=p.arity())
        .filter(|&i| p.entry(i).as_poly().is_some_and(|q| q.mentions(i)))
        .collect()
}

/// `p ∘ p = p` with saturated coefficients.
pub fn is_idempotent(p: &MultiPoly) -> bool {
    p.compose(p).is_ok_and(|q| q == *p)
}

/// Idempotence once coefficients are forgotten: `x + x` counts as `x`.
pub fn is_abstract_idempotent(p: &MultiPoly) -> bool {
    let e = p.erase();
    e.compose(&e).is_ok_and(|q| q.erase() == e)
}

/// Split of a self-dependent entry `xi + tau*p' + p'' + p'''`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub base: Var,
    /// Self-dependent monomials carrying `tau`, with one `tau` stripped.
    pub p_prime: Poly,
    /// `tau`-free self-dependent monomials other than `xi`.
    pub p_dprime: Poly,
    /// Monomials mentioning some variable that is not self-dependent.
    pub p_tprime: Poly,
}

impl Decomposition {
    /// `xi + tau*p' + p'' + p'''`.
    pub fn reassemble(&self) -> Poly {
        let tau = Monomial::tau_pow(1);
        Poly::var(self.base)
            .add(&self.p_prime.mul_monomial(&tau, crate::poly::Coeff::One))
            .add(&self.p_dprime)
            .add(&self.p_tprime)
    }
}

fn is_self_dependent(m: &Monomial, sd: &BTreeSet<Var>) -> bool {
    m.vars().all(|v| sd.contains(&v))
}

pub fn decompose_entry(p: &MultiPoly, i: Var) -> Result<Decomposition, SdlError> {
    let sd = sd_set(p);
    decompose_with(p, i, &sd)
}

fn decompose_with(p: &MultiPoly, i: Var, sd: &BTreeSet<Var>) -> Result<Decomposition, SdlError> {
    let entry = p
        .entry(i)
        .as_poly()
        .filter(|_| sd.contains(&i))
        .ok_or(SdlError::NotSelfDependent { index: i })?;
    let base = Monomial::var(i);
    if entry.coeff(&base) != Some(crate::poly::Coeff::One) {
        return Err(SdlError::MissingBareVar { index: i });
    }
    let rest = entry.retain(|m, _| *m != base);
    let (sdm, p_tprime): (Vec<_>, Vec<_>) = rest
        .terms()
        .iter()
        .cloned()
        .partition(|(m, _)| is_self_dependent(m, sd));
    let (with_tau, p_dprime): (Vec<_>, Vec<_>) =
        sdm.into_iter().partition(|(m, _)| !m.is_tau_free());
    let p_prime = with_tau
        .into_iter()
        .map(|(m, c)| (m.with_tau(m.tau_exp() - 1), c));
    Ok(Decomposition {
        base: i,
        p_prime: Poly::from_terms(p_prime),
        p_dprime: Poly::from_terms(p_dprime),
        p_tprime: Poly::from_terms(p_tprime),
    })
}

/// Multiply the `tau`-free self-dependent increments of every self-dependent
/// entry by `tau`; other monomials and entries are untouched.
///
/// The input must be idempotent once coefficients are forgotten.
pub fn generalize(p: &MultiPoly) -> Result<MultiPoly, SdlError> {
    if !is_abstract_idempotent(p) {
        return Err(SdlError::NotIdempotent);
    }
    generalize_unchecked(p)
}

pub(crate) fn generalize_unchecked(p: &MultiPoly) -> Result<MultiPoly, SdlError> {
    let sd = sd_set(p);
    let tau = Monomial::tau_pow(1);
    let mut out = p.clone();
    for &i in &sd {
        let d = decompose_with(p, i, &sd)?;
        if d.p_dprime.is_zero() {
            continue;
        }
        let entry = p.entry(i).as_poly().expect("self-dependent entries are bounds");
        // coefficients travel with their monomials
        let moved = d.p_dprime.mul_monomial(&tau, crate::poly::Coeff::One);
        let kept = entry.retain(|m, _| !d.p_dprime.contains(m));
        out.set_entry(i, Entry::Bound(kept.add(&moved)));
    }
    Ok(out)
}

/// Variables `i` whose entry has a monomial divisible by `xi` other than the
/// bare, coefficient-one `xi`. Such a monomial in a realizable transition
/// means `xi` grows faster than any polynomial.
pub fn detect_superpoly(p: &MultiPoly) -> BTreeSet<Var> {
    (1..=p.arity())
        .filter(|&i| {
            p.entry(i).as_poly().is_some_and(|q| {
                q.terms().iter().any(|(m, c)| {
                    m.exp(i) > 0 && !(m.as_linear() == Some(i) && *c == crate::poly::Coeff::One)
                })
            })
        })
        .collect()
}
