use std::fmt;

use num_bigint::BigUint;

use super::monomial::{Monomial, Var};
use super::polynomial::{NatPoly, Poly, PowCache};
use super::PolyError;

/// One coordinate of a transition bound.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Entry {
    Bound(Poly),
    /// No polynomial bound exists; absorbs everything it touches.
    SuperPoly,
}

impl Entry {
    pub fn var(i: Var) -> Entry {
        Entry::Bound(Poly::var(i))
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        match self {
            Entry::Bound(p) => Some(p),
            Entry::SuperPoly => None,
        }
    }

    pub fn is_super(&self) -> bool {
        matches!(self, Entry::SuperPoly)
    }

    pub fn erase(&self) -> Entry {
        match self {
            Entry::Bound(p) => Entry::Bound(p.erase()),
            Entry::SuperPoly => Entry::SuperPoly,
        }
    }

    fn write_with(&self, f: &mut fmt::Formatter<'_>, compact: bool) -> fmt::Result {
        match self {
            Entry::SuperPoly => write!(f, "SUPERPOLY"),
            Entry::Bound(p) if compact => write!(f, "{}", p.to_compact_string()),
            Entry::Bound(p) => write!(f, "{p}"),
        }
    }

    pub fn to_compact_string(&self) -> String {
        match self {
            Entry::SuperPoly => "SUPERPOLY".to_string(),
            Entry::Bound(p) => p.to_compact_string(),
        }
    }
}

impl From<Poly> for Entry {
    fn from(p: Poly) -> Entry {
        Entry::Bound(p)
    }
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_with(f, false)
    }
}

impl fmt::Debug for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// An `n`-tuple of entries: entry `i` bounds the final value of `xi`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiPoly {
    entries: Vec<Entry>,
}

impl MultiPoly {
    pub fn identity(n: usize) -> MultiPoly {
        MultiPoly {
            entries: (1..=n).map(Entry::var).collect(),
        }
    }

    pub fn new(entries: Vec<Entry>) -> MultiPoly {
        MultiPoly { entries }
    }

    pub fn from_polys(polys: impl IntoIterator<Item = Poly>) -> MultiPoly {
        MultiPoly {
            entries: polys.into_iter().map(Entry::Bound).collect(),
        }
    }

    pub fn arity(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    /// Entry for the 1-based variable `i`.
    pub fn entry(&self, i: Var) -> &Entry {
        &self.entries[i - 1]
    }

    pub fn set_entry(&mut self, i: Var, e: Entry) {
        self.entries[i - 1] = e;
    }

    pub fn is_identity(&self) -> bool {
        self.entries
            .iter()
            .enumerate()
            .all(|(k, e)| matches!(e, Entry::Bound(p) if *p == Poly::var(k + 1)))
    }

    pub fn is_tau_free(&self) -> bool {
        self.entries
            .iter()
            .all(|e| e.as_poly().map_or(true, Poly::is_tau_free))
    }

    pub fn has_super(&self) -> bool {
        self.entries.iter().any(Entry::is_super)
    }

    /// Largest total degree (counting `tau`) over the polynomial entries.
    pub fn total_degree(&self) -> u32 {
        self.entries
            .iter()
            .filter_map(Entry::as_poly)
            .map(Poly::total_degree)
            .max()
            .unwrap_or(0)
    }

    /// Largest variable index mentioned by any entry.
    pub fn max_var(&self) -> Var {
        self.entries
            .iter()
            .filter_map(Entry::as_poly)
            .map(Poly::max_var)
            .max()
            .unwrap_or(0)
    }

    /// `self ∘ first`: run `first`, then `self`. Entry `i` of the result is
    /// `self[i]` with every `xj` replaced by `first[j]`.
    pub fn compose(&self, first: &MultiPoly) -> Result<MultiPoly, PolyError> {
        if self.arity() != first.arity() {
            return Err(PolyError::ArityMismatch {
                left: self.arity(),
                right: first.arity(),
            });
        }
        let zero = Poly::zero();
        let subs: Vec<&Poly> = first
            .entries
            .iter()
            .map(|e| e.as_poly().unwrap_or(&zero))
            .collect();
        let mut cache = PowCache::new(&subs);
        let entries = self
            .entries
            .iter()
            .map(|e| match e {
                Entry::SuperPoly => Entry::SuperPoly,
                Entry::Bound(p) => {
                    let tainted = p
                        .monomials()
                        .flat_map(Monomial::vars)
                        .any(|j| first.entries[j - 1].is_super());
                    if tainted {
                        Entry::SuperPoly
                    } else {
                        Entry::Bound(p.compose_cached(&mut cache))
                    }
                }
            })
            .collect();
        Ok(MultiPoly { entries })
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &MultiPoly) -> Result<MultiPoly, PolyError> {
        next.compose(self)
    }

    /// Replace `tau` by the `tau`-free polynomial `e` in every entry.
    pub fn subst_tau(&self, e: &Poly) -> Result<MultiPoly, PolyError> {
        if !e.is_tau_free() {
            return Err(PolyError::TauInSubstitute);
        }
        Ok(MultiPoly {
            entries: self
                .entries
                .iter()
                .map(|en| match en {
                    Entry::Bound(p) => Entry::Bound(p.subst_tau(e)),
                    Entry::SuperPoly => Entry::SuperPoly,
                })
                .collect(),
        })
    }

    /// Every coefficient becomes `One`.
    pub fn erase(&self) -> MultiPoly {
        MultiPoly {
            entries: self.entries.iter().map(Entry::erase).collect(),
        }
    }

    /// Evaluate with all coefficients read as one.
    pub fn gamma_eval(&self, s: &[BigUint], t: &BigUint) -> Result<Vec<BigUint>, PolyError> {
        self.entries
            .iter()
            .enumerate()
            .map(|(k, e)| match e {
                Entry::Bound(p) => Ok(p.eval(s, t)),
                Entry::SuperPoly => Err(PolyError::SuperPolyEval { index: k + 1 }),
            })
            .collect()
    }

    /// Evaluate a single entry; `None` if it is `SuperPoly`.
    pub fn gamma_eval_entry(&self, i: Var, s: &[BigUint], t: &BigUint) -> Option<BigUint> {
        self.entry(i).as_poly().map(|p| p.eval(s, t))
    }

    /// Concretize to exact coefficients, reading every coefficient as one.
    pub fn gamma(&self) -> Option<NatMultiPoly> {
        let entries = self
            .entries
            .iter()
            .map(|e| e.as_poly().map(|p| p.map_coeffs(|_| 1u64)))
            .collect::<Option<Vec<_>>>()?;
        Some(NatMultiPoly { entries })
    }

    pub fn to_compact_string(&self) -> String {
        let inner: Vec<String> = self.entries.iter().map(Entry::to_compact_string).collect();
        format!("<{}>", inner.join(", "))
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (k, e) in self.entries.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ">")
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A transition with exact natural-number coefficients.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NatMultiPoly {
    entries: Vec<NatPoly>,
}

impl NatMultiPoly {
    pub fn identity(n: usize) -> NatMultiPoly {
        NatMultiPoly {
            entries: (1..=n).map(NatPoly::var).collect(),
        }
    }

    pub fn new(entries: Vec<NatPoly>) -> NatMultiPoly {
        NatMultiPoly { entries }
    }

    pub fn arity(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[NatPoly] {
        &self.entries
    }

    pub fn entry(&self, i: Var) -> &NatPoly {
        &self.entries[i - 1]
    }

    pub fn set_entry(&mut self, i: Var, p: NatPoly) {
        self.entries[i - 1] = p;
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &NatMultiPoly) -> Result<NatMultiPoly, PolyError> {
        if self.arity() != first.arity() {
            return Err(PolyError::ArityMismatch {
                left: self.arity(),
                right: first.arity(),
            });
        }
        let subs: Vec<&NatPoly> = first.entries.iter().collect();
        let mut cache = PowCache::new(&subs);
        Ok(NatMultiPoly {
            entries: self
                .entries
                .iter()
                .map(|p| p.compose_cached(&mut cache))
                .collect(),
        })
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &NatMultiPoly) -> Result<NatMultiPoly, PolyError> {
        next.compose(self)
    }

    /// Apply the transition to a state.
    pub fn apply(&self, s: &[BigUint]) -> Vec<BigUint> {
        let zero = BigUint::from(0u32);
        self.entries.iter().map(|p| p.eval(s, &zero)).collect()
    }

    /// Saturating abstraction of every coefficient.
    pub fn alpha(&self) -> MultiPoly {
        MultiPoly {
            entries: self.entries.iter().map(|p| Entry::Bound(p.alpha())).collect(),
        }
    }
}

/// Saturating abstraction of an exact transition.
pub fn alpha_k(p: &NatMultiPoly) -> MultiPoly {
    p.alpha()
}

impl fmt::Display for NatMultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (k, e) in self.entries.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ">")
    }
}

impl fmt::Debug for NatMultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
