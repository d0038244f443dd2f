use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use rayon::prelude::*;

use crate::poly::{MultiPoly, Var};

use super::derivation::Derivation;
use super::ops::detect_superpoly;
use super::{Budget, BudgetKind, SdlError};

/// Pairs below this count are composed on the calling thread.
const PAR_THRESHOLD: usize = 64;

/// The monoid generated by a growing list of generators, built breadth-first
/// by composing every generator after every known element.
pub(crate) struct Monoid {
    pub(crate) elems: Vec<MultiPoly>,
    pub(crate) derivs: Vec<Arc<Derivation>>,
    index: HashMap<MultiPoly, usize>,
    /// How many generators each element has been extended by.
    done: Vec<usize>,
    gens: Vec<(MultiPoly, Arc<Derivation>)>,
    pub(crate) composed: usize,
    detect: bool,
}

/// Outcome of growing the monoid.
pub(crate) enum Growth {
    Closed,
    /// Some new element exhibits super-polynomial growth in these variables.
    Flagged(BTreeSet<Var>),
}

impl Monoid {
    pub(crate) fn new(n: usize, detect: bool) -> Monoid {
        let mut m = Monoid {
            elems: Vec::new(),
            derivs: Vec::new(),
            index: HashMap::new(),
            done: Vec::new(),
            gens: Vec::new(),
            composed: 0,
            detect,
        };
        m.insert(MultiPoly::identity(n), Arc::new(Derivation::Identity));
        m
    }

    pub(crate) fn len(&self) -> usize {
        self.elems.len()
    }

    pub(crate) fn contains(&self, p: &MultiPoly) -> bool {
        self.index.contains_key(p)
    }

    fn insert(&mut self, p: MultiPoly, d: Arc<Derivation>) -> bool {
        if self.index.contains_key(&p) {
            return false;
        }
        self.index.insert(p.clone(), self.elems.len());
        self.elems.push(p);
        self.derivs.push(d);
        self.done.push(0);
        true
    }

    /// Check a freshly inserted element against the budget and the detector.
    fn admit(&self, p: &MultiPoly, budget: &Budget) -> Result<Option<BTreeSet<Var>>, SdlError> {
        if p.total_degree() > budget.max_degree {
            return Err(SdlError::BudgetExceeded {
                kind: BudgetKind::Degree,
                limit: budget.max_degree as usize,
            });
        }
        if self.elems.len() > budget.max_set_size {
            return Err(SdlError::BudgetExceeded {
                kind: BudgetKind::SetSize,
                limit: budget.max_set_size,
            });
        }
        if self.detect {
            let flags = detect_superpoly(p);
            if !flags.is_empty() {
                return Ok(Some(flags));
            }
        }
        Ok(None)
    }

    /// Add a generator, and the element itself if it is new.
    pub(crate) fn add_generator(
        &mut self,
        p: MultiPoly,
        d: Arc<Derivation>,
        budget: &Budget,
    ) -> Result<Growth, SdlError> {
        self.gens.push((p.clone(), d.clone()));
        if self.insert(p.clone(), d) {
            if let Some(flags) = self.admit(&p, budget)? {
                return Ok(Growth::Flagged(flags));
            }
        }
        Ok(Growth::Closed)
    }

    /// Close under composition with the current generators.
    pub(crate) fn saturate(&mut self, budget: &Budget) -> Result<Growth, SdlError> {
        loop {
            let g = self.gens.len();
            let pending: Vec<(usize, usize)> = (0..self.elems.len())
                .flat_map(|e| (self.done[e]..g).map(move |k| (e, k)))
                .collect();
            if pending.is_empty() {
                return Ok(Growth::Closed);
            }
            for e in 0..self.elems.len() {
                self.done[e] = g;
            }
            let compose = |&(e, k): &(usize, usize)| {
                self.gens[k]
                    .0
                    .compose(&self.elems[e])
                    .expect("solver elements share one arity")
            };
            let products: Vec<MultiPoly> = if pending.len() >= PAR_THRESHOLD {
                pending.par_iter().map(compose).collect()
            } else {
                pending.iter().map(compose).collect()
            };
            self.composed += products.len();
            for ((e, k), p) in pending.into_iter().zip(products) {
                if self.index.contains_key(&p) {
                    continue;
                }
                let d = Derivation::compose(&self.derivs[e], &self.gens[k].1);
                self.insert(p.clone(), d);
                if let Some(flags) = self.admit(&p, budget)? {
                    return Ok(Growth::Flagged(flags));
                }
            }
        }
    }

    pub(crate) fn into_pairs(self) -> Vec<(MultiPoly, Arc<Derivation>)> {
        self.elems.into_iter().zip(self.derivs).collect()
    }
}

/// The least composition-closed set containing the identity and `t`, each
/// element with the first derivation found for it.
pub fn closure(
    t: &[MultiPoly],
    budget: &Budget,
) -> Result<Vec<(MultiPoly, Arc<Derivation>)>, SdlError> {
    let Some(n) = t.first().map(MultiPoly::arity) else {
        return Err(SdlError::EmptyWithoutArity);
    };
    closure_with_arity(t, n, budget)
}

/// As [`closure`], with the arity given explicitly so `t` may be empty.
pub fn closure_with_arity(
    t: &[MultiPoly],
    n: usize,
    budget: &Budget,
) -> Result<Vec<(MultiPoly, Arc<Derivation>)>, SdlError> {
    super::check_body(t, n)?;
    let mut m = Monoid::new(n, false);
    for (k, p) in t.iter().enumerate() {
        m.add_generator(p.clone(), Arc::new(Derivation::Input(k)), budget)?;
    }
    m.saturate(budget)?;
    Ok(m.into_pairs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_mp;

    fn mps(xs: &[&str]) -> Vec<MultiPoly> {
        xs.iter().map(|s| parse_mp(s).unwrap()).collect()
    }

    fn set(v: Vec<(MultiPoly, Arc<Derivation>)>) -> BTreeSet<MultiPoly> {
        v.into_iter().map(|(p, _)| p).collect()
    }

    #[test]
    fn multiplicative_example() {
        let got = set(closure(&mps(&["<x2^2, x3, x3>"]), &Budget::default()).unwrap());
        let want: BTreeSet<_> = mps(&["<x1, x2, x3>", "<x2^2, x3, x3>", "<x3^2, x3, x3>"])
            .into_iter()
            .collect();
        assert_eq!(got, want);
    }

    #[test]
    fn empty_generators() {
        let got = closure_with_arity(&[], 3, &Budget::default()).unwrap();
        assert_eq!(set(got), BTreeSet::from([MultiPoly::identity(3)]));
    }

    #[test]
    fn saturating_powers() {
        let got = set(closure(&mps(&["<x1+x2, x2>"]), &Budget::default()).unwrap());
        let want: BTreeSet<_> = mps(&["<x1, x2>", "<x1+x2, x2>", "<x1+w*x2, x2>"])
            .into_iter()
            .collect();
        assert_eq!(got, want);
    }

    #[test]
    fn derivations_replay() {
        let body = mps(&["<x1+x2, x2+x3, x3, x3>", "<x2, x1, x3, x4>"]);
        for (p, d) in closure(&body, &Budget::default()).unwrap() {
            assert_eq!(d.replay(&body, 4).unwrap(), p);
        }
    }

    #[test]
    fn set_size_budget() {
        let body = mps(&["<x2, x3, x1, x4>", "<x2, x1, x3, x4>"]);
        let tight = Budget {
            max_set_size: 5,
            ..Budget::default()
        };
        assert!(matches!(
            closure(&body, &tight),
            Err(SdlError::BudgetExceeded {
                kind: BudgetKind::SetSize,
                ..
            })
        ));
        // the permutation group on three points has six elements
        assert_eq!(closure(&body, &Budget::default()).unwrap().len(), 6);
    }
}
