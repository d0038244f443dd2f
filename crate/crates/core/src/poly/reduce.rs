use super::monomial::Monomial;
use super::multi::{Entry, MultiPoly};
use super::polynomial::{NatPoly, Poly};

/// `m1` dominates `m2` when no exponent of `m2` (including `tau`) exceeds the
/// matching exponent of `m1`.
pub fn mono_dominates(m1: &Monomial, m2: &Monomial) -> bool {
    m1.dominates(m2)
}

/// Drop every monomial dominated by another monomial of `p`. Coefficients of
/// the survivors are kept as they are.
pub fn reduce_poly(p: &Poly) -> Poly {
    let monos: Vec<&Monomial> = p.monomials().collect();
    p.retain(|m, _| !monos.iter().any(|n| *n != m && n.dominates(m)))
}

/// Every monomial of `a` is dominated by some monomial of `b`.
pub fn poly_dominated_by(a: &Poly, b: &Poly) -> bool {
    a.monomials().all(|m| b.monomials().any(|n| n.dominates(m)))
}

fn entry_dominated_by(a: &Entry, b: &Entry) -> bool {
    match (a, b) {
        (_, Entry::SuperPoly) => true,
        (Entry::SuperPoly, Entry::Bound(_)) => false,
        (Entry::Bound(p), Entry::Bound(q)) => poly_dominated_by(p, q),
    }
}

/// Entry-wise dominance between transitions of equal arity.
pub fn mp_dominated_by(a: &MultiPoly, b: &MultiPoly) -> bool {
    a.entries()
        .iter()
        .zip(b.entries())
        .all(|(x, y)| entry_dominated_by(x, y))
}

pub fn reduce_entry(e: &Entry) -> Entry {
    match e {
        Entry::Bound(p) => Entry::Bound(reduce_poly(p)),
        Entry::SuperPoly => Entry::SuperPoly,
    }
}

pub fn reduce_mp(p: &MultiPoly) -> MultiPoly {
    MultiPoly::new(p.entries().iter().map(reduce_entry).collect())
}

/// Reduce every entry, then delete transitions dominated by another member.
/// The identity is never deleted. Output is sorted and duplicate-free.
pub fn reduce_mp_set<'a>(set: impl IntoIterator<Item = &'a MultiPoly>) -> Vec<MultiPoly> {
    let mut reduced: Vec<MultiPoly> = set.into_iter().map(reduce_mp).collect();
    reduced.sort();
    reduced.dedup();
    let keep: Vec<bool> = (0..reduced.len())
        .map(|a| {
            let pa = &reduced[a];
            if pa.is_identity() {
                return true;
            }
            !reduced.iter().enumerate().any(|(b, pb)| {
                // between mutually dominating members the smaller one survives
                b != a && mp_dominated_by(pa, pb) && (b < a || !mp_dominated_by(pb, pa))
            })
        })
        .collect();
    reduced
        .into_iter()
        .zip(keep)
        .filter_map(|(p, k)| k.then_some(p))
        .collect()
}

/// Monomial-wise maximum of exact coefficients.
pub fn join_nat(p: &NatPoly, q: &NatPoly) -> NatPoly {
    p.join(q)
}
