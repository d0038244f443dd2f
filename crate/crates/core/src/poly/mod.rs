//! Monomials, polynomials and multi-polynomials over the saturated
//! coefficient domain `{1, w}`, plus exact natural-number counterparts.

mod coeff;
pub mod json;
mod monomial;
mod multi;
mod polynomial;
mod reduce;
pub mod text;

pub use coeff::{Coeff, Semiring};
pub use monomial::{Monomial, Var};
pub use multi::{alpha_k, Entry, MultiPoly, NatMultiPoly};
pub use polynomial::{CoeffText, NatPoly, Poly, Polynomial};
pub use reduce::{
    join_nat, mono_dominates, mp_dominated_by, poly_dominated_by, reduce_entry, reduce_mp,
    reduce_mp_set, reduce_poly,
};
pub use text::{parse_entry, parse_mp, parse_nat_mp, parse_nat_poly, parse_poly};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },
    #[error("the substituted loop bound mentions tau")]
    TauInSubstitute,
    #[error("entry {index} is super-polynomial and cannot be evaluated")]
    SuperPolyEval { index: usize },
    #[error("at offset {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("bad JSON polynomial: {0}")]
    Json(String),
}
