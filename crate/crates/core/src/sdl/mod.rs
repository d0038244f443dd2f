//! Solver for simple disjunctive loops: closure under composition plus
//! generalization of idempotent elements, with super-polynomial detection.

mod closure;
mod derivation;
mod ops;
mod solve;

pub use closure::{closure, closure_with_arity};
pub use derivation::Derivation;
pub use ops::{
    decompose_entry, detect_superpoly, generalize, is_abstract_idempotent, is_idempotent, sd_set,
    Decomposition,
};
pub use solve::{solve_sdl, SdlBound, SdlProblem, SdlSolution};

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::{MultiPoly, PolyError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub max_degree: u32,
    pub max_set_size: usize,
    pub max_rounds: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_degree: 40,
            max_set_size: 200_000,
            max_rounds: 64,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BudgetKind {
    Degree,
    SetSize,
    Rounds,
}

impl fmt::Display for BudgetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BudgetKind::Degree => "max-degree",
            BudgetKind::SetSize => "max-set-size",
            BudgetKind::Rounds => "max-rounds",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SdlError {
    #[error("budget exceeded: {kind} = {limit}")]
    BudgetExceeded { kind: BudgetKind, limit: usize },
    #[error("loop body transitions must not mention tau")]
    TauInBody,
    #[error("body transition has arity {got}, expected {expected}")]
    Arity { expected: usize, got: usize },
    #[error("an empty transition set needs an explicit arity")]
    EmptyWithoutArity,
    #[error("generalization needs an idempotent transition")]
    NotIdempotent,
    #[error("x{index} is not self-dependent")]
    NotSelfDependent { index: usize },
    #[error("self-dependent entry {index} lacks the bare monomial x{index}")]
    MissingBareVar { index: usize },
    #[error("derivation refers to missing body transition {index}")]
    BadDerivation { index: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

pub(crate) fn check_body(body: &[MultiPoly], n: usize) -> Result<(), SdlError> {
    match body.iter().find(|p| p.arity() != n) {
        Some(p) => Err(SdlError::Arity {
            expected: n,
            got: p.arity(),
        }),
        None => Ok(()),
    }
}
