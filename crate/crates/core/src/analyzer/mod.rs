//! Compositional analysis: each command denotes a set of transitions, and
//! each loop is summarized by solving its body and substituting the bound.

mod report;

pub use report::{
    analyze_program, analyze_program_with, per_variable_bounds, AnalysisReport, LoopWitness,
    ReportOptions, Stats, VarBound, WitnessEntry,
};

use std::collections::BTreeSet;

use rayon::prelude::*;
use thiserror::Error;

use crate::lang::{Command, Expr};
use crate::poly::{MultiPoly, NatMultiPoly, NatPoly, Poly, PolyError};
use crate::sdl::{solve_sdl, Budget, BudgetKind, SdlError, SdlProblem, SdlSolution};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Sdl(#[from] SdlError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("command uses X{used} but the arity is {n}")]
    Arity { used: usize, n: usize },
}

impl AnalysisError {
    pub fn is_budget(&self) -> bool {
        matches!(self, AnalysisError::Sdl(SdlError::BudgetExceeded { .. }))
    }
}

/// Set of transitions a command denotes; sorted, duplicate-free, `tau`-free.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbstractResult {
    pub mps: Vec<MultiPoly>,
    pub n: usize,
}

/// What the analysis learned about one loop.
#[derive(Clone, Debug)]
pub struct LoopRecord {
    /// 1-based, in preorder.
    pub index: usize,
    pub bound: Expr,
    /// Exact transitions aligned with `solution.body`, when the body is
    /// loop-free.
    pub exact_body: Option<Vec<NatMultiPoly>>,
    pub solution: SdlSolution,
}

#[derive(Clone, Debug)]
pub struct Analysis {
    pub result: AbstractResult,
    pub loops: Vec<LoopRecord>,
}

pub fn expr_to_nat_poly(e: &Expr) -> NatPoly {
    match e {
        Expr::Var(i) => NatPoly::var(*i),
        Expr::Add(a, b) => expr_to_nat_poly(a).add(&expr_to_nat_poly(b)),
        Expr::Mul(a, b) => expr_to_nat_poly(a).mul(&expr_to_nat_poly(b)),
    }
}

pub fn expr_to_poly(e: &Expr) -> Poly {
    expr_to_nat_poly(e).alpha()
}

pub fn analyze(c: &Command, n: usize, budget: &Budget) -> Result<AbstractResult, AnalysisError> {
    analyze_detailed(c, n, budget).map(|a| a.result)
}

pub fn analyze_detailed(c: &Command, n: usize, budget: &Budget) -> Result<Analysis, AnalysisError> {
    if c.max_var() > n {
        return Err(AnalysisError::Arity {
            used: c.max_var(),
            n,
        });
    }
    let mut a = Analyzer {
        n,
        budget,
        loops: Vec::new(),
    };
    let mps = a.run(c)?;
    let mut loops: Vec<LoopRecord> = a.loops.into_iter().flatten().collect();
    loops.sort_by_key(|l| l.index);
    Ok(Analysis {
        result: AbstractResult { mps, n },
        loops,
    })
}

/// Exact symbolic evaluation of a loop-free command: one transition per
/// combination of choices. `None` if the command has a loop or the number of
/// paths exceeds `limit`.
pub fn analyze_exact(c: &Command, n: usize, limit: usize) -> Option<Vec<NatMultiPoly>> {
    match c {
        Command::Skip => Some(vec![NatMultiPoly::identity(n)]),
        Command::Assign(t, e) => {
            let mut p = NatMultiPoly::identity(n);
            p.set_entry(*t, expr_to_nat_poly(e));
            Some(vec![p])
        }
        Command::Seq(a, b) => {
            let first = analyze_exact(a, n, limit)?;
            let second = analyze_exact(b, n, limit)?;
            if first.len() * second.len() > limit {
                return None;
            }
            let mut out = Vec::with_capacity(first.len() * second.len());
            for p in &first {
                for q in &second {
                    out.push(q.compose(p).expect("one arity throughout"));
                }
            }
            Some(out)
        }
        Command::Choose(a, b) => {
            let mut out = analyze_exact(a, n, limit)?;
            out.extend(analyze_exact(b, n, limit)?);
            (out.len() <= limit).then_some(out)
        }
        Command::Loop(..) => None,
    }
}

struct Analyzer<'a> {
    n: usize,
    budget: &'a Budget,
    // slot k holds loop k+1 once its analysis finishes
    loops: Vec<Option<LoopRecord>>,
}

impl Analyzer<'_> {
    fn check_size(&self, len: usize) -> Result<(), AnalysisError> {
        if len > self.budget.max_set_size {
            return Err(SdlError::BudgetExceeded {
                kind: BudgetKind::SetSize,
                limit: self.budget.max_set_size,
            }
            .into());
        }
        Ok(())
    }

    fn run(&mut self, c: &Command) -> Result<Vec<MultiPoly>, AnalysisError> {
        match c {
            Command::Skip => Ok(vec![MultiPoly::identity(self.n)]),
            Command::Assign(t, e) => {
                let mut p = MultiPoly::identity(self.n);
                p.set_entry(*t, expr_to_poly(e).into());
                Ok(vec![p])
            }
            Command::Seq(a, b) => {
                let first = self.run(a)?;
                let second = self.run(b)?;
                self.check_size(first.len() * second.len())?;
                let pairs: Vec<(&MultiPoly, &MultiPoly)> = first
                    .iter()
                    .flat_map(|p| second.iter().map(move |q| (p, q)))
                    .collect();
                let out: Vec<MultiPoly> = pairs
                    .par_iter()
                    .map(|(p, q)| q.compose(p))
                    .collect::<Result<_, _>>()?;
                Ok(normalize(out))
            }
            Command::Choose(a, b) => {
                let mut out = self.run(a)?;
                out.extend(self.run(b)?);
                let out = normalize(out);
                self.check_size(out.len())?;
                Ok(out)
            }
            Command::Loop(e, body) => {
                let index = self.loops.len() + 1;
                self.loops.push(None);
                let body_set = self.run(body)?;
                let exact_body = analyze_exact(body, self.n, self.budget.max_set_size)
                    .and_then(|exact| align_exact(&body_set, &exact));
                let solution = solve_sdl(&SdlProblem {
                    body: body_set,
                    n: self.n,
                    budget: *self.budget,
                })?;
                let bound = expr_to_poly(e);
                let out = solution
                    .bounds
                    .iter()
                    .map(|b| b.mp.subst_tau(&bound))
                    .collect::<Result<Vec<_>, _>>()?;
                self.loops[index - 1] = Some(LoopRecord {
                    index,
                    bound: e.clone(),
                    exact_body,
                    solution,
                });
                Ok(normalize(out))
            }
        }
    }
}

fn normalize(mut v: Vec<MultiPoly>) -> Vec<MultiPoly> {
    v.sort();
    v.dedup();
    v
}

/// For each abstract body transition, the first exact path abstracting to it.
fn align_exact(body: &[MultiPoly], exact: &[NatMultiPoly]) -> Option<Vec<NatMultiPoly>> {
    let alphas: Vec<MultiPoly> = exact.iter().map(NatMultiPoly::alpha).collect();
    body.iter()
        .map(|b| alphas.iter().position(|a| a == b).map(|k| exact[k].clone()))
        .collect()
}

/// Variables marked `SuperPoly` in some member.
pub fn superpoly_entries(mps: &[MultiPoly]) -> BTreeSet<usize> {
    mps.iter()
        .flat_map(|p| {
            p.entries()
                .iter()
                .enumerate()
                .filter(|(_, e)| e.is_super())
                .map(|(k, _)| k + 1)
        })
        .collect()
}
