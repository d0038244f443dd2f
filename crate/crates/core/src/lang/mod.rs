//! The bounded-loop language: syntax, printing, and nondeterministic
//! execution.

mod ast;
mod instrument;
mod interp;
mod parse;
mod print;

pub use ast::{parse_schedule, schedule_to_string, Command, Decision, Expr, Program, Schedule, State};
pub use instrument::instrument_counters;
pub use interp::{
    enumerate_finals, eval_expr, maximal_finals, pareto_max, run_schedule, Finals, MAX_VALUE_BITS,
};
pub use parse::parse;

use num_bigint::BigUint;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LangError {
    #[error("{line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("`# vars: {declared}` is smaller than the used variable X{used}")]
    DirectiveTooSmall { declared: usize, used: usize },
    #[error("state has {got} values but the program has {expected} variables")]
    ArityMismatch { expected: usize, got: usize },
    #[error("schedule exhausted")]
    ScheduleExhausted,
    #[error("expected {expected} in the schedule, found `{found}`")]
    DecisionMismatch { expected: &'static str, found: Decision },
    #[error("{requested} iterations requested but the loop bound is {bound}")]
    IterationsExceedBound { requested: u64, bound: BigUint },
    #[error("{count} schedule decisions left over")]
    LeftoverDecisions { count: usize },
}
