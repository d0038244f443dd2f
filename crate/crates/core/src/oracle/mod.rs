//! Brute-force ground truth: exhaustive exploration, empirical checks of
//! reported upper and lower bounds, growth classification, and generators.

mod adversarial;
mod battery;
mod growth;
mod lower;
mod upper;

pub use adversarial::gen_adversarial;
pub use battery::{
    check_program, run_battery, BatteryOutcome, CheckConfig, CheckError, Expectation, LowerCheck,
    ProgramCheck,
};
pub use growth::{classify_growth, Growth, MAX_POLY_SLOPE, SLOPE_DIVERGENCE};
pub use lower::{check_lower, check_lower_with, LINEAR_SLACK, LOWER_DECAY, LOWER_TS};
pub use upper::{check_upper, find_schedule, sdl_max_outcomes, DEFAULT_CAP};

use num_bigint::BigUint;
use serde_json::{json, Value};
use thiserror::Error;

use crate::lang::{schedule_to_string, LangError, Schedule, State};
use crate::poly::{PolyError, Var};
use crate::witness::{Trace, WitnessError};

/// States an exploration may create before giving up.
pub const DEFAULT_EXPLORE_BUDGET: usize = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("enumeration budget of {0} states exceeded")]
    Budget(usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Lang(#[from] LangError),
    #[error(transparent)]
    Witness(#[from] WitnessError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Inputs as the cartesian product of per-variable value lists, enumerated
/// with the last variable varying fastest and cut off after `limit` points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grid {
    pub values: Vec<Vec<u64>>,
    pub limit: usize,
}

impl Grid {
    /// `{0, ..., hi}` for each of `n` variables.
    pub fn cube(n: usize, hi: u64) -> Grid {
        Grid {
            values: vec![(0..=hi).collect(); n],
            limit: usize::MAX,
        }
    }

    pub fn arity(&self) -> usize {
        self.values.len()
    }

    pub fn points(&self) -> Vec<State> {
        if self.values.iter().any(Vec::is_empty) {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut idx = vec![0usize; self.values.len()];
        loop {
            if out.len() >= self.limit {
                return out;
            }
            let xs: Vec<u64> = idx.iter().zip(&self.values).map(|(&k, v)| v[k]).collect();
            out.push(State::from_u64s(&xs));
            // odometer step
            let mut pos = idx.len();
            loop {
                if pos == 0 {
                    return out;
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < self.values[pos].len() {
                    break;
                }
                idx[pos] = 0;
            }
        }
    }
}

/// A concrete run that violates a checked bound.
#[derive(Clone, Debug, PartialEq)]
pub struct Counterexample {
    pub input: State,
    /// Decisions reproducing the run (program checks).
    pub schedule: Option<Schedule>,
    /// Body transitions applied (loop-body checks), with the repetition count.
    pub trace: Option<(Trace, u64)>,
    pub var: Var,
    pub observed: BigUint,
    /// The value `observed` was compared against.
    pub bound: BigUint,
    pub reason: String,
}

/// Verdicts and fitted constants. The check passed iff there are no
/// counterexamples.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct CheckReport {
    pub inputs: usize,
    /// Largest constant any final state needed (upper checks).
    pub upper_c: Option<u64>,
    /// Per reported bound: largest constant among the finals it covered best.
    pub per_bound_c: Vec<Option<u64>>,
    /// Constant fitted at the smallest scale (lower checks).
    pub lower_d: Option<f64>,
    pub d_by_scale: Vec<(u64, f64)>,
    pub counterexamples: Vec<Counterexample>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }

    pub fn to_json(&self) -> Value {
        let cex: Vec<Value> = self
            .counterexamples
            .iter()
            .map(|c| {
                json!({
                    "input": c.input.to_string(),
                    "schedule": c.schedule.as_deref().map(schedule_to_string),
                    "trace": c.trace.as_ref().map(|(tr, t)| json!({
                        "letters": tr.iter().map(|k| format!("p{}", k + 1)).collect::<Vec<_>>(),
                        "t": t,
                    })),
                    "var": format!("x{}", c.var),
                    "observed": c.observed.to_string(),
                    "bound": c.bound.to_string(),
                    "reason": c.reason,
                })
            })
            .collect();
        json!({
            "passed": self.passed(),
            "inputs": self.inputs,
            "upper_c": self.upper_c,
            "per_bound_c": self.per_bound_c,
            "lower_d": self.lower_d,
            "d_by_scale": self.d_by_scale.iter().map(|(s, d)| json!([s, d])).collect::<Vec<_>>(),
            "counterexamples": cex,
        })
    }
}
