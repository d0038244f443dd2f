use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use super::ast::{Command, Decision, Expr, Program, State};
use super::LangError;

pub fn eval_expr(e: &Expr, s: &State) -> BigUint {
    eval_capped(e, &s.0, None)
}

/// Evaluation where every intermediate value is `min(true value, cap)`.
/// Since `+` and `*` are monotone this yields exactly `min(value, cap)`.
fn eval_capped(e: &Expr, s: &[BigUint], cap: Option<&BigUint>) -> BigUint {
    match e {
        Expr::Var(i) => s[i - 1].clone(),
        Expr::Add(a, b) => {
            let v = eval_capped(a, s, cap) + eval_capped(b, s, cap);
            clamp(v, cap)
        }
        Expr::Mul(a, b) => {
            let x = eval_capped(a, s, cap);
            if x.is_zero() {
                return x;
            }
            let y = eval_capped(b, s, cap);
            if let Some(k) = cap {
                if (&x == k || &y == k) && !y.is_zero() {
                    return k.clone();
                }
            }
            clamp(x * y, cap)
        }
    }
}

fn clamp(v: BigUint, cap: Option<&BigUint>) -> BigUint {
    match cap {
        Some(k) if &v > k => k.clone(),
        _ => v,
    }
}

fn check_arity(p: &Program, s: &State) -> Result<(), LangError> {
    if s.arity() != p.n {
        return Err(LangError::ArityMismatch {
            expected: p.n,
            got: s.arity(),
        });
    }
    Ok(())
}

/// Execute `p` from `s`, taking every nondeterministic decision from `sched`.
pub fn run_schedule(p: &Program, s: &State, sched: &[Decision]) -> Result<State, LangError> {
    check_arity(p, s)?;
    let mut vals = s.0.clone();
    let mut it = sched.iter();
    run(&p.command, &mut vals, &mut it)?;
    let left = it.count();
    if left > 0 {
        return Err(LangError::LeftoverDecisions { count: left });
    }
    Ok(State(vals))
}

fn run<'a>(
    c: &Command,
    s: &mut Vec<BigUint>,
    it: &mut impl Iterator<Item = &'a Decision>,
) -> Result<(), LangError> {
    match c {
        Command::Skip => {}
        Command::Assign(t, e) => s[t - 1] = eval_capped(e, s, None),
        Command::Seq(a, b) => {
            run(a, s, it)?;
            run(b, s, it)?;
        }
        Command::Choose(l, r) => match it.next() {
            Some(Decision::ChooseLeft) => run(l, s, it)?,
            Some(Decision::ChooseRight) => run(r, s, it)?,
            Some(d) => {
                return Err(LangError::DecisionMismatch {
                    expected: "a choose decision",
                    found: *d,
                })
            }
            None => return Err(LangError::ScheduleExhausted),
        },
        Command::Loop(e, body) => {
            let k = match it.next() {
                Some(Decision::Iterations(k)) => *k,
                Some(d) => {
                    return Err(LangError::DecisionMismatch {
                        expected: "an iteration count",
                        found: *d,
                    })
                }
                None => return Err(LangError::ScheduleExhausted),
            };
            let bound = eval_capped(e, s, None);
            if BigUint::from(k) > bound {
                return Err(LangError::IterationsExceedBound {
                    requested: k,
                    bound,
                });
            }
            for _ in 0..k {
                run(body, s, it)?;
            }
        }
    }
    Ok(())
}

/// Widest value an uncapped exploration computes before giving up as if the
/// state budget had run out.
pub const MAX_VALUE_BITS: u64 = 4096;

/// Final states found by exhaustive exploration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Finals {
    /// Sorted, duplicate-free.
    pub states: Vec<State>,
    /// The state budget ran out, or an uncapped value grew wider than
    /// [`MAX_VALUE_BITS`]; `states` is then only part of the answer.
    pub truncated: bool,
}

struct Explorer {
    budget: usize,
    created: usize,
    truncated: bool,
    cap: Option<BigUint>,
    pareto: bool,
}

impl Explorer {
    fn charge(&mut self) -> bool {
        self.created += 1;
        if self.created > self.budget {
            self.truncated = true;
        }
        !self.truncated
    }

    fn normalize(&self, mut v: Vec<State>) -> Vec<State> {
        v.sort();
        v.dedup();
        if self.pareto {
            pareto_max(v)
        } else {
            v
        }
    }

    fn exec(&mut self, c: &Command, input: Vec<State>) -> Vec<State> {
        match c {
            Command::Skip => input,
            Command::Assign(t, e) => {
                let out = input
                    .into_iter()
                    .map(|mut s| {
                        s.0[t - 1] = eval_capped(e, &s.0, self.cap.as_ref());
                        if self.cap.is_none() && s.0[t - 1].bits() > MAX_VALUE_BITS {
                            self.truncated = true;
                        }
                        s
                    })
                    .collect();
                self.normalize(out)
            }
            Command::Seq(a, b) => {
                let mid = self.exec(a, input);
                self.exec(b, mid)
            }
            Command::Choose(l, r) => {
                let mut out = self.exec(l, input.clone());
                out.extend(self.exec(r, input));
                self.normalize(out)
            }
            Command::Loop(e, body) => {
                if self.pareto {
                    self.exec_loop_pareto(e, body, input)
                } else {
                    self.exec_loop(e, body, input)
                }
            }
        }
    }

    fn bound(&self, e: &Expr, s: &State) -> u64 {
        eval_capped(e, &s.0, self.cap.as_ref())
            .to_u64()
            .unwrap_or(u64::MAX)
    }

    // Lockstep exploration: `best[s]` is the most iterations still available
    // at any visit of `s`; a revisit with no more left adds nothing.
    fn exec_loop(&mut self, e: &Expr, body: &Command, input: Vec<State>) -> Vec<State> {
        let mut best: HashMap<State, u64> = HashMap::new();
        let mut frontier: Vec<(State, u64)> = Vec::new();
        for s in input {
            let r = self.bound(e, &s);
            if best.get(&s).map_or(true, |&b| b < r) {
                best.insert(s.clone(), r);
                frontier.push((s, r));
            }
        }
        while !frontier.is_empty() && !self.truncated {
            let mut groups: BTreeMap<u64, Vec<State>> = BTreeMap::new();
            for (s, r) in frontier.drain(..) {
                if r > 0 && best.get(&s) == Some(&r) {
                    groups.entry(r).or_default().push(s);
                }
            }
            for (r, states) in groups {
                for t in self.exec(body, states) {
                    if best.get(&t).map_or(true, |&b| b < r - 1) {
                        if !self.charge() {
                            break;
                        }
                        best.insert(t.clone(), r - 1);
                        frontier.push((t, r - 1));
                    }
                }
            }
        }
        self.normalize(best.into_keys().collect())
    }

    // As `exec_loop`, but keeps only pairs (state, remaining) that no other
    // pair dominates componentwise.
    fn exec_loop_pareto(&mut self, e: &Expr, body: &Command, input: Vec<State>) -> Vec<State> {
        let mut front: HashMap<State, u64> = HashMap::new();
        let mut frontier: Vec<(State, u64)> = Vec::new();
        let insert = |front: &mut HashMap<State, u64>, s: State, r: u64| -> bool {
            if front.iter().any(|(u, &q)| r <= q && s.le(u)) {
                return false;
            }
            front.retain(|u, q| !(*q <= r && u.le(&s)));
            front.insert(s, r);
            true
        };
        for s in input {
            let r = self.bound(e, &s);
            if insert(&mut front, s.clone(), r) {
                frontier.push((s, r));
            }
        }
        while !frontier.is_empty() && !self.truncated {
            let mut groups: BTreeMap<u64, Vec<State>> = BTreeMap::new();
            for (s, r) in frontier.drain(..) {
                if r > 0 && front.get(&s) == Some(&r) {
                    groups.entry(r).or_default().push(s);
                }
            }
            for (r, states) in groups {
                for t in self.exec(body, states) {
                    if insert(&mut front, t.clone(), r - 1) {
                        if !self.charge() {
                            break;
                        }
                        frontier.push((t, r - 1));
                    }
                }
            }
        }
        self.normalize(front.into_keys().collect())
    }
}

/// The componentwise-maximal members of a duplicate-free list, sorted.
pub fn pareto_max(mut v: Vec<State>) -> Vec<State> {
    let key = |s: &State| s.0.iter().fold(BigUint::zero(), |a, b| a + b);
    v.sort_by_cached_key(|s| std::cmp::Reverse(key(s)));
    let mut kept: Vec<State> = Vec::new();
    for s in v {
        if !kept.iter().any(|k| s.le(k)) {
            kept.push(s);
        }
    }
    kept.sort();
    kept
}

/// All final states reachable from `s`.
pub fn enumerate_finals(p: &Program, s: &State, budget: usize) -> Result<Finals, LangError> {
    explore(p, s, budget, None, false)
}

/// The componentwise-maximal reachable final states. With `cap_bits`, every
/// value is computed as `min(value, 2^cap_bits)`.
///
/// Because the semantics is monotone, every reachable final state lies below
/// one of these, so per-variable maxima and upper-bound checks only need them.
pub fn maximal_finals(
    p: &Program,
    s: &State,
    budget: usize,
    cap_bits: Option<u32>,
) -> Result<Finals, LangError> {
    explore(p, s, budget, cap_bits, true)
}

fn explore(
    p: &Program,
    s: &State,
    budget: usize,
    cap_bits: Option<u32>,
    pareto: bool,
) -> Result<Finals, LangError> {
    check_arity(p, s)?;
    let mut ex = Explorer {
        budget: budget.max(1),
        created: 0,
        truncated: false,
        cap: cap_bits.map(|b| BigUint::from(1u32) << b),
        pareto,
    };
    let states = ex.exec(&p.command, vec![s.clone()]);
    let states = ex.normalize(states);
    Ok(Finals {
        states,
        truncated: ex.truncated,
    })
}
