use std::collections::BTreeSet;
use std::sync::Arc;

use crate::poly::{Entry, MultiPoly, Var};

use super::closure::{Growth, Monoid};
use super::derivation::Derivation;
use super::ops::{generalize_unchecked, is_idempotent};
use super::{check_body, Budget, BudgetKind, SdlError};

/// A loop body: the transitions any one iteration may take.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SdlProblem {
    pub body: Vec<MultiPoly>,
    pub n: usize,
    pub budget: Budget,
}

impl SdlProblem {
    pub fn new(body: Vec<MultiPoly>, n: usize) -> SdlProblem {
        SdlProblem {
            body,
            n,
            budget: Budget::default(),
        }
    }
}

/// One element of the solution with the derivation that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SdlBound {
    pub mp: MultiPoly,
    pub derivation: Arc<Derivation>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SdlSolution {
    /// Identity first, then in discovery order.
    pub bounds: Vec<SdlBound>,
    /// Variables without a polynomial bound.
    pub superpoly_vars: BTreeSet<Var>,
    /// The body actually solved: flagged entries replaced by `SuperPoly`.
    /// Derivations replay over this list.
    pub body: Vec<MultiPoly>,
    pub rounds_used: usize,
    pub elements_explored: usize,
    pub restarts: usize,
    pub generalizations: usize,
}

fn mark_super(body: &[MultiPoly], flags: &BTreeSet<Var>) -> Vec<MultiPoly> {
    body.iter()
        .map(|p| {
            let mut q = p.clone();
            for &i in flags {
                q.set_entry(i, Entry::SuperPoly);
            }
            q
        })
        .collect()
}

/// Alternate closure and generalization of idempotents until nothing new
/// appears. Whenever an element shows super-polynomial growth in some
/// variables, those entries of every body transition become `SuperPoly` and
/// the solve starts over.
pub fn solve_sdl(prob: &SdlProblem) -> Result<SdlSolution, SdlError> {
    check_body(&prob.body, prob.n)?;
    if !prob.body.iter().all(MultiPoly::is_tau_free) {
        return Err(SdlError::TauInBody);
    }
    let budget = &prob.budget;
    let mut flags: BTreeSet<Var> = BTreeSet::new();
    let mut restarts = 0;
    let mut explored = 0;
    loop {
        let body = mark_super(&prob.body, &flags);
        match attempt(&body, prob.n, budget)? {
            Attempt::Flagged(new, composed) => {
                explored += composed;
                let before = flags.len();
                flags.extend(new);
                // flags only grow, so this happens at most n times
                debug_assert!(flags.len() > before);
                restarts += 1;
            }
            Attempt::Done(m, rounds, generalizations) => {
                explored += m.composed;
                let bounds: Vec<SdlBound> = m
                    .into_pairs()
                    .into_iter()
                    .map(|(mp, derivation)| SdlBound { mp, derivation })
                    .collect();
                let mut superpoly_vars = flags;
                for b in &bounds {
                    for (k, e) in b.mp.entries().iter().enumerate() {
                        if e.is_super() {
                            superpoly_vars.insert(k + 1);
                        }
                    }
                }
                return Ok(SdlSolution {
                    bounds,
                    superpoly_vars,
                    body,
                    rounds_used: rounds,
                    elements_explored: explored,
                    restarts,
                    generalizations,
                });
            }
        }
    }
}

enum Attempt {
    Flagged(BTreeSet<Var>, usize),
    Done(Monoid, usize, usize),
}

fn attempt(body: &[MultiPoly], n: usize, budget: &Budget) -> Result<Attempt, SdlError> {
    let mut m = Monoid::new(n, true);
    for (k, p) in body.iter().enumerate() {
        if let Growth::Flagged(f) = m.add_generator(p.clone(), Arc::new(Derivation::Input(k)), budget)? {
            return Ok(Attempt::Flagged(f, m.composed));
        }
    }
    let mut checked = 0;
    let mut generalizations = 0;
    let mut round = 0;
    loop {
        round += 1;
        if round > budget.max_rounds {
            return Err(SdlError::BudgetExceeded {
                kind: BudgetKind::Rounds,
                limit: budget.max_rounds,
            });
        }
        if let Growth::Flagged(f) = m.saturate(budget)? {
            return Ok(Attempt::Flagged(f, m.composed));
        }
        let end = m.len();
        let mut fresh = Vec::new();
        for k in checked..end {
            let p = &m.elems[k];
            if !is_idempotent(p) {
                continue;
            }
            let g = generalize_unchecked(p)?;
            if !m.contains(&g) && !fresh.iter().any(|(q, _)| *q == g) {
                fresh.push((g, Arc::new(Derivation::Generalize(m.derivs[k].clone()))));
            }
        }
        checked = end;
        if fresh.is_empty() {
            return Ok(Attempt::Done(m, round, generalizations));
        }
        generalizations += fresh.len();
        for (g, d) in fresh {
            if let Growth::Flagged(f) = m.add_generator(g, d, budget)? {
                return Ok(Attempt::Flagged(f, m.composed));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_mp, reduce_mp};

    fn mps(xs: &[&str]) -> Vec<MultiPoly> {
        xs.iter().map(|s| parse_mp(s).unwrap()).collect()
    }

    fn solve(body: &[&str], n: usize) -> SdlSolution {
        solve_sdl(&SdlProblem::new(mps(body), n)).unwrap()
    }

    fn erased_reduced(sol: &SdlSolution) -> BTreeSet<MultiPoly> {
        sol.bounds.iter().map(|b| reduce_mp(&b.mp.erase())).collect()
    }

    #[test]
    fn worked_example() {
        let sol = solve(&["<x1+x2, x2+x3, x3, x3>"], 4);
        let want: BTreeSet<_> = mps(&[
            "<x1, x2, x3, x4>",
            "<x1+x2, x2+x3, x3, x3>",
            "<x1+x2+x3, x2+x3, x3, x3>",
            "<x1+tau*x2+tau*x3, x2+tau*x3, x3, x3>",
            "<x1+tau*x2+tau^2*x3, x2+tau*x3, x3, x3>",
        ])
        .into_iter()
        .collect();
        assert_eq!(erased_reduced(&sol), want);
        assert!(sol.superpoly_vars.is_empty());
    }

    #[test]
    fn copy_loop() {
        let sol = solve(&["<x1, x1+x2, x1+x2, x4>"], 4);
        assert!(sol.superpoly_vars.is_empty());
        let set = erased_reduced(&sol);
        assert!(set.contains(&parse_mp("<x1, x2+tau*x1, x2+tau*x1, x4>").unwrap()));
    }

    #[test]
    fn doubling_is_flagged() {
        let sol = solve(&["<w*x1, x1>"], 2);
        assert_eq!(sol.superpoly_vars, BTreeSet::from([1, 2]));
        assert_eq!(sol.restarts, 1);
        assert!(sol
            .bounds
            .iter()
            .filter(|b| !b.mp.is_identity())
            .all(|b| b.mp.entry(1).is_super()));
    }

    #[test]
    fn multiplicative_fragment_never_generalizes() {
        let sol = solve(&["<x2^2, x3, x3>"], 3);
        assert_eq!(sol.generalizations, 0);
        assert_eq!(sol.bounds.len(), 3);
    }

    #[test]
    fn derivations_replay_over_solved_body() {
        for body in [
            vec!["<x1+x2, x2+x3, x3, x3>"],
            vec!["<x1+x3, x2+x3+x4, x3, x3>", "<x2, x1, x3, x4>"],
            vec!["<w*x1, x1>"],
        ] {
            let n = parse_mp(body[0]).unwrap().arity();
            let sol = solve(&body, n);
            for b in &sol.bounds {
                assert_eq!(b.derivation.replay(&sol.body, n).unwrap(), b.mp);
            }
        }
    }

    #[test]
    fn rejects_tau_in_body() {
        let prob = SdlProblem::new(mps(&["<x1+tau*x2, x2>"]), 2);
        assert_eq!(solve_sdl(&prob), Err(SdlError::TauInBody));
    }

    #[test]
    fn degree_budget() {
        let prob = SdlProblem {
            budget: Budget {
                max_degree: 2,
                ..Budget::default()
            },
            ..SdlProblem::new(mps(&["<x2*x3, x3*x4, x4, x4>"]), 4)
        };
        assert!(matches!(
            solve_sdl(&prob),
            Err(SdlError::BudgetExceeded {
                kind: BudgetKind::Degree,
                ..
            })
        ));
    }
}
