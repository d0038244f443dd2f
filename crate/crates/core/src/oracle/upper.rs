use std::collections::HashSet;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::analyzer::AnalysisReport;
use crate::lang::{eval_expr, maximal_finals, Command, Decision, Program, Schedule, State};
use crate::poly::{MultiPoly, NatMultiPoly, Var};

use super::{CheckReport, Counterexample, Grid, OracleError};

/// Largest constant an upper bound may need before the check fails.
pub const DEFAULT_CAP: u64 = 64;

/// Componentwise maximum of the body transitions applied along every trace of
/// length at most `len`, starting from `s`.
pub fn sdl_max_outcomes(
    body: &[NatMultiPoly],
    s: &[BigUint],
    len: usize,
    budget: usize,
) -> Result<Vec<BigUint>, OracleError> {
    let mut best = s.to_vec();
    let mut seen: HashSet<Vec<BigUint>> = HashSet::from([s.to_vec()]);
    let mut frontier = vec![s.to_vec()];
    for _ in 0..len {
        let mut next = Vec::new();
        for x in &frontier {
            for p in body {
                let y = p.apply(x);
                if seen.insert(y.clone()) {
                    if seen.len() > budget {
                        return Err(OracleError::Budget(budget));
                    }
                    for (b, v) in best.iter_mut().zip(&y) {
                        if v > b {
                            *b = v.clone();
                        }
                    }
                    next.push(y);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    Ok(best)
}

/// Inputs with zeros raised to one: dominance between monomials only holds
/// on positive values.
fn clamp_input(x: &State) -> Vec<BigUint> {
    x.0.iter()
        .map(|v| if v.is_zero() { BigUint::from(1u32) } else { v.clone() })
        .collect()
}

/// Smallest integer `c` with `y_i <= c * g_i` for all listed variables;
/// `u64::MAX` if none exists.
fn needed_constant(y: &State, g: &[BigUint], pb: &[Var]) -> u64 {
    let mut c = 0u64;
    for &i in pb {
        let yi = y.get(i);
        if yi.is_zero() {
            continue;
        }
        let gi = &g[i - 1];
        if gi.is_zero() {
            return u64::MAX;
        }
        let q: BigUint = (yi + gi - 1u32) / gi;
        c = c.max(q.to_u64().unwrap_or(u64::MAX));
    }
    c
}

struct PointResult {
    // (bound index, constant) for each maximal final
    fits: Vec<(usize, u64)>,
    failure: Option<(State, Var, BigUint, BigUint)>,
}

fn check_point(
    p: &Program,
    bounds: &[MultiPoly],
    pb: &[Var],
    x: &State,
    cap: u64,
    budget: usize,
) -> Result<PointResult, OracleError> {
    let finals = maximal_finals(p, x, budget, None)?;
    if finals.truncated {
        return Err(OracleError::Budget(budget));
    }
    let xc = clamp_input(x);
    let zero = BigUint::zero();
    let gammas: Vec<Vec<BigUint>> = bounds
        .iter()
        .map(|b| {
            b.entries()
                .iter()
                .map(|e| e.as_poly().map_or_else(BigUint::zero, |q| q.eval(&xc, &zero)))
                .collect()
        })
        .collect();
    let mut out = PointResult {
        fits: Vec::new(),
        failure: None,
    };
    for y in &finals.states {
        let (k, c) = gammas
            .iter()
            .enumerate()
            .map(|(k, g)| (k, needed_constant(y, g, pb)))
            .min_by_key(|&(_, c)| c)
            .unwrap_or((usize::MAX, u64::MAX));
        if c > cap {
            if out.failure.is_none() {
                // blame the variable that is worst under the closest bound
                let g = gammas.get(k);
                let var = pb
                    .iter()
                    .copied()
                    .max_by_key(|&i| match g {
                        Some(g) if !g[i - 1].is_zero() => y.get(i) / &g[i - 1],
                        _ => y.get(i).clone(),
                    })
                    .unwrap_or(1);
                let bv = g.map_or_else(BigUint::zero, |g| &g[var - 1] * BigUint::from(cap));
                out.failure = Some((y.clone(), var, y.get(var).clone(), bv));
            }
        } else {
            out.fits.push((k, c));
        }
    }
    Ok(out)
}

/// For every grid input and every maximal final state `y`, some reported
/// bound `b` and constant `c <= cap` must give `y_i <= c * b_i(x)` on the
/// polynomially bounded variables, where zeros in `x` count as one.
///
/// Only maximal finals are checked: every other final lies below one of them.
pub fn check_upper(
    p: &Program,
    report: &AnalysisReport,
    grid: &Grid,
    cap: u64,
    budget: usize,
) -> Result<CheckReport, OracleError> {
    if grid.arity() != p.n {
        return Err(OracleError::Precondition(format!(
            "grid has {} variables, program has {}",
            grid.arity(),
            p.n
        )));
    }
    let points = grid.points();
    let results: Vec<PointResult> = points
        .par_iter()
        .map(|x| check_point(p, &report.bounds, &report.pb, x, cap, budget))
        .collect::<Result<_, _>>()?;
    let mut rep = CheckReport {
        inputs: points.len(),
        upper_c: Some(0),
        per_bound_c: vec![None; report.bounds.len()],
        ..CheckReport::default()
    };
    for (x, r) in points.iter().zip(results) {
        for (k, c) in r.fits {
            let slot = &mut rep.per_bound_c[k];
            *slot = Some(slot.map_or(c, |o| o.max(c)));
            rep.upper_c = rep.upper_c.map(|u| u.max(c));
        }
        if let Some((y, var, observed, bound)) = r.failure {
            let schedule = find_schedule(p, x, &y, budget)?;
            rep.counterexamples.push(Counterexample {
                input: x.clone(),
                schedule,
                trace: None,
                var,
                observed,
                bound,
                reason: format!("final {y} exceeds every reported bound times {cap}"),
            });
        }
    }
    Ok(rep)
}

/// A schedule from `s` to a final state at least `target` componentwise.
pub fn find_schedule(
    p: &Program,
    s: &State,
    target: &State,
    budget: usize,
) -> Result<Option<Schedule>, OracleError> {
    let mut created = 0usize;
    let finals = search(&p.command, vec![(s.clone(), Vec::new())], &mut created, budget)?;
    Ok(finals
        .into_iter()
        .find(|(y, _)| target.le(y))
        .map(|(_, sched)| sched))
}

type Runs = Vec<(State, Schedule)>;

fn dedup(runs: Runs) -> Runs {
    let mut seen = HashSet::new();
    runs.into_iter().filter(|(s, _)| seen.insert(s.clone())).collect()
}

fn search(c: &Command, runs: Runs, created: &mut usize, budget: usize) -> Result<Runs, OracleError> {
    *created += runs.len();
    if *created > budget {
        return Err(OracleError::Budget(budget));
    }
    match c {
        Command::Skip => Ok(runs),
        Command::Assign(t, e) => Ok(dedup(
            runs.into_iter()
                .map(|(mut s, d)| {
                    s.0[t - 1] = eval_expr(e, &s);
                    (s, d)
                })
                .collect(),
        )),
        Command::Seq(a, b) => {
            let mid = search(a, runs, created, budget)?;
            search(b, mid, created, budget)
        }
        Command::Choose(l, r) => {
            let tag = |runs: &Runs, dec: Decision| -> Runs {
                runs.iter()
                    .map(|(s, d)| {
                        let mut d = d.clone();
                        d.push(dec);
                        (s.clone(), d)
                    })
                    .collect()
            };
            let mut out = search(l, tag(&runs, Decision::ChooseLeft), created, budget)?;
            out.extend(search(r, tag(&runs, Decision::ChooseRight), created, budget)?);
            Ok(dedup(out))
        }
        Command::Loop(e, body) => {
            let mut out = Vec::new();
            for (s, d) in runs {
                let bound = eval_expr(e, &s).to_u64().unwrap_or(u64::MAX);
                // body decisions are collected separately, then prefixed with
                // the iteration count once it is known
                let mut cur: Runs = vec![(s, Vec::new())];
                let mut i = 0u64;
                loop {
                    for (st, tail) in &cur {
                        let mut sched = d.clone();
                        sched.push(Decision::Iterations(i));
                        sched.extend_from_slice(tail);
                        out.push((st.clone(), sched));
                    }
                    if i == bound {
                        break;
                    }
                    cur = search(body, cur, created, budget)?;
                    i += 1;
                }
            }
            Ok(dedup(out))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analyzer::analyze_program;
    use crate::lang::{parse, run_schedule};
    use crate::poly::parse_nat_mp;
    use crate::sdl::Budget;

    fn nats(xs: &[u64]) -> Vec<BigUint> {
        xs.iter().map(|&x| BigUint::from(x)).collect()
    }

    #[test]
    fn sdl_max_examples() {
        let body = vec![parse_nat_mp("<x1+x2, x2>").unwrap()];
        assert_eq!(sdl_max_outcomes(&body, &nats(&[1, 1]), 3, 1000).unwrap(), nats(&[4, 1]));
        assert_eq!(sdl_max_outcomes(&body, &nats(&[5, 7]), 0, 1000).unwrap(), nats(&[5, 7]));
        let body = vec![parse_nat_mp("<x2^2, x3, x3>").unwrap()];
        assert_eq!(
            sdl_max_outcomes(&body, &nats(&[2, 3, 4]), 2, 1000).unwrap(),
            nats(&[16, 4, 4])
        );
    }

    fn checked(src: &str, hi: u64) -> CheckReport {
        let p = parse(src).unwrap();
        let r = analyze_program(&p, &Budget::default()).unwrap();
        check_upper(&p, &r, &Grid::cube(p.n, hi), DEFAULT_CAP, 100_000).unwrap()
    }

    #[test]
    fn exact_programs_need_constant_one() {
        let r = checked("X4 := X1; loop X4 { X2 := X1 + X2; X3 := X2 }", 3);
        assert!(r.passed());
        assert_eq!(r.upper_c, Some(1));
        assert_eq!(checked("skip", 3).upper_c, Some(1));
        let r = checked("X2 := X1; choose { X4 := X2 + X3 } or { X1 := X2 * X3 }", 3);
        assert_eq!(r.upper_c, Some(1));
    }

    #[test]
    fn dropped_bound_is_caught() {
        let p = parse("X2 := X1; choose { X4 := X2 + X3 } or { X1 := X2 * X3 }").unwrap();
        let mut r = analyze_program(&p, &Budget::default()).unwrap();
        let dropped = r.bounds.iter().position(|b| b.to_string().contains("x1*x3")).unwrap();
        r.bounds.remove(dropped);
        // on {0..3} the lost factor x3 fits under the cap; a large value does not
        assert!(check_upper(&p, &r, &Grid::cube(4, 3), DEFAULT_CAP, 100_000).unwrap().passed());
        let grid = Grid {
            values: vec![vec![0, 1, 100]; 4],
            limit: usize::MAX,
        };
        let rep = check_upper(&p, &r, &grid, DEFAULT_CAP, 100_000).unwrap();
        assert!(!rep.passed());
        let cex = &rep.counterexamples[0];
        assert_eq!(cex.var, 1);
        let sched = cex.schedule.as_ref().unwrap();
        assert_eq!(sched, &vec![Decision::ChooseRight]);
        let y = run_schedule(&p, &cex.input, sched).unwrap();
        assert_eq!(y.get(1), &cex.observed);
    }

    #[test]
    fn schedule_search_through_loops() {
        let p = parse("loop X1 { choose { X2 := X2 + X1 } or { X3 := X3 + X2 } }").unwrap();
        let x = State::from_u64s(&[2, 1, 0]);
        let target = State::from_u64s(&[2, 3, 3]);
        let sched = find_schedule(&p, &x, &target, 10_000).unwrap().unwrap();
        assert!(target.le(&run_schedule(&p, &x, &sched).unwrap()));
    }
}
