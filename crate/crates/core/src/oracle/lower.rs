use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::lang::State;
use crate::poly::{MultiPoly, NatMultiPoly, Poly};
use crate::witness::{expand_pattern, replay, Pattern};

use super::{CheckReport, Counterexample, OracleError};

/// Repetition counts every witness is replayed with.
pub const LOWER_TS: [u64; 6] = [1, 2, 3, 4, 5, 6];

/// The fitted constant may shrink to this fraction of its value at the
/// smallest scale, no further.
pub const LOWER_DECAY: f64 = 0.5;

/// Linear monomials must be reached with no slack at all.
pub const LINEAR_SLACK: u64 = 0;

fn ratio(num: &BigUint, den: &BigUint) -> f64 {
    match (num.to_f64(), den.to_f64()) {
        (Some(a), Some(b)) => a / b,
        _ => f64::NAN,
    }
}

/// Replay `pattern` over `body` from `(s, ..., s)` for each scale `s` and
/// each `t` in [`LOWER_TS`], and check
/// `y_i >= lin_i(x) + d * rest_i(x, t)` where `lin` is the linear part of
/// `bound` and `rest` the remainder, with `tau = t`.
pub fn check_lower(
    body: &[NatMultiPoly],
    bound: &MultiPoly,
    pattern: &Pattern,
    scales: &[u64],
) -> Result<CheckReport, OracleError> {
    check_lower_with(body, bound, pattern, scales, &LOWER_TS)
}

pub fn check_lower_with(
    body: &[NatMultiPoly],
    bound: &MultiPoly,
    pattern: &Pattern,
    scales: &[u64],
    ts: &[u64],
) -> Result<CheckReport, OracleError> {
    if !bound.is_tau_free() && pattern.is_star_free() {
        return Err(OracleError::Precondition(
            "bound grows with tau but the pattern has no star".into(),
        ));
    }
    if scales.is_empty() || ts.is_empty() {
        return Err(OracleError::Precondition("no scales or repetition counts".into()));
    }
    let n = bound.arity();
    let mut scales = scales.to_vec();
    scales.sort_unstable();
    let splits: Vec<(usize, (Poly, Poly))> = bound
        .entries()
        .iter()
        .enumerate()
        .filter_map(|(k, e)| e.as_poly().map(|p| (k + 1, p.split_linear())))
        .collect();

    let mut rep = CheckReport::default();
    for &s in &scales {
        let x = vec![BigUint::from(s); n];
        let mut d_s = f64::INFINITY;
        for &t in ts {
            let trace = expand_pattern(pattern, t)?;
            let y = replay(body, &trace, &x)?;
            let tb = BigUint::from(t);
            rep.inputs += 1;
            for (i, (lin, rest)) in &splits {
                let yi = &y[i - 1];
                let nu = lin.eval(&x, &tb);
                let nubar = rest.eval(&x, &tb);
                let fail = |reason: String, bound: BigUint| Counterexample {
                    input: State(x.clone()),
                    schedule: None,
                    trace: Some((trace.clone(), t)),
                    var: *i,
                    observed: yi.clone(),
                    bound,
                    reason,
                };
                if yi + BigUint::from(LINEAR_SLACK) < nu {
                    rep.counterexamples
                        .push(fail("linear part not reached".into(), nu.clone()));
                    continue;
                }
                if nubar.is_zero() {
                    continue;
                }
                d_s = d_s.min(ratio(&(yi - &nu), &nubar));
            }
        }
        if !d_s.is_finite() {
            // only linear monomials: nothing to fit
            continue;
        }
        rep.d_by_scale.push((s, d_s));
    }

    if let Some(&(s0, d0)) = rep.d_by_scale.first() {
        rep.lower_d = Some(d0);
        let input = |s: u64| State(vec![BigUint::from(s); n]);
        if d0 <= 0.0 {
            rep.counterexamples.push(Counterexample {
                input: input(s0),
                schedule: None,
                trace: None,
                var: 0,
                observed: BigUint::zero(),
                bound: BigUint::zero(),
                reason: format!("fitted constant {d0} is not positive"),
            });
        }
        for &(s, d) in &rep.d_by_scale[1..] {
            if d < LOWER_DECAY * d0 {
                rep.counterexamples.push(Counterexample {
                    input: input(s),
                    schedule: None,
                    trace: None,
                    var: 0,
                    observed: BigUint::zero(),
                    bound: BigUint::zero(),
                    reason: format!("constant decays from {d0} to {d} at scale {s}"),
                });
            }
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_mp, parse_nat_mp};
    use crate::sdl::{solve_sdl, SdlProblem};
    use crate::witness::derive_pattern;

    #[test]
    fn accumulation_example_has_constant_one() {
        let body = vec![parse_nat_mp("<x1+x3, x2+x3+x4, x3, x3>").unwrap()];
        let bound = parse_mp("<x1+tau*x3, x2+tau*x3+x4, x3, x3>").unwrap();
        let rep = check_lower(&body, &bound, &"(p1)*".parse().unwrap(), &[2, 4, 8]).unwrap();
        assert!(rep.passed(), "{rep:?}");
        assert_eq!(rep.lower_d, Some(1.0));
    }

    #[test]
    fn identity_with_empty_pattern() {
        let body = vec![parse_nat_mp("<x1+x2, x2>").unwrap()];
        let rep = check_lower(&body, &MultiPoly::identity(2), &Pattern::empty(), &[2, 4, 8]).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.lower_d, None);
    }

    #[test]
    fn solver_witnesses_realize_bounds() {
        let body = vec![parse_mp("<x1+x2, x2+x3, x3, x3>").unwrap()];
        let exact: Vec<NatMultiPoly> = body.iter().map(|p| p.gamma().unwrap()).collect();
        let sol = solve_sdl(&SdlProblem::new(body, 4)).unwrap();
        let sq = parse_mp("<x1+tau*x2+tau^2*x3, x2+tau*x3, x3, x3>").unwrap();
        let mut saw_square = false;
        for b in &sol.bounds {
            let pi = derive_pattern(&b.derivation, 4);
            let rep = check_lower(&exact, &b.mp.erase(), &pi, &[2, 4, 8]).unwrap();
            assert!(rep.passed(), "{} via {pi}: {rep:?}", b.mp);
            if crate::poly::reduce_mp(&b.mp.erase()) == sq {
                saw_square = true;
                assert!(rep.lower_d.unwrap() >= 0.25);
            }
        }
        assert!(saw_square);
    }

    #[test]
    fn overclaimed_bound_fails() {
        let body = vec![parse_nat_mp("<x1+x2, x2>").unwrap()];
        let bound = parse_mp("<x1+tau^2*x2, x2>").unwrap();
        let rep = check_lower(&body, &bound, &"(p1)*".parse().unwrap(), &[2, 4, 8]).unwrap();
        // t*x2 against t^2*x2: the fit collapses to 1/6 at t = 6
        assert!((rep.lower_d.unwrap() - 1.0 / 6.0).abs() < 1e-9);
        let bad = parse_mp("<x1+x2, x1+x2>").unwrap();
        let rep = check_lower(&body, &bad, &"p1".parse().unwrap(), &[2]).unwrap();
        assert!(!rep.passed());
        assert_eq!(rep.counterexamples[0].var, 2);
    }
}
