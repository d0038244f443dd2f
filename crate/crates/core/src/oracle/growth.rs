use num_bigint::BigUint;

use crate::lang::{maximal_finals, Program, State};
use crate::poly::Var;

use super::OracleError;

/// Slopes above this count as super-polynomial outright.
pub const MAX_POLY_SLOPE: f64 = 12.0;

/// Growth of the slope over the last three scales beyond which the value is
/// taken to grow super-polynomially.
pub const SLOPE_DIVERGENCE: f64 = 1.0;

/// Extra headroom, in bits, above the largest value a degree-`MAX_POLY_SLOPE`
/// polynomial can reach; keeps runaway values cheap to compute.
const CAP_HEADROOM_BITS: u32 = 16;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Growth {
    /// Rounded log-log slope at the largest scales.
    Polynomial(u32),
    SuperPolynomial,
}

impl Growth {
    pub fn is_polynomial(&self) -> bool {
        matches!(self, Growth::Polynomial(_))
    }
}

fn log2(v: &BigUint) -> f64 {
    if v.bits() <= 1 {
        // 0 and 1 both contribute nothing
        return 0.0;
    }
    let shift = v.bits().saturating_sub(64);
    let top: BigUint = v >> shift;
    let top = u64::try_from(&top).unwrap_or(u64::MAX) as f64;
    top.log2() + shift as f64
}

/// Worst-case final value of `xi` from `(2^k, ..., 2^k)` for each exponent in
/// `scale_exps`, then a log-log slope fit. Needs at least four scales.
pub fn classify_growth(
    p: &Program,
    i: Var,
    scale_exps: &[u32],
    budget: usize,
) -> Result<Growth, OracleError> {
    if scale_exps.len() < 4 {
        return Err(OracleError::Precondition("growth classification needs four scales".into()));
    }
    if i == 0 || i > p.n {
        return Err(OracleError::Precondition(format!("no variable x{i}")));
    }
    let mut ks = scale_exps.to_vec();
    ks.sort_unstable();
    ks.dedup();
    let mut logs = Vec::with_capacity(ks.len());
    for &k in &ks {
        let cap_bits = (MAX_POLY_SLOPE as u32) * k + CAP_HEADROOM_BITS;
        let x = State(vec![BigUint::from(1u32) << k; p.n]);
        let finals = maximal_finals(p, &x, budget, Some(cap_bits))?;
        if finals.truncated {
            return Err(OracleError::Budget(budget));
        }
        let top = finals.states.iter().map(|s| s.get(i)).max().cloned().unwrap_or_default();
        logs.push(log2(&top));
    }
    let slopes: Vec<f64> = logs
        .windows(2)
        .zip(ks.windows(2))
        .map(|(l, k)| (l[1] - l[0]) / f64::from(k[1] - k[0]))
        .collect();
    if slopes.iter().any(|&s| s > MAX_POLY_SLOPE) {
        return Ok(Growth::SuperPolynomial);
    }
    let m = slopes.len();
    if slopes[m - 1] - slopes[m - 2] > SLOPE_DIVERGENCE {
        return Ok(Growth::SuperPolynomial);
    }
    let last = slopes[m - 1].max(0.0);
    Ok(Growth::Polynomial(last.round() as u32))
}
