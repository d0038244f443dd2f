use crate::lang::{Command, Expr, Program};

use super::OracleError;

/// A straight-line program with `m = n/2` inputs `X1..Xm` and outputs
/// `Y1..Ym` (stored in `X(m+1)..Xn`). Each `Yj` becomes a product of `d`
/// factors, factor `k` chosen nondeterministically from block `k` of the
/// inputs (blocks of size `m/d`), so there are `(m/d)^(d*m)` incomparable
/// outcomes.
pub fn gen_adversarial(n: usize, d: usize) -> Result<Program, OracleError> {
    if d == 0 || n == 0 || n % 2 != 0 || (n / 2) % d != 0 {
        return Err(OracleError::Precondition(format!(
            "need n even and d > 0 dividing n/2, got n = {n}, d = {d}"
        )));
    }
    let m = n / 2;
    let b = m / d;
    let mut stmts = Vec::with_capacity(m * d);
    for j in 1..=m {
        let y = m + j;
        for k in 0..d {
            let options = (k * b + 1..=(k + 1) * b).map(|a| {
                let rhs = if k == 0 {
                    Expr::var(a)
                } else {
                    Expr::mul(Expr::var(y), Expr::var(a))
                };
                Command::assign(y, rhs)
            });
            stmts.push(choose_among(options.collect()));
        }
    }
    Ok(Program::with_arity(Command::seq_all(stmts), n))
}

fn choose_among(mut cs: Vec<Command>) -> Command {
    let last = cs.pop().expect("blocks are non-empty");
    cs.into_iter().rev().fold(last, |acc, c| Command::choose(c, acc))
}
