use super::ast::{Command, Expr, Program};

/// Add a unit variable `U = X(n+1)` and a step counter `C = X(n+2)`, and make
/// `C := C + U` the first statement of every loop body.
pub fn instrument_counters(p: &Program) -> Program {
    let unit = p.n + 1;
    let counter = p.n + 2;
    Program {
        command: instrument(&p.command, unit, counter),
        n: p.n + 2,
    }
}

fn instrument(c: &Command, unit: usize, counter: usize) -> Command {
    match c {
        Command::Skip | Command::Assign(..) => c.clone(),
        Command::Seq(a, b) => Command::seq(instrument(a, unit, counter), instrument(b, unit, counter)),
        Command::Choose(a, b) => {
            Command::choose(instrument(a, unit, counter), instrument(b, unit, counter))
        }
        Command::Loop(e, body) => {
            let tick = Command::assign(counter, Expr::add(Expr::var(counter), Expr::var(unit)));
            Command::looping(e.clone(), Command::seq(tick, instrument(body, unit, counter)))
        }
    }
}
