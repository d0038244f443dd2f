use std::fmt::{self, Write};

use super::ast::{Command, Expr, Program};

fn write_expr(f: &mut impl Write, e: &Expr) -> fmt::Result {
    match e {
        Expr::Var(i) => write!(f, "X{i}"),
        Expr::Add(a, b) => {
            write_expr(f, a)?;
            write!(f, " + ")?;
            // `+` parses left-associatively, so a right-nested sum needs parens
            write_operand(f, b, matches!(**b, Expr::Add(..)))
        }
        Expr::Mul(a, b) => {
            write_operand(f, a, matches!(**a, Expr::Add(..)))?;
            write!(f, " * ")?;
            write_operand(f, b, !matches!(**b, Expr::Var(_)))
        }
    }
}

fn write_operand(f: &mut impl Write, e: &Expr, parens: bool) -> fmt::Result {
    if parens {
        write!(f, "(")?;
        write_expr(f, e)?;
        write!(f, ")")
    } else {
        write_expr(f, e)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_expr(f, self)
    }
}

fn indent(f: &mut impl Write, depth: usize) -> fmt::Result {
    for _ in 0..depth {
        write!(f, "  ")?;
    }
    Ok(())
}

fn write_block(f: &mut impl Write, c: &Command, depth: usize) -> fmt::Result {
    writeln!(f, "{{")?;
    write_cmd(f, c, depth + 1)?;
    writeln!(f)?;
    indent(f, depth)?;
    write!(f, "}}")
}

fn write_cmd(f: &mut impl Write, c: &Command, depth: usize) -> fmt::Result {
    match c {
        Command::Seq(a, b) => {
            write_cmd(f, a, depth)?;
            writeln!(f, ";")?;
            write_cmd(f, b, depth)
        }
        other => {
            indent(f, depth)?;
            match other {
                Command::Skip => write!(f, "skip"),
                Command::Assign(t, e) => write!(f, "X{t} := {e}"),
                Command::Loop(e, body) => {
                    write!(f, "loop {e} ")?;
                    write_block(f, body, depth)
                }
                Command::Choose(l, r) => {
                    write!(f, "choose ")?;
                    write_block(f, l, depth)?;
                    write!(f, " or ")?;
                    write_block(f, r, depth)
                }
                Command::Seq(..) => unreachable!(),
            }
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_cmd(f, self, 0)
    }
}

impl fmt::Display for Program {
    /// Emits a `# vars: n` header when `n` exceeds what the command mentions.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n > self.command.max_var().max(1) {
            writeln!(f, "# vars: {}", self.n)?;
        }
        writeln!(f, "{}", self.command)
    }
}

#[cfg(test)]
mod tests {
    use crate::lang::parse;

    #[test]
    fn round_trip_examples() {
        for src in [
            "X2 := X1; X4 := X2 + X3; X1 := X2 * X3",
            "loop X1 { loop X2 + X3 { choose { X3 := X1; X2 := X4 } or { X3 := X4; X2 := X1 } }; X4 := X2 + X3 }",
            "X1 := X1 * (X2 * X3) + (X1 + X2) * X3",
            "X1 := X1 + (X2 + X3)",
            "# vars: 6\nskip",
        ] {
            let p = parse(src).unwrap();
            let printed = p.to_string();
            assert_eq!(parse(&printed).unwrap(), p, "{printed}");
        }
    }

    #[test]
    fn layout() {
        let p = parse("loop X4 { X2 := X1 + X2; X3 := X2 }").unwrap();
        assert_eq!(p.to_string(), "loop X4 {\n  X2 := X1 + X2;\n  X3 := X2\n}\n");
        let p = parse("choose { skip } or { X1 := X1 * X1 }").unwrap();
        assert_eq!(
            p.to_string(),
            "choose {\n  skip\n} or {\n  X1 := X1 * X1\n}\n"
        );
    }
}
