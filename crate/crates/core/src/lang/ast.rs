use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;

use crate::poly::Var;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Expr {
    Var(Var),
    Add(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn var(i: Var) -> Expr {
        Expr::Var(i)
    }

    pub fn add(a: Expr, b: Expr) -> Expr {
        Expr::Add(Box::new(a), Box::new(b))
    }

    pub fn mul(a: Expr, b: Expr) -> Expr {
        Expr::Mul(Box::new(a), Box::new(b))
    }

    pub fn max_var(&self) -> Var {
        match self {
            Expr::Var(i) => *i,
            Expr::Add(a, b) | Expr::Mul(a, b) => a.max_var().max(b.max_var()),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Expr::Var(_) => 1,
            Expr::Add(a, b) | Expr::Mul(a, b) => 1 + a.size() + b.size(),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Command {
    Skip,
    Assign(Var, Expr),
    Seq(Box<Command>, Box<Command>),
    Loop(Expr, Box<Command>),
    Choose(Box<Command>, Box<Command>),
}

impl Command {
    pub fn assign(target: Var, rhs: Expr) -> Command {
        Command::Assign(target, rhs)
    }

    /// Sequential composition, kept right-nested.
    pub fn seq(first: Command, second: Command) -> Command {
        match first {
            Command::Seq(a, b) => Command::Seq(a, Box::new(Command::seq(*b, second))),
            first => Command::Seq(Box::new(first), Box::new(second)),
        }
    }

    /// Right-nested sequence of `cs`; `skip` when empty.
    pub fn seq_all(cs: impl IntoIterator<Item = Command>) -> Command {
        let mut cs: Vec<Command> = cs.into_iter().collect();
        let Some(mut acc) = cs.pop() else {
            return Command::Skip;
        };
        while let Some(c) = cs.pop() {
            acc = Command::seq(c, acc);
        }
        acc
    }

    pub fn looping(bound: Expr, body: Command) -> Command {
        Command::Loop(bound, Box::new(body))
    }

    pub fn choose(left: Command, right: Command) -> Command {
        Command::Choose(Box::new(left), Box::new(right))
    }

    pub fn max_var(&self) -> Var {
        match self {
            Command::Skip => 0,
            Command::Assign(t, e) => (*t).max(e.max_var()),
            Command::Seq(a, b) | Command::Choose(a, b) => a.max_var().max(b.max_var()),
            Command::Loop(e, b) => e.max_var().max(b.max_var()),
        }
    }

    /// Number of AST nodes, expressions included.
    pub fn size(&self) -> usize {
        match self {
            Command::Skip => 1,
            Command::Assign(_, e) => 1 + e.size(),
            Command::Seq(a, b) | Command::Choose(a, b) => 1 + a.size() + b.size(),
            Command::Loop(e, b) => 1 + e.size() + b.size(),
        }
    }

    pub fn loop_depth(&self) -> usize {
        match self {
            Command::Skip | Command::Assign(..) => 0,
            Command::Seq(a, b) | Command::Choose(a, b) => a.loop_depth().max(b.loop_depth()),
            Command::Loop(_, b) => 1 + b.loop_depth(),
        }
    }

    pub fn choose_count(&self) -> usize {
        match self {
            Command::Skip | Command::Assign(..) => 0,
            Command::Seq(a, b) => a.choose_count() + b.choose_count(),
            Command::Choose(a, b) => 1 + a.choose_count() + b.choose_count(),
            Command::Loop(_, b) => b.choose_count(),
        }
    }

    pub fn is_loop_free(&self) -> bool {
        self.loop_depth() == 0
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Program {
    pub command: Command,
    pub n: usize,
}

impl Program {
    /// A program over exactly the variables it mentions (at least one).
    pub fn new(command: Command) -> Program {
        let n = command.max_var().max(1);
        Program { command, n }
    }

    pub fn with_arity(command: Command, n: usize) -> Program {
        assert!(n >= command.max_var(), "arity below a used variable index");
        Program { command, n }
    }
}

/// A program state: one non-negative integer per variable.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct State(pub Vec<BigUint>);

impl State {
    pub fn from_u64s(xs: &[u64]) -> State {
        State(xs.iter().map(|&x| BigUint::from(x)).collect())
    }

    pub fn splat(n: usize, v: u64) -> State {
        State(vec![BigUint::from(v); n])
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn get(&self, i: Var) -> &BigUint {
        &self.0[i - 1]
    }

    /// Componentwise `<=`.
    pub fn le(&self, other: &State) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for State {
    type Err = String;

    /// Comma-separated non-negative integers, optionally parenthesized.
    fn from_str(s: &str) -> Result<State, String> {
        let s = s.trim();
        let s = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(s);
        if s.trim().is_empty() {
            return Ok(State(Vec::new()));
        }
        s.split(',')
            .map(|t| {
                t.trim()
                    .parse::<BigUint>()
                    .map_err(|_| format!("not a non-negative integer: `{}`", t.trim()))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(State)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Decision {
    ChooseLeft,
    ChooseRight,
    Iterations(u64),
}

pub type Schedule = Vec<Decision>;

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Decision::ChooseLeft => write!(f, "L"),
            Decision::ChooseRight => write!(f, "R"),
            Decision::Iterations(k) => write!(f, "{k}"),
        }
    }
}

/// Text form of a schedule: decisions separated by commas, e.g. `3,L,0`.
pub fn schedule_to_string(s: &[Decision]) -> String {
    s.iter().map(Decision::to_string).collect::<Vec<_>>().join(",")
}

pub fn parse_schedule(s: &str) -> Result<Schedule, String> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| match t.trim() {
            "L" => Ok(Decision::ChooseLeft),
            "R" => Ok(Decision::ChooseRight),
            k => k
                .parse()
                .map(Decision::Iterations)
                .map_err(|_| format!("bad decision `{k}`")),
        })
        .collect()
}
