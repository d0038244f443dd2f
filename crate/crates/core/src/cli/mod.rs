//! Command-line driver. [`run_cli`] is pure apart from reading files and
//! standard input, so it can be driven from tests.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::io::Read;
use std::path::Path;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;
use serde_json::json;

use crate::analyzer::{analyze_program_with, AnalysisError, ReportOptions};
use crate::lang::{
    enumerate_finals, instrument_counters, maximal_finals, parse, parse_schedule, run_schedule, LangError,
    Program, State,
};
use crate::oracle::{
    check_program, gen_adversarial, run_battery, CheckConfig, CheckError, OracleError, DEFAULT_CAP,
    DEFAULT_EXPLORE_BUDGET,
};
use crate::poly::json::{mp_from_json, mp_to_json, EntryJson};
use crate::poly::{reduce_mp_set, MultiPoly};
use crate::sdl::{solve_sdl, Budget, SdlError, SdlProblem};
use crate::witness::derive_pattern;

pub const EXIT_OK: i32 = 0;
pub const EXIT_BUDGET: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CHECK_FAILED: i32 = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CliOutput {
    fn ok(stdout: String) -> CliOutput {
        CliOutput {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: i32, stderr: String) -> CliOutput {
        CliOutput {
            code,
            stdout: String::new(),
            stderr,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "polybound", version, about = "Polynomial worst-case bounds for bounded-loop programs")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Analyze a program and report bounds on every variable.
    Analyze {
        /// Program file, or `-` for standard input.
        path: String,
        #[command(flatten)]
        out: OutputArgs,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Add a step counter before analyzing.
        #[arg(long)]
        instrument: bool,
    },
    /// Solve a loop body given as JSON: `{"arity": n, "body": [...], "budget": {...}}`.
    SolveSdl {
        path: String,
        #[command(flatten)]
        out: OutputArgs,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Run a program on a concrete state.
    Interpret {
        path: String,
        /// Initial state, e.g. `3,1`.
        #[arg(long)]
        input: String,
        /// Decisions to follow, e.g. `2,L,R`.
        #[arg(long, conflicts_with = "enumerate")]
        schedule: Option<String>,
        /// List every reachable final state rather than the maximal ones.
        #[arg(long)]
        enumerate: bool,
        /// Maximum number of states to explore.
        #[arg(long, default_value_t = DEFAULT_EXPLORE_BUDGET)]
        max_states: usize,
        #[arg(long)]
        json: bool,
    },
    /// Check a fresh analysis against brute-force execution. A directory
    /// runs every `.loop` file in it, with `NAME.expect.json` sidecars.
    Check {
        path: String,
        #[arg(long)]
        json: bool,
        /// Largest constant an upper bound may need.
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u64,
        /// Powers of two used for growth classification, e.g. `1,2,3,4`;
        /// empty to skip classification.
        #[arg(long, value_delimiter = ',', default_values_t = [1u32, 2, 3, 4])]
        scales: Vec<u32>,
        /// Upper checks use inputs `{0..=N}` for every variable.
        #[arg(long, default_value_t = 3)]
        grid_max: u64,
        #[arg(long, default_value_t = DEFAULT_EXPLORE_BUDGET)]
        max_states: usize,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Print a program with many incomparable outcomes.
    GenAdversarial { n: usize, d: usize },
}

#[derive(Args, Debug)]
struct OutputArgs {
    #[arg(long)]
    json: bool,
    /// Include lower-bound witness patterns.
    #[arg(long)]
    witness: bool,
    /// Drop dominated transitions and monomials (the default).
    #[arg(long, overrides_with = "no_reduce")]
    reduce: bool,
    #[arg(long, overrides_with = "reduce")]
    no_reduce: bool,
}

#[derive(Args, Debug)]
struct BudgetArgs {
    #[arg(long)]
    max_degree: Option<u32>,
    #[arg(long)]
    max_set_size: Option<usize>,
    #[arg(long)]
    max_rounds: Option<usize>,
}

impl BudgetArgs {
    fn apply(&self, mut b: Budget) -> Budget {
        if let Some(v) = self.max_degree {
            b.max_degree = v;
        }
        if let Some(v) = self.max_set_size {
            b.max_set_size = v;
        }
        if let Some(v) = self.max_rounds {
            b.max_rounds = v;
        }
        b
    }
}

/// Run with the process's standard input.
pub fn run_cli<I, S>(argv: I) -> CliOutput
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    run_cli_with_stdin(argv, &mut std::io::stdin())
}

pub fn run_cli_with_stdin<I, S>(argv: I, stdin: &mut dyn Read) -> CliOutput
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                CliOutput::ok(text)
            } else {
                CliOutput::fail(code, text)
            };
        }
    };
    match dispatch(cli.command, stdin) {
        Ok(out) => out,
        Err(f) => CliOutput::fail(f.code, format!("error: {}\n", f.msg)),
    }
}

struct Failure {
    code: i32,
    msg: String,
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        msg: msg.into(),
    }
}

impl From<AnalysisError> for Failure {
    fn from(e: AnalysisError) -> Failure {
        let code = if e.is_budget() { EXIT_BUDGET } else { EXIT_USAGE };
        Failure { code, msg: e.to_string() }
    }
}

impl From<SdlError> for Failure {
    fn from(e: SdlError) -> Failure {
        AnalysisError::Sdl(e).into()
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Failure {
        let code = match e {
            OracleError::Budget(_) => EXIT_BUDGET,
            _ => EXIT_USAGE,
        };
        Failure { code, msg: e.to_string() }
    }
}

impl From<CheckError> for Failure {
    fn from(e: CheckError) -> Failure {
        match e {
            CheckError::Analysis(a) => a.into(),
            CheckError::Oracle(o) => o.into(),
        }
    }
}

fn read_source(path: &str, stdin: &mut dyn Read) -> Result<String, Failure> {
    if path == "-" {
        let mut s = String::new();
        stdin
            .read_to_string(&mut s)
            .map_err(|e| usage(format!("reading standard input: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| usage(format!("{path}: {e}")))
    }
}

fn load_program(path: &str, stdin: &mut dyn Read) -> Result<Program, Failure> {
    let src = read_source(path, stdin)?;
    let name = if path == "-" { "<stdin>" } else { path };
    parse(&src).map_err(|e| match e {
        LangError::Syntax { .. } => usage(format!("{name}:{e}")),
        e => usage(format!("{name}: {e}")),
    })
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn dispatch(cmd: Cmd, stdin: &mut dyn Read) -> Result<CliOutput, Failure> {
    match cmd {
        Cmd::Analyze {
            path,
            out,
            budget,
            instrument,
        } => {
            let mut p = load_program(&path, stdin)?;
            if instrument {
                p = instrument_counters(&p);
            }
            let opts = ReportOptions { reduce: !out.no_reduce };
            let report = analyze_program_with(&p, &budget.apply(Budget::default()), &opts)?;
            Ok(CliOutput::ok(if out.json {
                pretty(&report.to_json(out.witness))
            } else {
                report.to_text(out.witness)
            }))
        }
        Cmd::SolveSdl { path, out, budget } => solve_cmd(&read_source(&path, stdin)?, &out, &budget),
        Cmd::Interpret {
            path,
            input,
            schedule,
            enumerate,
            max_states,
            json,
        } => {
            let p = load_program(&path, stdin)?;
            let s: State = input.parse().map_err(|e: String| usage(format!("--input: {e}")))?;
            if s.arity() != p.n {
                return Err(usage(format!(
                    "--input has {} values but the program has {} variables",
                    s.arity(),
                    p.n
                )));
            }
            if let Some(sched) = schedule {
                let sched = parse_schedule(&sched).map_err(|e| usage(format!("--schedule: {e}")))?;
                let y = run_schedule(&p, &s, &sched).map_err(|e| usage(e.to_string()))?;
                return Ok(CliOutput::ok(if json {
                    pretty(&json!({ "final": y.to_string() }))
                } else {
                    format!("{y}\n")
                }));
            }
            let finals = if enumerate {
                enumerate_finals(&p, &s, max_states)
            } else {
                maximal_finals(&p, &s, max_states, None)
            }
            .map_err(|e| usage(e.to_string()))?;
            if finals.truncated {
                return Err(Failure {
                    code: EXIT_BUDGET,
                    msg: OracleError::Budget(max_states).to_string(),
                });
            }
            let states: Vec<String> = finals.states.iter().map(State::to_string).collect();
            Ok(CliOutput::ok(if json {
                pretty(&json!({
                    "input": s.to_string(),
                    "mode": if enumerate { "all" } else { "maximal" },
                    "finals": states,
                }))
            } else {
                states.iter().map(|s| format!("{s}\n")).collect()
            }))
        }
        Cmd::Check {
            path,
            json,
            cap,
            scales,
            grid_max,
            max_states,
            budget,
        } => {
            let cfg = CheckConfig {
                budget: budget.apply(Budget::default()),
                grid_hi: grid_max,
                cap,
                growth_exps: scales,
                explore_budget: max_states,
                ..CheckConfig::default()
            };
            if Path::new(&path).is_dir() {
                return battery_cmd(&path, &cfg, json);
            }
            let p = load_program(&path, stdin)?;
            let c = check_program(&p, &cfg)?;
            let text = if json {
                pretty(&c.to_json())
            } else {
                check_text(&c)
            };
            Ok(CliOutput {
                code: if c.passed() { EXIT_OK } else { EXIT_CHECK_FAILED },
                stdout: text,
                stderr: String::new(),
            })
        }
        Cmd::GenAdversarial { n, d } => {
            let p = gen_adversarial(n, d).map_err(|e| usage(e.to_string()))?;
            Ok(CliOutput::ok(p.to_string()))
        }
    }
}

fn check_text(c: &crate::oracle::ProgramCheck) -> String {
    let mut out = String::new();
    let u = &c.upper;
    let _ = writeln!(
        out,
        "upper: {} ({} inputs, constant {})",
        if u.passed() { "pass" } else { "FAIL" },
        u.inputs,
        u.upper_c.map_or("-".to_string(), |c| c.to_string())
    );
    for cex in &u.counterexamples {
        let sched = cex
            .schedule
            .as_deref()
            .map_or("?".to_string(), crate::lang::schedule_to_string);
        let _ = writeln!(
            out,
            "  input {} schedule [{}]: x{} = {} > {}",
            cex.input, sched, cex.var, cex.observed, cex.bound
        );
    }
    for l in &c.lower {
        let _ = writeln!(
            out,
            "lower: {} loop {} {} via {} (d = {})",
            if l.report.passed() { "pass" } else { "FAIL" },
            l.loop_index,
            l.bound,
            l.pattern,
            l.report.lower_d.map_or("-".to_string(), |d| format!("{d:.4}"))
        );
        for cex in &l.report.counterexamples {
            let _ = writeln!(out, "  {}", cex.reason);
        }
    }
    for (v, g) in &c.growth {
        let _ = writeln!(out, "growth: x{v} {g:?}");
    }
    if !c.disagreements.is_empty() {
        let vs: Vec<String> = c.disagreements.iter().map(|v| format!("x{v}")).collect();
        let _ = writeln!(out, "classification disagrees on {}", vs.join(" "));
    }
    let _ = writeln!(out, "{}", if c.passed() { "PASS" } else { "FAIL" });
    out
}

fn battery_cmd(dir: &str, cfg: &CheckConfig, json: bool) -> Result<CliOutput, Failure> {
    let outcomes = run_battery(Path::new(dir), cfg).map_err(|e| usage(format!("{dir}: {e}")))?;
    let all = outcomes.iter().all(|o| o.passed());
    let text = if json {
        let items: Vec<serde_json::Value> = outcomes
            .iter()
            .map(|o| {
                json!({
                    "file": o.path.display().to_string(),
                    "passed": o.passed(),
                    "check": o.check.as_ref().map(|c| c.to_json()).unwrap_or_else(|e| json!({ "error": e })),
                    "mismatches": o.mismatches,
                })
            })
            .collect();
        pretty(&json!({ "passed": all, "programs": items }))
    } else {
        let mut s = String::new();
        for o in &outcomes {
            let _ = writeln!(s, "{} {}", if o.passed() { "PASS" } else { "FAIL" }, o.path.display());
            if let Err(e) = &o.check {
                let _ = writeln!(s, "  {e}");
            }
            for m in &o.mismatches {
                let _ = writeln!(s, "  {m}");
            }
        }
        s
    };
    Ok(CliOutput {
        code: if all { EXIT_OK } else { EXIT_CHECK_FAILED },
        stdout: text,
        stderr: String::new(),
    })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SdlInput {
    arity: usize,
    body: Vec<Vec<EntryJson>>,
    #[serde(default)]
    budget: Option<PartialBudget>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct PartialBudget {
    max_degree: Option<u32>,
    max_set_size: Option<usize>,
    max_rounds: Option<usize>,
}

fn solve_cmd(src: &str, out: &OutputArgs, overrides: &BudgetArgs) -> Result<CliOutput, Failure> {
    let input: SdlInput = serde_json::from_str(src).map_err(|e| usage(format!("SDL input: {e}")))?;
    let body: Vec<MultiPoly> = input
        .body
        .iter()
        .map(|es| mp_from_json(es))
        .collect::<Result<_, _>>()
        .map_err(|e| usage(format!("SDL input: {e}")))?;
    let from_file = input.budget.unwrap_or_default();
    let budget = overrides.apply(
        BudgetArgs {
            max_degree: from_file.max_degree,
            max_set_size: from_file.max_set_size,
            max_rounds: from_file.max_rounds,
        }
        .apply(Budget::default()),
    );
    let sol = solve_sdl(&SdlProblem {
        body,
        n: input.arity,
        budget,
    })?;
    let erased: Vec<MultiPoly> = sol.bounds.iter().map(|b| b.mp.erase()).collect();
    let bounds = if out.no_reduce {
        erased.into_iter().collect::<BTreeSet<_>>().into_iter().collect()
    } else {
        reduce_mp_set(&erased)
    };
    let patterns: Vec<String> = sol
        .bounds
        .iter()
        .map(|b| derive_pattern(&b.derivation, input.arity).to_string())
        .collect();
    if out.json {
        let mut v = json!({
            "version": env!("CARGO_PKG_VERSION"),
            "n": input.arity,
            "budget": budget,
            "superpoly": sol.superpoly_vars.iter().map(|v| format!("x{v}")).collect::<Vec<_>>(),
            "bounds": bounds.iter().map(mp_to_json).collect::<Vec<_>>(),
            "elements": sol.bounds.len(),
            "stats": {
                "rounds": sol.rounds_used,
                "elements": sol.elements_explored,
                "restarts": sol.restarts,
                "generalizations": sol.generalizations,
            },
        });
        if out.witness {
            v["witnesses"] = sol
                .bounds
                .iter()
                .zip(&patterns)
                .map(|(b, pi)| json!({ "bound": mp_to_json(&b.mp), "pattern": pi }))
                .collect();
        }
        return Ok(CliOutput::ok(pretty(&v)));
    }
    let mut s = String::new();
    let sp: Vec<String> = sol.superpoly_vars.iter().map(|v| format!("x{v}")).collect();
    let _ = writeln!(
        s,
        "super-polynomial: {}",
        if sp.is_empty() { "(none)".to_string() } else { sp.join(" ") }
    );
    let _ = writeln!(s, "bounds ({} of {} elements):", bounds.len(), sol.bounds.len());
    for b in &bounds {
        let _ = writeln!(s, "  {b}");
    }
    if out.witness {
        let _ = writeln!(s, "witnesses:");
        for (b, pi) in sol.bounds.iter().zip(&patterns) {
            let _ = writeln!(s, "  {}  via  {pi}", b.mp);
        }
    }
    let _ = writeln!(
        s,
        "stats: rounds={} elements={} restarts={} generalizations={}",
        sol.rounds_used, sol.elements_explored, sol.restarts, sol.generalizations
    );
    Ok(CliOutput::ok(s))
}
