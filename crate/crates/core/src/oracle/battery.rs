use std::path::{Path, PathBuf};

use indexmap::IndexMap;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::analyzer::{analyze_program, AnalysisReport};
use crate::lang::{parse, Program};
use crate::poly::Var;
use crate::sdl::Budget;

use super::{check_lower, check_upper, classify_growth, CheckReport, Grid, Growth, OracleError};

/// Settings for checking one program against a fresh analysis.
#[derive(Clone, Debug)]
pub struct CheckConfig {
    pub budget: Budget,
    /// Upper checks run on `{0..=grid_hi}^n`.
    pub grid_hi: u64,
    pub cap: u64,
    /// Scales for witness replay.
    pub lower_scales: Vec<u64>,
    /// Powers of two for growth classification; empty to skip it.
    pub growth_exps: Vec<u32>,
    pub explore_budget: usize,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            budget: Budget::default(),
            grid_hi: 3,
            cap: super::DEFAULT_CAP,
            lower_scales: vec![2, 4, 8],
            growth_exps: vec![1, 2, 3, 4],
            explore_budget: super::DEFAULT_EXPLORE_BUDGET,
        }
    }
}

#[derive(Clone, Debug)]
pub struct LowerCheck {
    pub loop_index: usize,
    pub bound: String,
    pub pattern: String,
    pub report: CheckReport,
}

#[derive(Clone, Debug)]
pub struct ProgramCheck {
    pub report: AnalysisReport,
    pub upper: CheckReport,
    /// One per witness of each loop with a loop-free body.
    pub lower: Vec<LowerCheck>,
    pub growth: Vec<(Var, Growth)>,
    /// Variables where the analysis and the classifier disagree.
    pub disagreements: Vec<Var>,
}

impl ProgramCheck {
    pub fn passed(&self) -> bool {
        self.upper.passed() && self.lower.iter().all(|l| l.report.passed()) && self.disagreements.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "passed": self.passed(),
            "upper": self.upper.to_json(),
            "lower": self.lower.iter().map(|l| json!({
                "loop": l.loop_index,
                "bound": l.bound,
                "pattern": l.pattern,
                "check": l.report.to_json(),
            })).collect::<Vec<_>>(),
            "growth": self.growth.iter().map(|(v, g)| {
                let g = match g {
                    Growth::Polynomial(k) => json!({ "polynomial": k }),
                    Growth::SuperPolynomial => json!("superpolynomial"),
                };
                (format!("x{v}"), g)
            }).collect::<serde_json::Map<_, _>>(),
            "disagreements": self.disagreements.iter().map(|v| format!("x{v}")).collect::<Vec<_>>(),
        })
    }
}

/// Analyze `p`, then check the upper bounds on a grid, every witness of
/// every loop with a loop-free body, and the polynomially-bounded verdict of
/// each variable against growth classification.
pub fn check_program(p: &Program, cfg: &CheckConfig) -> Result<ProgramCheck, CheckError> {
    let report = analyze_program(p, &cfg.budget).map_err(CheckError::Analysis)?;
    let upper = check_upper(p, &report, &Grid::cube(p.n, cfg.grid_hi), cfg.cap, cfg.explore_budget)?;
    let mut lower = Vec::new();
    for w in &report.witnesses {
        let Some(exact) = &w.exact_body else { continue };
        for e in &w.entries {
            lower.push(LowerCheck {
                loop_index: w.index,
                bound: e.mp.to_string(),
                pattern: e.pattern.to_string(),
                report: check_lower(exact, &e.mp, &e.pattern, &cfg.lower_scales)?,
            });
        }
    }
    let mut growth = Vec::new();
    let mut disagreements = Vec::new();
    if !cfg.growth_exps.is_empty() {
        for i in 1..=p.n {
            let g = classify_growth(p, i, &cfg.growth_exps, cfg.explore_budget)?;
            if g.is_polynomial() != report.pb.contains(&i) {
                disagreements.push(i);
            }
            growth.push((i, g));
        }
    }
    Ok(ProgramCheck {
        report,
        upper,
        lower,
        growth,
        disagreements,
    })
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CheckError {
    #[error(transparent)]
    Analysis(crate::analyzer::AnalysisError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// Sidecar expectations for a battery program, read from `NAME.expect.json`
/// next to `NAME.loop`. Every field is optional.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expectation {
    pub pb: Option<Vec<String>>,
    pub per_variable: Option<IndexMap<String, Value>>,
    /// Variable name to `"polynomial"` or `"superpolynomial"`.
    pub classification: Option<IndexMap<String, String>>,
}

impl Expectation {
    /// Mismatches between this expectation and a completed check.
    pub fn compare(&self, check: &ProgramCheck) -> Vec<String> {
        let mut out = Vec::new();
        let report = check.report.to_json(false);
        if let Some(pb) = &self.pb {
            let got: Vec<String> = check.report.pb.iter().map(|v| format!("x{v}")).collect();
            if &got != pb {
                out.push(format!("pb: expected {pb:?}, got {got:?}"));
            }
        }
        if let Some(pv) = &self.per_variable {
            for (v, want) in pv {
                let got = &report["per_variable"][v.as_str()];
                if got != want {
                    out.push(format!("per_variable[{v}]: expected {want}, got {got}"));
                }
            }
        }
        if let Some(cl) = &self.classification {
            for (v, want) in cl {
                let got = v
                    .strip_prefix('x')
                    .and_then(|d| d.parse::<Var>().ok())
                    .and_then(|i| check.growth.iter().find(|(j, _)| *j == i))
                    .map(|(_, g)| if g.is_polynomial() { "polynomial" } else { "superpolynomial" });
                if got != Some(want.as_str()) {
                    out.push(format!("classification[{v}]: expected {want}, got {got:?}"));
                }
            }
        }
        out
    }
}

#[derive(Debug)]
pub struct BatteryOutcome {
    pub path: PathBuf,
    pub check: Result<ProgramCheck, String>,
    pub mismatches: Vec<String>,
}

impl BatteryOutcome {
    pub fn passed(&self) -> bool {
        matches!(&self.check, Ok(c) if c.passed()) && self.mismatches.is_empty()
    }
}

/// Check every `.loop` file in `dir` (sorted by name) and compare against its
/// sidecar expectation, if any.
pub fn run_battery(dir: &Path, cfg: &CheckConfig) -> std::io::Result<Vec<BatteryOutcome>> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "loop"))
        .collect();
    paths.sort();
    let mut out = Vec::new();
    for path in paths {
        let src = std::fs::read_to_string(&path)?;
        let expect_path = path.with_extension("expect.json");
        let expectation: Result<Option<Expectation>, String> = if expect_path.exists() {
            std::fs::read_to_string(&expect_path)
                .map_err(|e| e.to_string())
                .and_then(|s| serde_json::from_str(&s).map_err(|e| format!("{}: {e}", expect_path.display())))
                .map(Some)
        } else {
            Ok(None)
        };
        let check = parse(&src)
            .map_err(|e| format!("{}: {e}", path.display()))
            .and_then(|p| check_program(&p, cfg).map_err(|e| e.to_string()));
        let mismatches = match (&check, &expectation) {
            (Ok(c), Ok(Some(x))) => x.compare(c),
            (_, Err(e)) => vec![e.clone()],
            _ => Vec::new(),
        };
        out.push(BatteryOutcome {
            path,
            check,
            mismatches,
        });
    }
    Ok(out)
}
