use std::collections::BTreeSet;
use std::fmt::Write as _;

use indexmap::IndexMap;
use serde::Serialize;

use crate::lang::{Expr, Program};
use crate::poly::json::{mp_to_json, EntryJson};
use crate::poly::{poly_dominated_by, reduce_mp_set, reduce_poly, Entry, MultiPoly, NatMultiPoly, Poly, Var};
use crate::sdl::Budget;
use crate::witness::{derive_pattern, Pattern};

use super::{analyze_detailed, superpoly_entries, AnalysisError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReportOptions {
    /// Drop dominated transitions and monomials from the reported bounds.
    pub reduce: bool,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions { reduce: true }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VarBound {
    SuperPoly,
    /// Pairwise non-dominating; fewest terms first.
    Bounds(Vec<Poly>),
}

#[derive(Clone, Debug)]
pub struct WitnessEntry {
    /// A solver element (may mention `tau`).
    pub mp: MultiPoly,
    pub pattern: Pattern,
}

#[derive(Clone, Debug)]
pub struct LoopWitness {
    pub index: usize,
    pub bound: Expr,
    /// Abstract body transitions; pattern letters index into this list.
    pub body: Vec<MultiPoly>,
    /// Concrete transitions aligned with `body`, for loop-free bodies.
    pub exact_body: Option<Vec<NatMultiPoly>>,
    pub entries: Vec<WitnessEntry>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Stats {
    pub loops: usize,
    pub rounds: usize,
    pub elements: usize,
    pub restarts: usize,
    pub generalizations: usize,
}

#[derive(Clone, Debug)]
pub struct AnalysisReport {
    pub n: usize,
    pub budget: Budget,
    pub reduced: bool,
    /// Variables with a polynomial bound.
    pub pb: Vec<Var>,
    pub superpoly: Vec<Var>,
    /// Erased transitions (reduced unless disabled).
    pub bounds: Vec<MultiPoly>,
    /// Size of the transition set before erasure and reduction.
    pub unreduced_count: usize,
    /// Indexed by variable minus one.
    pub per_variable: Vec<VarBound>,
    pub witnesses: Vec<LoopWitness>,
    pub stats: Stats,
}

pub fn analyze_program(p: &Program, budget: &Budget) -> Result<AnalysisReport, AnalysisError> {
    analyze_program_with(p, budget, &ReportOptions::default())
}

pub fn analyze_program_with(
    p: &Program,
    budget: &Budget,
    opts: &ReportOptions,
) -> Result<AnalysisReport, AnalysisError> {
    let a = analyze_detailed(&p.command, p.n, budget)?;
    let erased: Vec<MultiPoly> = a.result.mps.iter().map(MultiPoly::erase).collect();
    let bounds = if opts.reduce {
        reduce_mp_set(&erased)
    } else {
        let mut v = erased;
        v.sort();
        v.dedup();
        v
    };
    let superpoly = superpoly_entries(&bounds);
    let pb = (1..=p.n).filter(|i| !superpoly.contains(i)).collect();
    let per_variable = per_variable_bounds(&bounds, p.n);

    let mut stats = Stats {
        loops: a.loops.len(),
        ..Stats::default()
    };
    let mut witnesses = Vec::new();
    for l in a.loops {
        let s = &l.solution;
        stats.rounds += s.rounds_used;
        stats.elements += s.elements_explored;
        stats.restarts += s.restarts;
        stats.generalizations += s.generalizations;
        let entries = s
            .bounds
            .iter()
            .map(|b| WitnessEntry {
                mp: b.mp.clone(),
                pattern: derive_pattern(&b.derivation, p.n),
            })
            .collect();
        witnesses.push(LoopWitness {
            index: l.index,
            bound: l.bound,
            body: l.solution.body,
            exact_body: l.exact_body,
            entries,
        });
    }
    Ok(AnalysisReport {
        n: p.n,
        budget: *budget,
        reduced: opts.reduce,
        pb,
        superpoly: superpoly.into_iter().collect(),
        bounds,
        unreduced_count: a.result.mps.len(),
        per_variable,
        witnesses,
        stats,
    })
}

/// For each variable, the maximal entries over all transitions.
pub fn per_variable_bounds(bounds: &[MultiPoly], n: usize) -> Vec<VarBound> {
    (1..=n)
        .map(|i| {
            let mut polys = BTreeSet::new();
            for b in bounds {
                match b.entry(i) {
                    Entry::SuperPoly => return VarBound::SuperPoly,
                    Entry::Bound(p) => {
                        polys.insert(reduce_poly(p));
                    }
                }
            }
            let polys: Vec<Poly> = polys.into_iter().collect();
            let mut kept: Vec<Poly> = polys
                .iter()
                .filter(|p| !polys.iter().any(|q| q != *p && poly_dominated_by(p, q)))
                .cloned()
                .collect();
            kept.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
            VarBound::Bounds(kept)
        })
        .collect()
}

impl VarBound {
    pub fn to_compact_string(&self) -> String {
        match self {
            VarBound::SuperPoly => "SUPERPOLY".to_string(),
            VarBound::Bounds(ps) if ps.len() == 1 => ps[0].to_compact_string(),
            VarBound::Bounds(ps) => {
                let parts: Vec<String> = ps.iter().map(Poly::to_compact_string).collect();
                format!("max({})", parts.join(", "))
            }
        }
    }
}

#[derive(Serialize)]
#[serde(untagged)]
enum VarBoundJson {
    Super(&'static str),
    Bounds(Vec<String>),
}

#[derive(Serialize)]
struct WitnessEntryJson {
    bound: Vec<EntryJson>,
    pattern: String,
}

#[derive(Serialize)]
struct LoopWitnessJson {
    index: usize,
    bound: String,
    exact_body: bool,
    body: Vec<Vec<EntryJson>>,
    entries: Vec<WitnessEntryJson>,
}

#[derive(Serialize)]
struct ReportJson {
    version: &'static str,
    n: usize,
    budget: Budget,
    reduced: bool,
    pb: Vec<String>,
    bounds: Vec<Vec<EntryJson>>,
    unreduced_count: usize,
    per_variable: IndexMap<String, VarBoundJson>,
    superpoly: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witnesses: Option<Vec<LoopWitnessJson>>,
    stats: Stats,
}

fn var_names(vs: &[Var]) -> Vec<String> {
    vs.iter().map(|v| format!("x{v}")).collect()
}

impl AnalysisReport {
    /// Field order is fixed; witnesses appear only when asked for.
    pub fn to_json(&self, with_witnesses: bool) -> serde_json::Value {
        let per_variable = self
            .per_variable
            .iter()
            .enumerate()
            .map(|(k, vb)| {
                let v = match vb {
                    VarBound::SuperPoly => VarBoundJson::Super("SUPERPOLY"),
                    VarBound::Bounds(ps) => {
                        VarBoundJson::Bounds(ps.iter().map(Poly::to_compact_string).collect())
                    }
                };
                (format!("x{}", k + 1), v)
            })
            .collect();
        let witnesses = with_witnesses.then(|| {
            self.witnesses
                .iter()
                .map(|w| LoopWitnessJson {
                    index: w.index,
                    bound: w.bound.to_string(),
                    exact_body: w.exact_body.is_some(),
                    body: w.body.iter().map(mp_to_json).collect(),
                    entries: w
                        .entries
                        .iter()
                        .map(|e| WitnessEntryJson {
                            bound: mp_to_json(&e.mp),
                            pattern: e.pattern.to_string(),
                        })
                        .collect(),
                })
                .collect()
        });
        let report = ReportJson {
            version: env!("CARGO_PKG_VERSION"),
            n: self.n,
            budget: self.budget,
            reduced: self.reduced,
            pb: var_names(&self.pb),
            bounds: self.bounds.iter().map(mp_to_json).collect(),
            unreduced_count: self.unreduced_count,
            per_variable,
            superpoly: var_names(&self.superpoly),
            witnesses,
            stats: self.stats,
        };
        serde_json::to_value(report).expect("report serializes")
    }

    pub fn to_text(&self, with_witnesses: bool) -> String {
        let list = |vs: &[Var]| {
            if vs.is_empty() {
                "(none)".to_string()
            } else {
                var_names(vs).join(" ")
            }
        };
        let mut out = String::new();
        let _ = writeln!(out, "variables: {}", self.n);
        let _ = writeln!(out, "polynomially bounded: {}", list(&self.pb));
        let _ = writeln!(out, "super-polynomial: {}", list(&self.superpoly));
        let _ = writeln!(
            out,
            "transitions: {} ({} before {})",
            self.bounds.len(),
            self.unreduced_count,
            if self.reduced { "reduction" } else { "erasure" }
        );
        for b in &self.bounds {
            let _ = writeln!(out, "  {b}");
        }
        let _ = writeln!(out, "per variable:");
        for (k, vb) in self.per_variable.iter().enumerate() {
            let _ = writeln!(out, "  x{} <= {}", k + 1, vb.to_compact_string());
        }
        if with_witnesses {
            for w in &self.witnesses {
                let _ = writeln!(out, "loop {} (bound {}):", w.index, w.bound);
                for (k, b) in w.body.iter().enumerate() {
                    let _ = writeln!(out, "  p{} = {b}", k + 1);
                }
                for e in &w.entries {
                    let _ = writeln!(out, "  {}  via  {}", e.mp, e.pattern);
                }
            }
        }
        let s = &self.stats;
        let _ = writeln!(
            out,
            "stats: loops={} rounds={} elements={} restarts={} generalizations={}",
            s.loops, s.rounds, s.elements, s.restarts, s.generalizations
        );
        out
    }
}
