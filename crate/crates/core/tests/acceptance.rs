//! Acceptance run: one PASS/FAIL line per criterion, with timings against
//! fixed limits. Exits non-zero if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::Rng;

use polybound::analyzer::{analyze, analyze_program, AnalysisReport, VarBound};
use polybound::lang::{instrument_counters, parse, run_schedule, Decision, Program, State};
use polybound::oracle::{
    check_lower, check_upper, classify_growth, gen_adversarial, Grid, OracleError, DEFAULT_CAP,
    DEFAULT_EXPLORE_BUDGET, LOWER_DECAY, LOWER_TS,
};
use polybound::poly::{
    mp_dominated_by, parse_mp, parse_poly, reduce_mp, reduce_mp_set, reduce_poly, Monomial,
    MultiPoly, NatMultiPoly, Poly,
};
use polybound::sdl::{
    closure, decompose_entry, generalize, is_abstract_idempotent, is_idempotent, sd_set, solve_sdl,
    Budget, SdlProblem,
};
use polybound::witness::derive_pattern;

const ACCUMULATE: &str = "X4 := X1; loop X4 { X2 := X1 + X2; X3 := X2 }";
const ACCUMULATE_SWAPPED: &str = "X4 := X1; loop X4 { X3 := X2; X2 := X1 + X2 }";
const TWO_PHASE: &str = include_str!("testdata/two_phase.loop");

/// Scales for witness replay.
const LOWER_SCALES: [u64; 3] = [2, 4, 8];
/// Random programs the upper-bound check must cover.
const UPPER_PROGRAMS: usize = 200;
const UPPER_GRID_HI: u64 = 3;
/// Random loop bodies the lower-bound check must cover.
const LOWER_BODIES: usize = 50;
/// Instances per algebraic law.
const LAW_INSTANCES: usize = 1000;

struct Outcome {
    pass: bool,
    notes: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome { pass: true, notes: Vec::new() }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    /// Record `s` and fail unless `ok`.
    fn require(&mut self, ok: bool, s: impl Into<String>) {
        if !ok {
            self.pass = false;
            self.notes.push(format!("violated: {}", s.into()));
        }
    }
}

fn mp(s: &str) -> MultiPoly {
    parse_mp(s).unwrap_or_else(|e| panic!("{s}: {e}"))
}

fn mps(xs: &[&str]) -> BTreeSet<MultiPoly> {
    xs.iter().map(|s| mp(s)).collect()
}

fn show(set: &BTreeSet<MultiPoly>) -> String {
    set.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn report_of(src: &str) -> AnalysisReport {
    analyze_program(&parse(src).unwrap(), &Budget::default()).unwrap()
}

// 1
fn accumulation_exact() -> Outcome {
    let mut o = Outcome::new();
    let want = mps(&["<x1, x2, x3, x1>", "<x1, x2+x1^2, x2+x1^2, x1>"]);
    for src in [ACCUMULATE, ACCUMULATE_SWAPPED] {
        let p = parse(src).unwrap();
        let raw = analyze(&p.command, p.n, &Budget::default()).unwrap();
        let erased: Vec<MultiPoly> = raw.mps.iter().map(MultiPoly::erase).collect();
        let got: BTreeSet<MultiPoly> = reduce_mp_set(&erased).into_iter().collect();
        o.note(format!("{src} -> {{{}}}", show(&got)));
        o.require(got == want, format!("expected {{{}}}", show(&want)));
    }
    o
}

// 2
fn worked_sdl() -> Outcome {
    let mut o = Outcome::new();
    let sol = solve_sdl(&SdlProblem::new(vec![mp("<x1+x2, x2+x3, x3, x3>")], 4)).unwrap();
    let got: BTreeSet<MultiPoly> = sol.bounds.iter().map(|b| reduce_mp(&b.mp.erase())).collect();
    let want = mps(&[
        "<x1, x2, x3, x4>",
        "<x1+x2, x2+x3, x3, x3>",
        "<x1+x2+x3, x2+x3, x3, x3>",
        "<x1+tau*x2+tau*x3, x2+tau*x3, x3, x3>",
        "<x1+tau*x2+tau^2*x3, x2+tau*x3, x3, x3>",
    ]);
    o.note(format!("{} raw elements, erased and reduced: {{{}}}", sol.bounds.len(), show(&got)));
    o.require(got == want, format!("expected {{{}}}", show(&want)));
    o.require(sol.superpoly_vars.is_empty(), "no super-polynomial variables");
    for b in &sol.bounds {
        o.require(
            want.iter().any(|w| mp_dominated_by(&b.mp, w)),
            format!("{} is dominated by a listed element", b.mp),
        );
    }
    o
}

// 3
fn multiplicative_closure() -> Outcome {
    let mut o = Outcome::new();
    let body = vec![mp("<x2^2, x3, x3>")];
    let want = mps(&["<x1, x2, x3>", "<x2^2, x3, x3>", "<x3^2, x3, x3>"]);
    let got: BTreeSet<MultiPoly> =
        closure(&body, &Budget::default()).unwrap().into_iter().map(|(p, _)| p).collect();
    o.note(format!("closure: {{{}}}", show(&got)));
    o.require(got == want, format!("expected {{{}}}", show(&want)));
    let sol = solve_sdl(&SdlProblem::new(body, 3)).unwrap();
    let solved: BTreeSet<MultiPoly> = sol.bounds.iter().map(|b| b.mp.clone()).collect();
    o.note(format!("solver: {} elements, {} generalizations", solved.len(), sol.generalizations));
    o.require(sol.generalizations == 0, "no generalization fires");
    o.require(solved == want, "solver result equals the closure");
    o
}

fn maximal_bounds(r: &AnalysisReport, i: usize) -> Vec<Poly> {
    match &r.per_variable[i - 1] {
        VarBound::Bounds(bs) => bs.clone(),
        VarBound::SuperPoly => Vec::new(),
    }
}

/// Monomials of `ps` not dominated by another, with `drop` removed first.
fn maximal_monomials(ps: &[Poly], drop: &Monomial) -> BTreeSet<Monomial> {
    let all: Vec<Monomial> =
        ps.iter().flat_map(|p| p.monomials().cloned()).filter(|m| m != drop).collect();
    all.iter()
        .filter(|m| !all.iter().any(|k| k != *m && k.dominates(m)))
        .cloned()
        .collect()
}

fn eval_at(p: &Poly, x: &[u64]) -> BigUint {
    let xs: Vec<BigUint> = x.iter().map(|&v| BigUint::from(v.max(1))).collect();
    p.eval(&xs, &BigUint::from(0u32))
}

fn iters(k: u64) -> Decision {
    Decision::Iterations(k)
}

/// Two-phase program from `(1, n, 0, 0)`: the first loop runs once with no
/// inner iterations, leaving `X4 = n`; the last loop then adds `1 + n` to
/// `X3` on each of its `n` passes.
fn two_phase_run(p: &Program, n: u64) -> BigUint {
    let mut s = vec![iters(1), iters(0), iters(n)];
    s.extend(std::iter::repeat(Decision::ChooseLeft).take(n as usize));
    run_schedule(p, &State::from_u64s(&[1, n, 0, 0]), &s).unwrap().get(3).clone()
}

/// Counted two-phase program from `(a, a^3, 0, 0, 1, 0)`: skip the inner
/// loop on the first outer pass, then run it in full on every later pass.
fn counted_run(p: &Program, a: u64) -> BigUint {
    let b = a * a * a;
    let mut s = vec![iters(a), iters(0)];
    // X4 after pass j is b + a*(j-1); the inner loop of pass j runs X4 of pass j-1 times
    let mut x4 = b;
    for _ in 2..=a {
        s.push(iters(x4));
        s.extend(std::iter::repeat(Decision::ChooseLeft).take(x4 as usize));
        x4 += a;
    }
    s.push(iters(x4));
    s.extend(std::iter::repeat(Decision::ChooseLeft).take(x4 as usize));
    run_schedule(p, &State::from_u64s(&[a, b, 0, 0, 1, 0]), &s).unwrap().get(6).clone()
}

fn ratio(a: &BigUint, b: &BigUint) -> f64 {
    a.to_string().parse::<f64>().unwrap() / b.to_string().parse::<f64>().unwrap()
}

// 4
fn two_phase_bounds() -> Outcome {
    let mut o = Outcome::new();
    let plain = parse(TWO_PHASE).unwrap();
    let r = analyze_program(&plain, &Budget::default()).unwrap();
    let got: BTreeSet<Poly> = maximal_bounds(&r, 3).into_iter().collect();
    let want: BTreeSet<Poly> =
        ["x4^2+x1^2*x4", "x2*x4+x3*x4+x1^2*x4"].iter().map(|s| parse_poly(s).unwrap()).collect();
    let fmt = |s: &BTreeSet<Poly>| s.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
    o.note(format!("x3 maximal bounds: {{{}}}", fmt(&got)));
    o.require(got == want, format!("x3 maximal bounds equal {{{}}}", fmt(&want)));
    // the expected x3 bound is beaten by an unbounded factor
    for n in [10u64, 100, 1000] {
        let y = two_phase_run(&plain, n);
        let x = [1, n, 0, 0];
        let claimed = want.iter().map(|p| eval_at(p, &x)).max().unwrap();
        let ours = got.iter().map(|p| eval_at(p, &x)).max().unwrap();
        o.note(format!(
            "  x = (1,{n},0,0): reached x3 = {y}; expected bound (zeros as 1) = {claimed}, ratio {:.1}; reported bound = {ours}",
            ratio(&y, &claimed)
        ));
    }

    let counted = instrument_counters(&plain);
    let r = analyze_program(&counted, &Budget::default()).unwrap();
    let counter = Monomial::var(6);
    let got = maximal_monomials(&maximal_bounds(&r, 6), &counter);
    let want: Poly = parse_poly("x2*x5+x3*x5+x1^3*x5+x1*x4*x5").unwrap();
    let want_set: BTreeSet<Monomial> = want.monomials().cloned().collect();
    let fmt = |s: &BTreeSet<Monomial>| s.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
    o.note(format!("x6 maximal monomials: {{{}}}", fmt(&got)));
    o.require(got == want_set, format!("x6 maximal monomials equal {{{}}}", fmt(&want_set)));
    for a in [5u64, 10, 20] {
        let y = counted_run(&counted, a);
        let claimed = eval_at(&want, &[a, a * a * a, 0, 0, 1, 0]);
        o.note(format!(
            "  x = ({a},{},0,0,1,0): counter reaches {y}; expected bound (zeros as 1) = {claimed}, ratio {:.2}",
            a * a * a,
            ratio(&y, &claimed)
        ));
    }
    o
}

// 5
fn generalization_fidelity() -> Outcome {
    let mut o = Outcome::new();
    for (p, want) in [
        ("<x1+x3, x2+x3+x4, x3, x3>", "<x1+tau*x3, x2+tau*x3+x4, x3, x3>"),
        ("<x1+tau*x2+tau*x3+tau*x3*x4, x3, x3, x4>", "<x1+tau*x2+tau*x3+tau*x3*x4, x3, x3, x4>"),
    ] {
        let p = mp(p);
        o.require(is_abstract_idempotent(&p), format!("{p} is idempotent"));
        let got = generalize(&p);
        o.note(format!("generalize {p} = {}", got.as_ref().map_or_else(|e| e.to_string(), |g| g.to_string())));
        o.require(got.as_ref() == Ok(&mp(want)), format!("generalization is {want}"));
    }

    let p = mp("<x1+tau*x2+tau*x3+x3*x4, x3, x3, x4>");
    let sd = sd_set(&p);
    o.require(sd == BTreeSet::from([1, 3, 4]), format!("sd({p}) = {{1,3,4}}, got {sd:?}"));
    match decompose_entry(&p, 1) {
        Ok(d) => {
            o.note(format!("split of entry 1: p' = {}, p'' = {}, p''' = {}", d.p_prime, d.p_dprime, d.p_tprime));
            o.require(d.p_prime == parse_poly("x3").unwrap(), "p' = x3");
            o.require(d.p_dprime == parse_poly("x3*x4").unwrap(), "p'' = x3*x4");
            o.require(d.p_tprime == parse_poly("tau*x2").unwrap(), "p''' = tau*x2");
        }
        Err(e) => o.require(false, format!("entry 1 decomposes: {e}")),
    }
    let q = mp("<x1+tau^2*x3, x3, x3, x4>");
    let d = decompose_entry(&q, 1).unwrap();
    o.require(d.p_prime == parse_poly("tau*x3").unwrap(), "tau^2*x3 leaves p' = tau*x3");

    for (p, want) in [("<x1, x2>", true), ("<x1+x2, x2>", true), ("<x1*x2, x2>", false), ("<x1+x2, x1>", false)] {
        let got = is_abstract_idempotent(&mp(p));
        o.note(format!("idempotent {p}: {got}"));
        o.require(got == want, format!("{p} idempotent = {want}"));
    }
    o
}

// 6
fn upper_soundness() -> Outcome {
    let mut o = Outcome::new();
    let mut r = common::rng(6);
    let (mut checked, mut skipped, mut worst) = (0usize, 0usize, 0u64);
    let mut attempts = 0;
    while checked < UPPER_PROGRAMS && attempts < 4 * UPPER_PROGRAMS {
        attempts += 1;
        let p = common::program(&mut r, 4, 2, 15);
        let report = match analyze_program(&p, &Budget::default()) {
            Ok(rep) => rep,
            Err(e) if e.is_budget() => {
                skipped += 1;
                continue;
            }
            Err(e) => {
                o.require(false, format!("analysis of `{p}` failed: {e}"));
                continue;
            }
        };
        match check_upper(&p, &report, &Grid::cube(p.n, UPPER_GRID_HI), DEFAULT_CAP, DEFAULT_EXPLORE_BUDGET) {
            Ok(c) => {
                checked += 1;
                worst = worst.max(c.upper_c.unwrap_or(0));
                if let Some(cex) = c.counterexamples.first() {
                    o.require(false, format!("`{p}` at {}: {}", cex.input, cex.reason));
                }
            }
            Err(OracleError::Budget(_)) => skipped += 1,
            Err(e) => o.require(false, format!("checking `{p}`: {e}")),
        }
    }
    o.note(format!("{checked} programs checked on {{0..{UPPER_GRID_HI}}}^n, {skipped} skipped over budget, largest constant {worst} (cap {DEFAULT_CAP})"));
    o.require(checked >= UPPER_PROGRAMS, format!("at least {UPPER_PROGRAMS} programs checked"));
    o
}

/// Check every solver element of `body` with its derived witness. Returns
/// the number of checks and the smallest fitted constant.
fn lower_checks(o: &mut Outcome, label: &str, exact: &[NatMultiPoly], bounds: &[(MultiPoly, polybound::witness::Pattern)]) -> (usize, f64) {
    let mut min_d = f64::INFINITY;
    for (b, pi) in bounds {
        match check_lower(exact, b, pi, &LOWER_SCALES) {
            Ok(rep) => {
                if let Some(d) = rep.lower_d {
                    min_d = min_d.min(d);
                }
                if let Some(c) = rep.counterexamples.first() {
                    o.require(false, format!("{label}: {b} via {pi}: {}", c.reason));
                }
            }
            Err(e) => o.require(false, format!("{label}: {b} via {pi}: {e}")),
        }
    }
    (bounds.len(), min_d)
}

// 7
fn lower_tightness() -> Outcome {
    let mut o = Outcome::new();
    let mut total = 0;
    let mut min_d = f64::INFINITY;
    for name in ["accumulate", "accumulate_swapped", "sum", "spread", "chain", "multiplicative", "swap", "two_phase"] {
        let src = std::fs::read_to_string(format!("{}/tests/testdata/{name}.loop", env!("CARGO_MANIFEST_DIR"))).unwrap();
        let r = report_of(&src);
        for w in &r.witnesses {
            let Some(exact) = &w.exact_body else { continue };
            let entries: Vec<_> = w.entries.iter().map(|e| (e.mp.clone(), e.pattern.clone())).collect();
            let (k, d) = lower_checks(&mut o, &format!("{name} loop {}", w.index), exact, &entries);
            total += k;
            min_d = min_d.min(d);
        }
    }
    o.note(format!("example loops: {total} bound/witness pairs"));

    let mut r = common::rng(7);
    let (mut bodies, mut rejected, mut pairs) = (0, 0, 0);
    while bodies < LOWER_BODIES {
        let n = r.gen_range(1..=3);
        let len = r.gen_range(1..=2);
        let exact = common::sdl_body(&mut r, n, 3, len);
        let body: Vec<MultiPoly> = exact.iter().map(NatMultiPoly::alpha).collect();
        let sol = match solve_sdl(&SdlProblem::new(body, n)) {
            Ok(s) if s.superpoly_vars.is_empty() => s,
            _ => {
                rejected += 1;
                continue;
            }
        };
        bodies += 1;
        let entries: Vec<_> = sol.bounds.iter().map(|b| (b.mp.clone(), derive_pattern(&b.derivation, n))).collect();
        let label = exact.iter().map(ToString::to_string).collect::<Vec<_>>().join(" | ");
        let (k, d) = lower_checks(&mut o, &label, &exact, &entries);
        pairs += k;
        min_d = min_d.min(d);
    }
    o.note(format!(
        "{bodies} random bodies ({rejected} rejected as not polynomially bounded): {pairs} pairs; scales {LOWER_SCALES:?}, t in {LOWER_TS:?}, decay floor {LOWER_DECAY}"
    ));
    o.note(format!("smallest fitted constant {min_d:.4}"));
    o
}

// 8
fn classifier_battery() -> Outcome {
    let mut o = Outcome::new();
    // (program, expected super-polynomial variables, largest scale exponent)
    let battery: [(&str, &[usize], u32); 13] = [
        ("doubling", &[1], 8),
        ("squaring", &[1], 8),
        ("fibonacci", &[1, 2, 4], 8),
        ("amplify", &[3, 4], 8),
        ("swap", &[], 8),
        ("sum", &[], 8),
        ("spread", &[], 8),
        ("chain", &[], 8),
        ("multiplicative", &[], 8),
        ("accumulate", &[], 8),
        ("accumulate_swapped", &[], 8),
        // exhaustive exploration cost grows steeply with the scale on these two
        ("two_phase", &[], 7),
        ("two_phase_counted", &[], 5),
    ];
    let mut disagreements = 0;
    for (name, expect, k_max) in battery {
        let exps: Vec<u32> = (1..=k_max).collect();
        let src = std::fs::read_to_string(format!("{}/tests/testdata/{name}.loop", env!("CARGO_MANIFEST_DIR"))).unwrap();
        let p = parse(&src).unwrap();
        let r = analyze_program(&p, &Budget::default()).unwrap();
        let mut by_classifier = BTreeSet::new();
        for i in 1..=p.n {
            match classify_growth(&p, i, &exps, DEFAULT_EXPLORE_BUDGET) {
                Ok(g) if !g.is_polynomial() => {
                    by_classifier.insert(i);
                }
                Ok(_) => {}
                Err(e) => o.require(false, format!("{name} x{i}: {e}")),
            }
        }
        let by_analysis: BTreeSet<usize> = r.superpoly.iter().copied().collect();
        let expected: BTreeSet<usize> = expect.iter().copied().collect();
        o.note(format!("{name} (k <= {k_max}): expected {expected:?}, analysis {by_analysis:?}, classifier {by_classifier:?}"));
        disagreements += by_analysis.symmetric_difference(&by_classifier).count();
        o.require(by_analysis == expected, format!("{name}: analysis flags {expected:?}"));
        o.require(by_classifier == expected, format!("{name}: classifier flags {expected:?}"));
    }
    o.note(format!("{disagreements} disagreements"));
    o
}

// 9
fn adversarial_counts() -> Outcome {
    let mut o = Outcome::new();
    for (n, d, want) in [(4usize, 1usize, 4usize), (6, 1, 27), (8, 2, 256)] {
        let t = Instant::now();
        let p = gen_adversarial(n, d).unwrap();
        let got = analyze_program(&p, &Budget::default()).map(|r| r.bounds.len());
        o.note(format!("n={n} d={d}: {got:?} maximal transitions in {:.2?}", t.elapsed()));
        o.require(got == Ok(want), format!("n={n} d={d} gives {want}"));
    }
    o
}

/// Whether some `p^k` with `k <= k_max` is idempotent.
fn has_idempotent_power(p: &MultiPoly, k_max: usize) -> bool {
    let mut q = p.clone();
    for _ in 0..k_max {
        if is_idempotent(&q) {
            return true;
        }
        q = p.compose(&q).unwrap();
    }
    false
}

fn nats(r: &mut impl Rng, n: usize, lo: u64, hi: u64) -> Vec<BigUint> {
    (0..n).map(|_| BigUint::from(r.gen_range(lo..=hi))).collect()
}

// 10
fn algebra_laws() -> Outcome {
    let mut o = Outcome::new();
    let mut r = common::rng(10);
    let mut fails = [0usize; 6];

    for _ in 0..LAW_INSTANCES {
        let n = r.gen_range(1..=3);
        let (a, b, c) = (common::mp(&mut r, n, 2, 1, 0.1), common::mp(&mut r, n, 2, 1, 0.1), common::mp(&mut r, n, 2, 1, 0.1));
        let left = a.compose(&b.compose(&c).unwrap()).unwrap();
        let right = a.compose(&b).unwrap().compose(&c).unwrap();
        let id = MultiPoly::identity(n);
        if left != right || a.compose(&id).unwrap() != a || id.compose(&a).unwrap() != a {
            fails[0] += 1;
        }

        let lhs = a.compose(&b).unwrap().erase();
        let rhs = a.erase().compose(&b.erase()).unwrap().erase();
        let (p, q) = (common::poly(&mut r, n, 2, 3, 1), common::poly(&mut r, n, 2, 3, 1));
        if lhs != rhs
            || p.add(&q).erase() != p.erase().add(&q.erase()).erase()
            || p.mul(&q).erase() != p.erase().mul(&q.erase()).erase()
        {
            fails[1] += 1;
        }

        let (u, v) = (common::nat_mp(&mut r, n, 2, 3), common::nat_mp(&mut r, n, 2, 3));
        if u.compose(&v).unwrap().alpha() != u.alpha().compose(&v.alpha()).unwrap() {
            fails[2] += 1;
        }

        let red = reduce_poly(&p);
        let xs = nats(&mut r, n, 1, 20);
        let t = BigUint::from(r.gen_range(1u64..=20));
        let (lo, mid) = (red.eval(&xs, &t), p.eval(&xs, &t));
        if !(lo <= mid && mid <= lo * BigUint::from(p.len())) {
            fails[3] += 1;
        }
    }

    // conditional tau-closure and idempotent powers, over solver and
    // closure elements of random loop bodies
    let (mut closure_cases, mut power_cases, mut bodies) = (0usize, 0usize, 0usize);
    while (closure_cases < LAW_INSTANCES || power_cases < LAW_INSTANCES) && bodies < 50 * LAW_INSTANCES {
        bodies += 1;
        let n = r.gen_range(1..=3);
        let len = r.gen_range(1..=2);
        let body: Vec<MultiPoly> = common::sdl_body(&mut r, n, 2, len).iter().map(NatMultiPoly::alpha).collect();
        if let Ok(sol) = solve_sdl(&SdlProblem::new(body.clone(), n)) {
            for e in &sol.bounds {
                if !is_abstract_idempotent(&e.mp) {
                    continue;
                }
                let Ok(g) = generalize(&e.mp) else { continue };
                if is_idempotent(&g) {
                    closure_cases += 1;
                    if generalize(&g).as_ref() != Ok(&g) {
                        fails[4] += 1;
                    }
                }
            }
        }
        let budget = Budget { max_set_size: 200, max_degree: 8, ..Budget::default() };
        if let Ok(set) = closure(&body, &budget) {
            for (p, _) in &set {
                power_cases += 1;
                if !has_idempotent_power(p, set.len()) {
                    fails[5] += 1;
                }
            }
        }
    }

    o.note(format!("{bodies} random loop bodies for the last two laws"));
    let names = ["associativity and identity", "erase homomorphism", "alpha homomorphism", "reduction sandwich", "conditional tau-closure", "idempotent powers"];
    let counts = [LAW_INSTANCES, LAW_INSTANCES, LAW_INSTANCES, LAW_INSTANCES, closure_cases, power_cases];
    for ((name, n), f) in names.iter().zip(counts).zip(fails) {
        o.note(format!("{name}: {n} instances, {f} failures"));
        o.require(f == 0 && n >= LAW_INSTANCES, format!("{name} holds on at least {LAW_INSTANCES} instances"));
    }
    o
}

fn main() {
    let criteria: [(&str, u64, fn() -> Outcome); 10] = [
        ("accumulation loop: exact bound set", 1, accumulation_exact),
        ("additive loop: five-element solution", 1, worked_sdl),
        ("multiplicative loop: closure without generalization", 1, multiplicative_closure),
        ("two-phase program: maximal bounds for x3 and counter x6", 10, two_phase_bounds),
        ("generalization, decomposition and idempotence verdicts", 1, generalization_fidelity),
        ("upper-bound soundness on random programs", 300, upper_soundness),
        ("lower-bound tightness of witnesses", 300, lower_tightness),
        ("growth classifier agreement", 120, classifier_battery),
        ("adversarial output-size law", 60, adversarial_counts),
        ("algebraic laws", 60, algebra_laws),
    ];
    let mut passed = 0;
    for (k, (name, limit, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let mut out = run();
        let elapsed = t.elapsed();
        let limit = Duration::from_secs(*limit);
        if elapsed > limit {
            out.pass = false;
            out.notes.push(format!("violated: time limit {limit:?}"));
        }
        let verdict = if out.pass { "PASS" } else { "FAIL" };
        println!("{verdict} {:>2} {name} ({elapsed:.2?}, limit {limit:?})", k + 1);
        for n in &out.notes {
            println!("        {n}");
        }
        passed += usize::from(out.pass);
    }
    println!("{passed}/{} criteria passed", criteria.len());
    if passed != criteria.len() {
        std::process::exit(1);
    }
}
