//! Seeded random generators shared by the integration tests.
#![allow(dead_code)]

use polybound::lang::{Command, Expr, Program};
use polybound::poly::{Coeff, Entry, Monomial, MultiPoly, NatMultiPoly, NatPoly, Poly};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
pub use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Monomial over `x1..xn` with total degree in `1..=max_deg` and a `tau`
/// exponent up to `max_tau`.
pub fn monomial(r: &mut impl Rng, n: usize, max_deg: u32, max_tau: u32) -> Monomial {
    let deg = r.gen_range(1..=max_deg);
    let exps: Vec<(usize, u32)> = (0..deg).map(|_| (r.gen_range(1..=n), 1)).collect();
    Monomial::from_exps(exps, r.gen_range(0..=max_tau))
}

pub fn poly(r: &mut impl Rng, n: usize, max_deg: u32, max_terms: usize, max_tau: u32) -> Poly {
    let k = r.gen_range(1..=max_terms);
    Poly::from_terms((0..k).map(|_| {
        let c = if r.gen_bool(0.2) { Coeff::Many } else { Coeff::One };
        (monomial(r, n, max_deg, max_tau), c)
    }))
}

pub fn nat_poly(r: &mut impl Rng, n: usize, max_deg: u32, max_terms: usize, max_coeff: u64) -> NatPoly {
    let k = r.gen_range(1..=max_terms);
    NatPoly::from_terms((0..k).map(|_| (monomial(r, n, max_deg, 0), r.gen_range(1..=max_coeff))))
}

/// Entries are mostly the bare variable, otherwise a random polynomial;
/// `super_prob` of them are `SuperPoly`.
pub fn mp(r: &mut impl Rng, n: usize, max_deg: u32, max_tau: u32, super_prob: f64) -> MultiPoly {
    MultiPoly::new(
        (1..=n)
            .map(|i| {
                if r.gen_bool(super_prob) {
                    Entry::SuperPoly
                } else if r.gen_bool(0.3) {
                    Entry::var(i)
                } else {
                    Entry::Bound(poly(r, n, max_deg, 3, max_tau))
                }
            })
            .collect(),
    )
}

pub fn nat_mp(r: &mut impl Rng, n: usize, max_deg: u32, max_coeff: u64) -> NatMultiPoly {
    NatMultiPoly::new(
        (1..=n)
            .map(|i| {
                if r.gen_bool(0.3) {
                    NatPoly::var(i)
                } else {
                    nat_poly(r, n, max_deg, 3, max_coeff)
                }
            })
            .collect(),
    )
}

/// A loop body shaped like real programs: each entry is either some
/// variable's value, or `xi` plus a polynomial in the other variables, or a
/// polynomial in the other variables.
pub fn sdl_body(r: &mut impl Rng, n: usize, max_deg: u32, len: usize) -> Vec<NatMultiPoly> {
    (0..len)
        .map(|_| {
            NatMultiPoly::new(
                (1..=n)
                    .map(|i| {
                        let others: Vec<usize> = (1..=n).filter(|&j| j != i).collect();
                        let other_poly = |r: &mut dyn rand::RngCore| -> NatPoly {
                            if others.is_empty() {
                                return NatPoly::var(i);
                            }
                            let k = r.gen_range(1..=2);
                            NatPoly::from_terms((0..k).map(|_| {
                                let deg = r.gen_range(1..=max_deg);
                                let exps: Vec<(usize, u32)> =
                                    (0..deg).map(|_| (*others.choose(r).unwrap(), 1)).collect();
                                (Monomial::from_exps(exps, 0), 1u64)
                            }))
                        };
                        match r.gen_range(0..4) {
                            0 => NatPoly::var(i),
                            1 => NatPoly::var(r.gen_range(1..=n)),
                            2 => NatPoly::var(i).add(&other_poly(r)),
                            _ => other_poly(r),
                        }
                    })
                    .collect(),
            )
        })
        .collect()
}

pub fn expr(r: &mut impl Rng, n: usize) -> Expr {
    let v = |r: &mut dyn rand::RngCore| Expr::var(r.gen_range(1..=n));
    match r.gen_range(0..6) {
        0..=2 => v(r),
        3 | 4 => Expr::add(v(r), v(r)),
        _ => Expr::mul(v(r), v(r)),
    }
}

fn command(r: &mut impl Rng, n: usize, loops_left: usize, fuel: usize) -> Command {
    if fuel <= 3 {
        return Command::assign(r.gen_range(1..=n), expr(r, n));
    }
    match r.gen_range(0..10) {
        0..=2 => Command::assign(r.gen_range(1..=n), expr(r, n)),
        3..=5 => {
            let split = r.gen_range(1..fuel);
            Command::seq(command(r, n, loops_left, split), command(r, n, loops_left, fuel - split))
        }
        6 | 7 => {
            let split = r.gen_range(1..fuel);
            Command::choose(command(r, n, loops_left, split), command(r, n, loops_left, fuel - split))
        }
        _ if loops_left > 0 => {
            Command::looping(Expr::var(r.gen_range(1..=n)), command(r, n, loops_left - 1, fuel - 2))
        }
        _ => Command::Skip,
    }
}

/// Random program with at most `max_n` variables, loop nesting at most
/// `max_nest` and at most `max_size` AST nodes.
pub fn program(r: &mut impl Rng, max_n: usize, max_nest: usize, max_size: usize) -> Program {
    loop {
        let n = r.gen_range(1..=max_n);
        let fuel = r.gen_range(3..=max_size);
        let c = command(r, n, max_nest, fuel);
        if c.size() <= max_size && c.loop_depth() <= max_nest {
            return Program::with_arity(c, n);
        }
    }
}
