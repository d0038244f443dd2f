use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

/// 1-based variable index.
pub type Var = usize;

/// A power product over `x1..xn` and the iteration parameter `tau`.
///
/// Exponents are stored sparsely, sorted by variable, with no zero entries.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    vars: SmallVec<[(u32, u32); 4]>,
    tau: u32,
}

impl Monomial {
    /// The empty product.
    pub fn unit() -> Monomial {
        Monomial::default()
    }

    pub fn var(i: Var) -> Monomial {
        assert!(i >= 1, "variable indices are 1-based");
        let mut vars = SmallVec::new();
        vars.push((i as u32, 1));
        Monomial { vars, tau: 0 }
    }

    pub fn tau_pow(k: u32) -> Monomial {
        Monomial {
            vars: SmallVec::new(),
            tau: k,
        }
    }

    /// Build from `(variable, exponent)` pairs; zero exponents are dropped and
    /// repeated variables are multiplied together.
    pub fn from_exps(exps: impl IntoIterator<Item = (Var, u32)>, tau: u32) -> Monomial {
        let mut vars: SmallVec<[(u32, u32); 4]> = SmallVec::new();
        for (v, e) in exps {
            assert!(v >= 1, "variable indices are 1-based");
            if e == 0 {
                continue;
            }
            match vars.iter_mut().find(|(w, _)| *w == v as u32) {
                Some(slot) => slot.1 += e,
                None => vars.push((v as u32, e)),
            }
        }
        vars.sort_unstable_by_key(|&(v, _)| v);
        Monomial { vars, tau }
    }

    pub fn exp(&self, i: Var) -> u32 {
        self.vars
            .iter()
            .find(|&&(v, _)| v as usize == i)
            .map_or(0, |&(_, e)| e)
    }

    pub fn tau_exp(&self) -> u32 {
        self.tau
    }

    /// `(variable, exponent)` pairs in increasing variable order.
    pub fn exps(&self) -> impl Iterator<Item = (Var, u32)> + '_ {
        self.vars.iter().map(|&(v, e)| (v as usize, e))
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.vars.iter().map(|&(v, _)| v as usize)
    }

    /// Degree in the program variables only.
    pub fn degree(&self) -> u32 {
        self.vars.iter().map(|&(_, e)| e).sum()
    }

    /// Degree counting `tau` as a variable.
    pub fn total_degree(&self) -> u32 {
        self.degree() + self.tau
    }

    pub fn is_unit(&self) -> bool {
        self.vars.is_empty() && self.tau == 0
    }

    pub fn is_tau_free(&self) -> bool {
        self.tau == 0
    }

    /// True for a bare `xi`: degree one and no `tau`.
    pub fn is_linear(&self) -> bool {
        self.tau == 0 && self.vars.len() == 1 && self.vars[0].1 == 1
    }

    /// Returns `i` if this monomial is exactly `xi`.
    pub fn as_linear(&self) -> Option<Var> {
        self.is_linear().then(|| self.vars[0].0 as usize)
    }

    pub fn max_var(&self) -> Var {
        self.vars.last().map_or(0, |&(v, _)| v as usize)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut vars: SmallVec<[(u32, u32); 4]> = SmallVec::new();
        let (a, b) = (&self.vars, &other.vars);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    vars.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    vars.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    vars.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        vars.extend_from_slice(&a[i..]);
        vars.extend_from_slice(&b[j..]);
        Monomial {
            vars,
            tau: self.tau + other.tau,
        }
    }

    /// The same monomial with `tau` removed.
    pub fn without_tau(&self) -> Monomial {
        Monomial {
            vars: self.vars.clone(),
            tau: 0,
        }
    }

    pub fn with_tau(&self, tau: u32) -> Monomial {
        Monomial {
            vars: self.vars.clone(),
            tau,
        }
    }

    /// Pointwise comparison: every exponent of `other` (including `tau`) is at
    /// most the matching exponent of `self`. For arguments all at least one this
    /// means `other <= self` as functions.
    pub fn dominates(&self, other: &Monomial) -> bool {
        if other.tau > self.tau {
            return false;
        }
        let mut it = self.vars.iter().peekable();
        for &(v, e) in &other.vars {
            loop {
                match it.peek() {
                    Some(&&(w, _)) if w < v => {
                        it.next();
                    }
                    Some(&&(w, f)) if w == v => {
                        if f < e {
                            return false;
                        }
                        it.next();
                        break;
                    }
                    _ => return false,
                }
            }
        }
        true
    }
}

impl Ord for Monomial {
    /// Graded order: lower total degree first; within a degree, a larger
    /// exponent on a lower-indexed variable comes first, `tau` last.
    fn cmp(&self, other: &Self) -> Ordering {
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let (a, b) = (&self.vars, &other.vars);
        let (mut i, mut j) = (0, 0);
        loop {
            let (va, ea) = a.get(i).map_or((u32::MAX, 0), |&p| p);
            let (vb, eb) = b.get(j).map_or((u32::MAX, 0), |&p| p);
            if va == u32::MAX && vb == u32::MAX {
                break;
            }
            let v = va.min(vb);
            let ea = if va == v { ea } else { 0 };
            let eb = if vb == v { eb } else { 0 };
            if ea != eb {
                return eb.cmp(&ea);
            }
            if va == v {
                i += 1;
            }
            if vb == v {
                j += 1;
            }
        }
        other.tau.cmp(&self.tau)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return write!(f, "1");
        }
        let mut first = true;
        let mut sep = |f: &mut fmt::Formatter<'_>| {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            Ok::<(), fmt::Error>(())
        };
        for &(v, e) in &self.vars {
            sep(f)?;
            if e == 1 {
                write!(f, "x{v}")?;
            } else {
                write!(f, "x{v}^{e}")?;
            }
        }
        if self.tau > 0 {
            sep(f)?;
            if self.tau == 1 {
                write!(f, "tau")?;
            } else {
                write!(f, "tau^{}", self.tau)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
