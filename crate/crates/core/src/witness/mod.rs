//! Lower-bound witnesses: iteration patterns built from solver derivations,
//! and their expansion into concrete traces over the loop body.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use thiserror::Error;

use crate::poly::NatMultiPoly;
use crate::sdl::Derivation;

/// A pattern atom. A star's body is a plain word, so stars never nest.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Atom {
    /// Body transition `k` (0-based).
    Letter(usize),
    Star(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Pattern(pub Vec<Atom>);

/// A sequence of body-transition indices.
pub type Trace = Vec<usize>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("patterns are expanded with at least one repetition")]
    ZeroRepetitions,
    #[error("trace refers to missing body transition {index}")]
    BadLetter { index: usize },
    #[error("bad pattern text: {0}")]
    Parse(String),
}

impl Pattern {
    pub fn empty() -> Pattern {
        Pattern(Vec::new())
    }

    pub fn is_star_free(&self) -> bool {
        self.0.iter().all(|a| matches!(a, Atom::Letter(_)))
    }

    pub fn star_count(&self) -> usize {
        self.0.iter().filter(|a| matches!(a, Atom::Star(_))).count()
    }

    /// Every star taken exactly once: the star-free word `π(1)`.
    pub fn flatten(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for a in &self.0 {
            match a {
                Atom::Letter(k) => out.push(*k),
                Atom::Star(w) => out.extend_from_slice(w),
            }
        }
        out
    }

    fn concat(mut self, other: Pattern) -> Pattern {
        self.0.extend(other.0);
        self
    }

    /// Letters plus star bodies: the length of the expansion at `t = 1`.
    pub fn len_at_one(&self) -> usize {
        self.flatten().len()
    }
}

/// The pattern realizing the element built by `d`; `n` is the arity.
///
/// A composite realizes by concatenation. A generalization of an element
/// realized by `π` is realized by `(π(1))*` followed by `n` copies of `π`.
pub fn derive_pattern(d: &Derivation, n: usize) -> Pattern {
    match d {
        Derivation::Identity => Pattern::empty(),
        Derivation::Input(k) => Pattern(vec![Atom::Letter(*k)]),
        Derivation::Compose(a, b) => derive_pattern(a, n).concat(derive_pattern(b, n)),
        Derivation::Generalize(a) => {
            let pi = derive_pattern(a, n);
            let mut atoms = vec![Atom::Star(pi.flatten())];
            for _ in 0..n {
                atoms.extend(pi.0.iter().cloned());
            }
            Pattern(atoms)
        }
    }
}

/// Repeat every star body exactly `t` times.
pub fn expand_pattern(p: &Pattern, t: u64) -> Result<Trace, WitnessError> {
    if t == 0 {
        return Err(WitnessError::ZeroRepetitions);
    }
    let mut out = Vec::new();
    for a in &p.0 {
        match a {
            Atom::Letter(k) => out.push(*k),
            Atom::Star(w) => {
                for _ in 0..t {
                    out.extend_from_slice(w);
                }
            }
        }
    }
    Ok(out)
}

/// Run the body transitions along `trace` from state `x`.
pub fn replay(body: &[NatMultiPoly], trace: &[usize], x: &[BigUint]) -> Result<Vec<BigUint>, WitnessError> {
    let mut y = x.to_vec();
    for &k in trace {
        let p = body.get(k).ok_or(WitnessError::BadLetter { index: k })?;
        y = p.apply(&y);
    }
    Ok(y)
}

impl fmt::Display for Pattern {
    /// Letters are written `p1`, `p2`, ... (1-based); stars as `( ... )*`;
    /// the empty pattern as `ε`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "ε");
        }
        for (k, a) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            match a {
                Atom::Letter(i) => write!(f, "p{}", i + 1)?,
                Atom::Star(w) => {
                    write!(f, "(")?;
                    for (j, i) in w.iter().enumerate() {
                        if j > 0 {
                            write!(f, " ")?;
                        }
                        write!(f, "p{}", i + 1)?;
                    }
                    write!(f, ")*")?;
                }
            }
        }
        Ok(())
    }
}

fn letter(tok: &str) -> Result<usize, WitnessError> {
    tok.strip_prefix('p')
        .and_then(|d| d.parse::<usize>().ok())
        .filter(|&k| k >= 1)
        .map(|k| k - 1)
        .ok_or_else(|| WitnessError::Parse(format!("bad letter `{tok}`")))
}

impl FromStr for Pattern {
    type Err = WitnessError;

    fn from_str(s: &str) -> Result<Pattern, WitnessError> {
        let s = s.trim();
        if s == "ε" || s.is_empty() {
            return Ok(Pattern::empty());
        }
        let spaced = s.replace('(', " ( ").replace(")*", " )* ");
        let mut atoms = Vec::new();
        let mut star: Option<Vec<usize>> = None;
        for tok in spaced.split_whitespace() {
            match (tok, &mut star) {
                ("(", None) => star = Some(Vec::new()),
                ("(", Some(_)) => return Err(WitnessError::Parse("nested star".into())),
                (")*", Some(_)) => atoms.push(Atom::Star(star.take().unwrap())),
                (")*", None) => return Err(WitnessError::Parse("unbalanced `)*`".into())),
                (t, Some(w)) => w.push(letter(t)?),
                (t, None) => atoms.push(Atom::Letter(letter(t)?)),
            }
        }
        if star.is_some() {
            return Err(WitnessError::Parse("unclosed star".into()));
        }
        Ok(Pattern(atoms))
    }
}
