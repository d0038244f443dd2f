use std::fmt::Debug;
use std::hash::Hash;

/// Coefficient semiring used by [`Polynomial`](super::Polynomial).
///
/// Zero is never stored: a monomial that is absent has coefficient zero.
pub trait Semiring: Copy + Eq + Ord + Hash + Debug + Send + Sync + 'static {
    fn one() -> Self;
    fn add(self, other: Self) -> Self;
    fn mul(self, other: Self) -> Self;
    fn is_zero(self) -> bool;
    /// Value used when the polynomial is evaluated as an ordinary polynomial.
    fn weight(self) -> u64;
}

/// Saturated coefficient: exactly one, or "two or more" (written `w`).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Coeff {
    One,
    Many,
}

impl Coeff {
    /// Saturate an exact positive count.
    pub fn from_count(count: u64) -> Option<Coeff> {
        match count {
            0 => None,
            1 => Some(Coeff::One),
            _ => Some(Coeff::Many),
        }
    }
}

impl Semiring for Coeff {
    fn one() -> Self {
        Coeff::One
    }

    fn add(self, _other: Self) -> Self {
        Coeff::Many
    }

    fn mul(self, other: Self) -> Self {
        match (self, other) {
            (Coeff::One, Coeff::One) => Coeff::One,
            _ => Coeff::Many,
        }
    }

    fn is_zero(self) -> bool {
        false
    }

    // gamma concretization: every coefficient reads as one
    fn weight(self) -> u64 {
        1
    }
}

impl Semiring for u64 {
    fn one() -> Self {
        1
    }

    fn add(self, other: Self) -> Self {
        self.saturating_add(other)
    }

    fn mul(self, other: Self) -> Self {
        self.saturating_mul(other)
    }

    fn is_zero(self) -> bool {
        self == 0
    }

    fn weight(self) -> u64 {
        self
    }
}
