use std::collections::HashMap;
use std::sync::Arc;

use crate::poly::MultiPoly;

use super::ops::generalize_unchecked;
use super::SdlError;

/// How a solver element was built from the loop body.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Derivation {
    /// The empty trace.
    Identity,
    /// Body transition `k` (0-based).
    Input(usize),
    /// Run `first`, then `second`.
    Compose(Arc<Derivation>, Arc<Derivation>),
    Generalize(Arc<Derivation>),
}

impl Derivation {
    pub fn compose(first: &Arc<Derivation>, second: &Arc<Derivation>) -> Arc<Derivation> {
        match (&**first, &**second) {
            (Derivation::Identity, _) => second.clone(),
            (_, Derivation::Identity) => first.clone(),
            _ => Arc::new(Derivation::Compose(first.clone(), second.clone())),
        }
    }

    /// Rebuild the transition over `body`. Shared subtrees are evaluated once.
    pub fn replay(self: &Arc<Self>, body: &[MultiPoly], n: usize) -> Result<MultiPoly, SdlError> {
        let mut memo = HashMap::new();
        replay_memo(self, body, n, &mut memo)
    }

    pub fn generalization_count(&self) -> usize {
        match self {
            Derivation::Identity | Derivation::Input(_) => 0,
            Derivation::Compose(a, b) => a.generalization_count() + b.generalization_count(),
            Derivation::Generalize(a) => 1 + a.generalization_count(),
        }
    }
}

fn replay_memo(
    d: &Arc<Derivation>,
    body: &[MultiPoly],
    n: usize,
    memo: &mut HashMap<*const Derivation, MultiPoly>,
) -> Result<MultiPoly, SdlError> {
    let key = Arc::as_ptr(d);
    if let Some(p) = memo.get(&key) {
        return Ok(p.clone());
    }
    let p = match &**d {
        Derivation::Identity => MultiPoly::identity(n),
        Derivation::Input(k) => body
            .get(*k)
            .cloned()
            .ok_or(SdlError::BadDerivation { index: *k })?,
        Derivation::Compose(a, b) => {
            let first = replay_memo(a, body, n, memo)?;
            let second = replay_memo(b, body, n, memo)?;
            second.compose(&first)?
        }
        Derivation::Generalize(a) => generalize_unchecked(&replay_memo(a, body, n, memo)?)?,
    };
    memo.insert(key, p.clone());
    Ok(p)
}
