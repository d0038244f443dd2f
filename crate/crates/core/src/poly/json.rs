//! JSON schema for polynomials: an entry is either an array of terms
//! `{"coeff": "1" | "w", "exps": {"x1": 2, "tau": 1}}`, the string
//! `"SUPERPOLY"`, or a polynomial in text form.

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use super::coeff::Coeff;
use super::monomial::Monomial;
use super::multi::{Entry, MultiPoly};
use super::polynomial::Poly;
use super::text::parse_entry;
use super::PolyError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub exps: IndexMap<String, u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EntryJson {
    Terms(Vec<TermJson>),
    Text(String),
}

pub fn term_to_json(m: &Monomial, c: Coeff) -> TermJson {
    let mut exps: IndexMap<String, u32> = m.exps().map(|(v, e)| (format!("x{v}"), e)).collect();
    if m.tau_exp() > 0 {
        exps.insert("tau".to_string(), m.tau_exp());
    }
    TermJson {
        coeff: match c {
            Coeff::One => "1",
            Coeff::Many => "w",
        }
        .to_string(),
        exps,
    }
}

pub fn entry_to_json(e: &Entry) -> EntryJson {
    match e {
        Entry::SuperPoly => EntryJson::Text("SUPERPOLY".to_string()),
        Entry::Bound(p) => EntryJson::Terms(p.terms().iter().map(|(m, c)| term_to_json(m, *c)).collect()),
    }
}

fn term_from_json(t: &TermJson) -> Result<(Monomial, Coeff), PolyError> {
    let bad = |msg: String| PolyError::Json(msg);
    let coeff = match t.coeff.as_str() {
        "1" => Coeff::One,
        "w" => Coeff::Many,
        other => return Err(bad(format!("unknown coefficient `{other}`"))),
    };
    let mut tau = 0;
    let mut vars = Vec::new();
    for (k, &e) in &t.exps {
        if k == "tau" {
            tau += e;
        } else {
            let v: usize = k
                .strip_prefix('x')
                .and_then(|d| d.parse().ok())
                .filter(|&v| v >= 1)
                .ok_or_else(|| bad(format!("unknown variable `{k}`")))?;
            vars.push((v, e));
        }
    }
    Ok((Monomial::from_exps(vars, tau), coeff))
}

pub fn entry_from_json(e: &EntryJson) -> Result<Entry, PolyError> {
    match e {
        EntryJson::Text(s) => parse_entry(s),
        EntryJson::Terms(ts) => {
            let terms = ts.iter().map(term_from_json).collect::<Result<Vec<_>, _>>()?;
            Ok(Entry::Bound(Poly::from_terms(terms)))
        }
    }
}

pub fn mp_to_json(p: &MultiPoly) -> Vec<EntryJson> {
    p.entries().iter().map(entry_to_json).collect()
}

pub fn mp_from_json(es: &[EntryJson]) -> Result<MultiPoly, PolyError> {
    es.iter()
        .map(entry_from_json)
        .collect::<Result<Vec<_>, _>>()
        .map(MultiPoly::new)
}
