//! JSON cover descriptions and the one-line builtin syntax.
//!
//! ```json
//! {"kummer": {"p": 5, "n": 2, "f": [[[0, 1], 1], [[4, 1], 1], ["inf", -2]]}}
//! {"artin_schreier": {"p": 3, "f": "1/x + 1/(x-1)"}}
//! {"datum": {"group": [6], "p": 3, "r": 1, "g_base": 0, "weakly_ramified": true,
//!            "places": [{"label": "a", "degree": 1, "e_t": 2, "e_w": 1,
//!                        "inertia": [[3]], "tame_generator": [3]}]}}
//! ```
//!
//! Polynomials are coefficient arrays, constant term first. Builtins read
//! `kummer:p=5,n=2,f=x(x-1)` and `as:p=3,f=1/x+1/(x-1)`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::divisor::{parse_function, RationalFunctionDivisor};
use super::synthetic::{synthetic_cover, PlaceSpec};
use super::{artin_schreier_cover, kummer_cover, CoverDatum, Origin};
use crate::error::{Error, Result};
use crate::rep::{AbelianGroup, Label};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PlaceKey {
    Finite(Vec<u64>),
    Named(String),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FunctionJson {
    Text(String),
    Divisor(Vec<(PlaceKey, i64)>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KummerJson {
    pub p: u64,
    pub n: u64,
    pub f: FunctionJson,
    #[serde(default)]
    pub constant: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArtinSchreierJson {
    pub p: u64,
    pub f: FunctionJson,
    #[serde(default)]
    pub constant: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlaceJson {
    pub label: String,
    pub degree: u32,
    pub e_t: u64,
    pub e_w: u64,
    pub inertia: Vec<Label>,
    #[serde(default)]
    pub decomposition: Vec<Label>,
    pub tame_generator: Label,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conductors: Option<Vec<(Label, u64)>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatumJson {
    pub group: Vec<u64>,
    pub p: u64,
    #[serde(default = "one")]
    pub r: u32,
    #[serde(default)]
    pub g_base: u64,
    #[serde(default = "yes")]
    pub weakly_ramified: bool,
    #[serde(default)]
    pub places: Vec<PlaceJson>,
}

fn one() -> u32 {
    1
}
fn yes() -> bool {
    true
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "snake_case")]
pub enum CoverJson {
    Kummer(KummerJson),
    ArtinSchreier(ArtinSchreierJson),
    Datum(DatumJson),
}

fn divisor(p: u64, f: &FunctionJson, constant: Option<u64>) -> Result<RationalFunctionDivisor> {
    match f {
        FunctionJson::Text(s) => {
            if constant.is_some() {
                return Err(Error::Parse("`constant` only applies to a divisor list".into()));
            }
            RationalFunctionDivisor::from_function(&parse_function(p, s)?)
        }
        FunctionJson::Divisor(list) => {
            let mut finite = Vec::new();
            let mut inf = None;
            for (key, m) in list {
                match key {
                    PlaceKey::Finite(c) => finite.push((c.iter().map(|x| x % p).collect(), *m)),
                    PlaceKey::Named(s) if s == "inf" => inf = Some(*m),
                    PlaceKey::Named(s) => {
                        return Err(Error::Parse(format!("unknown place name {s:?}; use \"inf\"")))
                    }
                }
            }
            RationalFunctionDivisor::new(p, constant.unwrap_or(1), finite, inf)
        }
    }
}

impl CoverJson {
    pub fn build(&self) -> Result<CoverDatum> {
        match self {
            CoverJson::Kummer(k) => kummer_cover(k.p, k.n, &divisor(k.p, &k.f, k.constant)?),
            CoverJson::ArtinSchreier(a) => artin_schreier_cover(a.p, &divisor(a.p, &a.f, a.constant)?),
            CoverJson::Datum(d) => {
                let group = AbelianGroup::new(d.group.clone())?;
                let places = d
                    .places
                    .iter()
                    .map(|q| PlaceSpec {
                        label: q.label.clone(),
                        degree: q.degree,
                        e_t: q.e_t,
                        e_w: q.e_w,
                        inertia: q.inertia.clone(),
                        decomposition: q.decomposition.clone(),
                        tame_generator: q.tame_generator.clone(),
                        conductors: q
                            .conductors
                            .as_ref()
                            .map(|v| v.iter().cloned().collect::<BTreeMap<_, _>>()),
                    })
                    .collect();
                synthetic_cover(&group, d.p, d.r, d.g_base, places, d.weakly_ramified)
            }
        }
    }
}

/// Parses a JSON description and builds the cover. Syntax errors carry
/// line and column.
pub fn cover_from_json(text: &str) -> Result<CoverDatum> {
    let parsed: CoverJson = serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("line {} column {}: {e}", e.line(), e.column())))?;
    parsed.build()
}

/// `kummer:p=..,n=..,f=..` or `as:p=..,f=..`.
pub fn parse_builtin(spec: &str) -> Result<CoverDatum> {
    let (kind, rest) = spec
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("{spec:?}: expected kind:key=value,...")))?;
    let mut fields: BTreeMap<&str, &str> = BTreeMap::new();
    for part in rest.split(',') {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("{part:?}: expected key=value")))?;
        if fields.insert(k.trim(), v.trim()).is_some() {
            return Err(Error::Parse(format!("key {k:?} given twice")));
        }
    }
    let num = |k: &str| -> Result<u64> {
        let v = fields
            .get(k)
            .ok_or_else(|| Error::Parse(format!("missing {k}=")))?;
        v.parse()
            .map_err(|_| Error::Parse(format!("{k}={v} is not a nonnegative integer")))
    };
    let allowed: &[&str] = match kind.trim() {
        "kummer" => &["p", "n", "f"],
        "as" | "artin_schreier" => &["p", "f"],
        other => return Err(Error::Parse(format!("unknown builtin kind {other:?}"))),
    };
    if let Some(k) = fields.keys().find(|k| !allowed.contains(k)) {
        return Err(Error::Parse(format!("unknown key {k:?} for {kind}")));
    }
    let p = num("p")?;
    let f = fields.get("f").ok_or_else(|| Error::Parse("missing f=".into()))?;
    if !crate::arith::is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    let d = RationalFunctionDivisor::from_function(&parse_function(p, f)?)?;
    if kind.trim() == "kummer" {
        kummer_cover(p, num("n")?, &d)
    } else {
        artin_schreier_cover(p, &d)
    }
}

/// The datum form of any cover; constructed covers lose their origin.
pub fn datum_json(cover: &CoverDatum) -> CoverJson {
    let places = cover
        .places
        .iter()
        .map(|q| PlaceJson {
            label: q.label.clone(),
            degree: q.degree,
            e_t: q.e_t,
            e_w: q.e_w,
            inertia: q.inertia.generators().to_vec(),
            decomposition: q.decomposition.generators().to_vec(),
            tame_generator: q.tame_generator.clone(),
            conductors: q
                .conductors
                .as_ref()
                .map(|m| m.iter().map(|(k, v)| (k.clone(), *v)).collect()),
        })
        .collect();
    CoverJson::Datum(DatumJson {
        group: cover.group.invariant_factors().to_vec(),
        p: cover.p,
        r: cover.r,
        g_base: cover.g_base,
        weakly_ramified: cover.weakly_ramified,
        places,
    })
}

/// Reads either a builtin spec or a JSON document.
pub fn read_cover(text: &str) -> Result<CoverDatum> {
    let t = text.trim_start();
    if t.starts_with('{') {
        cover_from_json(t)
    } else {
        parse_builtin(t.trim())
    }
}

impl CoverDatum {
    pub fn is_synthetic(&self) -> bool {
        matches!(self.origin, Origin::Synthetic)
    }
}
