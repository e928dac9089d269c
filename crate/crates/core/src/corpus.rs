//! Fixed test corpus of constructed covers, with genera and Riemann–Roch
//! totals worked out by hand from Riemann–Hurwitz.
//!
//! `rr_wild` is deg D̄^w + 1 − g_X: 1 − g for Kummer covers (D^w = 0) and
//! 1 − g − Σ deg(pole) for Artin–Schreier covers.

use crate::cover::{parse_builtin, CoverDatum};
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CorpusEntry {
    pub spec: &'static str,
    pub genus: u64,
    pub rr_wild: i64,
}

const fn entry(spec: &'static str, genus: u64, rr_wild: i64) -> CorpusEntry {
    CorpusEntry { spec, genus, rr_wild }
}

pub const KUMMER: &[CorpusEntry] = &[
    entry("kummer:p=5,n=2,f=x(x-1)", 0, 1),
    entry("kummer:p=5,n=2,f=x^2+2", 0, 1),
    entry("kummer:p=5,n=4,f=x", 0, 1),
    entry("kummer:p=5,n=4,f=x(x^2+2)", 3, -2),
    entry("kummer:p=7,n=3,f=x", 0, 1),
    entry("kummer:p=7,n=3,f=x(x-1)^2", 0, 1),
    entry("kummer:p=7,n=6,f=x^2(x-1)^3", 1, 0),
    entry("kummer:p=7,n=2,f=x^3+3", 1, 0),
    entry("kummer:p=11,n=5,f=x(x+1)", 2, -1),
    entry("kummer:p=11,n=2,f=x(x-1)(x-2)", 1, 0),
    entry("kummer:p=13,n=6,f=x^2+2", 2, -1),
    entry("kummer:p=13,n=4,f=x(x-2)^3", 0, 1),
    entry("kummer:p=13,n=3,f=(x^2+2)/x", 2, -1),
    entry("kummer:p=3,n=2,f=x^2+1", 0, 1),
];

pub const ARTIN_SCHREIER: &[CorpusEntry] = &[
    entry("as:p=2,f=1/x", 0, 0),
    entry("as:p=2,f=1/x+1/(x+1)", 1, -2),
    entry("as:p=2,f=1/(x^2+x+1)", 1, -2),
    entry("as:p=2,f=x", 0, 0),
    entry("as:p=2,f=x+1/x", 1, -2),
    entry("as:p=3,f=1/x", 0, 0),
    entry("as:p=3,f=1/x+1/(x-1)", 2, -3),
    entry("as:p=3,f=x", 0, 0),
    entry("as:p=3,f=1/(x^2+1)", 2, -3),
    entry("as:p=3,f=x/(x^2+1)+1/x", 4, -6),
    entry("as:p=5,f=1/x", 0, 0),
    entry("as:p=5,f=1/(x^2+2)", 4, -5),
    entry("as:p=5,f=x+1/x+1/(x-1)", 8, -10),
];

/// Cyclic Kummer covers with n = 4 and n = 6, for restriction to every subgroup.
pub const CHAINS: &[&str] = &[
    "kummer:p=5,n=4,f=x",
    "kummer:p=5,n=4,f=x(x^2+2)",
    "kummer:p=13,n=4,f=x(x-2)^3",
    "kummer:p=7,n=6,f=x^2(x-1)^3",
    "kummer:p=13,n=6,f=x^2+2",
    "kummer:p=7,n=6,f=x(x-1)",
];

pub fn build(entries: &[CorpusEntry]) -> Result<Vec<(CorpusEntry, CoverDatum)>> {
    entries
        .iter()
        .map(|e| Ok((*e, parse_builtin(e.spec)?)))
        .collect()
}

/// Kummer entries followed by Artin–Schreier entries.
pub fn full() -> Result<Vec<(CorpusEntry, CoverDatum)>> {
    let mut out = build(KUMMER)?;
    out.extend(build(ARTIN_SCHREIER)?);
    Ok(out)
}

pub fn chains() -> Result<Vec<CoverDatum>> {
    CHAINS.iter().map(|s| parse_builtin(s)).collect()
}
