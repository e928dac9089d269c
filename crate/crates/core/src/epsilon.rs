//! p-adic valuations of local and global ε-constants of abelian covers, and
//! the element E(G, X) with ⟨E, χ⟩ = −v_p(ε(χ)).

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_traits::Zero;
use serde::Serialize;

use crate::arith::{int, Rational};
use crate::cover::CoverDatum;
use crate::error::{Error, Result};
use crate::finite_field::{field, PrimePower};
use crate::padic::{default_lambda_precision, PadicGaussOracle};
use crate::rep::{K0Element, Label, Level};
use crate::stickelberger::{c_from_d, stickelberger_valuation, TameLocalDatum};

/// How v_p(τ(χ)) is obtained for tame places.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GaussOracle {
    /// Σ_i {d p^i / e_t}.
    Stickelberger,
    /// Teichmüller embedding of the actual Gauss sum; optional λ-precision.
    Padic(Option<u32>),
}

impl GaussOracle {
    pub fn name(&self) -> &'static str {
        match self {
            GaussOracle::Stickelberger => "stickelberger",
            GaussOracle::Padic(_) => "padic",
        }
    }
}

/// Whether ⟨E, χ⟩ is matched with ε(χ) or with ε(χ⁻¹).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    Standard,
    Inverted,
}

impl std::fmt::Display for Convention {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Convention::Standard => "standard (E against eps(chi))",
            Convention::Inverted => "inverted (E against eps(chi^-1))",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LocalKind {
    Unramified,
    Tame,
    Wild,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalEpsilonVal {
    pub place: String,
    pub kind: LocalKind,
    pub valuation: Rational,
    /// Residue character index c when the place is tame for χ.
    pub gauss_index: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsilonLedger {
    pub character: Label,
    /// r·(g_Y − 1)
    pub base: Rational,
    pub locals: Vec<LocalEpsilonVal>,
    pub global_valuation: Rational,
}

fn padic_cache() -> &'static Mutex<HashMap<(u64, u32, u64, u32), Rational>> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, u32, u64, u32), Rational>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// v_p(τ(χ_c)) over F_{p^deg} by the p-adic oracle, memoized.
pub fn padic_valuation_cached(p: u64, deg: u32, c: u64, precision: Option<u32>) -> Result<Rational> {
    let n = precision.unwrap_or_else(|| default_lambda_precision(p, deg));
    let key = (p, deg, c, n);
    if let Some(v) = padic_cache().lock().unwrap().get(&key) {
        return Ok(v.clone());
    }
    let ctx = field(p, deg)?;
    let v = PadicGaussOracle::new(&ctx, n)?.gauss_valuation(c)?;
    padic_cache().lock().unwrap().insert(key, v.clone());
    Ok(v)
}

pub fn local_epsilon(
    cover: &CoverDatum,
    place: usize,
    chi: &[u64],
    oracle: GaussOracle,
) -> Result<LocalEpsilonVal> {
    let q = cover
        .places
        .get(place)
        .ok_or_else(|| Error::InvalidInput(format!("no place with index {place}")))?;
    cover.group.check(chi)?;
    let mut out = LocalEpsilonVal {
        place: q.label.clone(),
        kind: LocalKind::Unramified,
        valuation: Rational::zero(),
        gauss_index: None,
    };
    if q.unramified_for(chi) {
        return Ok(out);
    }
    if q.wild_for(chi) {
        let cd = q.conductor(chi, cover.weakly_ramified)?;
        out.kind = LocalKind::Wild;
        out.valuation = int(q.degree as i64 * (cd as i64 - 1));
        return Ok(out);
    }
    let pp = PrimePower::new(cover.p, q.degree)?;
    let datum = TameLocalDatum::new(pp, q.e_t, q.e_w)?;
    let d = q.tame_index(&cover.group, chi);
    let c = c_from_d(&datum, d)?;
    out.kind = LocalKind::Tame;
    out.gauss_index = Some(c);
    out.valuation = match oracle {
        GaussOracle::Stickelberger => stickelberger_valuation(&datum, d)?,
        GaussOracle::Padic(prec) => padic_valuation_cached(cover.p, q.degree, c, prec)?,
    };
    Ok(out)
}

pub fn epsilon_ledger(cover: &CoverDatum, chi: &[u64], oracle: GaussOracle) -> Result<EpsilonLedger> {
    let base = int(cover.r as i64) * (int(cover.g_base as i64) - int(1));
    let locals = (0..cover.places.len())
        .map(|k| local_epsilon(cover, k, chi, oracle))
        .collect::<Result<Vec<_>>>()?;
    let global_valuation = locals.iter().fold(base.clone(), |acc, l| acc + &l.valuation);
    Ok(EpsilonLedger {
        character: chi.to_vec(),
        base,
        locals,
        global_valuation,
    })
}

/// v_p(ε(χ)) = r(g_Y − 1) + Σ over places of the local valuations.
pub fn global_epsilon_valuation(cover: &CoverDatum, chi: &[u64], oracle: GaussOracle) -> Result<Rational> {
    Ok(epsilon_ledger(cover, chi, oracle)?.global_valuation)
}

pub fn e_element(cover: &CoverDatum, oracle: GaussOracle) -> Result<K0Element> {
    e_element_with(cover, oracle, Convention::Standard)
}

pub fn e_element_with(cover: &CoverDatum, oracle: GaussOracle, convention: Convention) -> Result<K0Element> {
    let g = &cover.group;
    let mut e = K0Element::zero(g, cover.p, Level::CharZero);
    for chi in g.characters() {
        let arg = match convention {
            Convention::Standard => chi.clone(),
            Convention::Inverted => g.neg(&chi),
        };
        e.add_term(chi, -global_epsilon_valuation(cover, &arg, oracle)?)?;
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::{artin_schreier_cover, kummer_cover, parse_function, RationalFunctionDivisor};

    fn div(p: u64, f: &str) -> RationalFunctionDivisor {
        RationalFunctionDivisor::from_function(&parse_function(p, f).unwrap()).unwrap()
    }

    #[test]
    fn worked_assemblies() {
        let k = kummer_cover(5, 2, &div(5, "x(x-1)")).unwrap();
        for oracle in [GaussOracle::Stickelberger, GaussOracle::Padic(None)] {
            assert_eq!(global_epsilon_valuation(&k, &[0], oracle).unwrap(), int(-1));
            assert_eq!(global_epsilon_valuation(&k, &[1], oracle).unwrap(), int(0));
        }
        let a = artin_schreier_cover(2, &div(2, "1/x")).unwrap();
        let e = e_element(&a, GaussOracle::Padic(None)).unwrap();
        assert_eq!(e.coefficient(&[0]), int(1));
        assert_eq!(e.coefficient(&[1]), int(0));
        let l = epsilon_ledger(&a, &[1], GaussOracle::Stickelberger).unwrap();
        assert_eq!(l.locals[0].kind, LocalKind::Wild);
        assert_eq!(l.locals[0].valuation, int(1));
    }

    #[test]
    fn quadratic_tame_place() {
        let k = kummer_cover(3, 2, &div(3, "x")).unwrap();
        let l = local_epsilon(&k, 0, &[1], GaussOracle::Padic(None)).unwrap();
        assert_eq!(l.kind, LocalKind::Tame);
        assert_eq!(l.valuation, crate::arith::rat(1, 2));
        assert_eq!(l.gauss_index, Some(1));
    }
}
