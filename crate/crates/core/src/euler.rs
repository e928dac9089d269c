//! Equivariant Euler characteristics of invertible sheaves O(D̄) on X̄.
//!
//! Points are counted over F̄_p with degrees over F_p: above a place q of
//! degree deg there are deg points of Ȳ and deg·n/e points of X̄.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::arith::{int, is_integer, mod_inv, mod_pow, rat, Rational};
use crate::cover::{CoverDatum, PlaceDatum};
use crate::error::{Error, Result};
use crate::rep::{cartan_map, decomposition_map, e_map, induce, pairing, K0Element, Level};

/// n_q for the ramified places (by label), constant on fibres; unlisted
/// places get 0. `unramified` adds (degree, n) pairs at places of Y that are
/// unramified in X.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DivisorSpec {
    pub coefficients: BTreeMap<String, i64>,
    pub unramified: Vec<(u32, i64)>,
}

impl DivisorSpec {
    pub fn zero() -> Self {
        Self::default()
    }

    /// D^w: −1 at every wildly ramified point.
    pub fn wild(cover: &CoverDatum) -> Self {
        let coefficients = cover
            .places
            .iter()
            .filter(|q| q.is_wild())
            .map(|q| (q.label.clone(), -1))
            .collect();
        DivisorSpec {
            coefficients,
            unramified: Vec::new(),
        }
    }

    pub fn with(mut self, label: &str, n: i64) -> Self {
        self.coefficients.insert(label.to_string(), n);
        self
    }

    pub fn with_unramified(mut self, degree: u32, n: i64) -> Self {
        self.unramified.push((degree, n));
        self
    }

    pub fn value(&self, label: &str) -> i64 {
        self.coefficients.get(label).copied().unwrap_or(0)
    }

    pub fn validate(&self, cover: &CoverDatum) -> Result<()> {
        for label in self.coefficients.keys() {
            if !cover.places.iter().any(|q| &q.label == label) {
                return Err(Error::InvalidDivisor(format!("no ramified place labelled {label}")));
            }
        }
        for &(deg, _) in &self.unramified {
            if deg == 0 || deg % cover.r != 0 {
                return Err(Error::InvalidDivisor(format!(
                    "unramified place degree {deg} is not a positive multiple of r = {}",
                    cover.r
                )));
            }
        }
        for q in &cover.places {
            lm_decompose(q, self.value(&q.label))?;
        }
        Ok(())
    }

    /// deg D̄ over F̄_p.
    pub fn degree_bar(&self, cover: &CoverDatum) -> i64 {
        let n = cover.n() as i64;
        let ramified: i64 = cover
            .places
            .iter()
            .map(|q| n * q.degree as i64 / q.e() as i64 * self.value(&q.label))
            .sum();
        let extra: i64 = self.unramified.iter().map(|&(d, k)| n * d as i64 * k).sum();
        ramified + extra
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LMParts {
    pub l: u64,
    pub m: i64,
}

/// n = (e_w − 1) + (l + m·e_t)·e_w with 0 ≤ l < e_t.
pub fn lm_decompose(place: &PlaceDatum, n: i64) -> Result<LMParts> {
    lm_split(place.e_t, place.e_w, n)
        .ok_or_else(|| Error::InvalidDivisor(format!(
            "n = {n} at {} is not ≡ −1 mod e_w = {}",
            place.label, place.e_w
        )))
}

pub fn lm_split(e_t: u64, e_w: u64, n: i64) -> Option<LMParts> {
    let ew = e_w as i64;
    if (n + 1).rem_euclid(ew) != 0 {
        return None;
    }
    let k = (n + 1) / ew - 1;
    let l = k.rem_euclid(e_t as i64);
    Some(LMParts {
        l: l as u64,
        m: (k - l) / e_t as i64,
    })
}

/// The representative of d·q^i/e mod Z in [−l/e, 1 − l/e).
pub fn g_term(l: u64, e: u64, d: u64, q: u64, i: u32) -> Result<Rational> {
    if e == 0 || l >= e || d >= e {
        return Err(Error::Domain(format!("g_term needs 0 ≤ l, d < e (l={l}, d={d}, e={e})")));
    }
    let num = (d as u128 * mod_pow(q, i as u64, e) as u128 % e as u128) as u64;
    let frac = rat(num as i64, e as i64);
    if num + l >= e {
        Ok(frac - int(1))
    } else {
        Ok(frac)
    }
}

fn require_weak(cover: &CoverDatum) -> Result<()> {
    if !cover.weakly_ramified {
        return Err(Error::Unsupported(
            "the structure formula needs a weakly ramified datum".into(),
        ));
    }
    Ok(())
}

/// r(1 − g_Y) + Σ_q deg(q)·m_q, the coefficient of the regular class.
fn regular_coefficient(cover: &CoverDatum, d: &DivisorSpec) -> Result<Rational> {
    d.validate(cover)?;
    let mut c = int(cover.r as i64) * (int(1) - int(cover.g_base as i64));
    for q in &cover.places {
        let lm = lm_decompose(q, d.value(&q.label))?;
        c += int(q.degree as i64 * lm.m);
    }
    for &(deg, n) in &d.unramified {
        c += int(deg as i64 * n);
    }
    Ok(c)
}

pub fn multiplicity_closed(cover: &CoverDatum, d: &DivisorSpec, chi: &[u64]) -> Result<Rational> {
    require_weak(cover)?;
    cover.group.check(chi)?;
    let mut total = regular_coefficient(cover, d)?;
    for q in cover.places.iter().filter(|q| q.is_tame()) {
        let l = lm_decompose(q, d.value(&q.label))?.l;
        let dq = q.tame_index(&cover.group, chi);
        for i in 0..q.degree {
            total -= g_term(l, q.e_t, dq, cover.p, i)?;
        }
    }
    Ok(total)
}

/// Same multiplicity from the point-by-point form: every one of the deg·f
/// embeddings of the residue field of q̃ is visited.
pub fn multiplicity_direct(cover: &CoverDatum, d: &DivisorSpec, chi: &[u64]) -> Result<Rational> {
    require_weak(cover)?;
    cover.group.check(chi)?;
    let mut total = regular_coefficient(cover, d)?;
    for q in cover.places.iter().filter(|q| q.is_tame()) {
        let l = lm_decompose(q, d.value(&q.label))?.l;
        let e = q.e_t;
        let f = q.f();
        let dq = q.tame_index(&cover.group, chi);
        let pinv = mod_inv(cover.p % e, e).expect("p is prime to e_t");
        let embeddings = q.degree as u64 * f;
        let mut weighted = 0u64;
        let mut count = 0u64;
        for j in 0..embeddings {
            weighted += dq * mod_pow(pinv, j, e) % e;
            let pj = mod_pow(cover.p, j, e);
            count += (1..=l)
                .filter(|&k| (e - k * pj % e) % e == dq)
                .count() as u64;
        }
        total -= Rational::new((q.e_w * weighted).into(), (q.e() * f).into());
        total += Rational::new(count.into(), f.into());
    }
    Ok(total)
}

/// The structure element without the integrality check.
pub fn psi_structure_rational(cover: &CoverDatum, d: &DivisorSpec) -> Result<K0Element> {
    require_weak(cover)?;
    let g = &cover.group;
    let p = cover.p;
    let mut psi = K0Element::constant(g, p, Level::ModularProjectives, regular_coefficient(cover, d)?);
    for q in cover.places.iter().filter(|q| q.is_tame()) {
        let l = lm_decompose(q, d.value(&q.label))?.l;
        let inertia = q.inertia.structure();
        let omega = q.cotangent_label();
        let e = q.e_t;
        let cov = |k: i64| -> Result<K0Element> {
            let lab = inertia.scalar(k, &omega);
            induce(&K0Element::basis_element(inertia, p, Level::ModularProjectives, lab)?, &q.inertia)
        };
        for j in 0..q.degree {
            let pj = mod_pow(p, j as u64, e) as i64;
            for k in 1..e {
                psi = psi.add(&cov(pj * k as i64)?.scale(&rat(-(k as i64), e as i64)))?;
            }
            for k in 1..=l {
                psi = psi.add(&cov(-pj * k as i64)?)?;
            }
        }
    }
    Ok(psi)
}

/// ψ(G, X̄, D̄) at the projective level.
pub fn psi_structure(cover: &CoverDatum, d: &DivisorSpec) -> Result<K0Element> {
    let psi = psi_structure_rational(cover, d)?;
    if let Some((l, c)) = psi.terms().find(|(_, c)| !is_integer(c)) {
        return Err(Error::Integrality(format!(
            "ψ has coefficient {} at [{}]",
            crate::arith::fmt_rat(c),
            crate::rep::label_string(l)
        )));
    }
    Ok(psi)
}

/// ⟨e(ψ), χ⟩ through the cde maps.
pub fn multiplicity_pairing(cover: &CoverDatum, d: &DivisorSpec, chi: &[u64]) -> Result<Rational> {
    let psi = psi_structure(cover, d)?;
    let chi = K0Element::basis_element(&cover.group, cover.p, Level::CharZero, chi.to_vec())?;
    pairing(&e_map(&psi)?, &chi)
}

/// d(Ind_I^G 1) for the inertia group of a wild place.
fn wild_correction(cover: &CoverDatum, q: &PlaceDatum) -> Result<K0Element> {
    let s = q.inertia.structure();
    let one = K0Element::basis_element(s, cover.p, Level::CharZero, s.identity())?;
    decomposition_map(&induce(&one, &q.inertia)?)
}

/// χ(G, X̄, O_X̄) = c(ψ(G, X̄, D̄^w)) + Σ_{wild q} deg(q)·d(Ind_{I_q}^G 1).
pub fn euler_char_structure_sheaf(cover: &CoverDatum) -> Result<K0Element> {
    let psi = psi_structure(cover, &DivisorSpec::wild(cover))?;
    let mut out = cartan_map(&psi)?;
    for q in cover.places.iter().filter(|q| q.is_wild()) {
        out = out.add(&wild_correction(cover, q)?.scale(&int(q.degree as i64)))?;
    }
    Ok(out)
}

/// χ(G, X̄, O_X̄) read off the tame quotient X → X/G' with G' the
/// prime-to-p part of G. Needs only g_X and the tame indices, so it applies
/// to data that are not weakly ramified once conductors are given.
pub fn euler_char_prime_to_p(cover: &CoverDatum) -> Result<K0Element> {
    let g = &cover.group;
    let p = cover.p;
    let sylow = g.sylow_order(p);
    let g_prime = g.order() / sylow;
    let n = cover.n() as i64;
    let mut ram = Rational::zero();
    for q in &cover.places {
        ram += rat(n * q.degree as i64 * (q.e_t as i64 - 1), 2 * q.e() as i64);
    }
    let base = (cover.euler_x()? + ram) / int(g_prime as i64);
    let mut out = K0Element::zero(g, p, Level::ModularModules);
    for theta in g.modular_labels(p) {
        let mut c = base.clone();
        for q in cover.places.iter().filter(|q| q.e_t > 1) {
            let dq = q.tame_index(g, &theta);
            let weight = rat((sylow / q.e_w) as i64, 1);
            for i in 0..q.degree {
                let k = dq * mod_pow(p, i as u64, q.e_t) % q.e_t;
                c -= &weight * rat(k as i64, q.e_t as i64);
            }
        }
        out.add_term(theta, c)?;
    }
    Ok(out)
}

/// deg D̄ + r(1 − g_X), the non-equivariant Euler characteristic.
pub fn riemann_roch_total(cover: &CoverDatum, d: &DivisorSpec) -> Result<Rational> {
    Ok(int(d.degree_bar(cover)) + cover.euler_x()?)
}

/// Σ_χ of the closed-form multiplicities.
pub fn character_sum(cover: &CoverDatum, d: &DivisorSpec) -> Result<Rational> {
    cover
        .group
        .characters()
        .iter()
        .try_fold(Rational::zero(), |acc, chi| Ok(acc + multiplicity_closed(cover, d, chi)?))
}

impl DivisorSpec {
    /// A one-line rendering such as "x:2, inf:-1, u1:3".
    pub fn describe(&self) -> String {
        let mut parts: Vec<String> = self
            .coefficients
            .iter()
            .filter(|(_, &n)| n != 0)
            .map(|(k, n)| format!("{k}:{n}"))
            .collect();
        parts.extend(self.unramified.iter().map(|(d, n)| format!("u{d}:{n}")));
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(", ")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::{artin_schreier_cover, kummer_cover, parse_function, synthetic_cover, RationalFunctionDivisor};
    use crate::rep::AbelianGroup;

    fn div(p: u64, f: &str) -> RationalFunctionDivisor {
        RationalFunctionDivisor::from_function(&parse_function(p, f).unwrap()).unwrap()
    }

    #[test]
    fn lm_examples() {
        assert_eq!(lm_split(1, 1, 5), Some(LMParts { l: 0, m: 5 }));
        assert_eq!(lm_split(4, 1, -1), Some(LMParts { l: 3, m: -1 }));
        assert_eq!(lm_split(1, 3, -1), Some(LMParts { l: 0, m: -1 }));
        assert_eq!(lm_split(1, 3, 0), None);
        for e_t in 1..6u64 {
            for e_w in [1u64, 2, 3, 4] {
                for n in -20..20i64 {
                    if let Some(LMParts { l, m }) = lm_split(e_t, e_w, n) {
                        assert_eq!(n, (e_w as i64 - 1) + (l as i64 + m * e_t as i64) * e_w as i64);
                        assert!(l < e_t);
                    }
                }
            }
        }
    }

    #[test]
    fn g_term_examples() {
        assert_eq!(g_term(1, 4, 3, 5, 0).unwrap(), rat(-1, 4));
        assert_eq!(g_term(0, 4, 3, 5, 0).unwrap(), rat(3, 4));
        assert_eq!(g_term(3, 4, 0, 5, 2).unwrap(), int(0));
        assert!(g_term(4, 4, 0, 5, 0).is_err());
    }

    #[test]
    fn kummer_worked_example() {
        let c = kummer_cover(5, 2, &div(5, "x(x-1)")).unwrap();
        let d = DivisorSpec::zero();
        assert_eq!(multiplicity_closed(&c, &d, &[1]).unwrap(), int(0));
        assert_eq!(multiplicity_closed(&c, &d, &[0]).unwrap(), int(1));
        for chi in c.group.characters() {
            let closed = multiplicity_closed(&c, &d, &chi).unwrap();
            assert_eq!(multiplicity_direct(&c, &d, &chi).unwrap(), closed);
            assert_eq!(multiplicity_pairing(&c, &d, &chi).unwrap(), closed);
        }
        assert_eq!(character_sum(&c, &d).unwrap(), riemann_roch_total(&c, &d).unwrap());
    }

    #[test]
    fn artin_schreier_worked_example() {
        let c = artin_schreier_cover(2, &div(2, "1/x")).unwrap();
        let dw = DivisorSpec::wild(&c);
        for chi in c.group.characters() {
            assert_eq!(multiplicity_closed(&c, &dw, &chi).unwrap(), int(0));
        }
        let a = euler_char_structure_sheaf(&c).unwrap();
        let b = euler_char_prime_to_p(&c).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.coefficient(&[0]), int(1));
    }

    #[test]
    fn unramified_datum() {
        let g = AbelianGroup::cyclic(3);
        let c = synthetic_cover(&g, 2, 2, 1, vec![], true).unwrap();
        let psi = psi_structure(&c, &DivisorSpec::zero()).unwrap();
        assert!(psi.is_zero());
        let c = synthetic_cover(&g, 2, 2, 0, vec![], true).unwrap();
        let psi = psi_structure(&c, &DivisorSpec::zero().with_unramified(2, 1)).unwrap();
        assert!(psi.terms().all(|(_, v)| *v == int(4)));
    }

    #[test]
    fn divisor_congruence() {
        let c = artin_schreier_cover(3, &div(3, "1/x")).unwrap();
        let bad = DivisorSpec::zero().with("x", 0);
        assert!(matches!(psi_structure(&c, &bad), Err(Error::InvalidDivisor(_))));
        let good = DivisorSpec::zero().with("x", 2);
        assert!(psi_structure(&c, &good).is_ok());
    }
}
