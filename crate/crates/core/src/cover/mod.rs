//! Ramification data of abelian covers X → Y of curves over F_p.
//!
//! A place q of Y carries its degree over F_p, the inertia group I, the
//! decomposition group, the wild inertia group G_1 and a tame generator
//! σ_q ∈ I of order e_t. σ_q is the element acting on the cotangent space at a
//! fixed point above q by the standard root of unity ζ_{e_t}; the tame index of
//! a character is then d_q(χ) = e_t · arg χ(σ_q) / 2π.
//!
//! Roots of unity in F̄_p are matched with complex ones by sending exp(2πi/N)
//! to g^{(p^k−1)/N}, g the fixed generator of F_{p^k}; for N | p−1 this is a
//! power of the smallest primitive root mod p.

pub mod artin_schreier;
pub mod divisor;
pub mod json;
pub mod kummer;
pub mod synthetic;

use std::collections::BTreeMap;

use crate::arith::{int, is_integer, is_p_power, is_prime, mod_pow, Rational};
use crate::error::{validation, Error, Result};
use crate::rep::{AbelianGroup, Label, Subgroup};

pub use artin_schreier::artin_schreier_cover;
pub use divisor::{parse_function, Place, RationalFunctionDivisor};
pub use json::{cover_from_json, datum_json, parse_builtin, read_cover, CoverJson};
pub use kummer::kummer_cover;
pub use synthetic::{random_weak_datum, synthetic_cover, PlaceSpec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Origin {
    Kummer { n: u64, f: RationalFunctionDivisor },
    ArtinSchreier { f: RationalFunctionDivisor },
    Synthetic,
    /// X → X/H for a subgroup of a constructed cover.
    Quotient,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaceDatum {
    pub label: String,
    pub degree: u32,
    pub e_t: u64,
    pub e_w: u64,
    pub inertia: Subgroup,
    pub decomposition: Subgroup,
    pub wild: Subgroup,
    pub tame_generator: Label,
    /// Explicit conductors; `None` means the 0/1/2 rule of weak ramification.
    pub conductors: Option<BTreeMap<Label, u64>>,
}

impl PlaceDatum {
    pub fn e(&self) -> u64 {
        self.e_t * self.e_w
    }
    /// Residue degree f_q = [G_q̃ : I].
    pub fn f(&self) -> u64 {
        self.decomposition.order() / self.inertia.order()
    }
    pub fn is_tame(&self) -> bool {
        self.e_t > 1 && self.e_w == 1
    }
    pub fn is_wild(&self) -> bool {
        self.e_w > 1
    }
    /// θ_q(χ) ∈ {0, …, e_t − 1}.
    pub fn tame_index(&self, group: &AbelianGroup, chi: &[u64]) -> u64 {
        let k = group.char_value(chi, &self.tame_generator);
        k * self.e_t / group.exponent()
    }
    pub fn unramified_for(&self, chi: &[u64]) -> bool {
        trivial_on(chi, &self.inertia)
    }
    pub fn wild_for(&self, chi: &[u64]) -> bool {
        !trivial_on(chi, &self.wild)
    }
    pub fn conductor(&self, chi: &[u64], weakly_ramified: bool) -> Result<u64> {
        if let Some(map) = &self.conductors {
            return map.get(chi).copied().ok_or_else(|| {
                Error::IncompleteDatum(format!(
                    "place {} has no conductor for character {}",
                    self.label,
                    crate::rep::label_string(chi)
                ))
            });
        }
        if self.unramified_for(chi) {
            Ok(0)
        } else if !self.wild_for(chi) {
            Ok(1)
        } else if weakly_ramified {
            Ok(2)
        } else {
            Err(Error::IncompleteDatum(format!(
                "place {} is wild for {} and no conductor was supplied",
                self.label,
                crate::rep::label_string(chi)
            )))
        }
    }
    /// Same place with σ_q replaced by σ_q^{p^j}, so every d_q is multiplied by p^j.
    pub fn twisted(&self, group: &AbelianGroup, p: u64, j: u32) -> PlaceDatum {
        let k = if self.e_t > 1 {
            mod_pow(p, j as u64, self.e_t)
        } else {
            1
        };
        PlaceDatum {
            tame_generator: group.scalar(k as i64, &self.tame_generator),
            ..self.clone()
        }
    }
    /// The label, inside `inertia.structure()`, of the complex character ω̃ of
    /// I with ω̃(σ_q) = exp(2πi/e_t) and ω̃ trivial on G_1.
    pub fn cotangent_label(&self) -> Label {
        let s = self.inertia.structure();
        let sigma = self.inertia.coordinates(&self.tame_generator).unwrap().clone();
        let wild: Vec<Label> = self
            .wild
            .elements()
            .iter()
            .map(|w| self.inertia.coordinates(w).unwrap().clone())
            .collect();
        let target = if self.e_t > 1 { s.exponent() / self.e_t } else { 0 };
        s.characters()
            .into_iter()
            .find(|a| {
                s.char_value(a, &sigma) == target % s.exponent().max(1)
                    && wild.iter().all(|w| s.char_value(a, w) == 0)
            })
            .expect("the tame quotient of inertia is cyclic of order e_t")
    }
}

fn trivial_on(chi: &[u64], h: &Subgroup) -> bool {
    let g = h.ambient();
    h.basis().iter().all(|b| g.char_value(chi, b) == 0)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverDatum {
    pub group: AbelianGroup,
    pub p: u64,
    pub r: u32,
    pub g_base: u64,
    pub places: Vec<PlaceDatum>,
    pub weakly_ramified: bool,
    pub origin: Origin,
    pub name: String,
}

impl CoverDatum {
    pub fn n(&self) -> u64 {
        self.group.order()
    }

    /// Checks every structural invariant; failures name the invariant.
    pub fn validate(&self) -> Result<()> {
        let p = self.p;
        if !is_prime(p) {
            return Err(validation("prime", format!("{p} is not prime")));
        }
        if self.r == 0 {
            return Err(validation("constant-degree", "r must be positive"));
        }
        for q in &self.places {
            let at = |what: &str| format!("place {}: {what}", q.label);
            for (name, h) in [
                ("inertia", &q.inertia),
                ("decomposition", &q.decomposition),
                ("wild", &q.wild),
            ] {
                if h.ambient() != &self.group {
                    return Err(validation("subgroup-ambient", at(&format!("{name} group lives in another group"))));
                }
            }
            if q.degree == 0 || q.degree % self.r != 0 {
                return Err(validation(
                    "degree",
                    at(&format!("degree {} is not a positive multiple of r = {}", q.degree, self.r)),
                ));
            }
            if q.e_w == 0 || !is_p_power(q.e_w, p) {
                return Err(validation("wild-index", at(&format!("e_w = {} is not a power of {p}", q.e_w))));
            }
            if q.e_t == 0 || q.e_t % p == 0 {
                return Err(validation("tame-index", at(&format!("e_t = {} is not prime to {p}", q.e_t))));
            }
            if q.e() == 1 {
                return Err(validation("ramified", at("unramified places are not stored")));
            }
            if q.inertia.order() != q.e() {
                return Err(validation(
                    "inertia-order",
                    at(&format!("|I| = {} but e_t·e_w = {}", q.inertia.order(), q.e())),
                ));
            }
            if !q.wild.is_subgroup_of(&q.inertia) || q.wild.order() != q.e_w {
                return Err(validation("wild-subgroup", at("G_1 must be the subgroup of I of order e_w")));
            }
            if !q.inertia.is_subgroup_of(&q.decomposition) {
                return Err(validation("decomposition", at("inertia is not contained in the decomposition group")));
            }
            let quotient_cyclic = q.decomposition.elements().iter().any(|g| {
                Subgroup::generated(&self.group, vec![g.clone()])
                    .unwrap()
                    .join(&q.inertia)
                    == q.decomposition
            });
            if !quotient_cyclic {
                return Err(validation("decomposition", at("G_q/I is not cyclic")));
            }
            if !q.inertia.contains(&q.tame_generator)
                || self.group.elem_order(&q.tame_generator) != q.e_t
            {
                return Err(validation(
                    "tame-generator",
                    at("the tame generator must be an element of I of order e_t"),
                ));
            }
            let pd = p.checked_pow(q.degree).map(|x| x - 1);
            if let Some(m) = pd {
                if m % q.e_t != 0 {
                    return Err(validation(
                        "tame-divides",
                        at(&format!("e_t = {} does not divide p^deg − 1 = {m}", q.e_t)),
                    ));
                }
            } else if mod_pow(p, q.degree as u64, q.e_t) != 1 % q.e_t {
                return Err(validation("tame-divides", at("e_t does not divide p^deg − 1")));
            }
            if self.weakly_ramified && q.e_t > 1 && q.e_w > 1 {
                return Err(validation(
                    "dichotomy",
                    at(&format!("weakly ramified place with e_t = {} and e_w = {}", q.e_t, q.e_w)),
                ));
            }
            if let Some(map) = &q.conductors {
                for chi in self.group.characters() {
                    let c = match map.get(&chi) {
                        Some(&c) => c,
                        None => continue,
                    };
                    let ok = if q.unramified_for(&chi) {
                        c == 0
                    } else if !q.wild_for(&chi) {
                        c == 1
                    } else {
                        c >= 2 && (!self.weakly_ramified || c == 2)
                    };
                    if !ok {
                        return Err(validation(
                            "conductor",
                            at(&format!(
                                "conductor {c} is inconsistent with the ramification of {}",
                                crate::rep::label_string(&chi)
                            )),
                        ));
                    }
                }
            }
        }
        // synthetic data are formula-level test inputs and may be globally
        // inconsistent; constructed covers must satisfy Riemann–Hurwitz
        if matches!(self.origin, Origin::Synthetic) {
            return Ok(());
        }
        if let Some(g) = self.genus_checked()? {
            if !is_integer(&g) || g < int(0) {
                return Err(validation(
                    "riemann-hurwitz",
                    format!("the conductor data give genus {} for X", crate::arith::fmt_rat(&g)),
                ));
            }
        }
        Ok(())
    }

    /// Sum over characters of the conductor exponents, weighted by degree:
    /// the degree over F_p of the discriminant.
    pub fn discriminant_degree(&self) -> Result<i64> {
        let mut total = 0i64;
        for q in &self.places {
            for chi in self.group.characters() {
                total += q.degree as i64 * q.conductor(&chi, self.weakly_ramified)? as i64;
            }
        }
        Ok(total)
    }

    /// g_X from r(2g_X − 2) = n·r(2g_Y − 2) + deg(discriminant); may be
    /// non-integral on inconsistent data.
    pub fn genus(&self) -> Result<Rational> {
        let n = self.n() as i64;
        let r = self.r as i64;
        let lhs = n * r * (2 * self.g_base as i64 - 2) + self.discriminant_degree()?;
        Ok(Rational::new((lhs + 2 * r).into(), (2 * r).into()))
    }

    fn genus_checked(&self) -> Result<Option<Rational>> {
        match self.genus() {
            Ok(g) => Ok(Some(g)),
            Err(Error::IncompleteDatum(_)) => Ok(None),
            Err(e) => Err(e),
        }
    }

    /// r(1 − g_X).
    pub fn euler_x(&self) -> Result<Rational> {
        Ok(int(self.r as i64) * (int(1) - self.genus()?))
    }

    /// The same cover with place k's tame generator twisted by p^j.
    pub fn twist_place(&self, k: usize, j: u32) -> CoverDatum {
        let mut out = self.clone();
        out.places[k] = self.places[k].twisted(&self.group, self.p, j);
        out
    }

    pub fn summary(&self) -> String {
        format!(
            "{} | G = {}, p = {}, r = {}, g_Y = {}, {} ramified place(s)",
            self.name,
            self.group,
            self.p,
            self.r,
            self.g_base,
            self.places.len()
        )
    }
}

/// The cover X → X/H, as a datum over the abstract group `h.structure()`.
pub fn subcover_data(cover: &CoverDatum, h: &Subgroup) -> Result<CoverDatum> {
    if matches!(cover.origin, Origin::Synthetic) {
        return Err(Error::Unsupported(
            "quotient data are only derived for constructed covers".into(),
        ));
    }
    if h.ambient() != &cover.group {
        return Err(Error::NotSubgroup(format!("subgroup of {} used with {}", h.ambient(), cover.group)));
    }
    if !cover.weakly_ramified {
        return Err(Error::Unsupported("quotients of non-weakly-ramified data".into()));
    }
    let g = &cover.group;
    let hs = h.structure();
    let mut places = Vec::new();
    for q in &cover.places {
        let i_h = q.inertia.intersection(h);
        if i_h.order() == 1 {
            continue;
        }
        let d_h = q.decomposition.intersection(h);
        let w_h = q.wild.intersection(h);
        let e_w = w_h.order();
        let e_t = i_h.order() / e_w;
        // σ_z = σ_q^{e_t / e_t'} generates the tame part of I ∩ H
        let sigma = g.scalar((q.e_t / e_t) as i64, &q.tame_generator);
        let count = g.order() / q.decomposition.join(h).order();
        let residue = q.decomposition.join(h).order() / q.inertia.join(h).order();
        let degree = q.degree * residue as u32;
        let lift = |s: &Subgroup| s.inside(h);
        for k in 0..count {
            places.push(PlaceDatum {
                label: if count == 1 {
                    q.label.clone()
                } else {
                    format!("{}#{k}", q.label)
                },
                degree,
                e_t,
                e_w,
                inertia: lift(&i_h)?,
                decomposition: lift(&d_h)?,
                wild: lift(&w_h)?,
                tame_generator: h.coordinates(&sigma).unwrap().clone(),
                conductors: None,
            });
        }
    }
    let r = cover.r as i64;
    let mut sub = CoverDatum {
        group: hs.clone(),
        p: cover.p,
        r: cover.r,
        g_base: 0,
        places,
        weakly_ramified: true,
        origin: Origin::Quotient,
        name: format!("{} / H[{}]", cover.name, h.order()),
    };
    // r(2g_X − 2) = |H| r(2g_{X/H} − 2) + deg(disc of X → X/H)
    let gx = cover.genus()?;
    let lhs = int(r) * (int(2) * gx - int(2)) - int(sub.discriminant_degree()?);
    let denom = int(hs.order() as i64 * r);
    let g_quot = (lhs / denom + int(2)) / int(2);
    if !is_integer(&g_quot) || g_quot < int(0) {
        return Err(validation(
            "riemann-hurwitz",
            format!("quotient genus {} is not a nonnegative integer", crate::arith::fmt_rat(&g_quot)),
        ));
    }
    sub.g_base = g_quot.to_integer().try_into().unwrap();
    sub.validate()?;
    Ok(sub)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quotient_by_everything_and_nothing() {
        let f = RationalFunctionDivisor::from_function(&parse_function(5, "x").unwrap()).unwrap();
        let c = kummer_cover(5, 4, &f).unwrap();
        let full = subcover_data(&c, &Subgroup::full(&c.group)).unwrap();
        assert_eq!(full.places.len(), 2);
        assert_eq!(full.g_base, 0);
        let triv = subcover_data(&c, &Subgroup::trivial(&c.group)).unwrap();
        assert!(triv.places.is_empty());
        assert_eq!(int(triv.g_base as i64), c.genus().unwrap());
        let half = subcover_data(&c, &Subgroup::cyclic_of_order(&c.group, 2).unwrap()).unwrap();
        assert!(half.places.iter().all(|q| q.e_t == 2));
    }
}
