//! Hand-specified cover data and a random generator of weakly ramified data.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;

use super::{CoverDatum, Origin, PlaceDatum};
use crate::arith::{is_integer, mod_pow};
use crate::error::{validation, Result};
use crate::rep::{AbelianGroup, Label, Subgroup};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaceSpec {
    pub label: String,
    pub degree: u32,
    pub e_t: u64,
    pub e_w: u64,
    pub inertia: Vec<Label>,
    /// Extra generators of the decomposition group beyond the inertia group.
    pub decomposition: Vec<Label>,
    pub tame_generator: Label,
    pub conductors: Option<BTreeMap<Label, u64>>,
}

pub fn synthetic_cover(
    group: &AbelianGroup,
    p: u64,
    r: u32,
    g_base: u64,
    places: Vec<PlaceSpec>,
    weakly_ramified: bool,
) -> Result<CoverDatum> {
    let mut data = Vec::with_capacity(places.len());
    for spec in places {
        for g in spec.inertia.iter().chain(&spec.decomposition).chain([&spec.tame_generator]) {
            group
                .check(g)
                .map_err(|e| validation("element", format!("place {}: {e}", spec.label)))?;
        }
        let inertia = Subgroup::generated(group, spec.inertia.clone())?;
        let mut dgens = spec.inertia.clone();
        dgens.extend(spec.decomposition.iter().cloned());
        let decomposition = Subgroup::generated(group, dgens)?;
        let wild = inertia.sylow(p);
        data.push(PlaceDatum {
            label: spec.label,
            degree: spec.degree,
            e_t: spec.e_t,
            e_w: spec.e_w,
            inertia,
            decomposition,
            wild,
            tame_generator: spec.tame_generator,
            conductors: spec.conductors,
        });
    }
    let cover = CoverDatum {
        group: group.clone(),
        p,
        r,
        g_base,
        places: data,
        weakly_ramified,
        origin: Origin::Synthetic,
        name: format!("synthetic:G={group},p={p},r={r},g={g_base}"),
    };
    cover.validate()?;
    Ok(cover)
}

fn elementary_abelian(group: &AbelianGroup, h: &Subgroup, p: u64) -> bool {
    h.elements().iter().all(|g| group.elem_order(g) <= p)
}

/// Random weakly ramified datum. Tame generators are balanced so that
/// Σ_q (Σ_{j<deg} p^j)·σ_q = 0, the relation satisfied by the inertia
/// generators of a genuine tame cover; without it the structure element is
/// not integral.
pub fn random_weak_datum<R: Rng>(rng: &mut R) -> CoverDatum {
    loop {
        if let Some(c) = try_random(rng) {
            return c;
        }
    }
}

fn try_random<R: Rng>(rng: &mut R) -> Option<CoverDatum> {
    let p = *[2u64, 3, 5, 7].choose(rng)?;
    let groups: Vec<AbelianGroup> = AbelianGroup::all_up_to_order(36)
        .into_iter()
        .filter(|g| g.order() > 1)
        .collect();
    let group = groups.choose(rng)?.clone();
    let r: u32 = if rng.gen_bool(0.25) { 2 } else { 1 };
    let g_base = rng.gen_range(0..3u64);
    let elems = group.elements();
    let degrees: Vec<u32> = (1..=3u32)
        .map(|k| k * r)
        .filter(|&d| p.pow(d) <= 400)
        .collect();
    let mut places = Vec::new();
    let mut balance = group.identity();
    let n_places = rng.gen_range(0..4usize);
    for k in 0..n_places {
        let deg = *degrees.choose(rng)?;
        let wild = rng.gen_bool(0.3) && group.order() % p == 0;
        let extra = elems.choose(rng)?.clone();
        if wild {
            let g = elems
                .iter()
                .filter(|g| group.elem_order(g) == p)
                .collect::<Vec<_>>();
            let first = (*g.choose(rng)?).clone();
            let mut gens = vec![first];
            if rng.gen_bool(0.3) {
                gens.push((*g.choose(rng)?).clone());
            }
            let inertia = Subgroup::generated(&group, gens.clone()).ok()?;
            if !elementary_abelian(&group, &inertia, p) {
                return None;
            }
            places.push(PlaceSpec {
                label: format!("w{k}"),
                degree: deg,
                e_t: 1,
                e_w: inertia.order(),
                inertia: gens,
                decomposition: vec![extra],
                tame_generator: group.identity(),
                conductors: None,
            });
        } else {
            let cands: Vec<&Label> = elems
                .iter()
                .filter(|g| {
                    let o = group.elem_order(g);
                    o > 1 && o % p != 0 && mod_pow(p, deg as u64, o) == 1
                })
                .collect();
            let sigma = (*cands.choose(rng)?).clone();
            let e = group.elem_order(&sigma);
            let s = (0..deg).map(|j| mod_pow(p, j as u64, e)).sum::<u64>();
            balance = group.add(&balance, &group.scalar(s as i64, &sigma));
            places.push(PlaceSpec {
                label: format!("t{k}"),
                degree: deg,
                e_t: e,
                e_w: 1,
                inertia: vec![sigma.clone()],
                decomposition: vec![extra],
                tame_generator: sigma,
                conductors: None,
            });
        }
    }
    if balance != group.identity() {
        // close up with one more tame place whose contribution cancels `balance`
        let target = group.neg(&balance);
        let mut options = Vec::new();
        for &deg in &degrees {
            for g in &elems {
                let e = group.elem_order(g);
                if e <= 1 || e % p == 0 || mod_pow(p, deg as u64, e) != 1 {
                    continue;
                }
                let s = (0..deg).map(|j| mod_pow(p, j as u64, e)).sum::<u64>();
                if group.scalar(s as i64, g) == target {
                    options.push((deg, g.clone()));
                }
            }
        }
        let (deg, sigma) = options.choose(rng)?.clone();
        places.push(PlaceSpec {
            label: "tb".into(),
            degree: deg,
            e_t: group.elem_order(&sigma),
            e_w: 1,
            inertia: vec![sigma.clone()],
            decomposition: vec![],
            tame_generator: sigma,
            conductors: None,
        });
    }
    // decomposition groups must leave inertia with a cyclic quotient; a
    // single extra generator always does
    let cover = synthetic_cover(&group, p, r, g_base, places, true).ok()?;
    let g = cover.genus().ok()?;
    if !is_integer(&g) || g < crate::arith::int(0) {
        return None;
    }
    Some(cover)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn unramified_datum_is_valid() {
        let g = AbelianGroup::cyclic(3);
        assert!(synthetic_cover(&g, 5, 1, 2, vec![], true).is_ok());
    }

    #[test]
    fn dichotomy_is_enforced() {
        let g = AbelianGroup::cyclic(6);
        let spec = PlaceSpec {
            label: "q".into(),
            degree: 1,
            e_t: 2,
            e_w: 3,
            inertia: vec![vec![1]],
            decomposition: vec![],
            tame_generator: vec![3],
            conductors: None,
        };
        match synthetic_cover(&g, 3, 1, 2, vec![spec], true) {
            Err(Error::Validation { invariant, .. }) => assert_eq!(invariant, "dichotomy"),
            other => panic!("expected a dichotomy failure, got {other:?}"),
        }
    }

    #[test]
    fn mixed_tame_and_wild() {
        let g = AbelianGroup::cyclic(6);
        let tame = PlaceSpec {
            label: "a".into(),
            degree: 1,
            e_t: 2,
            e_w: 1,
            inertia: vec![vec![3]],
            decomposition: vec![],
            tame_generator: vec![3],
            conductors: None,
        };
        let wild = PlaceSpec {
            label: "b".into(),
            degree: 1,
            e_t: 1,
            e_w: 3,
            inertia: vec![vec![2]],
            decomposition: vec![],
            tame_generator: vec![0],
            conductors: None,
        };
        assert!(synthetic_cover(&g, 3, 1, 1, vec![tame, wild], true).is_ok());
    }

    #[test]
    fn generator_is_valid_and_deterministic() {
        let mut a = ChaCha8Rng::seed_from_u64(7);
        let mut b = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let x = random_weak_datum(&mut a);
            assert!(x.validate().is_ok());
            assert_eq!(x, random_weak_datum(&mut b));
        }
    }
}
