use std::collections::BTreeSet;

use galcover::arith::{int, is_integer};
use galcover::corpus;
use galcover::cover::{
    cover_from_json, datum_json, parse_builtin, parse_function, random_weak_datum, subcover_data, synthetic_cover,
    CoverDatum, PlaceSpec,
};
use galcover::error::Error;
use galcover::euler::{character_sum, riemann_roch_total, DivisorSpec};
use galcover::rep::{AbelianGroup, Subgroup};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn corpus_covers() -> Vec<CoverDatum> {
    corpus::full().unwrap().into_iter().map(|(_, c)| c).collect()
}

#[test]
fn riemann_hurwitz_integrality() {
    for c in corpus_covers() {
        let g = c.genus().unwrap();
        assert!(is_integer(&g) && g >= int(0), "{}", c.name);
        assert_eq!(c.discriminant_degree().unwrap() % 2, 0, "{}", c.name);
    }
}

#[test]
fn tame_index_is_onto_with_inertia_kernel() {
    for c in corpus_covers() {
        for q in c.places.iter().filter(|q| q.is_tame()) {
            let mut image = BTreeSet::new();
            for chi in c.group.characters() {
                let d = q.tame_index(&c.group, &chi);
                image.insert(d);
                assert_eq!(d == 0, q.unramified_for(&chi), "{} at {}", c.name, q.label);
            }
            assert_eq!(image.len() as u64, q.e_t, "{} at {}", c.name, q.label);
        }
    }
}

#[test]
fn hand_oracles_for_riemann_roch() {
    for (entry, c) in corpus::full().unwrap() {
        let dw = DivisorSpec::wild(&c);
        assert_eq!(riemann_roch_total(&c, &dw).unwrap(), int(entry.rr_wild), "{}", entry.spec);
        assert_eq!(character_sum(&c, &dw).unwrap(), int(entry.rr_wild), "{}", entry.spec);
    }
}

#[test]
fn kummer_character_sums_for_other_divisors() {
    for (_, c) in corpus::build(corpus::KUMMER).unwrap() {
        for (k, q) in c.places.iter().enumerate() {
            for n in -3..4 {
                let d = DivisorSpec::zero()
                    .with(&q.label, n)
                    .with(&c.places[(k + 1) % c.places.len()].label, 1 - n)
                    .with_unramified(1, 2);
                assert_eq!(character_sum(&c, &d).unwrap(), riemann_roch_total(&c, &d).unwrap());
            }
        }
    }
}

#[test]
fn kummer_place_structure() {
    let c = parse_builtin("kummer:p=5,n=4,f=x(x^2+2)").unwrap();
    let labels: Vec<_> = c.places.iter().map(|q| (q.label.as_str(), q.degree, q.e_t)).collect();
    assert_eq!(labels, vec![("x", 1, 4), ("x^2+2", 2, 4), ("inf", 1, 4)]);
    assert_eq!(c.genus().unwrap(), int(3));
    // y^2 = x^2 + 2 over F_5: only the quadratic place ramifies
    let c = parse_builtin("kummer:p=5,n=2,f=x^2+2").unwrap();
    assert_eq!(c.places.len(), 1);
    assert_eq!(c.places[0].degree, 2);
}

#[test]
fn constructor_rejections() {
    assert!(matches!(parse_builtin("kummer:p=7,n=4,f=x"), Err(Error::InvalidInput(_))));
    assert!(matches!(parse_builtin("kummer:p=7,n=7,f=x"), Err(Error::Tameness(_))));
    assert!(matches!(parse_builtin("kummer:p=7,n=3,f=x^3"), Err(Error::ReducibleCover(_))));
    assert!(matches!(parse_builtin("kummer:p=7,n=3,f=3x^3"), Err(Error::ConstantExtension(_))));
    assert!(matches!(parse_builtin("as:p=3,f=1/x^2"), Err(Error::NotWeaklyRamified(_))));
    assert!(matches!(parse_builtin("as:p=3,f=2"), Err(Error::ConstantExtension(_))));
    assert!(matches!(parse_builtin("kummer:p=5,n=2,f=x("), Err(Error::Parse(_))));
    assert!(matches!(parse_function(5, "x + * 2"), Err(Error::Parse(_))));
}

#[test]
fn subcover_examples() {
    let c = parse_builtin("kummer:p=5,n=4,f=x").unwrap();
    let whole = subcover_data(&c, &Subgroup::full(&c.group)).unwrap();
    assert_eq!(whole.places.len(), 2);
    let none = subcover_data(&c, &Subgroup::trivial(&c.group)).unwrap();
    assert!(none.places.is_empty());
    assert_eq!(none.group.order(), 1);
    let half = subcover_data(&c, &Subgroup::cyclic_of_order(&c.group, 2).unwrap()).unwrap();
    assert!(half.places.iter().all(|q| q.e_t == 2));
    assert_eq!(half.g_base, 0);

    let s = random_weak_datum(&mut ChaCha8Rng::seed_from_u64(1));
    assert!(matches!(
        subcover_data(&s, &Subgroup::full(&s.group)),
        Err(Error::Unsupported(_))
    ));
}

#[test]
fn subcover_genus_matches_quotient_chain() {
    for c in corpus::chains().unwrap() {
        for h in Subgroup::all(&c.group) {
            let sub = subcover_data(&c, &h).unwrap();
            // X → X/H has the same total space as X → Y
            assert_eq!(sub.genus().unwrap(), c.genus().unwrap(), "{} / {}", c.name, h.order());
        }
    }
}

#[test]
fn validation_names_the_broken_invariant() {
    let g = AbelianGroup::cyclic(6);
    let spec = |e_t, e_w, inertia: Vec<u64>, sigma: Vec<u64>| PlaceSpec {
        label: "q".into(),
        degree: 1,
        e_t,
        e_w,
        inertia: vec![inertia],
        decomposition: vec![],
        tame_generator: sigma,
        conductors: None,
    };
    let check = |s: PlaceSpec, invariant: &str| match synthetic_cover(&g, 3, 1, 0, vec![s], true) {
        Err(Error::Validation { invariant: i, .. }) => assert_eq!(i, invariant),
        other => panic!("expected {invariant}, got {other:?}"),
    };
    check(spec(2, 3, vec![1], vec![3]), "dichotomy");
    check(spec(2, 1, vec![1], vec![3]), "inertia-order");
    check(spec(2, 1, vec![3], vec![0]), "tame-generator");
    assert!(synthetic_cover(&g, 4, 1, 0, vec![], true).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_data_validate_and_round_trip(seed in any::<u64>()) {
        let c = random_weak_datum(&mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert!(c.validate().is_ok());
        for q in &c.places {
            prop_assert!(q.e_t == 1 || q.e_w == 1);
        }
        let g = c.genus().unwrap();
        prop_assert!(is_integer(&g) && g >= int(0));
        let text = serde_json::to_string(&datum_json(&c)).unwrap();
        let back = cover_from_json(&text).unwrap();
        prop_assert_eq!(back.places, c.places);
    }

    #[test]
    fn function_parser_round_trips(i in 0..corpus::KUMMER.len()) {
        let c = parse_builtin(corpus::KUMMER[i].spec).unwrap();
        if let galcover::cover::Origin::Kummer { f, .. } = &c.origin {
            let printed = f.to_string();
            let again = galcover::cover::RationalFunctionDivisor::from_function(
                &parse_function(c.p, &printed).unwrap(),
            )
            .unwrap();
            prop_assert_eq!(&again, f);
        }
    }
}
