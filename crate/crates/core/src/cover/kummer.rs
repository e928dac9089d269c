//! Kummer covers y^n = f(x) of P¹ over F_p, n | p − 1.
//!
//! G = Z/n, the generator 1 acting by y ↦ ζ y with ζ = g^{(p−1)/n}, g the
//! smallest primitive root. At a place with local multiplicity m the inertia
//! group has order e = n/gcd(n, m) and the element m ∈ Z/n acts on the
//! cotangent space by the standard e-th root of unity.

use std::collections::BTreeSet;

use super::divisor::{Place, RationalFunctionDivisor};
use super::{CoverDatum, Origin, PlaceDatum};
use crate::arith::{gcd, lcm, mod_pow};
use crate::error::{Error, Result};
use crate::finite_field::field;
use crate::poly;
use crate::rep::{AbelianGroup, Subgroup};

pub fn kummer_cover(p: u64, n: u64, f: &RationalFunctionDivisor) -> Result<CoverDatum> {
    if f.p != p {
        return Err(Error::InvalidInput(format!("f is defined over F_{} not F_{p}", f.p)));
    }
    if n < 2 {
        return Err(Error::InvalidInput("n must be at least 2".into()));
    }
    if gcd(n, p) != 1 {
        return Err(Error::Tameness(format!("n = {n} is divisible by p = {p}")));
    }
    if (p - 1) % n != 0 {
        return Err(Error::InvalidInput(format!(
            "n = {n} must divide p − 1 = {} for the n-th roots of unity to lie in F_{p}",
            p - 1
        )));
    }
    let g_all = f.entries.iter().fold(n, |acc, (_, m)| gcd(acc, m.unsigned_abs()));
    if g_all > 1 {
        // f = c·h^{g} over F_p; the cover splits iff c is an ℓ-th power for some ℓ | g
        let c = f.constant;
        let splits = crate::arith::factorize(g_all)
            .iter()
            .any(|&(l, _)| mod_pow(c, (p - 1) / l, p) == 1);
        return Err(if splits {
            Error::ReducibleCover(format!("{f} is a perfect power in F_{p}(x)"))
        } else {
            Error::ConstantExtension(format!(
                "all multiplicities of {f} share the factor {g_all} with n; the constants grow"
            ))
        });
    }
    let group = AbelianGroup::cyclic(n);
    let mut places = Vec::new();
    for (place, m) in &f.entries {
        let mm = m.rem_euclid(n as i64) as u64;
        if mm == 0 {
            continue;
        }
        let e = n / gcd(n, mm);
        let unit_log = unit_log(f, place)?;
        let local_degree = lcm(e, n / gcd(n, unit_log % n));
        let inertia = Subgroup::cyclic_of_order(&group, e)?;
        places.push(PlaceDatum {
            label: place.label(),
            degree: place.degree(),
            e_t: e,
            e_w: 1,
            decomposition: Subgroup::cyclic_of_order(&group, local_degree)?,
            wild: Subgroup::trivial(&group),
            inertia,
            tame_generator: vec![mm],
            conductors: None,
        });
    }
    let cover = CoverDatum {
        group,
        p,
        r: 1,
        g_base: 0,
        places,
        weakly_ramified: true,
        origin: Origin::Kummer { n, f: f.clone() },
        name: format!("kummer:p={p},n={n},f={f}"),
    };
    cover.validate()?;
    Ok(cover)
}

/// dlog of the leading unit of f at `place`, in F_{p^deg}.
fn unit_log(f: &RationalFunctionDivisor, place: &Place) -> Result<u64> {
    let p = f.p;
    let c = f.constant;
    match place {
        Place::Infinity => {
            let ctx = field(p, 1)?;
            ctx.dlog(&ctx.from_int(c as i64))
        }
        Place::Finite(pol) => {
            let ctx = field(p, place.degree())?;
            let alpha = poly::find_root(&ctx, pol).expect("irreducible factor has a root");
            let mut u = ctx.from_int(c as i64);
            let seen: BTreeSet<&Place> = BTreeSet::from([place]);
            for (other, m) in &f.entries {
                if seen.contains(other) {
                    continue;
                }
                if let Place::Finite(g) = other {
                    let v = poly::eval(&ctx, g, &alpha);
                    let v = if *m >= 0 {
                        ctx.pow(&v, *m as u64)
                    } else {
                        ctx.pow(&ctx.inv(&v)?, m.unsigned_abs())
                    };
                    u = ctx.mul(&u, &v);
                }
            }
            ctx.dlog(&u)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::parse_function;

    fn build(p: u64, n: u64, f: &str) -> Result<CoverDatum> {
        let d = RationalFunctionDivisor::from_function(&parse_function(p, f)?)?;
        kummer_cover(p, n, &d)
    }

    #[test]
    fn hyperelliptic_genus_zero() {
        let c = build(5, 2, "x(x-1)").unwrap();
        let labels: Vec<&str> = c.places.iter().map(|q| q.label.as_str()).collect();
        assert_eq!(labels, vec!["x", "x+4"]);
        assert!(c.places.iter().all(|q| q.e_t == 2));
        assert_eq!(c.genus().unwrap(), crate::arith::int(0));
    }

    #[test]
    fn cubic_at_zero_and_infinity() {
        let c = build(7, 3, "x").unwrap();
        assert_eq!(c.places.len(), 2);
        assert_eq!(c.places[1].label, "inf");
        assert_eq!(c.places[0].tame_generator, vec![1]);
        assert_eq!(c.places[1].tame_generator, vec![2]);
        assert_eq!(c.genus().unwrap(), crate::arith::int(0));
    }

    #[test]
    fn errors() {
        assert!(matches!(build(3, 3, "x"), Err(Error::Tameness(_))));
        assert!(matches!(build(5, 2, "x^2"), Err(Error::ReducibleCover(_))));
        assert!(matches!(build(5, 2, "2x^2"), Err(Error::ConstantExtension(_))));
    }

    #[test]
    fn residue_degree_from_leading_unit() {
        // y^2 = 2x over F_5: 2 is a non-square, so the place at infinity is
        // ramified with trivial residue extension and x = 0 likewise
        let c = build(5, 2, "2x").unwrap();
        assert!(c.places.iter().all(|q| q.f() == 1));
        // y^4 = 2x: at 0 the unit is 2, of order 4 in F_5^×/(F_5^×)^4
        let c = build(5, 4, "2x").unwrap();
        assert!(c.places.iter().all(|q| q.e_t == 4));
    }
}
