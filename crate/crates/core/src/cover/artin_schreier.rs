//! Artin–Schreier covers y^p − y = f(x) of P¹ over F_p with only simple poles.
//! Every pole is totally and weakly wildly ramified with conductor 2.

use super::divisor::RationalFunctionDivisor;
use super::{CoverDatum, Origin, PlaceDatum};
use crate::error::{Error, Result};
use crate::rep::{AbelianGroup, Subgroup};

pub fn artin_schreier_cover(p: u64, f: &RationalFunctionDivisor) -> Result<CoverDatum> {
    if f.p != p {
        return Err(Error::InvalidInput(format!("f is defined over F_{} not F_{p}", f.p)));
    }
    let poles: Vec<_> = f.entries.iter().filter(|(_, m)| *m < 0).collect();
    if let Some((q, m)) = poles.iter().find(|(_, m)| *m < -1) {
        return Err(Error::NotWeaklyRamified(format!(
            "pole of order {} at {}",
            -m,
            q.label()
        )));
    }
    if poles.is_empty() {
        // f is a constant c: y^p − y = c splits iff c = 0 in F_p
        let c = if f.entries.is_empty() { f.constant } else { 1 };
        return Err(if c == 0 {
            Error::ReducibleCover("f = 0".into())
        } else if f.entries.is_empty() {
            Error::ConstantExtension(format!("f = {c} is constant"))
        } else {
            Error::InvalidInput(format!("{f} has no pole"))
        });
    }
    let group = AbelianGroup::cyclic(p);
    let full = Subgroup::full(&group);
    let places = poles
        .iter()
        .map(|(q, _)| PlaceDatum {
            label: q.label(),
            degree: q.degree(),
            e_t: 1,
            e_w: p,
            inertia: full.clone(),
            decomposition: full.clone(),
            wild: full.clone(),
            tame_generator: vec![0],
            conductors: None,
        })
        .collect();
    let cover = CoverDatum {
        group,
        p,
        r: 1,
        g_base: 0,
        places,
        weakly_ramified: true,
        origin: Origin::ArtinSchreier { f: f.clone() },
        name: format!("as:p={p},f={}", as_display(f)),
    };
    cover.validate()?;
    Ok(cover)
}

/// Sum-of-simple-fractions rendering is not canonical; show num/den instead.
fn as_display(f: &RationalFunctionDivisor) -> String {
    let rf = f.to_function();
    let num = crate::poly::format(&rf.num);
    if rf.den == vec![1] {
        return num;
    }
    format!("({num})/({})", crate::poly::format(&rf.den))
}
