//! The weak relation over the modular group ring, including a datum that is
//! not weakly ramified, where only the tame-quotient route applies.

use std::collections::BTreeMap;

use galcover::arith::fmt_rat;
use galcover::cover::{parse_builtin, synthetic_cover, PlaceSpec};
use galcover::epsilon::GaussOracle;
use galcover::rep::AbelianGroup;
use galcover::verify::check_weak;

fn main() -> Result<(), galcover::error::Error> {
    let c = parse_builtin("as:p=3,f=x/(x^2+1)+1/x")?;
    let r = check_weak(&c, GaussOracle::Stickelberger)?;
    for row in &r.rows {
        println!("{} {}: {} = {}", c.name, row.label, fmt_rat(&row.lhs), fmt_rat(&row.rhs));
    }

    // Z/6 at p = 3: two tame places of order 2, one wild place whose
    // nontrivial conductors are 2
    let g = AbelianGroup::cyclic(6);
    let conductors = |kernel_mult: u64, a: u64| -> BTreeMap<Vec<u64>, u64> {
        g.characters().into_iter().map(|chi| {
            let v = if (chi[0] * kernel_mult) % 6 == 0 { 0 } else { a };
            (chi, v)
        }).collect()
    };
    let tame = |label: &str| PlaceSpec {
        label: label.into(),
        degree: 1,
        e_t: 2,
        e_w: 1,
        inertia: vec![vec![3]],
        decomposition: vec![],
        tame_generator: vec![3],
        conductors: Some(conductors(3, 1)),
    };
    let wild = PlaceSpec {
        label: "w".into(),
        degree: 1,
        e_t: 1,
        e_w: 3,
        inertia: vec![vec![2]],
        decomposition: vec![],
        tame_generator: vec![0],
        conductors: Some(conductors(2, 2)),
    };
    let d = synthetic_cover(&g, 3, 1, 0, vec![tame("a"), tame("b"), wild], false)?;
    let r = check_weak(&d, GaussOracle::Stickelberger)?;
    for row in &r.rows {
        println!("non-weak {}: {} = {}", row.label, fmt_rat(&row.lhs), fmt_rat(&row.rhs));
    }
    r.notes.iter().for_each(|n| println!("note: {n}"));
    Ok(())
}
