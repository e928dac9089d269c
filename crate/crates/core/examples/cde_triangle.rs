//! Grothendieck groups of an abelian group at a prime: projectives, modular
//! modules and characters, with c = d o e checked on every basis element.

use galcover::arith::{fmt_rat, int};
use galcover::rep::{cartan_map, decomposition_map, e_map, induce, label_string, restrict, AbelianGroup, K0Element, Level, Subgroup};

fn show(x: &K0Element) -> String {
    let terms: Vec<String> = x.terms().map(|(l, c)| format!("{}{}", fmt_rat(c), label_string(l))).collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn main() -> Result<(), galcover::error::Error> {
    let g = AbelianGroup::new(vec![2, 6])?;
    let p = 3;
    println!("G = {g}, p = {p}, simple modules: {}", g.modular_labels(p).len());
    for label in g.modular_labels(p) {
        let proj = K0Element::basis_element(&g, p, Level::ModularProjectives, label.clone())?;
        let lifted = e_map(&proj)?;
        let c = cartan_map(&proj)?;
        assert_eq!(decomposition_map(&lifted)?, c);
        println!("P{}: e = {}, c = {}", label_string(&label), show(&lifted), show(&c));
    }

    let h = Subgroup::generated(&g, vec![vec![1, 1]])?;
    let mut x = K0Element::zero(&g, p, Level::CharZero);
    x.add_term(vec![1, 1], int(2))?;
    x.add_term(vec![0, 3], int(-1))?;
    let down = restrict(&x, &h)?;
    println!("x = {}; Res_H x = {}; Ind Res x = {}", show(&x), show(&down), show(&induce(&down, &h)?));
    Ok(())
}
