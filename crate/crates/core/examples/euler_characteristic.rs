//! Multiplicities of characters in H^0 - H^1 of a G-stable divisor, three ways,
//! and chi(G, X, O_X) by two independent routes.

use galcover::arith::fmt_rat;
use galcover::cover::parse_builtin;
use galcover::euler::{
    euler_char_prime_to_p, euler_char_structure_sheaf, multiplicity_closed, multiplicity_direct, multiplicity_pairing,
    riemann_roch_total, DivisorSpec,
};
use galcover::rep::label_string;

fn main() -> Result<(), galcover::error::Error> {
    let c = parse_builtin("kummer:p=11,n=5,f=x(x+1)")?;
    let d = DivisorSpec::zero().with("x", 3).with("inf", -1).with_unramified(2, 1);
    println!("{}\nD = {}", c.summary(), d.describe());
    for chi in c.group.characters() {
        println!(
            "  chi{}: closed {}  direct {}  pairing {}",
            label_string(&chi),
            fmt_rat(&multiplicity_closed(&c, &d, &chi)?),
            fmt_rat(&multiplicity_direct(&c, &d, &chi)?),
            fmt_rat(&multiplicity_pairing(&c, &d, &chi)?),
        );
    }
    println!("  deg D + 1 - g_X = {}", fmt_rat(&riemann_roch_total(&c, &d)?));

    let w = parse_builtin("kummer:p=7,n=6,f=x^2(x-1)^3")?;
    let a = euler_char_structure_sheaf(&w)?;
    let b = euler_char_prime_to_p(&w)?;
    println!("{}", w.summary());
    for theta in w.group.modular_labels(w.p) {
        println!("  [{}]: {} / {}", label_string(&theta), fmt_rat(&a.coefficient(&theta)), fmt_rat(&b.coefficient(&theta)));
    }
    Ok(())
}
