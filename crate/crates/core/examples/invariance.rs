//! Outputs do not move when the tame generators are twisted by powers of p or
//! the places are listed in another order. Kummer covers have p = 1 mod n, so
//! the twists only act nontrivially on synthetic data.

use galcover::cover::{parse_builtin, random_weak_datum};
use galcover::epsilon::GaussOracle;
use galcover::verify::check_invariance;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), galcover::error::Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut covers = vec![parse_builtin("kummer:p=5,n=4,f=x(x^2+2)")?];
    covers.extend((0..3).map(|_| random_weak_datum(&mut rng)));
    for c in &covers {
        println!("{}", c.summary());
        let r = check_invariance(c, GaussOracle::Stickelberger)?;
        for row in &r.rows {
            println!("  {:<40} {}/{}", row.label, row.lhs, row.rhs);
        }
        println!("  invariant: {}", r.passed());
    }
    Ok(())
}
