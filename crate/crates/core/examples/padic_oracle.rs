//! The valuation of a Gauss sum read off from its lambda-adic expansion,
//! lambda = zeta_p - 1, with the Teichmueller lift for the multiplicative character.

use galcover::arith::fmt_rat;
use galcover::finite_field::field;
use galcover::padic::{default_lambda_precision, PadicGaussOracle, UnramifiedRing};

fn main() -> Result<(), galcover::error::Error> {
    let k = field(5, 2)?;
    let w = UnramifiedRing::new(&k, 4)?;
    let g = k.generator();
    let t = w.teichmuller(&g)?;
    // omega(g)^(q-1) = 1 in W_4
    println!("omega(g)^24 == 1 mod 5^4: {}", w.pow(&t, 24) == w.from_int(1));

    let n = default_lambda_precision(5, 2);
    let oracle = PadicGaussOracle::new(&k, n)?;
    println!("lambda-adic precision {n}");
    for c in [1u64, 2, 5, 6, 7, 12, 13, 23] {
        println!("  v_5(tau(omega^-{c})) = {}", fmt_rat(&oracle.gauss_valuation(c)?));
    }
    Ok(())
}
