//! Exact Gauss sums in Z[zeta_{p(q-1)}] and the identity tau(chi) tau(chi^-1) = chi(-1) q.

use galcover::cyclotomic::{gauss_sum, MultChar};
use galcover::finite_field::field;

fn main() -> Result<(), galcover::error::Error> {
    for (p, r) in [(3, 1), (5, 1), (2, 2), (7, 1)] {
        let k = field(p, r)?;
        let q = k.q();
        println!("F_{q}");
        for c in 0..q - 1 {
            let chi = MultChar::new(&k, c as i64);
            let tau = gauss_sum(&k, &chi);
            let prod = tau.mul(&gauss_sum(&k, &chi.inverse()));
            let (re, im) = tau.to_complex();
            println!(
                "  c = {c}: tau ~ {re:+.4} {im:+.4}i, |tau|^2 = {:.4}, tau(chi)tau(chi^-1) = {}",
                tau.complex_abs2(),
                prod.as_integer().map(|n| n.to_string()).unwrap_or_else(|| "not rational".into()),
            );
        }
    }
    Ok(())
}
