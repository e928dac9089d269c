//! Stickelberger valuations from fractional-part tuples, and their agreement
//! with the base-p digit sum of the character index.

use galcover::arith::fmt_rat;
use galcover::finite_field::PrimePower;
use galcover::stickelberger::{c_from_d, c_tuple, digit_sum_valuation, s_tuple, stickelberger_valuation, TameLocalDatum};

fn main() -> Result<(), galcover::error::Error> {
    let pp = PrimePower::new(5, 2)?;
    // a tame place of residue degree 2 over F_5 with e_t = 8, no wild part
    let datum = TameLocalDatum::new(pp, 8, 1)?;
    for d in 0..8 {
        let c = c_from_d(&datum, d)?;
        let s = s_tuple(&datum, d as i64);
        assert_eq!(s, c_tuple(pp, c));
        println!(
            "d = {d}  c = {c:>2}  v = {:>4}  digit sum / (p-1) = {}",
            fmt_rat(&stickelberger_valuation(&datum, d)?),
            fmt_rat(&digit_sum_valuation(pp, c)?),
        );
    }
    Ok(())
}
