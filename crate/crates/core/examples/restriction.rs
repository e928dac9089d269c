//! Compatibility with restriction to subgroups H, through the subcover X -> X/H.

use galcover::cover::{parse_builtin, subcover_data};
use galcover::epsilon::GaussOracle;
use galcover::rep::Subgroup;
use galcover::verify::check_restriction;

fn main() -> Result<(), galcover::error::Error> {
    let c = parse_builtin("kummer:p=13,n=6,f=x^2+2")?;
    for h in Subgroup::all(&c.group) {
        let sub = subcover_data(&c, &h)?;
        let r = check_restriction(&c, &h, GaussOracle::Padic(None))?;
        println!("|H| = {}: {}  restriction holds: {}", h.order(), sub.summary(), r.passed());
    }
    Ok(())
}
