//! The strong relation: E equals chi(G, X, O(D^w)) plus the wild induced terms.

use galcover::arith::fmt_rat;
use galcover::cover::parse_builtin;
use galcover::epsilon::GaussOracle;
use galcover::verify::check_strong;

fn main() -> Result<(), galcover::error::Error> {
    for spec in ["kummer:p=5,n=2,f=x(x-1)", "as:p=2,f=1/x", "as:p=5,f=1/(x^2+2)"] {
        let r = check_strong(&parse_builtin(spec)?, GaussOracle::Padic(None))?;
        println!("{spec}");
        for row in &r.rows {
            let parts: Vec<String> = row.components.iter().map(|(k, v)| format!("{k} {}", fmt_rat(v))).collect();
            println!("  {:<6} {} = {}  ({})", row.label, fmt_rat(&row.lhs), fmt_rat(&row.rhs), parts.join(", "));
        }
        println!("  holds: {}", r.passed());
    }
    Ok(())
}
