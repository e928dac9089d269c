//! Local and global epsilon valuations per character, and the element E they define.

use galcover::arith::fmt_rat;
use galcover::cover::parse_builtin;
use galcover::epsilon::{e_element, epsilon_ledger, GaussOracle};
use galcover::rep::label_string;

fn main() -> Result<(), galcover::error::Error> {
    let c = parse_builtin("kummer:p=7,n=6,f=x^2(x-1)^3")?;
    println!("{}", c.summary());
    for chi in c.group.characters() {
        let l = epsilon_ledger(&c, &chi, GaussOracle::Stickelberger)?;
        let locals: Vec<String> = l.locals.iter().map(|v| format!("{}:{}", v.place, fmt_rat(&v.valuation))).collect();
        println!("  chi{}  {}  + [{}]  = {}", label_string(&chi), fmt_rat(&l.base), locals.join(", "), fmt_rat(&l.global_valuation));
    }
    let e = e_element(&c, GaussOracle::Padic(None))?;
    for chi in c.group.characters() {
        println!("  <E, chi{}> = {}", label_string(&chi), fmt_rat(&e.coefficient(&chi)));
    }
    Ok(())
}
