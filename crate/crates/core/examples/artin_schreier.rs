//! y^p - y = f(x): wild places, lower ramification breaks and conductors.

use galcover::cover::parse_builtin;

fn main() -> Result<(), galcover::error::Error> {
    for spec in ["as:p=2,f=1/x", "as:p=3,f=1/x+1/(x-1)", "as:p=5,f=x+1/x+1/(x-1)"] {
        let c = parse_builtin(spec)?;
        println!("{}", c.summary());
        for q in &c.places {
            let conds: Vec<String> = c
                .group
                .characters()
                .iter()
                .map(|chi| q.conductor(chi, c.weakly_ramified).map(|a| a.to_string()).unwrap_or_else(|e| e.to_string()))
                .collect();
            println!("  {} deg {} e_w = {}  conductors {:?}", q.label, q.degree, q.e_w, conds);
        }
        println!("  genus {}  discriminant degree {}", c.genus()?, c.discriminant_degree()?);
    }
    match parse_builtin("as:p=3,f=1/x^2") {
        Err(e) => println!("double pole: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
