//! Ramification of y^n = f(x) over F_p: places, tame generators, genus.
//!
//! cargo run --example kummer_cover -- 13 4 "x(x-2)^3"

use galcover::cover::{kummer_cover, parse_function, RationalFunctionDivisor};
use galcover::rep::label_string;

fn main() -> Result<(), galcover::error::Error> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (p, n, f) = match &args[..] {
        [p, n, f] => (p.parse().unwrap(), n.parse().unwrap(), f.clone()),
        _ => (5u64, 4u64, "x(x^2+2)".to_string()),
    };
    let div = RationalFunctionDivisor::from_function(&parse_function(p, &f)?)?;
    let c = kummer_cover(p, n, &div)?;
    println!("{}", c.summary());
    for q in &c.places {
        println!(
            "  {:<8} deg {}  e = {}  sigma_q = {}  cotangent label {}",
            q.label,
            q.degree,
            q.e(),
            label_string(&q.tame_generator),
            label_string(&q.cotangent_label()),
        );
    }
    println!("g_X = {}", c.genus()?);
    Ok(())
}
