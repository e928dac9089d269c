//! Arithmetic in F_{p^r}: generator, discrete log, Frobenius and trace.
//!
//! cargo run --example finite_field -- 3 4

use galcover::finite_field::field;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<u64> = std::env::args().skip(1).map(|a| a.parse()).collect::<Result<_, _>>()?;
    let (p, r) = match args[..] {
        [p, r] => (p, r as u32),
        _ => (3, 4),
    };
    let k = field(p, r)?;
    println!("F_{} = F_{p}[t]/({:?})", k.q(), k.modulus());
    let g = k.generator();
    println!("generator g = {:?}", g.coefficients());

    let x = k.add(&k.pow(&g, 5), &k.one());
    let l = k.dlog(&x)?;
    println!("x = g^5 + 1 = {:?}, log_g x = {l}, g^{l} == x: {}", x.coefficients(), k.pow(&g, l) == x);
    println!("x^-1 = {:?}", k.inv(&x)?.coefficients());
    println!("Frob(x) = {:?}", k.frobenius(&x).coefficients());
    println!("Tr(x) = {} (sum of conjugates: {})", k.trace(&x), k.trace_by_definition(&x));

    let mut per_trace = vec![0u64; p as usize];
    for y in k.elements() {
        per_trace[k.trace(&y) as usize] += 1;
    }
    println!("elements per trace value: {per_trace:?}");
    Ok(())
}
