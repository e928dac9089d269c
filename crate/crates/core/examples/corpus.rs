//! Every check on the fixed corpus and on a few random weakly ramified data.

use galcover::corpus;
use galcover::cover::random_weak_datum;
use galcover::epsilon::GaussOracle;
use galcover::verify::{check_invariance, check_strong, check_weak};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), galcover::error::Error> {
    let oracle = GaussOracle::Padic(None);
    let mut covers: Vec<_> = corpus::full()?.into_iter().map(|(_, c)| c).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    covers.extend((0..10).map(|_| random_weak_datum(&mut rng)));
    let mut failures = 0;
    for c in &covers {
        let ok = check_strong(c, oracle)?.passed() && check_weak(c, oracle)?.passed() && check_invariance(c, oracle)?.passed();
        failures += usize::from(!ok);
        println!("{:<45} g = {:<3} {}", c.name, c.genus()?.to_string(), if ok { "ok" } else { "FAIL" });
    }
    println!("{} covers, {failures} failures", covers.len());
    Ok(())
}
