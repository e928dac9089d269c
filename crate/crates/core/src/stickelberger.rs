//! Index combinatorics of tamely ramified characters: the tuples S(d), the
//! c ↔ d conversion and the two closed valuation formulas.

use crate::arith::{digit_sum, gcd, is_p_power, mod_inv, mod_pow, rat, Rational};
use crate::error::{Error, Result};
use crate::finite_field::PrimePower;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TameLocalDatum {
    pub prime_power: PrimePower,
    pub e_t: u64,
    pub e_w: u64,
}

impl TameLocalDatum {
    pub fn new(prime_power: PrimePower, e_t: u64, e_w: u64) -> Result<Self> {
        let PrimePower { p, q, .. } = prime_power;
        if e_t == 0 || (q - 1) % e_t != 0 {
            return Err(Error::InvalidInput(format!("e_t = {e_t} does not divide q-1 = {}", q - 1)));
        }
        if gcd(e_t, p) != 1 {
            return Err(Error::InvalidInput(format!("e_t = {e_t} is not prime to p")));
        }
        if e_w == 0 || !is_p_power(e_w, p) {
            return Err(Error::InvalidInput(format!("e_w = {e_w} is not a power of {p}")));
        }
        Ok(TameLocalDatum { prime_power, e_t, e_w })
    }
}

/// Sorted multiset of fractions in [0, 1).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct FracTuple {
    pub entries: Vec<Rational>,
}

impl FracTuple {
    pub fn new(mut entries: Vec<Rational>) -> Self {
        entries.sort();
        FracTuple { entries }
    }
    pub fn sum(&self) -> Rational {
        self.entries.iter().fold(rat(0, 1), |a, b| a + b)
    }
}

/// {{d·p^i / e_t} : 0 ≤ i < r}
pub fn s_tuple(datum: &TameLocalDatum, d: i64) -> FracTuple {
    let PrimePower { p, r, .. } = datum.prime_power;
    let e = datum.e_t;
    let d = d.rem_euclid(e as i64) as u64;
    FracTuple::new(
        (0..r)
            .map(|i| {
                let num = (d as u128 * mod_pow(p, i as u64, e) as u128 % e as u128) as i64;
                rat(num, e as i64)
            })
            .collect(),
    )
}

/// {{c·p^i / (q−1)} : 0 ≤ i < r}
pub fn c_tuple(pp: PrimePower, c: u64) -> FracTuple {
    let n = pp.q - 1;
    FracTuple::new(
        (0..pp.r)
            .map(|i| {
                let num = (c as u128 * mod_pow(pp.p, i as u64, n) as u128 % n as u128) as i64;
                rat(num, n as i64)
            })
            .collect(),
    )
}

/// Least N ≥ 0 with e_w | q^N.
fn least_n(datum: &TameLocalDatum) -> u32 {
    let q = datum.prime_power.q as u128;
    let mut qn: u128 = 1;
    let mut n = 0;
    while qn % datum.e_w as u128 != 0 {
        qn *= q;
        n += 1;
    }
    n
}

/// (q^N / e_w) mod (q−1) for the least admissible N.
fn wild_factor(datum: &TameLocalDatum, n_extra: u32) -> u64 {
    let PrimePower { p, q, .. } = datum.prime_power;
    let m = q - 1;
    let n = least_n(datum) + n_extra;
    let total = datum.prime_power.r as u64 * n as u64;
    let ew_exp = crate::arith::val_p(datum.e_w, p) as u64;
    mod_pow(p, total - ew_exp, m)
}

/// ((q−1)/e_t)·(q^N/e_w) mod (q−1).
pub fn composition_exponent(datum: &TameLocalDatum) -> u64 {
    composition_exponent_with(datum, 0)
}

/// Same residue computed with a non-minimal N (N_min + extra).
pub fn composition_exponent_with(datum: &TameLocalDatum, extra: u32) -> u64 {
    let m = datum.prime_power.q - 1;
    if m == 1 {
        return 0;
    }
    ((m / datum.e_t) as u128 * wild_factor(datum, extra) as u128 % m as u128) as u64
}

pub fn c_from_d(datum: &TameLocalDatum, d: u64) -> Result<u64> {
    if d >= datum.e_t {
        return Err(Error::InvalidInput(format!("d = {d} out of range 0..{}", datum.e_t)));
    }
    let m = datum.prime_power.q - 1;
    if m == 1 {
        return Ok(0);
    }
    Ok((d as u128 * composition_exponent(datum) as u128 % m as u128) as u64)
}

/// Inverse of `c_from_d` on its image.
pub fn d_from_c(datum: &TameLocalDatum, c: u64) -> Result<u64> {
    let m = datum.prime_power.q - 1;
    if m == 1 {
        return Ok(0);
    }
    let step = m / datum.e_t;
    if c % step != 0 {
        return Err(Error::Domain(format!(
            "index {c} is not in the image of the e_t = {} characters",
            datum.e_t
        )));
    }
    let base = c / step;
    let e = datum.e_t;
    if e == 1 {
        return Ok(0);
    }
    let w = wild_factor(datum, 0) % e;
    let inv = mod_inv(w, e).expect("p-power factor is prime to e_t");
    Ok((base as u128 * inv as u128 % e as u128) as u64)
}

pub fn stickelberger_valuation(datum: &TameLocalDatum, d: u64) -> Result<Rational> {
    if d >= datum.e_t {
        return Err(Error::InvalidInput(format!("d = {d} out of range 0..{}", datum.e_t)));
    }
    Ok(s_tuple(datum, d as i64).sum())
}

/// s(c)/(p−1), s the base-p digit sum.
pub fn digit_sum_valuation(pp: PrimePower, c: u64) -> Result<Rational> {
    if c > pp.q.saturating_sub(2) && !(pp.q == 2 && c == 0) {
        return Err(Error::InvalidInput(format!("index {c} out of range 0..{}", pp.q - 1)));
    }
    Ok(rat(digit_sum(c, pp.p) as i64, pp.p as i64 - 1))
}

/// d ↦ d·p^i mod e_t, the effect of changing the residue-field embedding.
pub fn twist_d(datum: &TameLocalDatum, d: u64, i: u32) -> u64 {
    let e = datum.e_t;
    (d as u128 * mod_pow(datum.prime_power.p, i as u64, e) as u128 % e as u128) as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn datum(p: u64, r: u32, e_t: u64, e_w: u64) -> TameLocalDatum {
        TameLocalDatum::new(PrimePower::new(p, r).unwrap(), e_t, e_w).unwrap()
    }

    #[test]
    fn tuples() {
        let d = datum(2, 3, 7, 1);
        assert_eq!(s_tuple(&d, 0).entries, vec![rat(0, 1); 3]);
        assert_eq!(s_tuple(&d, 3), FracTuple::new(vec![rat(3, 7), rat(6, 7), rat(5, 7)]));
        assert_eq!(s_tuple(&d, 3), s_tuple(&d, 6));
    }

    #[test]
    fn composition_examples() {
        assert_eq!(composition_exponent(&datum(2, 2, 3, 1)), 1);
        assert_eq!(composition_exponent(&datum(2, 3, 7, 2)), 4);
        // Lubin–Tate shape
        assert_eq!(composition_exponent(&datum(5, 1, 4, 25)), 1);
        assert_eq!(composition_exponent_with(&datum(2, 3, 7, 2), 2), 4);
    }

    #[test]
    fn index_conversion() {
        assert_eq!(c_from_d(&datum(3, 1, 2, 1), 1).unwrap(), 1);
        assert_eq!(c_from_d(&datum(2, 3, 7, 1), 3).unwrap(), 3);
        assert_eq!(c_from_d(&datum(2, 3, 7, 1), 0).unwrap(), 0);
        let d = datum(5, 2, 8, 5);
        for x in 0..8 {
            assert_eq!(d_from_c(&d, c_from_d(&d, x).unwrap()).unwrap(), x);
        }
        assert!(d_from_c(&d, 1).is_err());
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(stickelberger_valuation(&datum(5, 1, 2, 1), 1).unwrap(), rat(1, 2));
        assert_eq!(stickelberger_valuation(&datum(2, 3, 7, 1), 3).unwrap(), rat(2, 1));
        assert_eq!(stickelberger_valuation(&datum(2, 3, 7, 1), 0).unwrap(), rat(0, 1));
        let pp = PrimePower::new(2, 3).unwrap();
        assert_eq!(digit_sum_valuation(pp, 3).unwrap(), rat(2, 1));
        assert_eq!(digit_sum_valuation(PrimePower::new(5, 1).unwrap(), 3).unwrap(), rat(3, 4));
        assert_eq!(digit_sum_valuation(pp, 0).unwrap(), rat(0, 1));
    }

    #[test]
    fn datum_validation() {
        let pp = PrimePower::new(3, 2).unwrap();
        assert!(TameLocalDatum::new(pp, 3, 1).is_err());
        assert!(TameLocalDatum::new(pp, 4, 2).is_err());
        assert!(TameLocalDatum::new(pp, 8, 27).is_ok());
    }
}
