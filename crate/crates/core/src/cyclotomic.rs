//! Exact arithmetic in Z[ζ_m] (power basis modulo Φ_m) and Gauss sums.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::arith::{divisors, euler_phi, factorize, gcd, lcm, mod_inv};
use crate::error::{Error, Result};
use crate::finite_field::FieldContext;

/// Φ_m with its degree; shared between all elements of order m.
#[derive(Debug)]
pub struct CyclotomicRing {
    m: u64,
    phi: usize,
    poly: Vec<i64>,
}

impl CyclotomicRing {
    pub fn order(&self) -> u64 {
        self.m
    }
    pub fn degree(&self) -> usize {
        self.phi
    }
    /// Φ_m, low-to-high.
    pub fn polynomial(&self) -> &[i64] {
        &self.poly
    }
}

fn mobius(n: u64) -> i32 {
    let f = factorize(n);
    if f.iter().any(|&(_, k)| k > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Φ_m = Π_{d|m} (x^d − 1)^{μ(m/d)}.
pub fn cyclotomic_polynomial(m: u64) -> Vec<i64> {
    let mut num: Vec<i128> = vec![1];
    let mut dens = Vec::new();
    for d in divisors(m) {
        match mobius(m / d) {
            1 => {
                let d = d as usize;
                let mut out = vec![0i128; num.len() + d];
                for (i, &c) in num.iter().enumerate() {
                    out[i + d] += c;
                    out[i] -= c;
                }
                num = out;
            }
            -1 => dens.push(d as usize),
            _ => {}
        }
    }
    for d in dens {
        // exact division by x^d − 1: a_k = q_{k−d} − q_k
        let n = num.len() - d;
        let mut quo = vec![0i128; n];
        for k in 0..n {
            let prev = if k >= d { quo[k - d] } else { 0 };
            quo[k] = prev - num[k];
        }
        num = quo;
    }
    num.iter().map(|&c| c as i64).collect()
}

fn ring_cache() -> &'static Mutex<HashMap<u64, Arc<CyclotomicRing>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<CyclotomicRing>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

pub fn ring(m: u64) -> Arc<CyclotomicRing> {
    assert!(m >= 1, "cyclotomic order must be positive");
    let mut cache = ring_cache().lock().unwrap();
    cache
        .entry(m)
        .or_insert_with(|| {
            let poly = cyclotomic_polynomial(m);
            let phi = euler_phi(m) as usize;
            debug_assert_eq!(poly.len(), phi + 1);
            Arc::new(CyclotomicRing { m, phi, poly })
        })
        .clone()
}

/// Reduce a coefficient vector (any length) to canonical form mod Φ_m.
fn reduce(ring: &CyclotomicRing, v: Vec<BigInt>) -> Vec<BigInt> {
    let m = ring.m as usize;
    let mut v = if v.len() > m {
        let mut folded = vec![BigInt::zero(); m];
        for (j, c) in v.into_iter().enumerate() {
            folded[j % m] += c;
        }
        folded
    } else {
        v
    };
    if let Some(out) = reduce_small(ring, &v) {
        return out;
    }
    let phi = ring.phi;
    let f = &ring.poly;
    while v.len() > phi {
        let top = v.len() - 1;
        let c = v.pop().unwrap();
        if !c.is_zero() {
            for (j, &fj) in f.iter().enumerate().take(phi) {
                if fj != 0 {
                    v[top - phi + j] -= &c * fj;
                }
            }
        }
    }
    v.resize(phi, BigInt::zero());
    v
}

/// i128 fast path; gives up (None) on any overflow.
fn reduce_small(ring: &CyclotomicRing, v: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut w: Vec<i128> = v
        .iter()
        .map(|c| c.to_i64().map(|x| x as i128))
        .collect::<Option<_>>()?;
    let phi = ring.phi;
    let nz: Vec<(usize, i128)> = ring.poly[..phi]
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(j, &c)| (j, c as i128))
        .collect();
    while w.len() > phi {
        let top = w.len() - 1;
        let c = w.pop().unwrap();
        if c != 0 {
            for &(j, fj) in &nz {
                let idx = top - phi + j;
                w[idx] = w[idx].checked_sub(c.checked_mul(fj)?)?;
            }
        }
    }
    w.resize(phi, 0);
    Some(w.into_iter().map(BigInt::from).collect())
}

/// An element of Z[ζ_m] in the power basis ζ^0, …, ζ^{φ(m)−1}.
#[derive(Clone, Debug)]
pub struct CyclotomicInt {
    ring: Arc<CyclotomicRing>,
    coeffs: Vec<BigInt>,
}

impl PartialEq for CyclotomicInt {
    fn eq(&self, other: &Self) -> bool {
        self.ring.m == other.ring.m && self.coeffs == other.coeffs
    }
}
impl Eq for CyclotomicInt {}

impl CyclotomicInt {
    pub fn zero(m: u64) -> Self {
        let ring = ring(m);
        let coeffs = vec![BigInt::zero(); ring.phi];
        CyclotomicInt { ring, coeffs }
    }
    pub fn from_int(m: u64, n: impl Into<BigInt>) -> Self {
        let mut z = Self::zero(m);
        z.coeffs[0] = n.into();
        z
    }
    pub fn one(m: u64) -> Self {
        Self::from_int(m, 1)
    }
    /// ζ_m^k
    pub fn zeta(m: u64, k: i64) -> Self {
        let e = k.rem_euclid(m as i64) as usize;
        let mut v = vec![0i64; m as usize];
        v[e] = 1;
        Self::from_exponent_counts(m, &v)
    }
    /// Σ_j counts[j]·ζ_m^j for an arbitrary-length count vector.
    pub fn from_exponent_counts(m: u64, counts: &[i64]) -> Self {
        let ring = ring(m);
        let v = counts.iter().map(|&c| BigInt::from(c)).collect();
        let coeffs = reduce(&ring, v);
        CyclotomicInt { ring, coeffs }
    }
    pub fn from_coefficients(m: u64, coeffs: Vec<BigInt>) -> Self {
        let ring = ring(m);
        let coeffs = reduce(&ring, coeffs);
        CyclotomicInt { ring, coeffs }
    }

    pub fn order(&self) -> u64 {
        self.ring.m
    }
    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
    /// The rational integer this element equals, if it is one.
    pub fn as_integer(&self) -> Option<BigInt> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Re-express in Z[ζ_M] for a multiple M of the order.
    pub fn embed(&self, big_m: u64) -> Result<Self> {
        let m = self.ring.m;
        if big_m % m != 0 {
            return Err(Error::Domain(format!("{big_m} is not a multiple of {m}")));
        }
        let s = (big_m / m) as usize;
        let mut v = vec![BigInt::zero(); (self.ring.phi.saturating_sub(1)) * s + 1];
        for (j, c) in self.coeffs.iter().enumerate() {
            v[j * s] = c.clone();
        }
        Ok(Self::from_coefficients(big_m, v))
    }

    fn unify(a: &Self, b: &Self) -> (Self, Self) {
        if a.ring.m == b.ring.m {
            return (a.clone(), b.clone());
        }
        let l = lcm(a.ring.m, b.ring.m);
        (a.embed(l).unwrap(), b.embed(l).unwrap())
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = Self::unify(self, other);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        CyclotomicInt {
            ring: a.ring,
            coeffs,
        }
    }
    pub fn neg(&self) -> Self {
        CyclotomicInt {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
    pub fn scale(&self, k: &BigInt) -> Self {
        CyclotomicInt {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = Self::unify(self, other);
        let phi = a.ring.phi;
        let len = 2 * phi - 1;
        if let Some(prod) = mul_small(&a.coeffs, &b.coeffs) {
            return CyclotomicInt {
                coeffs: reduce(&a.ring, prod),
                ring: a.ring,
            };
        }
        let mut prod = vec![BigInt::zero(); len];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        CyclotomicInt {
            coeffs: reduce(&a.ring, prod),
            ring: a.ring,
        }
    }

    /// Galois twist σ_t: ζ_m ↦ ζ_m^t.
    pub fn twist(&self, t: i64) -> Result<Self> {
        let m = self.ring.m;
        let tt = t.rem_euclid(m as i64) as u64;
        if gcd(tt, m) != 1 {
            return Err(Error::Domain(format!("twist exponent {t} is not prime to {m}")));
        }
        let mut v = vec![BigInt::zero(); m as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            let e = (j as u128 * tt as u128 % m as u128) as usize;
            v[e] += c;
        }
        Ok(Self::from_coefficients(m, v))
    }

    /// Image under ζ_m ↦ exp(2πi/m).
    pub fn to_complex(&self) -> (f64, f64) {
        let m = self.ring.m as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (j, c) in self.coeffs.iter().enumerate() {
            let c = c.to_f64().unwrap_or(f64::NAN);
            let a = std::f64::consts::TAU * j as f64 / m;
            re += c * a.cos();
            im += c * a.sin();
        }
        (re, im)
    }

    pub fn complex_abs2(&self) -> f64 {
        let (re, im) = self.to_complex();
        re * re + im * im
    }
}

fn mul_small(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let a: Vec<i64> = a.iter().map(|c| c.to_i64()).collect::<Option<_>>()?;
    let b: Vec<i64> = b.iter().map(|c| c.to_i64()).collect::<Option<_>>()?;
    let bits = |v: &[i64]| 64 - v.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0).leading_zeros();
    let len_bits = 64 - (a.len() as u64).leading_zeros();
    if bits(&a) + bits(&b) + len_bits > 120 {
        return None;
    }
    let mut prod = vec![0i128; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] += x as i128 * y as i128;
        }
    }
    // values may exceed i64; hand over as BigInt
    Some(prod.into_iter().map(BigInt::from).collect())
}

impl std::fmt::Display for CyclotomicInt {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut terms = Vec::new();
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            let body = match (j, mag == BigInt::from(1)) {
                (0, _) => mag.to_string(),
                (_, true) => format!("z^{j}"),
                (_, false) => format!("{mag}*z^{j}"),
            };
            terms.push((sign, body));
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (s, b)) in terms.iter().enumerate() {
            match (i, *s) {
                (0, "+") => write!(f, "{b}")?,
                (0, _) => write!(f, "-{b}")?,
                _ => write!(f, " {s} {b}")?,
            }
        }
        write!(f, "  (z = zeta_{})", self.ring.m)
    }
}

/// Multiplicative character x ↦ ζ_{q−1}^{c·dlog x} of a finite field.
#[derive(Clone, Debug)]
pub struct MultChar {
    ctx: Arc<FieldContext>,
    index: u64,
}

impl MultChar {
    pub fn new(ctx: &Arc<FieldContext>, index: i64) -> Self {
        let n = ctx.q() - 1;
        MultChar {
            ctx: ctx.clone(),
            index: index.rem_euclid(n as i64) as u64,
        }
    }
    pub fn index(&self) -> u64 {
        self.index
    }
    pub fn context(&self) -> &Arc<FieldContext> {
        &self.ctx
    }
    pub fn is_trivial(&self) -> bool {
        self.index == 0
    }
    pub fn inverse(&self) -> Self {
        MultChar::new(&self.ctx, -(self.index as i64))
    }
    pub fn power(&self, k: i64) -> Self {
        let n = (self.ctx.q() - 1) as i128;
        MultChar::new(&self.ctx, (self.index as i128 * k as i128).rem_euclid(n) as i64)
    }
    /// χ(−1) ∈ {1, −1}.
    pub fn at_minus_one(&self) -> i64 {
        if self.ctx.p() == 2 || self.index % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

/// Order m = lcm(p, q−1) of the cyclotomic ring holding τ(χ).
pub fn gauss_order(ctx: &FieldContext) -> u64 {
    lcm(ctx.p(), ctx.q() - 1)
}

/// τ(χ) = Σ_{x ≠ 0} χ(x)^{−1} ζ_p^{Tr x}, exactly.
pub fn gauss_sum(ctx: &FieldContext, chi: &MultChar) -> CyclotomicInt {
    let p = ctx.p();
    let q = ctx.q();
    let n = q - 1;
    let m = gauss_order(ctx);
    let (s_mult, s_add) = (m / n, m / p);
    let c = chi.index % n;
    let mut counts = vec![0i64; m as usize];
    for code in 1..q {
        let k = ctx.log_code(code);
        let t = ctx.trace_code(code);
        let neg_ck = (n - (c as u128 * k as u128 % n as u128) as u64) % n;
        let e = (neg_ck * s_mult + t * s_add) % m;
        counts[e as usize] += 1;
    }
    CyclotomicInt::from_exponent_counts(m, &counts)
}

/// Exponent t with t ≡ 1 mod p and t ≡ u mod q−1: the twist acting only on
/// the ζ_{q−1} part of Z[ζ_{p(q−1)}].
pub fn multiplicative_twist_exponent(ctx: &FieldContext, u: i64) -> i64 {
    let p = ctx.p() as i128;
    let n = (ctx.q() - 1) as i128;
    let m = p * n;
    if n == 1 {
        return 1;
    }
    let u = (u as i128).rem_euclid(n);
    // t = 1 + p·k with 1 + p·k ≡ u mod n
    let pinv = mod_inv((p % n) as u64, n as u64).expect("p is prime to q-1") as i128;
    let k = ((u - 1).rem_euclid(n) * pinv).rem_euclid(n);
    ((1 + p * k).rem_euclid(m)) as i64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_field::make_field;

    #[test]
    fn small_identities() {
        let z4 = CyclotomicInt::zeta(4, 1);
        assert_eq!(z4.mul(&z4), CyclotomicInt::from_int(4, -1));
        let s = CyclotomicInt::zeta(3, 1).add(&CyclotomicInt::zeta(3, 2));
        assert_eq!(s, CyclotomicInt::from_int(3, -1));
        assert_eq!(
            CyclotomicInt::zeta(5, 1).twist(2).unwrap(),
            CyclotomicInt::zeta(5, 2)
        );
        assert!(CyclotomicInt::zeta(6, 1).twist(3).is_err());
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(2394).len(), 649);
    }

    #[test]
    fn mixed_orders_embed() {
        let a = CyclotomicInt::zeta(4, 1);
        let b = CyclotomicInt::zeta(6, 1);
        let prod = a.mul(&b);
        assert_eq!(prod, CyclotomicInt::zeta(12, 5));
    }

    #[test]
    fn quadratic_gauss_sum_f3() {
        let ctx = Arc::new(make_field(3, 1).unwrap());
        let tau = gauss_sum(&ctx, &MultChar::new(&ctx, 1));
        let expected = CyclotomicInt::zeta(6, 2).sub(&CyclotomicInt::zeta(6, 4));
        assert_eq!(tau, expected);
        assert_eq!(tau.mul(&tau), CyclotomicInt::from_int(6, -3));
        assert_eq!(
            gauss_sum(&ctx, &MultChar::new(&ctx, 0)),
            CyclotomicInt::from_int(6, -1)
        );
    }

    #[test]
    fn abs2_values() {
        assert_eq!(CyclotomicInt::from_int(7, -1).complex_abs2(), 1.0);
        assert_eq!(CyclotomicInt::zero(7).complex_abs2(), 0.0);
    }
}
