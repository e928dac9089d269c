//! Finite fields F_q = F_p[x]/(f) with a fixed primitive element and a full
//! discrete-log table.
//!
//! Elements are stored as coefficient vectors. Internally every element also
//! has an integer encoding `sum c_i p^i`, which indexes the log table.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::arith::{factorize, is_prime};
use crate::error::{Error, Result};

pub const MAX_FIELD_SIZE: u64 = 1_000_000;
pub const MAX_DEGREE: u32 = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimePower {
    pub p: u64,
    pub r: u32,
    pub q: u64,
}

impl PrimePower {
    pub fn new(p: u64, r: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        if r == 0 {
            return Err(Error::InvalidInput("exponent r must be positive".into()));
        }
        let q = p
            .checked_pow(r)
            .ok_or_else(|| Error::Capacity(format!("{p}^{r} overflows")))?;
        Ok(PrimePower { p, r, q })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FqElem {
    coeffs: Vec<u64>,
}

impl FqElem {
    pub fn coefficients(&self) -> &[u64] {
        &self.coeffs
    }
}

#[derive(Debug)]
pub struct FieldContext {
    pp: PrimePower,
    modulus: Vec<u64>,
    generator: u32,
    exp_table: Vec<u32>,
    log_table: Vec<u32>,
    basis_trace: Vec<u64>,
}

// ---- polynomial helpers over F_p, low-to-high coefficient vectors ----

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn poly_mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    poly_rem(prod, f, p)
}

/// Remainder modulo a monic polynomial.
fn poly_rem(mut a: Vec<u64>, f: &[u64], p: u64) -> Vec<u64> {
    let df = f.len() - 1;
    trim(&mut a);
    while a.len() > df {
        let top = a.len() - 1;
        let c = a[top];
        if c != 0 {
            for (j, &fj) in f.iter().enumerate() {
                let idx = top - df + j;
                a[idx] = (a[idx] + p * p - c * fj % p) % p;
            }
        }
        a.pop();
        trim(&mut a);
    }
    a
}

/// Remainder modulo an arbitrary nonzero polynomial.
fn poly_rem_general(mut a: Vec<u64>, b: &[u64], p: u64) -> Vec<u64> {
    let db = b.len() - 1;
    let inv = crate::arith::mod_inv(b[db], p).expect("leading coefficient is a unit");
    trim(&mut a);
    while a.len() > db {
        let top = a.len() - 1;
        let c = a[top] * inv % p;
        for (j, &bj) in b.iter().enumerate() {
            let idx = top - db + j;
            a[idx] = (a[idx] + p * p - c * bj % p) % p;
        }
        trim(&mut a);
    }
    a
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = poly_rem_general(x, &y, p);
        x = y;
        y = r;
    }
    x
}

fn poly_powmod(base: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut result = vec![1u64];
    let mut b = poly_rem(base.to_vec(), f, p);
    while e > 0 {
        if e & 1 == 1 {
            result = poly_mulmod(&result, &b, f, p);
        }
        b = poly_mulmod(&b, &b, f, p);
        e >>= 1;
    }
    result
}

/// Irreducibility over F_p by the gcd(f, x^{p^i} - x) test.
pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    let mut f = f.to_vec();
    trim(&mut f);
    let deg = match f.len() {
        0 | 1 => return false,
        n => n - 1,
    };
    if deg == 1 {
        return true;
    }
    // make monic
    let inv = crate::arith::mod_inv(f[deg], p).unwrap();
    for c in f.iter_mut() {
        *c = *c * inv % p;
    }
    let mut xp = vec![0, 1];
    for _ in 1..=deg / 2 {
        xp = poly_powmod(&xp, p, &f, p);
        let mut diff = xp.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        trim(&mut diff);
        if diff.is_empty() {
            return false;
        }
        let g = poly_gcd(&f, &diff, p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

/// Deterministically builds F_{p^r}: the smallest monic irreducible modulus and
/// the smallest primitive element, both in the integer-encoding order.
pub fn make_field(p: u64, r: u32) -> Result<FieldContext> {
    let pp = PrimePower::new(p, r)?;
    if r > MAX_DEGREE || pp.q > MAX_FIELD_SIZE {
        return Err(Error::Capacity(format!(
            "field of size {p}^{r} exceeds the supported bound"
        )));
    }
    let q = pp.q;
    let ru = r as usize;
    let modulus = if r == 1 {
        vec![0, 1]
    } else {
        (0..q)
            .map(|t| {
                let mut f = digits(t, p, ru);
                f.push(1);
                f
            })
            .find(|f| f[0] != 0 && is_irreducible(f, p))
            .expect("irreducible polynomials exist in every degree")
    };

    let primes: Vec<u64> = factorize(q - 1).into_iter().map(|(l, _)| l).collect();
    let mut generator = None;
    for t in 1..q {
        let g = digits(t, p, ru);
        let mut g_trim = g.clone();
        trim(&mut g_trim);
        let ok = primes.iter().all(|&l| {
            let mut v = poly_powmod(&g_trim, (q - 1) / l, &modulus, p);
            trim(&mut v);
            v != vec![1]
        });
        if ok {
            generator = Some(t as u32);
            break;
        }
    }
    let generator = generator.expect("F_q^x is cyclic");

    let mut exp_table = Vec::with_capacity((q - 1) as usize);
    let mut log_table = vec![u32::MAX; q as usize];
    let g_poly = {
        let mut v = digits(generator as u64, p, ru);
        trim(&mut v);
        v
    };
    let mut cur = vec![1u64];
    for k in 0..(q - 1) {
        let code = encode(&cur, p);
        exp_table.push(code as u32);
        log_table[code as usize] = k as u32;
        cur = poly_mulmod(&cur, &g_poly, &modulus, p);
    }

    let mut ctx = FieldContext {
        pp,
        modulus,
        generator,
        exp_table,
        log_table,
        basis_trace: Vec::new(),
    };
    ctx.basis_trace = (0..ru)
        .map(|i| {
            let mut c = vec![0; ru];
            c[i] = 1;
            ctx.trace_by_definition(&FqElem { coeffs: c })
        })
        .collect();
    Ok(ctx)
}

fn digits(mut t: u64, p: u64, r: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(r);
    for _ in 0..r {
        out.push(t % p);
        t /= p;
    }
    out
}

fn encode(c: &[u64], p: u64) -> u64 {
    c.iter().rev().fold(0, |acc, &x| acc * p + x)
}

impl FieldContext {
    pub fn prime_power(&self) -> PrimePower {
        self.pp
    }
    pub fn p(&self) -> u64 {
        self.pp.p
    }
    pub fn r(&self) -> u32 {
        self.pp.r
    }
    pub fn q(&self) -> u64 {
        self.pp.q
    }
    /// Monic modulus, low-to-high coefficients.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }
    pub fn generator(&self) -> FqElem {
        self.decode(self.generator as u64)
    }

    pub fn elem(&self, coeffs: &[u64]) -> Result<FqElem> {
        if coeffs.len() != self.pp.r as usize {
            return Err(Error::InvalidInput(format!(
                "expected {} coefficients, got {}",
                self.pp.r,
                coeffs.len()
            )));
        }
        Ok(FqElem {
            coeffs: coeffs.iter().map(|c| c % self.pp.p).collect(),
        })
    }
    pub fn from_int(&self, n: i64) -> FqElem {
        let mut c = vec![0; self.pp.r as usize];
        c[0] = crate::arith::mod_i(n, self.pp.p);
        FqElem { coeffs: c }
    }
    pub fn zero(&self) -> FqElem {
        self.from_int(0)
    }
    pub fn one(&self) -> FqElem {
        self.from_int(1)
    }

    /// Integer encoding in `0..q`.
    pub fn encode(&self, x: &FqElem) -> u64 {
        encode(&x.coeffs, self.pp.p)
    }
    pub fn decode(&self, code: u64) -> FqElem {
        FqElem {
            coeffs: digits(code, self.pp.p, self.pp.r as usize),
        }
    }
    /// All field elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = FqElem> + '_ {
        (0..self.pp.q).map(|t| self.decode(t))
    }

    pub fn add(&self, x: &FqElem, y: &FqElem) -> FqElem {
        let p = self.pp.p;
        FqElem {
            coeffs: x
                .coeffs
                .iter()
                .zip(&y.coeffs)
                .map(|(a, b)| (a + b) % p)
                .collect(),
        }
    }
    pub fn neg(&self, x: &FqElem) -> FqElem {
        let p = self.pp.p;
        FqElem {
            coeffs: x.coeffs.iter().map(|a| (p - a) % p).collect(),
        }
    }
    pub fn sub(&self, x: &FqElem, y: &FqElem) -> FqElem {
        self.add(x, &self.neg(y))
    }
    pub fn mul(&self, x: &FqElem, y: &FqElem) -> FqElem {
        let a = self.encode(x);
        let b = self.encode(y);
        if a == 0 || b == 0 {
            return self.zero();
        }
        let n = self.pp.q - 1;
        let k = (self.log_table[a as usize] as u64 + self.log_table[b as usize] as u64) % n;
        self.decode(self.exp_table[k as usize] as u64)
    }
    pub fn pow(&self, x: &FqElem, e: u64) -> FqElem {
        let a = self.encode(x);
        if a == 0 {
            return if e == 0 { self.one() } else { self.zero() };
        }
        let n = self.pp.q - 1;
        let k = (self.log_table[a as usize] as u128 * e as u128 % n as u128) as usize;
        self.decode(self.exp_table[k] as u64)
    }
    pub fn inv(&self, x: &FqElem) -> Result<FqElem> {
        let l = self.dlog(x)?;
        let n = self.pp.q - 1;
        Ok(self.exp((n - l) % n))
    }
    /// generator^k
    pub fn exp(&self, k: u64) -> FqElem {
        self.decode(self.exp_table[(k % (self.pp.q - 1)) as usize] as u64)
    }
    pub fn exp_code(&self, k: u64) -> u64 {
        self.exp_table[(k % (self.pp.q - 1)) as usize] as u64
    }
    pub fn frobenius(&self, x: &FqElem) -> FqElem {
        self.pow(x, self.pp.p)
    }

    pub fn dlog(&self, x: &FqElem) -> Result<u64> {
        let a = self.encode(x);
        if a == 0 {
            return Err(Error::Domain("discrete log of zero".into()));
        }
        Ok(self.log_table[a as usize] as u64)
    }

    /// Absolute trace to F_p, evaluated through the linear trace form.
    pub fn trace(&self, x: &FqElem) -> u64 {
        let p = self.pp.p;
        x.coeffs
            .iter()
            .zip(&self.basis_trace)
            .fold(0, |acc, (c, t)| (acc + c * t) % p)
    }

    /// Trace as the literal Frobenius sum; used to build and audit `trace`.
    pub fn trace_by_definition(&self, x: &FqElem) -> u64 {
        let mut sum = self.zero();
        let mut cur = x.clone();
        for _ in 0..self.pp.r {
            sum = self.add(&sum, &cur);
            cur = self.frobenius(&cur);
        }
        assert!(
            sum.coeffs[1..].iter().all(|&c| c == 0),
            "trace must land in the prime field"
        );
        sum.coeffs[0]
    }

    pub fn trace_code(&self, code: u64) -> u64 {
        let p = self.pp.p;
        let mut t = code;
        let mut acc = 0;
        for bt in &self.basis_trace {
            acc = (acc + (t % p) * bt) % p;
            t /= p;
        }
        acc
    }
    pub fn log_code(&self, code: u64) -> u64 {
        self.log_table[code as usize] as u64
    }
}

/// Shared, lazily built field for (p, r).
pub fn field(p: u64, r: u32) -> Result<Arc<FieldContext>> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, u32), Arc<FieldContext>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(ctx) = cache.lock().unwrap().get(&(p, r)) {
        return Ok(ctx.clone());
    }
    let ctx = Arc::new(make_field(p, r)?);
    cache.lock().unwrap().insert((p, r), ctx.clone());
    Ok(ctx)
}
