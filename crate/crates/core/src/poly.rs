//! Dense polynomials over F_p (coefficients low-to-high, trailing zeros
//! trimmed) and rational functions in one variable.

use crate::arith::mod_inv;
use crate::error::{Error, Result};
use crate::finite_field::{FieldContext, FqElem, MAX_FIELD_SIZE};

pub type Poly = Vec<u64>;

pub fn trim(a: &mut Poly) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub fn trimmed(mut a: Poly) -> Poly {
    trim(&mut a);
    a
}

/// Degree, with the zero polynomial reported as `None`.
pub fn degree(a: &[u64]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub fn constant(c: i64, p: u64) -> Poly {
    trimmed(vec![c.rem_euclid(p as i64) as u64])
}

pub fn x() -> Poly {
    vec![0, 1]
}

pub fn add(a: &[u64], b: &[u64], p: u64) -> Poly {
    let n = a.len().max(b.len());
    trimmed(
        (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p)
            .collect(),
    )
}

pub fn neg(a: &[u64], p: u64) -> Poly {
    trimmed(a.iter().map(|&c| (p - c) % p).collect())
}

pub fn sub(a: &[u64], b: &[u64], p: u64) -> Poly {
    add(a, &neg(b, p), p)
}

pub fn scale(a: &[u64], k: u64, p: u64) -> Poly {
    trimmed(a.iter().map(|&c| c * (k % p) % p).collect())
}

pub fn mul(a: &[u64], b: &[u64], p: u64) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trimmed(out)
}

pub fn pow(a: &[u64], e: u32, p: u64) -> Poly {
    (0..e).fold(vec![1], |acc, _| mul(&acc, a, p))
}

/// Quotient and remainder; `b` must be nonzero.
pub fn divrem(a: &[u64], b: &[u64], p: u64) -> (Poly, Poly) {
    let db = degree(b).expect("division by the zero polynomial");
    let inv = mod_inv(b[db], p).expect("nonzero leading coefficient");
    let mut r = trimmed(a.to_vec());
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![0u64; r.len() - db];
    while r.len() > db {
        let top = r.len() - 1;
        let c = r[top] * inv % p;
        q[top - db] = c;
        for (j, &bj) in b[..=db].iter().enumerate() {
            let idx = top - db + j;
            r[idx] = (r[idx] + p - c * bj % p) % p;
        }
        trim(&mut r);
    }
    (trimmed(q), r)
}

pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Poly {
    let mut x = trimmed(a.to_vec());
    let mut y = trimmed(b.to_vec());
    while !y.is_empty() {
        let (_, r) = divrem(&x, &y, p);
        x = y;
        y = r;
    }
    monic(&x, p).1
}

/// (leading coefficient, monic associate). The zero polynomial gives (0, []).
pub fn monic(a: &[u64], p: u64) -> (u64, Poly) {
    match degree(a) {
        None => (0, Vec::new()),
        Some(d) => {
            let lead = a[d];
            let inv = mod_inv(lead, p).unwrap();
            (lead, scale(&a[..=d], inv, p))
        }
    }
}

pub fn is_monic_irreducible(a: &[u64], p: u64) -> bool {
    match degree(a) {
        Some(d) if d >= 1 && a[d] == 1 => crate::finite_field::is_irreducible(a, p),
        _ => false,
    }
}

/// Monic polynomials of degree `d`, in integer-encoding order.
fn monic_of_degree(d: usize, p: u64) -> impl Iterator<Item = Poly> {
    let count = p.pow(d as u32);
    (0..count).map(move |mut t| {
        let mut v = Vec::with_capacity(d + 1);
        for _ in 0..d {
            v.push(t % p);
            t /= p;
        }
        v.push(1);
        v
    })
}

/// Factorization into monic irreducibles with multiplicities, plus the
/// leading coefficient.
pub fn factor(a: &[u64], p: u64) -> Result<(u64, Vec<(Poly, u32)>)> {
    let (lead, mut rest) = monic(a, p);
    if lead == 0 {
        return Err(Error::InvalidInput("cannot factor the zero polynomial".into()));
    }
    let mut out = Vec::new();
    let mut d = 1;
    while degree(&rest).unwrap_or(0) >= 2 * d {
        if p.checked_pow(d as u32).is_none_or(|c| c > MAX_FIELD_SIZE) {
            return Err(Error::Capacity(format!(
                "factoring needs trial division in degree {d} over F_{p}"
            )));
        }
        for cand in monic_of_degree(d, p) {
            let mut mult = 0;
            loop {
                let (q, r) = divrem(&rest, &cand, p);
                if !r.is_empty() {
                    break;
                }
                rest = q;
                mult += 1;
            }
            if mult > 0 {
                out.push((cand, mult));
            }
        }
        d += 1;
    }
    if degree(&rest).unwrap_or(0) >= 1 {
        match out.iter_mut().find(|(f, _)| *f == rest) {
            Some(entry) => entry.1 += 1,
            None => out.push((rest, 1)),
        }
    }
    out.sort();
    Ok((lead, out))
}

pub fn eval(ctx: &FieldContext, a: &[u64], at: &FqElem) -> FqElem {
    a.iter()
        .rev()
        .fold(ctx.zero(), |acc, &c| ctx.add(&ctx.mul(&acc, at), &ctx.from_int(c as i64)))
}

/// The smallest root (in encoding order) of `a` inside `ctx`.
pub fn find_root(ctx: &FieldContext, a: &[u64]) -> Option<FqElem> {
    ctx.elements().find(|z| eval(ctx, a, z) == ctx.zero())
}

pub fn format(a: &[u64]) -> String {
    let d = match degree(a) {
        None => return "0".into(),
        Some(d) => d,
    };
    let mut parts = Vec::new();
    for i in (0..=d).rev() {
        let c = a[i];
        if c == 0 {
            continue;
        }
        let s = match (i, c) {
            (0, c) => c.to_string(),
            (1, 1) => "x".into(),
            (1, c) => format!("{c}x"),
            (i, 1) => format!("x^{i}"),
            (i, c) => format!("{c}x^{i}"),
        };
        parts.push(s);
    }
    parts.join("+")
}

/// num/den with den monic and gcd(num, den) = 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    pub p: u64,
    pub num: Poly,
    pub den: Poly,
}

impl RationalFunction {
    pub fn new(p: u64, num: Poly, den: Poly) -> Result<Self> {
        let den = trimmed(den);
        if den.is_empty() {
            return Err(Error::Domain("division by zero".into()));
        }
        let num = trimmed(num);
        let g = gcd(&num, &den, p);
        let num = if num.is_empty() { num } else { divrem(&num, &g, p).0 };
        let den = divrem(&den, &g, p).0;
        let (lead, den) = monic(&den, p);
        let num = scale(&num, mod_inv(lead, p).unwrap(), p);
        Ok(RationalFunction { p, num, den })
    }
    pub fn poly(p: u64, a: Poly) -> Self {
        RationalFunction {
            p,
            num: trimmed(a),
            den: vec![1],
        }
    }
    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }
    pub fn add(&self, o: &Self) -> Result<Self> {
        let p = self.p;
        Self::new(
            p,
            add(&mul(&self.num, &o.den, p), &mul(&o.num, &self.den, p), p),
            mul(&self.den, &o.den, p),
        )
    }
    pub fn neg(&self) -> Self {
        RationalFunction {
            p: self.p,
            num: neg(&self.num, self.p),
            den: self.den.clone(),
        }
    }
    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }
    pub fn mul(&self, o: &Self) -> Result<Self> {
        let p = self.p;
        Self::new(p, mul(&self.num, &o.num, p), mul(&self.den, &o.den, p))
    }
    pub fn div(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return Err(Error::Domain("division by zero".into()));
        }
        let p = self.p;
        Self::new(p, mul(&self.num, &o.den, p), mul(&self.den, &o.num, p))
    }
    pub fn powi(&self, e: i64) -> Result<Self> {
        let base = if e < 0 {
            RationalFunction::poly(self.p, vec![1]).div(self)?
        } else {
            self.clone()
        };
        let k = e.unsigned_abs() as u32;
        Self::new(self.p, pow(&base.num, k, self.p), pow(&base.den, k, self.p))
    }
}
