//! p-adic valuation of Gauss sums, computed inside W(F_q)/p^M [λ]/(E(λ))
//! where λ = ζ_p − 1 and E is the Eisenstein polynomial Φ_p(1 + λ).
//!
//! ζ_{q−1} is sent to the Teichmüller lift of the field generator, so the
//! character with index c becomes x ↦ ω(x)^c.

use crate::arith::{rat, val_p};
use crate::cyclotomic::MultChar;
use crate::error::{Error, Result};
use crate::finite_field::{FieldContext, FqElem};
use crate::arith::Rational;

/// Element of W(F_q)/p^M, as a polynomial of degree < r with coefficients mod p^M.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WittApprox {
    pub value: Vec<u64>,
}

/// The truncated unramified ring (Z/p^M)[x]/(F), F the integer lift of the
/// field modulus (coefficients in 0..p).
#[derive(Clone, Debug)]
pub struct UnramifiedRing<'a> {
    ctx: &'a FieldContext,
    precision: u32,
    pm: u64,
    modulus: Vec<u64>,
}

impl<'a> UnramifiedRing<'a> {
    pub fn new(ctx: &'a FieldContext, precision: u32) -> Result<Self> {
        if precision == 0 {
            return Err(Error::InvalidInput("precision M must be at least 1".into()));
        }
        let pm = ctx
            .p()
            .checked_pow(precision)
            .filter(|&v| v < (1u64 << 62))
            .ok_or_else(|| Error::Capacity(format!("p^{precision} too large")))?;
        Ok(UnramifiedRing {
            ctx,
            precision,
            pm,
            modulus: ctx.modulus().to_vec(),
        })
    }
    pub fn precision(&self) -> u32 {
        self.precision
    }
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }
    fn r(&self) -> usize {
        self.ctx.r() as usize
    }
    pub fn zero(&self) -> WittApprox {
        WittApprox {
            value: vec![0; self.r()],
        }
    }
    pub fn from_int(&self, n: i64) -> WittApprox {
        let mut z = self.zero();
        z.value[0] = n.rem_euclid(self.pm as i64) as u64;
        z
    }
    /// Naive lift of a field element (coefficients in 0..p).
    pub fn lift(&self, x: &FqElem) -> WittApprox {
        WittApprox {
            value: x.coefficients().to_vec(),
        }
    }
    pub fn reduce_mod_p(&self, x: &WittApprox) -> FqElem {
        let p = self.ctx.p();
        let c: Vec<u64> = x.value.iter().map(|v| v % p).collect();
        self.ctx.elem(&c).expect("length r")
    }
    pub fn add(&self, a: &WittApprox, b: &WittApprox) -> WittApprox {
        WittApprox {
            value: a
                .value
                .iter()
                .zip(&b.value)
                .map(|(x, y)| (x + y) % self.pm)
                .collect(),
        }
    }
    pub fn neg(&self, a: &WittApprox) -> WittApprox {
        WittApprox {
            value: a.value.iter().map(|x| (self.pm - x) % self.pm).collect(),
        }
    }
    pub fn scale(&self, a: &WittApprox, k: u64) -> WittApprox {
        let pm = self.pm as u128;
        WittApprox {
            value: a
                .value
                .iter()
                .map(|&x| (x as u128 * (k as u128 % pm) % pm) as u64)
                .collect(),
        }
    }
    pub fn mul(&self, a: &WittApprox, b: &WittApprox) -> WittApprox {
        let r = self.r();
        let pm = self.pm as u128;
        let mut prod = vec![0u128; 2 * r - 1];
        for (i, &x) in a.value.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.value.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u128 * y as u128) % pm;
            }
        }
        for top in (r..2 * r - 1).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            for (j, &fj) in self.modulus[..r].iter().enumerate() {
                let idx = top - r + j;
                prod[idx] = (prod[idx] + pm - c * fj as u128 % pm) % pm;
            }
        }
        WittApprox {
            value: prod[..r].iter().map(|&c| c as u64).collect(),
        }
    }
    pub fn pow(&self, a: &WittApprox, mut e: u64) -> WittApprox {
        let mut result = self.from_int(1);
        let mut b = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        result
    }
    /// min over components of v_p; None for zero.
    pub fn valuation(&self, a: &WittApprox) -> Option<u32> {
        let p = self.ctx.p();
        a.value.iter().filter(|&&c| c != 0).map(|&c| val_p(c, p)).min()
    }

    /// Teichmüller representative: iterate y ↦ y^q until it stabilizes.
    pub fn teichmuller(&self, x: &FqElem) -> Result<WittApprox> {
        if x.coefficients().iter().all(|&c| c == 0) {
            return Err(Error::Domain("Teichmuller lift of zero".into()));
        }
        let q = self.ctx.q();
        let mut y = self.lift(x);
        for _ in 0..=self.precision + 1 {
            let next = self.pow(&y, q);
            if next == y {
                return Ok(y);
            }
            y = next;
        }
        unreachable!("Teichmuller iteration converges within M steps")
    }
}

/// Σ_{j < p−1} coeffs[j]·λ^j.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamifiedElem {
    pub coeffs: Vec<WittApprox>,
    pub lambda_precision: u32,
}

/// W_M[λ]/(E(λ)) together with a Gauss-sum evaluator for one field.
pub struct PadicGaussOracle<'a> {
    w: UnramifiedRing<'a>,
    p: u64,
    n_lambda: u32,
    /// λ^{p−1} = −Σ eis[j] λ^j
    eis: Vec<u64>,
    omega_powers: Vec<WittApprox>,
    trace_of_power: Vec<u64>,
    one_plus_lambda_powers: Vec<RamifiedElem>,
}

pub fn default_lambda_precision(p: u64, r: u32) -> u32 {
    r * (p as u32 - 1) + 2
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

impl<'a> PadicGaussOracle<'a> {
    pub fn new(ctx: &'a FieldContext, n_lambda: u32) -> Result<Self> {
        let p = ctx.p();
        if n_lambda == 0 {
            return Err(Error::InvalidInput("lambda precision must be positive".into()));
        }
        let m = n_lambda.div_ceil(p as u32 - 1);
        let w = UnramifiedRing::new(ctx, m)?;
        let eis: Vec<u64> = (1..p)
            .map(|k| binomial(p, k) % w.pm)
            .collect();
        let omega = w.teichmuller(&ctx.generator())?;
        let n = (ctx.q() - 1) as usize;
        let mut omega_powers = Vec::with_capacity(n);
        let mut cur = w.from_int(1);
        for _ in 0..n {
            omega_powers.push(cur.clone());
            cur = w.mul(&cur, &omega);
        }
        let trace_of_power = (0..n as u64)
            .map(|k| ctx.trace_code(ctx.exp_code(k)))
            .collect();
        let mut oracle = PadicGaussOracle {
            w,
            p,
            n_lambda,
            eis,
            omega_powers,
            trace_of_power,
            one_plus_lambda_powers: Vec::new(),
        };
        let mut one_plus_lambda = oracle.ram_from_w(&oracle.w.from_int(1));
        if p > 2 {
            one_plus_lambda.coeffs[1] = oracle.w.from_int(1);
        } else {
            // p = 2: λ = −2
            one_plus_lambda = oracle.ram_from_w(&oracle.w.from_int(-1));
        }
        let mut cur = oracle.ram_from_w(&oracle.w.from_int(1));
        for _ in 0..p {
            oracle.one_plus_lambda_powers.push(cur.clone());
            cur = oracle.ram_mul(&cur, &one_plus_lambda);
        }
        Ok(oracle)
    }

    pub fn unramified(&self) -> &UnramifiedRing<'a> {
        &self.w
    }

    fn slots(&self) -> usize {
        (self.p - 1) as usize
    }

    pub fn ram_from_w(&self, a: &WittApprox) -> RamifiedElem {
        let mut coeffs = vec![self.w.zero(); self.slots()];
        coeffs[0] = a.clone();
        RamifiedElem {
            coeffs,
            lambda_precision: self.n_lambda,
        }
    }

    pub fn ram_add(&self, a: &RamifiedElem, b: &RamifiedElem) -> RamifiedElem {
        RamifiedElem {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(x, y)| self.w.add(x, y))
                .collect(),
            lambda_precision: self.n_lambda,
        }
    }

    pub fn ram_mul(&self, a: &RamifiedElem, b: &RamifiedElem) -> RamifiedElem {
        let s = self.slots();
        let mut prod = vec![self.w.zero(); 2 * s - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            for (j, y) in b.coeffs.iter().enumerate() {
                prod[i + j] = self.w.add(&prod[i + j], &self.w.mul(x, y));
            }
        }
        for top in (s..2 * s - 1).rev() {
            let c = prod[top].clone();
            for (j, &e) in self.eis.iter().enumerate() {
                let idx = top - s + j;
                prod[idx] = self.w.add(&prod[idx], &self.w.neg(&self.w.scale(&c, e)));
            }
        }
        prod.truncate(s);
        RamifiedElem {
            coeffs: prod,
            lambda_precision: self.n_lambda,
        }
    }

    /// τ(χ_c) in the truncated ring.
    pub fn gauss_element(&self, c: u64) -> RamifiedElem {
        let n = self.omega_powers.len() as u64;
        let c = c % n;
        let mut by_trace = vec![self.w.zero(); self.p as usize];
        for k in 0..n {
            let idx = (n - (c as u128 * k as u128 % n as u128) as u64) % n;
            let t = self.trace_of_power[k as usize] as usize;
            by_trace[t] = self.w.add(&by_trace[t], &self.omega_powers[idx as usize]);
        }
        let mut total = self.ram_from_w(&self.w.zero());
        for (t, a) in by_trace.iter().enumerate() {
            let term = RamifiedElem {
                coeffs: self.one_plus_lambda_powers[t]
                    .coeffs
                    .iter()
                    .map(|b| self.w.mul(a, b))
                    .collect(),
                lambda_precision: self.n_lambda,
            };
            total = self.ram_add(&total, &term);
        }
        total
    }

    /// λ-adic valuation k, returned as k/(p−1).
    pub fn valuation(&self, x: &RamifiedElem) -> Result<Rational> {
        let p1 = self.p - 1;
        let k = x
            .coeffs
            .iter()
            .enumerate()
            .filter_map(|(j, a)| self.w.valuation(a).map(|v| j as u64 + p1 * v as u64))
            .min();
        match k {
            Some(k) if k < self.n_lambda as u64 => Ok(rat(k as i64, p1 as i64)),
            _ => Err(Error::Precision {
                given: self.n_lambda,
                required: self.n_lambda.max(default_lambda_precision(self.p, self.w.ctx.r()))
                    + p1 as u32,
            }),
        }
    }

    pub fn gauss_valuation(&self, c: u64) -> Result<Rational> {
        self.valuation(&self.gauss_element(c))
    }
}

/// v_p(τ(χ)) through the Teichmüller embedding.
pub fn padic_gauss_valuation(
    ctx: &FieldContext,
    chi: &MultChar,
    n_lambda: Option<u32>,
) -> Result<Rational> {
    let n = n_lambda.unwrap_or_else(|| default_lambda_precision(ctx.p(), ctx.r()));
    PadicGaussOracle::new(ctx, n)?.gauss_valuation(chi.index())
}

pub fn teichmuller(ctx: &FieldContext, x: &FqElem, precision: u32) -> Result<WittApprox> {
    UnramifiedRing::new(ctx, precision)?.teichmuller(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_field::make_field;
    use std::sync::Arc;

    #[test]
    fn teichmuller_of_two_mod_25() {
        let f = make_field(5, 1).unwrap();
        let w = teichmuller(&f, &f.from_int(2), 2).unwrap();
        assert_eq!(w.value, vec![7]);
        let one = teichmuller(&f, &f.one(), 4).unwrap();
        assert_eq!(one.value, vec![1]);
        assert!(teichmuller(&f, &f.zero(), 2).is_err());
    }

    #[test]
    fn teichmuller_is_root_of_unity_in_extension() {
        let f = make_field(3, 2).unwrap();
        let ring = UnramifiedRing::new(&f, 4).unwrap();
        for x in f.elements().skip(1) {
            let w = ring.teichmuller(&x).unwrap();
            assert_eq!(ring.pow(&w, 8), ring.from_int(1));
            assert_eq!(ring.reduce_mod_p(&w), x);
        }
    }

    #[test]
    fn worked_valuations() {
        let f3 = Arc::new(make_field(3, 1).unwrap());
        assert_eq!(
            padic_gauss_valuation(&f3, &MultChar::new(&f3, 1), None).unwrap(),
            rat(1, 2)
        );
        assert_eq!(
            padic_gauss_valuation(&f3, &MultChar::new(&f3, 0), None).unwrap(),
            rat(0, 1)
        );
        let f8 = Arc::new(make_field(2, 3).unwrap());
        assert_eq!(
            padic_gauss_valuation(&f8, &MultChar::new(&f8, 3), None).unwrap(),
            rat(2, 1)
        );
    }

    #[test]
    fn low_precision_is_an_error() {
        let f8 = make_field(2, 3).unwrap();
        let oracle = PadicGaussOracle::new(&f8, 2).unwrap();
        assert!(matches!(
            oracle.gauss_valuation(3),
            Err(Error::Precision { .. })
        ));
    }
}
