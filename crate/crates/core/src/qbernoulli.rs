//! `q`-Bernoulli numbers and polynomials, rebasing, and `q`-power sums.
//!
//! `B_{n,q}` is the `t^n/n!` coefficient of `(L + t)/(q e^t - 1)`. Multiplying
//! through by `q e^t - 1` gives the recurrence used here:
//! `(q - 1) B_n = [n = 0] L + [n = 1] - q sum_{k<n} C(n,k) B_k`.
//! In base `q^w` the same recurrence runs with `q -> q^w` and `L -> w L`.

use crate::algebra::{binomial, LogPoly, MPoly, Monomial, PolyQ, RatFuncQ, Rational, Var};
use crate::error::{QsymError, Result};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

type BaseCache = Arc<RwLock<Vec<LogPoly>>>;

/// Memoized `B_{0..N}` per base `q^w`; entries are only ever appended.
fn cache_for(w: u32) -> BaseCache {
    static CACHES: OnceLock<RwLock<HashMap<u32, BaseCache>>> = OnceLock::new();
    let all = CACHES.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(c) = all.read().unwrap().get(&w) {
        return c.clone();
    }
    all.write().unwrap().entry(w).or_default().clone()
}

/// `B_{n, q^w}` computed natively in base `q^w`.
pub fn qbernoulli_number_base(n: usize, w: u32) -> LogPoly {
    assert!(w >= 1, "base exponent must be positive");
    let cache = cache_for(w);
    if let Some(b) = cache.read().unwrap().get(n) {
        return b.clone();
    }
    let mut table = cache.write().unwrap();
    let inv = LogPoly::constant(RatFuncQ::inv_qpow_minus_one(w, 1));
    while table.len() <= n {
        let m = table.len();
        let mut rhs = if m == 0 {
            LogPoly::l().scale_by(&Rational::from_integer(w.into()))
        } else if m == 1 {
            LogPoly::one()
        } else {
            LogPoly::zero()
        };
        let mut s = LogPoly::zero();
        for (k, b) in table.iter().enumerate() {
            s = s.add(&b.scale_by(&Rational::from_integer(binomial(m as u64, k as u64))));
        }
        rhs = rhs.sub(&s.mul_qpow(w as usize));
        table.push(rhs.mul(&inv));
    }
    table[n].clone()
}

/// `B_{n,q}`.
pub fn qbernoulli_number(n: usize) -> LogPoly {
    qbernoulli_number_base(n, 1)
}

/// `B_{n,q}(v) = sum_k C(n,k) B_{k,q} v^(n-k)`.
pub fn qbernoulli_poly(n: usize, var: Var) -> MPoly {
    qbernoulli_poly_base(n, 1, var)
}

/// `B_{n,q^w}(v)`.
pub fn qbernoulli_poly_base(n: usize, w: u32, var: Var) -> MPoly {
    let mut out = MPoly::zero();
    for k in 0..=n {
        let c = qbernoulli_number_base(k, w).scale_by(&Rational::from_integer(binomial(n as u64, k as u64)));
        out.add_term(Monomial::var(var, (n - k) as u8), &c);
    }
    out
}

/// Values that can be moved to base `q^w`.
pub trait Rebase: Sized {
    fn rebase(&self, w: u32) -> Result<Self>;
}

impl Rebase for LogPoly {
    fn rebase(&self, w: u32) -> Result<Self> {
        self.substitute_power(w)
    }
}

impl Rebase for MPoly {
    fn rebase(&self, w: u32) -> Result<Self> {
        self.substitute_power(w)
    }
}

/// `q -> q^w`, `L -> w L`.
pub fn rebase<T: Rebase>(a: &T, w: u32) -> Result<T> {
    if w == 0 {
        return Err(QsymError::Domain("rebase needs w >= 1".into()));
    }
    a.rebase(w)
}

/// `S_{k,q}(n) = sum_{i=0}^n i^k q^i`, with `0^0 = 1`.
pub fn power_sum(k: u32, n: u32) -> PolyQ {
    let c = (0..=n)
        .map(|i| {
            if i == 0 {
                if k == 0 {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            } else {
                Rational::from_integer(BigInt::from(i).pow(k))
            }
        })
        .collect();
    PolyQ::from_coeffs(c)
}

/// `n! / (k_1! k_2! ...)`.
pub fn multinomial(n: u64, parts: &[u64]) -> Result<BigInt> {
    if parts.iter().sum::<u64>() != n {
        return Err(QsymError::Domain(format!("parts {parts:?} do not sum to {n}")));
    }
    let mut left = n;
    let mut acc = BigInt::one();
    for &k in parts {
        acc *= binomial(left, k);
        left -= k;
    }
    Ok(acc)
}

/// Classical Bernoulli numbers with `B_1 = -1/2`.
pub fn classical_bernoulli(n: usize) -> Rational {
    let mut b: Vec<Rational> = vec![Rational::one()];
    for m in 1..=n {
        let mut s = Rational::zero();
        for (k, bk) in b.iter().enumerate() {
            s += bk * Rational::from_integer(binomial(m as u64 + 1, k as u64));
        }
        b.push(-s / Rational::from_integer((m as u64 + 1).into()));
    }
    b[n].clone()
}
