//! Cyclotomic polynomials and products of them.
//!
//! Every denominator that arises from `q`-Bernoulli numbers divides a
//! product of `q^a - 1` factors, so rational functions keep such
//! denominators as exponent maps over the irreducible `Phi_d`. Divisibility
//! of a numerator by `Phi_d` is screened by evaluating at a primitive
//! `d`-th root of unity modulo a prime `p = 1 (mod d)` before any exact
//! division is attempted.

use super::ZPoly;
use num_bigint::BigInt;
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

/// `prod Phi_d^e`, keyed by `d`; never stores a zero exponent.
pub(crate) type CycloExps = BTreeMap<u32, u32>;

struct CycloEntry {
    poly: Arc<ZPoly>,
    prime: u64,
    root: u64,
}

fn table() -> &'static RwLock<HashMap<u32, Arc<CycloEntry>>> {
    static TABLE: OnceLock<RwLock<HashMap<u32, Arc<CycloEntry>>>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(HashMap::new()))
}

fn entry(d: u32) -> Arc<CycloEntry> {
    assert!(d >= 1, "cyclotomic index must be positive");
    if let Some(e) = table().read().unwrap().get(&d) {
        return e.clone();
    }
    // Built outside the write lock; a racing duplicate computes the same value.
    let mut p = ZPoly::monomial(d as usize).sub(&ZPoly::one());
    for e in divisors(d) {
        if e < d {
            p = p
                .div_exact_monic(&entry(e).poly)
                .expect("q^d - 1 is divisible by Phi_e for e | d");
        }
    }
    let (prime, root) = prime_and_root(d, &p);
    let built = Arc::new(CycloEntry { poly: Arc::new(p), prime, root });
    table().write().unwrap().entry(d).or_insert(built).clone()
}

/// The `d`-th cyclotomic polynomial.
pub(crate) fn cyclotomic(d: u32) -> Arc<ZPoly> {
    entry(d).poly.clone()
}

/// `Phi_d | n` over `Z[q]`; returns the quotient when it does.
pub(crate) fn divide_by(n: &ZPoly, d: u32) -> Option<ZPoly> {
    let e = entry(d);
    if n.deg() < e.poly.deg() || n.eval_mod(e.root, e.prime) != 0 {
        return None;
    }
    n.div_exact_monic(&e.poly)
}

pub(crate) fn divisors(n: u32) -> Vec<u32> {
    let mut v: Vec<u32> = (1..=n).filter(|d| n % d == 0).collect();
    v.sort_unstable();
    v
}

pub(crate) fn totient(n: u32) -> u32 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        while n % p == 0 {
            out.push(p);
            n /= p;
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Factorization of `q^a - 1 = prod_{d | a} Phi_d`.
pub(crate) fn qpow_minus_one(a: u32) -> CycloExps {
    divisors(a).into_iter().map(|d| (d, 1)).collect()
}

/// Factorization of `Phi_d(q^w)` into cyclotomics in `q`.
pub(crate) fn stretch_factor(d: u32, w: u32) -> CycloExps {
    let mut cur: CycloExps = [(d, 1)].into_iter().collect();
    for p in prime_factors(w) {
        let mut next = CycloExps::new();
        for (&e, &k) in &cur {
            *next.entry(e * p).or_insert(0) += k;
            if e % p != 0 {
                *next.entry(e).or_insert(0) += k;
            }
        }
        cur = next;
    }
    cur
}

pub(crate) fn stretch_exps(exps: &CycloExps, w: u32) -> CycloExps {
    let mut out = CycloExps::new();
    for (&d, &e) in exps {
        for (f, k) in stretch_factor(d, w) {
            *out.entry(f).or_insert(0) += k * e;
        }
    }
    out
}

pub(crate) fn add_exps(a: &CycloExps, b: &CycloExps) -> CycloExps {
    let mut out = a.clone();
    for (&d, &e) in b {
        *out.entry(d).or_insert(0) += e;
    }
    out
}

pub(crate) fn max_exps(a: &CycloExps, b: &CycloExps) -> CycloExps {
    let mut out = a.clone();
    for (&d, &e) in b {
        let x = out.entry(d).or_insert(0);
        *x = (*x).max(e);
    }
    out
}

/// `a / b` for exponent maps with `b <= a` pointwise.
pub(crate) fn sub_exps(a: &CycloExps, b: &CycloExps) -> CycloExps {
    let mut out = CycloExps::new();
    for (&d, &e) in a {
        let r = e - b.get(&d).copied().unwrap_or(0);
        if r > 0 {
            out.insert(d, r);
        }
    }
    out
}

pub(crate) fn expand(exps: &CycloExps) -> ZPoly {
    let mut acc = ZPoly::one();
    for (&d, &e) in exps {
        let p = cyclotomic(d);
        for _ in 0..e {
            acc = acc.mul(&p);
        }
    }
    acc
}

pub(crate) fn degree(exps: &CycloExps) -> usize {
    exps.iter().map(|(&d, &e)| (totient(d) * e) as usize).sum()
}

/// Divides out of `n` as many factors of `exps` as possible.
///
/// Returns the reduced numerator and the factors of `exps` that remain.
pub(crate) fn cancel(n: &ZPoly, exps: &CycloExps) -> (ZPoly, CycloExps) {
    let mut n = n.clone();
    let mut left = CycloExps::new();
    for (&d, &e) in exps {
        let mut k = e;
        while k > 0 {
            match divide_by(&n, d) {
                Some(qt) => {
                    n = qt;
                    k -= 1;
                }
                None => break,
            }
        }
        if k > 0 {
            left.insert(d, k);
        }
    }
    (n, left)
}

/// Complete factorization of a primitive polynomial into cyclotomics, if
/// one exists.
pub(crate) fn factor(p: &ZPoly) -> Option<CycloExps> {
    let mut out = CycloExps::new();
    if p.deg() == 0 {
        return p.is_one().then_some(out);
    }
    let c0 = &p.coeffs()[0];
    if *c0 != BigInt::from(1) && *c0 != BigInt::from(-1) {
        return None;
    }
    // Phi_1 is anti-reciprocal, every other Phi_d is reciprocal.
    if !p.is_reciprocal_up_to_sign() {
        return None;
    }
    let mut rem = p.clone();
    let mut d = 1u32;
    while rem.deg() > 0 {
        // phi(d) >= sqrt(d / 2), so larger indices cannot divide.
        if (d as u64) > 2 * (rem.deg() as u64).pow(2) + 2 {
            return None;
        }
        if totient(d) as usize <= rem.deg() {
            while let Some(qt) = divide_by(&rem, d) {
                rem = qt;
                *out.entry(d).or_insert(0) += 1;
            }
        }
        d += 1;
    }
    rem.is_one().then_some(out)
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A prime `p = 1 (mod d)` near `2^61` and a root of `Phi_d` modulo `p`.
fn prime_and_root(d: u32, phi: &ZPoly) -> (u64, u64) {
    let d = d as u64;
    let mut m = (1u64 << 61) / d;
    let p = loop {
        let p = m * d + 1;
        if is_prime(p) {
            break p;
        }
        m += 1;
    };
    let cof = (p - 1) / d;
    for x in 2.. {
        let r = pow_mod(x, cof, p);
        if phi.eval_mod(r, p) == 0 {
            return (p, r);
        }
    }
    unreachable!()
}
