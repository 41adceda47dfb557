//! Dense univariate polynomials in `q`.
//!
//! [`PolyQ`] is the public rational-coefficient type. [`ZPoly`] is the
//! integer-coefficient workhorse used inside rational functions, where
//! numerators and denominators are kept primitive so that products never
//! need a content computation (Gauss's lemma).

use super::{fmt_rational, Rational};
use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub(crate) struct ZPoly {
    c: Vec<BigInt>,
}

impl ZPoly {
    pub fn zero() -> Self {
        ZPoly { c: Vec::new() }
    }

    pub fn one() -> Self {
        ZPoly { c: vec![BigInt::one()] }
    }

    pub fn from_coeffs(mut c: Vec<BigInt>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        ZPoly { c }
    }

    #[cfg(test)]
    pub fn from_i64(c: &[i64]) -> Self {
        Self::from_coeffs(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    /// `q^k`.
    pub fn monomial(k: usize) -> Self {
        let mut c = vec![BigInt::zero(); k + 1];
        c[k] = BigInt::one();
        ZPoly { c }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn deg(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn lc(&self) -> Option<&BigInt> {
        self.c.last()
    }

    pub fn add(&self, o: &ZPoly) -> ZPoly {
        let n = self.c.len().max(o.c.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            match (self.c.get(i), o.c.get(i)) {
                (Some(a), Some(b)) => c.push(a + b),
                (Some(a), None) => c.push(a.clone()),
                (None, Some(b)) => c.push(b.clone()),
                (None, None) => unreachable!(),
            }
        }
        ZPoly::from_coeffs(c)
    }

    pub fn neg(&self) -> ZPoly {
        ZPoly { c: self.c.iter().map(|x| -x).collect() }
    }

    pub fn sub(&self, o: &ZPoly) -> ZPoly {
        self.add(&o.neg())
    }

    pub fn scale(&self, k: &BigInt) -> ZPoly {
        if k.is_zero() {
            return ZPoly::zero();
        }
        if k.is_one() {
            return self.clone();
        }
        ZPoly { c: self.c.iter().map(|x| x * k).collect() }
    }

    /// `self * q^k`.
    pub fn shift(&self, k: usize) -> ZPoly {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut c = vec![BigInt::zero(); k];
        c.extend(self.c.iter().cloned());
        ZPoly { c }
    }

    pub fn mul(&self, o: &ZPoly) -> ZPoly {
        if self.is_zero() || o.is_zero() {
            return ZPoly::zero();
        }
        if self.c.len() == 1 {
            return o.scale(&self.c[0]);
        }
        if o.c.len() == 1 {
            return self.scale(&o.c[0]);
        }
        if let Some(p) = self.mul_small(o) {
            return p;
        }
        let mut c = vec![BigInt::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if !b.is_zero() {
                    c[i + j] += a * b;
                }
            }
        }
        ZPoly::from_coeffs(c)
    }

    /// Schoolbook product in `i128` when every partial sum provably fits.
    fn mul_small(&self, o: &ZPoly) -> Option<ZPoly> {
        let ba = self.c.iter().map(|x| x.bits()).max().unwrap_or(0);
        let bb = o.c.iter().map(|x| x.bits()).max().unwrap_or(0);
        let terms = self.c.len().min(o.c.len()) as u64;
        let bt = 64 - terms.leading_zeros() as u64;
        if ba > 62 || bb > 62 || ba + bb + bt > 125 {
            return None;
        }
        let a: Vec<i128> = self.c.iter().map(|x| x.to_i64().unwrap() as i128).collect();
        let b: Vec<i128> = o.c.iter().map(|x| x.to_i64().unwrap() as i128).collect();
        let mut acc = vec![0i128; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                acc[i + j] += x * y;
            }
        }
        Some(ZPoly::from_coeffs(acc.into_iter().map(BigInt::from).collect()))
    }

    /// Exact quotient by a monic divisor, or `None` if the remainder is nonzero.
    pub fn div_exact_monic(&self, d: &ZPoly) -> Option<ZPoly> {
        debug_assert!(d.lc().is_some_and(|x| x.is_one()));
        if self.is_zero() {
            return Some(ZPoly::zero());
        }
        let dd = d.deg();
        if self.deg() < dd {
            return None;
        }
        let mut r = self.c.clone();
        let mut qt = vec![BigInt::zero(); self.deg() - dd + 1];
        for i in (0..qt.len()).rev() {
            let t = r[i + dd].clone();
            if t.is_zero() {
                continue;
            }
            for (j, dj) in d.c.iter().enumerate() {
                if !dj.is_zero() {
                    r[i + j] -= &t * dj;
                }
            }
            qt[i] = t;
        }
        if r.iter().take(dd).all(|x| x.is_zero()) {
            Some(ZPoly::from_coeffs(qt))
        } else {
            None
        }
    }

    /// Nonnegative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for x in &self.c {
            g = g.gcd(x);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Splits into `(content, primitive part)` with positive leading coefficient.
    pub fn primitive(&self) -> (BigInt, ZPoly) {
        if self.is_zero() {
            return (BigInt::zero(), ZPoly::zero());
        }
        let mut g = self.content();
        if self.lc().unwrap().is_negative() {
            g = -g;
        }
        if g.is_one() {
            return (g, self.clone());
        }
        let c = self.c.iter().map(|x| x / &g).collect();
        (g, ZPoly { c })
    }

    /// `p(q^w)`.
    pub fn stretch(&self, w: usize) -> ZPoly {
        if w == 1 || self.c.len() <= 1 {
            return self.clone();
        }
        let mut c = vec![BigInt::zero(); self.deg() * w + 1];
        for (i, x) in self.c.iter().enumerate() {
            c[i * w] = x.clone();
        }
        ZPoly { c }
    }

    /// Value at `q = x` modulo the prime `p < 2^63`.
    pub fn eval_mod(&self, x: u64, p: u64) -> u64 {
        let mut acc: u128 = 0;
        for c in self.c.iter().rev() {
            acc = (acc * x as u128 + mod_u64(c, p) as u128) % p as u128;
        }
        acc as u64
    }

    pub fn to_polyq(&self) -> PolyQ {
        PolyQ::from_coeffs(self.c.iter().map(|x| Rational::from_integer(x.clone())).collect())
    }

    /// Whether `q^deg p(1/q) = ±p(q)`.
    pub fn is_reciprocal_up_to_sign(&self) -> bool {
        let n = self.c.len();
        let same = (0..n).all(|i| self.c[i] == self.c[n - 1 - i]);
        same || (0..n).all(|i| self.c[i] == -&self.c[n - 1 - i])
    }
}

/// `x mod p` in `[0, p)`.
pub(crate) fn mod_u64(x: &BigInt, p: u64) -> u64 {
    let mut r: u128 = 0;
    for d in x.magnitude().iter_u64_digits().rev() {
        r = ((r << 64) | d as u128) % p as u128;
    }
    let r = r as u64;
    if x.sign() == Sign::Minus && r != 0 {
        p - r
    } else {
        r
    }
}

/// Dense polynomial in `q` with rational coefficients; index = power of `q`.
///
/// The coefficient list never ends in a zero, so the zero polynomial is the
/// empty list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct PolyQ {
    coeffs: Vec<Rational>,
}

impl PolyQ {
    pub fn zero() -> Self {
        PolyQ { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// The indeterminate `q`.
    pub fn q() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut v = vec![Rational::zero(); k + 1];
        v[k] = c;
        Self::from_coeffs(v)
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|x| x.is_zero()) {
            coeffs.pop();
        }
        PolyQ { coeffs }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::from_coeffs(c.iter().map(|&x| Rational::from_integer(x.into())).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.lc().is_some_and(|c| c.is_one())
    }

    pub fn add(&self, o: &PolyQ) -> PolyQ {
        let n = self.coeffs.len().max(o.coeffs.len());
        PolyQ::from_coeffs((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &PolyQ) -> PolyQ {
        let n = self.coeffs.len().max(o.coeffs.len());
        PolyQ::from_coeffs((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn neg(&self) -> PolyQ {
        PolyQ { coeffs: self.coeffs.iter().map(|x| -x).collect() }
    }

    pub fn mul(&self, o: &PolyQ) -> PolyQ {
        if self.is_zero() || o.is_zero() {
            return PolyQ::zero();
        }
        let mut c = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        PolyQ::from_coeffs(c)
    }

    pub fn scale(&self, k: &Rational) -> PolyQ {
        PolyQ::from_coeffs(self.coeffs.iter().map(|x| x * k).collect())
    }

    /// Euclidean division; `None` when dividing by zero.
    pub fn div_rem(&self, d: &PolyQ) -> Option<(PolyQ, PolyQ)> {
        let dd = d.degree()?;
        let lc_inv = d.lc().unwrap().recip();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Some((PolyQ::zero(), self.clone()));
        }
        let mut qt = vec![Rational::zero(); r.len() - dd];
        for i in (0..qt.len()).rev() {
            let t = &r[i + dd] * &lc_inv;
            if t.is_zero() {
                continue;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                r[i + j] -= &t * dj;
            }
            qt[i] = t;
        }
        r.truncate(dd);
        Some((PolyQ::from_coeffs(qt), PolyQ::from_coeffs(r)))
    }

    pub fn make_monic(&self) -> PolyQ {
        match self.lc() {
            None => PolyQ::zero(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    /// Monic greatest common divisor (zero iff both inputs are zero).
    pub fn gcd(&self, o: &PolyQ) -> PolyQ {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).unwrap();
            a = b;
            b = r.make_monic();
        }
        a.make_monic()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    /// `p(q^w)`.
    pub fn stretch(&self, w: usize) -> PolyQ {
        if w == 1 || self.coeffs.len() <= 1 {
            return self.clone();
        }
        let mut c = vec![Rational::zero(); (self.coeffs.len() - 1) * w + 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            c[i * w] = x.clone();
        }
        PolyQ { coeffs: c }
    }

    /// Coefficients of `p(1 + e)` as a polynomial in `e`.
    pub fn taylor_shift_one(&self) -> PolyQ {
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = c[j + 1].clone();
                c[j] += t;
            }
        }
        PolyQ::from_coeffs(c)
    }

    /// `(content, primitive integer part)`: `self = content * part` with
    /// `part` primitive and of positive leading coefficient.
    pub(crate) fn to_primitive(&self) -> (Rational, ZPoly) {
        if self.is_zero() {
            return (Rational::zero(), ZPoly::zero());
        }
        let l = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|x| x.numer() * (&l / x.denom()))
            .collect();
        let (g, p) = ZPoly::from_coeffs(ints).primitive();
        (Rational::new(g, l), p)
    }

    pub(crate) fn from_zpoly(scale: &Rational, p: &ZPoly) -> PolyQ {
        PolyQ::from_coeffs(
            p.coeffs()
                .iter()
                .map(|x| scale * Rational::from_integer(x.clone()))
                .collect(),
        )
    }

    /// Renders with ascending powers of `var`, e.g. `q + 4*q^2`.
    pub fn render(&self, var: &str) -> String {
        render_terms(
            self.coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (c.clone(), power(var, i))),
        )
    }

    /// Renders with descending powers, e.g. `q^2 + q + 1`.
    pub fn render_desc(&self, var: &str) -> String {
        render_terms(
            self.coeffs
                .iter()
                .enumerate()
                .rev()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (c.clone(), power(var, i))),
        )
    }
}

impl fmt::Display for PolyQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("q"))
    }
}

pub(crate) fn power(var: &str, k: usize) -> String {
    match k {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{k}"),
    }
}

/// Joins `(coefficient, monomial)` pairs as `c*m + ... - ...`; an empty
/// monomial string denotes the constant term.
pub(crate) fn render_terms(terms: impl Iterator<Item = (Rational, String)>) -> String {
    let mut out = String::new();
    for (c, m) in terms {
        let neg = c.is_negative();
        let a = c.abs();
        let body = if m.is_empty() {
            fmt_rational(&a)
        } else if a.is_one() {
            m
        } else {
            format!("{}*{}", fmt_rational(&a), m)
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
