//! Laurent expansion around `q = 1`.
//!
//! `q = 1 + e` and `L = log(1 + e)`. A series carries its absolute
//! precision: it is known modulo `e^(low + len)`.

use super::{LogPoly, PolyQ, RatFuncQ, Rational};
use crate::algebra::fmt_rational;
use crate::error::{QsymError, Result};
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Largest pole order at `q = 1` accepted by [`eps_expand`].
pub const DEFAULT_POLE_BOUND: u32 = 16;

/// `sum coeffs[i] e^(low + i)`, known modulo `e^(low + coeffs.len())`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsLaurent {
    low: i64,
    coeffs: Vec<Rational>,
}

impl EpsLaurent {
    /// Zero known modulo `e^prec`.
    pub fn zero(prec: i64) -> Self {
        EpsLaurent { low: prec, coeffs: Vec::new() }
    }

    /// Builds and strips leading zeros; the absolute precision is kept.
    pub fn new(low: i64, coeffs: Vec<Rational>) -> Self {
        let k = coeffs.iter().take_while(|c| c.is_zero()).count();
        EpsLaurent { low: low + k as i64, coeffs: coeffs[k..].to_vec() }
    }

    /// Valuation when nonzero; for an unresolved zero, the precision.
    pub fn low(&self) -> i64 {
        self.low
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Number of retained terms.
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// Exponents below this are known.
    pub fn precision(&self) -> i64 {
        self.low + self.coeffs.len() as i64
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `e^k`, `None` past the precision.
    pub fn coeff(&self, k: i64) -> Option<Rational> {
        if k >= self.precision() {
            None
        } else if k < self.low {
            Some(Rational::zero())
        } else {
            Some(self.coeffs[(k - self.low) as usize].clone())
        }
    }

    /// Keeps at most `n` terms.
    pub fn truncate(&self, n: usize) -> Self {
        EpsLaurent { low: self.low, coeffs: self.coeffs.iter().take(n).cloned().collect() }
    }

    fn known_to(&self, prec: i64) -> Vec<Rational> {
        (self.low..prec).map(|k| self.coeff(k).unwrap()).collect()
    }

    pub fn add(&self, o: &Self) -> Self {
        let prec = self.precision().min(o.precision());
        let low = self.low.min(o.low).min(prec);
        let c = (low..prec).map(|k| self.coeff(k).unwrap() + o.coeff(k).unwrap()).collect();
        Self::new(low, c)
    }

    pub fn neg(&self) -> Self {
        EpsLaurent { low: self.low, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let prec = (self.precision() + o.low).min(o.precision() + self.low);
        let low = self.low + o.low;
        if self.is_zero() || o.is_zero() {
            return Self::zero(prec);
        }
        let n = (prec - low).max(0) as usize;
        let mut c = vec![Rational::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate().take(n) {
            for (j, b) in o.coeffs.iter().enumerate().take(n - i) {
                c[i + j] += a * b;
            }
        }
        Self::new(low, c)
    }

    /// Multiplicative inverse to the same relative precision.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(QsymError::NotInvertible);
        }
        let n = self.coeffs.len();
        let a0 = self.coeffs[0].recip();
        let mut c: Vec<Rational> = Vec::with_capacity(n);
        c.push(a0.clone());
        for k in 1..n {
            let mut s = Rational::zero();
            for j in 1..=k {
                s += &self.coeffs[j] * &c[k - j];
            }
            c.push(-s * &a0);
        }
        Ok(Self::new(-self.low, c))
    }

    /// Exact polynomial in `e`, known to the given precision.
    fn from_poly(p: &PolyQ, prec: i64) -> Self {
        let c = (0..prec.max(0)).map(|k| p.coeff(k as usize)).collect();
        Self::new(0, c)
    }

    /// Expansion of `r(1 + e)` known modulo `e^prec`.
    fn from_ratfunc(r: &RatFuncQ, prec: i64, bound: u32) -> Result<Self> {
        if r.is_zero() {
            return Ok(Self::zero(prec));
        }
        let num = r.numer().taylor_shift_one();
        let den = r.denom().taylor_shift_one();
        let v = den.coeffs().iter().take_while(|c| c.is_zero()).count() as i64;
        if v > bound as i64 {
            return Err(QsymError::PoleOrder { order: v as u32, bound });
        }
        let u = num.coeffs().iter().take_while(|c| c.is_zero()).count() as i64;
        // r = e^(u - v) * N'/D' with N'(0), D'(0) nonzero.
        let rel = (prec - (u - v)).max(0);
        if rel == 0 {
            return Ok(Self::zero(prec));
        }
        let np = EpsLaurent::from_poly(&PolyQ::from_coeffs(num.coeffs()[u as usize..].to_vec()), rel);
        let dp = EpsLaurent::from_poly(&PolyQ::from_coeffs(den.coeffs()[v as usize..].to_vec()), rel);
        let q = np.mul(&dp.inv()?);
        Ok(EpsLaurent { low: q.low + u - v, coeffs: q.coeffs })
    }

    /// `log(1 + e)` known modulo `e^prec`.
    pub fn log1p(prec: i64) -> Self {
        let c = (1..prec.max(1))
            .map(|k| {
                let s = if k % 2 == 1 { 1 } else { -1 };
                Rational::new(s.into(), k.into())
            })
            .collect();
        Self::new(1, c)
    }
}

/// Expansion of `a` at `q = 1 + e`, with `order` terms from the leading one.
pub fn eps_expand(a: &LogPoly, order: usize) -> Result<EpsLaurent> {
    eps_expand_with_bound(a, order, DEFAULT_POLE_BOUND)
}

pub fn eps_expand_with_bound(a: &LogPoly, order: usize, bound: u32) -> Result<EpsLaurent> {
    if order == 0 {
        return Err(QsymError::Domain("expansion order must be at least 1".into()));
    }
    if a.is_zero() {
        return Ok(EpsLaurent::zero(i64::MAX / 4));
    }
    // Each L^d contributes from e^d on; each coefficient from e^(-pole) on.
    let floor = a
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(d, c)| d as i64 - c.pole_order_at_one() as i64)
        .min()
        .unwrap();
    let max_pole = a.coeffs().iter().map(|c| c.pole_order_at_one() as i64).max().unwrap();
    let mut prec = floor + order as i64;
    // Cancellation between the L-powers can push the leading term up; a
    // nonzero element of Q(q)[L] has a nonzero expansion since log is
    // transcendental, so widening the window terminates.
    for _ in 0..256 {
        let mut acc = EpsLaurent::zero(prec);
        let width = (prec + max_pole + 1).max(1) as usize;
        let mut one = vec![Rational::zero(); width];
        one[0] = Rational::one();
        let mut lpow = EpsLaurent::new(0, one);
        let l = EpsLaurent::log1p(prec + max_pole + 1);
        for (d, c) in a.coeffs().iter().enumerate() {
            if d > 0 {
                lpow = lpow.mul(&l);
            }
            if c.is_zero() {
                continue;
            }
            let need = prec - d as i64;
            let s = EpsLaurent::from_ratfunc(c, need, bound)?;
            acc = acc.add(&s.mul(&lpow));
        }
        let acc = EpsLaurent::new(acc.low, acc.known_to(prec));
        if !acc.is_zero() && acc.order() >= order {
            return Ok(acc.truncate(order));
        }
        prec += order as i64 + 4;
    }
    Err(QsymError::Domain("expansion did not resolve a leading term".into()))
}

impl fmt::Display for EpsLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let k = self.low + i as i64;
            let mono = match k {
                0 => String::new(),
                1 => "e".into(),
                _ => format!("e^{k}"),
            };
            let a = c.abs();
            let body = match (mono.is_empty(), a.is_one()) {
                (true, _) => fmt_rational(&a),
                (false, true) => mono,
                (false, false) => format!("{}*{}", fmt_rational(&a), mono),
            };
            let sign = if c.is_negative() { "-" } else { "+" };
            parts.push((sign, body));
        }
        let mut s = String::new();
        for (i, (sign, body)) in parts.iter().enumerate() {
            match (i, *sign) {
                (0, "-") => s.push_str(&format!("-{body}")),
                (0, _) => s.push_str(body),
                (_, sg) => s.push_str(&format!(" {sg} {body}")),
            }
        }
        if s.is_empty() {
            s.push('0');
        }
        write!(f, "{s} + O(e^{})", self.precision())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn l() -> LogPoly {
        LogPoly::l()
    }

    fn pole() -> LogPoly {
        RatFuncQ::inv_qpow_minus_one(1, 1).into()
    }

    #[test]
    fn simple_pole() {
        let s = eps_expand(&pole(), 2).unwrap();
        assert_eq!(s.low(), -1);
        assert_eq!(s.coeffs(), &[rat(1, 1), rat(0, 1)]);
    }

    #[test]
    fn log_series() {
        let s = eps_expand(&l(), 3).unwrap();
        assert_eq!(s.low(), 1);
        assert_eq!(s.coeffs(), &[rat(1, 1), rat(-1, 2), rat(1, 3)]);
    }

    #[test]
    fn log_over_pole() {
        let s = eps_expand(&l().mul(&pole()), 3).unwrap();
        assert_eq!(s.low(), 0);
        assert_eq!(s.coeffs(), &[rat(1, 1), rat(-1, 2), rat(1, 3)]);
        assert_eq!(s.to_string(), "1 - 1/2*e + 1/3*e^2 + O(e^3)");
    }

    #[test]
    fn cancelling_poles_resolve() {
        // L/(q-1)^2 - 1/(q-1) = -1/2 + e/3 + ...
        let a = l().mul(&pole()).mul(&pole()).sub(&pole());
        let s = eps_expand(&a, 2).unwrap();
        assert_eq!(s.low(), 0);
        assert_eq!(s.coeffs(), &[rat(-1, 2), rat(1, 3)]);
    }

    #[test]
    fn pole_bound_enforced() {
        let a: LogPoly = RatFuncQ::inv_qpow_minus_one(1, 5).into();
        assert!(matches!(eps_expand_with_bound(&a, 2, 4), Err(QsymError::PoleOrder { order: 5, bound: 4 })));
    }

    #[test]
    fn inverse_round_trip() {
        let s = EpsLaurent::new(-2, vec![rat(3, 1), rat(1, 2), rat(-1, 1), rat(2, 5)]);
        let p = s.mul(&s.inv().unwrap());
        assert_eq!(p.low(), 0);
        assert_eq!(p.coeffs(), &[rat(1, 1), rat(0, 1), rat(0, 1), rat(0, 1)]);
    }
}
