//! The ring `Q(q)[L]`, with `L` a formal symbol for `log q`.

use super::cyclotomic as cy;
use super::ratfunc::{join_terms, render_cyclo, render_qpoly_times};
use super::{forward_ring_ops, PolyQ, RatFuncQ, Rational};
use crate::error::Result;
use num_bigint::BigInt;
use num_traits::One;
use std::fmt;

/// Polynomial in `L` with coefficients in `Q(q)`; index = power of `L`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LogPoly {
    coeffs: Vec<RatFuncQ>,
}

impl LogPoly {
    pub fn zero() -> Self {
        LogPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(RatFuncQ::one())
    }

    /// The symbol `L`.
    pub fn l() -> Self {
        LogPoly { coeffs: vec![RatFuncQ::zero(), RatFuncQ::one()] }
    }

    pub fn constant(c: RatFuncQ) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::constant(RatFuncQ::from_rational(r))
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(RatFuncQ::from_int(n))
    }

    pub fn from_coeffs(mut coeffs: Vec<RatFuncQ>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        LogPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[RatFuncQ] {
        &self.coeffs
    }

    /// Coefficient of `L^d`.
    pub fn coeff(&self, d: usize) -> RatFuncQ {
        self.coeffs.get(d).cloned().unwrap_or_else(RatFuncQ::zero)
    }

    pub fn l_degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// The value as an element of `Q(q)`, if it is free of `L`.
    pub fn as_ratfunc(&self) -> Option<RatFuncQ> {
        match self.coeffs.len() {
            0 => Some(RatFuncQ::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let c = (0..n)
            .map(|i| match (self.coeffs.get(i), o.coeffs.get(i)) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Self::from_coeffs(c)
    }

    pub fn neg(&self) -> Self {
        LogPoly { coeffs: self.coeffs.iter().map(RatFuncQ::neg).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut c = vec![RatFuncQ::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    c[i + j] = c[i + j].add(&a.mul(b));
                }
            }
        }
        Self::from_coeffs(c)
    }

    pub fn mul_ratfunc(&self, r: &RatFuncQ) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c.mul(r)).collect())
    }

    pub fn scale_by(&self, k: &Rational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c.scale_by(k)).collect())
    }

    pub fn mul_qpow(&self, k: usize) -> Self {
        LogPoly { coeffs: self.coeffs.iter().map(|c| c.mul_qpow(k)).collect() }
    }

    /// `q -> q^w`, `L -> w L`.
    pub fn substitute_power(&self, w: u32) -> Result<Self> {
        let mut wd = Rational::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c.substitute_power(w)?.scale_by(&wd));
            wd *= Rational::from_integer(BigInt::from(w));
        }
        Ok(Self::from_coeffs(out))
    }

    /// Inverse of an `L`-free nonzero element.
    pub fn try_inverse(&self) -> Option<Self> {
        if self.coeffs.len() != 1 {
            return None;
        }
        self.coeffs[0].inv().ok().map(Self::constant)
    }

    /// Value at a rational `q` with `L` bound to `l`.
    pub fn eval<T: super::Ring>(&self, q: &Rational, l: &T) -> Option<T> {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(l).add(&T::from_rational(&c.eval(q)?));
        }
        Some(acc)
    }

    /// Floating value with `L = ln q`.
    pub fn eval_f64(&self, q: f64) -> f64 {
        let l = q.ln();
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * l + c.eval_f64(q))
    }

    /// Renders over a single common denominator, e.g. `L/(q-1)`.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let all_cyclo = self.coeffs.iter().all(|c| c.cyclo_den().is_some());
        let (den_str, den) = if all_cyclo {
            let e = self
                .coeffs
                .iter()
                .filter_map(|c| c.cyclo_den())
                .fold(cy::CycloExps::new(), |a, b| cy::max_exps(&a, b));
            let r = (!e.is_empty()).then(|| render_cyclo(&e));
            (r, RatFuncQ::from_poly(&cy::expand(&e).to_polyq()))
        } else {
            let mut l = PolyQ::one();
            for c in &self.coeffs {
                let d = c.denom();
                let g = l.gcd(&d);
                l = l.mul(&d).div_rem(&g).unwrap().0;
            }
            let l = l.make_monic();
            let r = RatFuncQ::from_poly(&l);
            let s = (l.degree() != Some(0)).then(|| format!("({})", l.render_desc("q").replace(' ', "")));
            (s, r)
        };
        let mut terms = Vec::new();
        for (d, c) in self.coeffs.iter().enumerate() {
            let p = c.mul(&den);
            debug_assert!(p.is_polynomial());
            terms.extend(render_qpoly_times(&p.numer(), "L", d));
        }
        let multi = terms.len() > 1;
        let num = join_terms(terms);
        match den_str {
            None => num,
            Some(d) if multi => format!("({num})/{d}"),
            Some(d) => format!("{num}/{d}"),
        }
    }
}

impl fmt::Display for LogPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for LogPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LogPoly({self})")
    }
}

impl From<RatFuncQ> for LogPoly {
    fn from(r: RatFuncQ) -> Self {
        Self::constant(r)
    }
}

forward_ring_ops!(LogPoly);

impl super::Ring for LogPoly {
    fn zero() -> Self {
        LogPoly::zero()
    }
    fn one() -> Self {
        LogPoly::one()
    }
    fn is_zero(&self) -> bool {
        LogPoly::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        LogPoly::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        LogPoly::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        LogPoly::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        LogPoly::neg(self)
    }
    fn from_rational(r: &Rational) -> Self {
        LogPoly::from_rational(r.clone())
    }
    fn try_inverse(&self) -> Option<Self> {
        LogPoly::try_inverse(self)
    }
    fn scale(&self, r: &Rational) -> Self {
        self.scale_by(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    fn inv_qpow_minus_one(a: u32, e: u32) -> LogPoly {
        RatFuncQ::inv_qpow_minus_one(a, e).into()
    }

    fn b0() -> LogPoly {
        LogPoly::l().mul(&inv_qpow_minus_one(1, 1))
    }

    #[test]
    fn renders_single_divide() {
        assert_eq!(b0().render(), "L/(q-1)");
        assert_eq!(LogPoly::from_int(5).render(), "5");
        let b1 = inv_qpow_minus_one(1, 1).sub(&LogPoly::l().mul_qpow(1).mul(&inv_qpow_minus_one(1, 2)));
        assert_eq!(b1.render(), "(-1 + q - q*L)/(q-1)^2");
    }

    #[test]
    fn substitution_scales_l() {
        let r = b0().substitute_power(2).unwrap();
        let want = LogPoly::l().scale_by(&int(2)).mul(&inv_qpow_minus_one(2, 1));
        assert_eq!(r, want);
        assert_eq!(r.render(), "2*L/((q-1)*(q+1))");
        assert_eq!(LogPoly::from_int(5).substitute_power(7).unwrap(), LogPoly::from_int(5));
    }

    #[test]
    fn substitution_composes() {
        let x = b0().mul(&b0()).add(&LogPoly::from_int(3));
        let a = x.substitute_power(2).unwrap().substitute_power(3).unwrap();
        assert_eq!(a, x.substitute_power(6).unwrap());
        assert_eq!(x.substitute_power(1).unwrap(), x);
    }

    #[test]
    fn inverse_only_when_l_free() {
        assert!(b0().try_inverse().is_none());
        let c = LogPoly::constant(RatFuncQ::qpow_minus_one(3));
        assert!(c.mul(&c.try_inverse().unwrap()).is_one());
    }

    #[test]
    fn float_eval() {
        let v = b0().eval_f64(2.0);
        assert!((v - 2f64.ln()).abs() < 1e-12);
    }
}
