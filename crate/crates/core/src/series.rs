//! Truncated power series in `t` and the closed-form quotient series.
//!
//! Coefficients are stored plain: `coeffs[k]` multiplies `t^k`, never
//! `t^k / k!`. The factorials are applied explicitly by [`exp_linear`] and
//! by [`TruncSeries::egf_coeff`].

use crate::algebra::{factorial, LogPoly, MPoly, RatFuncQ, Rational, Ring, Var};
use crate::error::{QsymError, Result};
use crate::qbernoulli::power_sum;
use num_bigint::BigInt;
use num_traits::One;

/// `c_0 + c_1 t + ... + c_K t^K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries<R> {
    coeffs: Vec<R>,
}

impl<R: Ring> TruncSeries<R> {
    /// Pads or truncates `coeffs` to `order + 1` entries.
    pub fn new(mut coeffs: Vec<R>, order: usize) -> Self {
        coeffs.resize(order + 1, R::zero());
        TruncSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(R::one(), order)
    }

    pub fn constant(c: R, order: usize) -> Self {
        Self::new(vec![c], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &R {
        &self.coeffs[k]
    }

    /// `k! * [t^k]`.
    pub fn egf_coeff(&self, k: usize) -> R {
        self.coeffs[k].scale(&Rational::from_integer(factorial(k as u64)))
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.order() != o.order() {
            return Err(QsymError::OrderMismatch(self.order(), o.order()));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(TruncSeries { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.add(b)).collect() })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(TruncSeries { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.sub(b)).collect() })
    }

    pub fn neg(&self) -> Self {
        TruncSeries { coeffs: self.coeffs.iter().map(R::neg).collect() }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        TruncSeries { coeffs: self.coeffs.iter().map(|c| c.scale(r)).collect() }
    }

    pub fn mul_coeff(&self, c: &R) -> Self {
        TruncSeries { coeffs: self.coeffs.iter().map(|x| x.mul(c)).collect() }
    }

    /// `t -> s t`: coefficient `k` is multiplied by `s^k`.
    pub fn dilate(&self, s: &Rational) -> Self {
        let mut p = <Rational as One>::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c.scale(&p));
            p *= s;
        }
        TruncSeries { coeffs: out }
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> TruncSeries<S> {
        TruncSeries { coeffs: self.coeffs.iter().map(f).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..e {
            acc = series_mul(&acc, self).expect("equal orders");
        }
        acc
    }
}

/// Cauchy product.
pub fn series_mul<R: Ring>(a: &TruncSeries<R>, b: &TruncSeries<R>) -> Result<TruncSeries<R>> {
    a.check(b)?;
    let k = a.order();
    let mut c = vec![R::zero(); k + 1];
    for (i, x) in a.coeffs.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.coeffs.iter().enumerate().take(k + 1 - i) {
            if !y.is_zero() {
                c[i + j] = c[i + j].add(&x.mul(y));
            }
        }
    }
    Ok(TruncSeries { coeffs: c })
}

/// The series `x` with `x * b = a`; needs an invertible constant term in `b`.
pub fn series_div<R: Ring>(a: &TruncSeries<R>, b: &TruncSeries<R>) -> Result<TruncSeries<R>> {
    a.check(b)?;
    let inv = b.coeffs[0].try_inverse().ok_or(QsymError::NotInvertible)?;
    let k = a.order();
    let mut x: Vec<R> = Vec::with_capacity(k + 1);
    for n in 0..=k {
        let mut s = a.coeffs[n].clone();
        for j in 1..=n {
            if !b.coeffs[j].is_zero() {
                s = s.sub(&b.coeffs[j].mul(&x[n - j]));
            }
        }
        x.push(s.mul(&inv));
    }
    Ok(TruncSeries { coeffs: x })
}

/// `exp(c t) = sum c^k t^k / k!`.
pub fn exp_linear<R: Ring>(c: &R, order: usize) -> TruncSeries<R> {
    let mut out = Vec::with_capacity(order + 1);
    let mut p = R::one();
    for k in 0..=order {
        out.push(p.scale(&Rational::new(BigInt::one(), factorial(k as u64))));
        p = p.mul(c);
    }
    TruncSeries { coeffs: out }
}

/// `sum_{i < w} q^i e^{i t}`, whose `t^k/k!` coefficient is `S_{k,q}(w-1)`.
pub fn geometric_qexp(w: u32, order: usize) -> TruncSeries<LogPoly> {
    assert!(w >= 1);
    let c = (0..=order)
        .map(|k| {
            let s = RatFuncQ::from_poly(&power_sum(k as u32, w - 1));
            LogPoly::constant(s.scale_by(&Rational::new(BigInt::one(), factorial(k as u64))))
        })
        .collect();
    TruncSeries { coeffs: c }
}

/// `L + t`.
pub fn log_plus_t(order: usize) -> TruncSeries<LogPoly> {
    TruncSeries::new(vec![LogPoly::l(), LogPoly::one()], order)
}

/// `q^a e^{a t} - 1`.
pub fn qexp_minus_one(a: u32, order: usize) -> TruncSeries<LogPoly> {
    let qa = LogPoly::constant(RatFuncQ::qpow(a as usize));
    let mut s = exp_linear(&LogPoly::from_int(a as i64), order).mul_coeff(&qa);
    s.coeffs[0] = s.coeffs[0].sub(&LogPoly::one());
    s
}

/// `(L + t) / (q e^t - 1)`, the generating function of the `B_{n,q}`.
pub fn bernoulli_gf(order: usize) -> TruncSeries<LogPoly> {
    series_div(&log_plus_t(order), &qexp_minus_one(1, order)).expect("q - 1 is a unit")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LambdaFamily {
    /// Pairwise products `w_j w_k` in the denominator, index `0..=3`.
    L23,
    /// Single `w_j` in the denominator, index `0..=3`.
    L13,
    /// Index 0: one shared `y`; index 1: the quotient of the two triple integrals.
    L12,
}

/// One quotient shape with its weights.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LambdaSpec {
    pub family: LambdaFamily,
    pub index: u32,
    pub w: [u32; 3],
}

impl LambdaSpec {
    pub fn new(family: LambdaFamily, index: u32, w: [u32; 3]) -> Result<Self> {
        let max = match family {
            LambdaFamily::L12 => 1,
            _ => 3,
        };
        if index > max {
            return Err(QsymError::Domain(format!("index {index} not admissible for {family:?}")));
        }
        if w.contains(&0) {
            return Err(QsymError::Domain("weights must be positive".into()));
        }
        Ok(LambdaSpec { family, index, w })
    }

    /// Number of `y` variables that occur.
    pub fn y_arity(&self) -> usize {
        match (self.family, self.index) {
            (LambdaFamily::L12, 0) => 1,
            (LambdaFamily::L12, _) => 0,
            (_, i) => 3 - i as usize,
        }
    }
}

fn prod_series(factors: &[u32], order: usize) -> TruncSeries<LogPoly> {
    factors
        .iter()
        .fold(TruncSeries::one(order), |acc, &a| series_mul(&acc, &qexp_minus_one(a, order)).unwrap())
}

/// Assembles the closed form of a quotient shape as a series in `t` with
/// polynomial coefficients in the `y` variables.
pub fn build_closed_form(spec: &LambdaSpec, order: usize) -> Result<TruncSeries<MPoly>> {
    let [w1, w2, w3] = spec.w;
    let p = w1 * w2 * w3;
    let pairs = [w2 * w3, w1 * w3, w1 * w2];
    let singles = [w1, w2, w3];
    let pr = Rational::from_integer(p.into());
    let i = spec.index;
    let (num, den, y) = match spec.family {
        LambdaFamily::L23 | LambdaFamily::L13 => {
            let (den, shift) = match spec.family {
                LambdaFamily::L23 => (pairs, 2),
                _ => (singles, 1),
            };
            let pre = pr.pow(shift - i as i32);
            let num = series_mul(&log_plus_t(order).pow(3 - i), &qexp_minus_one(p, order).pow(i))?.scale(&pre);
            let ys = [Var::Y1, Var::Y2, Var::Y3];
            let y = ys[..spec.y_arity()].iter().fold(MPoly::zero(), |acc, v| acc.add(&MPoly::var(*v)));
            (num, prod_series(&den, order), y.scale_by(&pr))
        }
        LambdaFamily::L12 if i == 0 => {
            let num = log_plus_t(order).pow(3).scale(&pr);
            let e = Rational::from_integer(pairs.iter().sum::<u32>().into());
            (num, prod_series(&singles, order), MPoly::var(Var::Y).scale_by(&e))
        }
        LambdaFamily::L12 => {
            let num = prod_series(&pairs, order).scale(&pr.recip());
            (num, prod_series(&singles, order), MPoly::zero())
        }
    };
    let base = series_div(&num, &den)?.map(|c| MPoly::constant(c.clone()));
    series_mul(&base, &exp_linear(&y, order))
}
