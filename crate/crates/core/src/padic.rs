//! Fixed-precision `p`-adic numbers and finite Volkenborn sums.
//!
//! A [`PadicNum`] is `p^v * u` known modulo `p^(v + prec)`. Precision only
//! ever shrinks: sums keep the smaller absolute precision and lose more on
//! cancellation, products keep the smaller relative precision.

use crate::algebra::Rational;
use crate::error::{QsymError, Result};
use crate::qbernoulli::qbernoulli_number;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadicNum {
    p: u64,
    /// Valuation; for a zero, the absolute precision.
    val: i64,
    /// `0 <= unit < p^prec`, prime to `p` unless zero.
    unit: BigInt,
    /// Relative precision; 0 for a zero.
    prec: u32,
}

fn ppow(p: u64, e: u32) -> BigInt {
    BigInt::from(p).pow(e)
}

/// `v_p(x)` and the part prime to `p`; `x` nonzero.
fn split(x: &BigInt, p: u64) -> (i64, BigInt) {
    let pb = BigInt::from(p);
    let mut v = 0;
    let mut x = x.clone();
    while (&x % &pb).is_zero() {
        x /= &pb;
        v += 1;
    }
    (v, x)
}

fn modinv(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

impl PadicNum {
    /// Zero known modulo `p^abs`.
    pub fn zero(p: u64, abs: i64) -> Self {
        PadicNum { p, val: abs, unit: BigInt::zero(), prec: 0 }
    }

    /// `p^v * x` for an integer `x`, known modulo `p^abs`.
    fn from_scaled(p: u64, v: i64, x: &BigInt, abs: i64) -> Self {
        if x.is_zero() {
            return Self::zero(p, abs);
        }
        let (w, u) = split(x, p);
        let val = v + w;
        if val >= abs {
            return Self::zero(p, abs);
        }
        let prec = (abs - val) as u32;
        PadicNum { p, val, unit: u.mod_floor(&ppow(p, prec)), prec }
    }

    pub fn from_int(p: u64, x: i64, abs: i64) -> Self {
        Self::from_scaled(p, 0, &BigInt::from(x), abs)
    }

    /// A rational known to relative precision `prec`.
    pub fn from_rational(p: u64, r: &Rational, prec: u32) -> Result<Self> {
        if r.is_zero() {
            return Ok(Self::zero(p, prec as i64));
        }
        let (vn, n) = split(r.numer(), p);
        let (vd, d) = split(r.denom(), p);
        let m = ppow(p, prec);
        let inv = modinv(&d, &m).ok_or(QsymError::NotInvertible)?;
        Ok(PadicNum { p, val: vn - vd, unit: (n * inv).mod_floor(&m), prec })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.unit.is_zero()
    }

    /// Valuation; for a zero, the absolute precision.
    pub fn valuation(&self) -> i64 {
        self.val
    }

    pub fn rel_precision(&self) -> u32 {
        self.prec
    }

    /// The value is known modulo `p` to this power.
    pub fn abs_precision(&self) -> i64 {
        self.val + self.prec as i64
    }

    pub fn unit(&self) -> &BigInt {
        &self.unit
    }

    /// Representative in `[0, p^abs)` when the value is integral.
    pub fn residue(&self) -> Option<BigInt> {
        if self.val < 0 {
            return None;
        }
        Some(&self.unit * ppow(self.p, self.val as u32))
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.p, o.p, "mixed primes");
        let abs = self.abs_precision().min(o.abs_precision());
        let lo = self.val.min(o.val).min(abs);
        let lift = |x: &Self| if x.is_zero() { BigInt::zero() } else { &x.unit * ppow(self.p, (x.val - lo) as u32) };
        let m = ppow(self.p, (abs - lo) as u32);
        Self::from_scaled(self.p, lo, &(lift(self) + lift(o)).mod_floor(&m), abs)
    }

    pub fn neg(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let m = ppow(self.p, self.prec);
        PadicNum { unit: (-&self.unit).mod_floor(&m), ..self.clone() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.p, o.p, "mixed primes");
        if self.is_zero() || o.is_zero() {
            // a zero's `val` is its absolute precision, so this is the bound
            return Self::zero(self.p, self.val + o.val);
        }
        let prec = self.prec.min(o.prec);
        let m = ppow(self.p, prec);
        PadicNum { p: self.p, val: self.val + o.val, unit: (&self.unit * &o.unit).mod_floor(&m), prec }
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return Err(QsymError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero(self.p, self.val - o.val));
        }
        let prec = self.prec.min(o.prec);
        let m = ppow(self.p, prec);
        let inv = modinv(&o.unit, &m).ok_or(QsymError::NotInvertible)?;
        Ok(PadicNum { p: self.p, val: self.val - o.val, unit: (&self.unit * inv).mod_floor(&m), prec })
    }

    /// Multiplies by `p^k`; precision moves with the value.
    pub fn shift(&self, k: i64) -> Self {
        PadicNum { val: self.val + k, ..self.clone() }
    }

    /// Relative digits shared with `o`: `v(self - o) - v(o)`.
    pub fn agreement(&self, o: &Self) -> i64 {
        self.sub(o).valuation() - o.valuation()
    }
}

impl fmt::Display for PadicNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            write!(f, "O({}^{})", self.p, self.val)
        } else {
            write!(f, "{}^{} * {} + O({}^{})", self.p, self.val, self.unit, self.p, self.abs_precision())
        }
    }
}

/// `log(a) = sum (-1)^(k+1) (a-1)^k / k`, for `a = 1 (mod p)`, `p` odd.
pub fn padic_log(a: &PadicNum) -> Result<PadicNum> {
    let p = a.p;
    if p == 2 {
        return Err(QsymError::Domain("p must be odd".into()));
    }
    let one = PadicNum::from_int(p, 1, a.abs_precision().max(1));
    let x = a.sub(&one);
    if x.valuation() < 1 {
        return Err(QsymError::Domain(format!("{a} is not 1 mod {p}")));
    }
    let target = x.abs_precision();
    if x.is_zero() {
        return Ok(PadicNum::zero(p, target));
    }
    let v = x.valuation();
    let mut acc = PadicNum::zero(p, target);
    let mut xk = x.clone();
    let mut k: u64 = 1;
    // terms have valuation k v - v_p(k) >= k v - log_p(k)
    loop {
        let vk = split(&BigInt::from(k), p).0;
        if k as i64 * v - vk < target {
            let kk = PadicNum::from_int(p, k as i64, target + vk + 1);
            let term = xk.div(&kk)?;
            acc = if k % 2 == 1 { acc.add(&term) } else { acc.sub(&term) };
        } else if (k as i64) * v - (k as f64).log(p as f64).floor() as i64 >= target {
            break;
        }
        xk = xk.mul(&x);
        k += 1;
    }
    Ok(acc)
}

/// Cutoff and precision for a Volkenborn sum with base `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VolkenbornParams {
    pub p: u64,
    pub n_cut: u32,
    pub m: u32,
    pub q: Rational,
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

impl VolkenbornParams {
    pub fn new(p: u64, n_cut: u32, m: u32, q: Rational) -> Result<Self> {
        if !is_prime(p) || p == 2 {
            return Err(QsymError::Domain(format!("{p} is not an odd prime")));
        }
        if n_cut == 0 || m == 0 {
            return Err(QsymError::Domain("cutoff and precision must be positive".into()));
        }
        if q.is_one() {
            return Err(QsymError::Domain("q = 1 is excluded".into()));
        }
        if (q.denom() % p).is_zero() {
            return Err(QsymError::Domain(format!("denominator of q divisible by {p}")));
        }
        let d = &q - Rational::one();
        if (d.numer() % p) != BigInt::zero() {
            return Err(QsymError::Domain(format!("q - 1 must be divisible by {p}")));
        }
        Ok(VolkenbornParams { p, n_cut, m, q })
    }
}

/// `p^-N sum_{j < p^N} (j + shift)^n q^(j + shift)`, known to absolute
/// precision `M`.
fn volkenborn_sum(n: u32, params: &VolkenbornParams, shift: u64) -> Result<PadicNum> {
    let p = params.p;
    let modulus = ppow(p, params.m + params.n_cut);
    let qd = modinv(&params.q.denom().mod_floor(&modulus), &modulus).ok_or(QsymError::NotInvertible)?;
    let qm = (params.q.numer() * qd).mod_floor(&modulus);
    let count = p.checked_pow(params.n_cut).ok_or_else(|| QsymError::Domain("cutoff too large".into()))?;
    let mut qj = qm.modpow(&BigInt::from(shift), &modulus);
    let mut s = BigInt::zero();
    for j in 0..count {
        let z = BigInt::from(j + shift);
        s += z.modpow(&BigInt::from(n), &modulus) * &qj;
        qj = (qj * &qm) % &modulus;
    }
    let s = s.mod_floor(&modulus);
    let abs = (params.m + params.n_cut) as i64;
    Ok(PadicNum::from_scaled(p, 0, &s, abs).shift(-(params.n_cut as i64)))
}

/// `p^-N sum_{j < p^N} j^n q^j`.
pub fn volkenborn_moment(n: u32, params: &VolkenbornParams) -> Result<PadicNum> {
    volkenborn_sum(n, params, 0)
}

/// `B_{n,q}` at the rational `q`, with `L = log_p q`.
pub fn padic_bernoulli(n: usize, q: &Rational, p: u64, prec: u32) -> Result<PadicNum> {
    let b = qbernoulli_number(n);
    let qp = PadicNum::from_rational(p, q, prec + 8)?;
    let l = padic_log(&qp)?;
    let mut acc = PadicNum::zero(p, prec as i64 + 8);
    let mut lpow = PadicNum::from_int(p, 1, prec as i64 + 8);
    for c in b.coeffs() {
        let cv = c.eval(q).ok_or(QsymError::DivisionByZero)?;
        acc = acc.add(&PadicNum::from_rational(p, &cv, prec + 8)?.mul(&lpow));
        lpow = lpow.mul(&l);
    }
    Ok(acc)
}

/// Result of comparing Volkenborn sums with the exact value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentReport {
    pub n: u32,
    pub p: u64,
    /// `(N, v_p(V_N - B))` per cutoff.
    pub valuations: Vec<(u32, i64)>,
    /// `(N, v_p(V_{N+1} - V_N))` per consecutive pair.
    pub steps: Vec<(u32, i64)>,
    /// Smallest `c` with `v_p(V_N - B) >= N - c` for all listed `N`.
    pub offset: i64,
    pub exact_valuation: i64,
    /// Relative digits of agreement at the last cutoff.
    pub digits: i64,
    pub passed: bool,
}

/// Compares `V_N` for every cutoff in `cutoffs` with `B_{n,q}` evaluated
/// with the `p`-adic logarithm. Passes if the valuations never decrease and
/// the last cutoff agrees to `min(3, M)` relative digits.
pub fn moment_check(n: u32, p: u64, q: &Rational, m: u32, cutoffs: &[u32]) -> Result<MomentReport> {
    if cutoffs.is_empty() {
        return Err(QsymError::Domain("empty cutoff list".into()));
    }
    let top = *cutoffs.iter().max().unwrap();
    let exact = padic_bernoulli(n as usize, q, p, m + top + 4 * (n + 2))?;
    let mut valuations = Vec::new();
    let mut sums = Vec::new();
    for &nc in cutoffs {
        let v = volkenborn_moment(n, &VolkenbornParams::new(p, nc, m, q.clone())?)?;
        valuations.push((nc, v.sub(&exact).valuation()));
        sums.push((nc, v));
    }
    let steps = sums.windows(2).map(|w| (w[0].0, w[1].1.sub(&w[0].1).valuation())).collect();
    let offset = valuations.iter().map(|(nc, v)| *nc as i64 - v).max().unwrap();
    let monotone = valuations.windows(2).all(|w| w[1].1 >= w[0].1);
    let digits = valuations.last().unwrap().1 - exact.valuation();
    Ok(MomentReport {
        n,
        p,
        valuations,
        steps,
        offset,
        exact_valuation: exact.valuation(),
        digits,
        passed: monotone && digits >= 3.min(m as i64),
    })
}

/// Outcome of the shift identity at one cutoff.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftReport {
    pub n: u32,
    pub p: u64,
    pub n_cut: u32,
    /// `v_p` of the discrepancy with `f'(0)`.
    pub valuation: i64,
    pub required: i64,
    /// `q sum_{k<=n} C(n,k) B_k - B_n` equals `[n=0] L + [n=1]` exactly.
    pub exact_layer: bool,
    pub passed: bool,
}

/// `int f(z+1) - int f(z) = f'(0)` for `f(z) = q^z z^n`, with both integrals
/// replaced by Volkenborn sums at cutoff `N`.
pub fn shift_identity_check(n: u32, params: &VolkenbornParams) -> Result<ShiftReport> {
    use crate::algebra::{binomial, LogPoly};
    let p = params.p;
    let shifted = volkenborn_sum(n, params, 1)?;
    let plain = volkenborn_sum(n, params, 0)?;
    let diff = shifted.sub(&plain);
    let abs = params.m as i64 + params.n_cut as i64;
    let deriv = match n {
        0 => padic_log(&PadicNum::from_rational(p, &params.q, abs as u32 + 4)?)?,
        1 => PadicNum::from_int(p, 1, abs),
        _ => PadicNum::zero(p, abs),
    };
    let valuation = diff.sub(&deriv).valuation();
    let required = (params.n_cut as i64).min(params.m as i64);
    let mut lhs = LogPoly::zero();
    for k in 0..=n as usize {
        lhs = lhs.add(&qbernoulli_number(k).scale_by(&Rational::from_integer(binomial(n as u64, k as u64))));
    }
    let lhs = lhs.mul_qpow(1).sub(&qbernoulli_number(n as usize));
    let rhs = match n {
        0 => LogPoly::l(),
        1 => LogPoly::one(),
        _ => LogPoly::zero(),
    };
    let exact_layer = lhs == rhs;
    Ok(ShiftReport { n, p, n_cut: params.n_cut, valuation, required, exact_layer, passed: exact_layer && valuation >= required })
}

/// Digits of `x` in base `p`, lowest first, for display.
pub fn digits(x: &PadicNum) -> Vec<u64> {
    let mut u = x.unit.clone();
    let pb = BigInt::from(x.p);
    (0..x.prec)
        .map(|_| {
            let (q, r) = u.div_mod_floor(&pb);
            u = q;
            r.to_u64().unwrap()
        })
        .collect()
}
