//! Sparse polynomials in `x, y, y1, y2, y3` over `Q(q)[L]`.

use super::{forward_ring_ops, LogPoly, Rational};
use crate::error::{QsymError, Result};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// Default cap on the total degree of any stored monomial.
pub const DEFAULT_DEGREE_CAP: u32 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X,
    Y,
    Y1,
    Y2,
    Y3,
}

impl Var {
    pub const ALL: [Var; 5] = [Var::X, Var::Y, Var::Y1, Var::Y2, Var::Y3];

    pub fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::Y => "y",
            Var::Y1 => "y1",
            Var::Y2 => "y2",
            Var::Y3 => "y3",
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn parse(s: &str) -> Option<Var> {
        Var::ALL.into_iter().find(|v| v.name() == s)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exponent vector indexed by [`Var::index`]; ordered graded-lexicographically.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial(pub [u8; 5]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; 5])
    }

    pub fn var(v: Var, e: u8) -> Self {
        let mut m = [0; 5];
        m[v.index()] = e;
        Monomial(m)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn exp(&self, v: Var) -> u8 {
        self.0[v.index()]
    }

    fn try_mul(&self, o: &Self) -> Result<Self> {
        let mut m = [0u8; 5];
        for i in 0..5 {
            let e = self.0[i] as u32 + o.0[i] as u32;
            if e > u8::MAX as u32 {
                return Err(QsymError::ExponentCap { exponent: e as u64, cap: u8::MAX as u64 });
            }
            m[i] = e as u8;
        }
        Ok(Monomial(m))
    }
}

impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree().cmp(&o.degree()).then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = Var::ALL
            .iter()
            .filter(|v| self.exp(**v) > 0)
            .map(|v| match self.exp(*v) {
                1 => v.name().to_string(),
                e => format!("{}^{e}", v.name()),
            })
            .collect();
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}

/// Sparse polynomial; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MPoly {
    terms: BTreeMap<Monomial, LogPoly>,
}

/// Structural equality of canonical forms, i.e. `a - b == 0`.
pub fn mpoly_equal(a: &MPoly, b: &MPoly) -> bool {
    a == b
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(LogPoly::one())
    }

    pub fn constant(c: LogPoly) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::constant(LogPoly::from_rational(r))
    }

    pub fn var(v: Var) -> Self {
        Self::term(Monomial::var(v, 1), LogPoly::one())
    }

    pub fn term(m: Monomial, c: LogPoly) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &LogPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> LogPoly {
        self.terms.get(m).cloned().unwrap_or_else(LogPoly::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// The value as a constant, if no variable occurs.
    pub fn as_constant(&self) -> Option<LogPoly> {
        match self.terms.len() {
            0 => Some(LogPoly::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    /// Adds `c * m` in place.
    pub fn add_term(&mut self, m: Monomial, c: &LogPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                *x = x.add(c);
                if x.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let (mut big, small) = if self.terms.len() >= o.terms.len() { (self.clone(), o) } else { (o.clone(), self) };
        for (m, c) in &small.terms {
            big.add_term(*m, c);
        }
        big
    }

    pub fn neg(&self) -> Self {
        MPoly { terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    /// Product, rejecting monomials whose total degree exceeds `cap`.
    pub fn try_mul(&self, o: &Self, cap: u32) -> Result<Self> {
        let mut out = MPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                let m = ma.try_mul(mb)?;
                if m.degree() > cap {
                    return Err(QsymError::ExponentCap { exponent: m.degree() as u64, cap: cap as u64 });
                }
                out.add_term(m, &ca.mul(cb));
            }
        }
        Ok(out)
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.try_mul(o, DEFAULT_DEGREE_CAP).expect("monomial degree within cap")
    }

    pub fn mul_logpoly(&self, c: &LogPoly) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MPoly { terms: self.terms.iter().map(|(m, x)| (*m, x.mul(c))).filter(|(_, x)| !x.is_zero()).collect() }
    }

    pub fn scale_by(&self, k: &Rational) -> Self {
        self.mul_logpoly(&LogPoly::from_rational(k.clone()))
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Applies `q -> q^w`, `L -> w L` to every coefficient.
    pub fn substitute_power(&self, w: u32) -> Result<Self> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            terms.insert(*m, c.substitute_power(w)?);
        }
        Ok(MPoly { terms })
    }

    /// Replaces the variable `v` by the polynomial `p`.
    pub fn substitute(&self, v: Var, p: &MPoly) -> Self {
        let mut powers = vec![MPoly::one()];
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exp(v) as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap().mul(p);
                powers.push(next);
            }
            let mut rest = *m;
            rest.0[v.index()] = 0;
            out = out.add(&powers[e].mul(&MPoly::term(rest, c.clone())));
        }
        out
    }

    /// First monomial (ascending graded-lex) where the two differ, with
    /// both coefficients.
    pub fn first_difference(&self, o: &Self) -> Option<(Monomial, LogPoly, LogPoly)> {
        let d = self.sub(o);
        d.terms.keys().next().map(|m| (*m, self.coeff(m), o.coeff(m)))
    }

    /// Renders in descending graded-lex order, e.g. `(L/(q-1))*x + ...`.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.terms
            .iter()
            .rev()
            .map(|(m, c)| {
                if *m == Monomial::one() {
                    format!("({c})")
                } else if c.is_one() {
                    m.to_string()
                } else {
                    format!("({c})*{m}")
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly({self})")
    }
}

forward_ring_ops!(MPoly);

impl super::Ring for MPoly {
    fn zero() -> Self {
        MPoly::zero()
    }
    fn one() -> Self {
        MPoly::one()
    }
    fn is_zero(&self) -> bool {
        MPoly::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        MPoly::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        MPoly::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        MPoly::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        MPoly::neg(self)
    }
    fn from_rational(r: &Rational) -> Self {
        MPoly::from_rational(r.clone())
    }
    fn try_inverse(&self) -> Option<Self> {
        self.as_constant()?.try_inverse().map(MPoly::constant)
    }
    fn scale(&self, r: &Rational) -> Self {
        self.scale_by(r)
    }
}
