//! Evaluation of identity expressions at concrete weights.
//!
//! The fast path works with exponential generating functions. A `B` factor
//! with argument `c*v + D_i` contributes
//! `sum_i q^{E_i} F_{q^b}(s t) e^{D_i s t} * e^{c s v t}`, so every variable
//! dependence collects into one exponential `e^{Y t}` with `Y` linear. The
//! variable-free parts are convolved as `Q(q)[L]` sequences and `Y` is
//! expanded once at the end. [`evaluate_naive`] expands the printed sums
//! literally and serves as the oracle for the fast path.

use super::ast::{Factor, IdentityExpr, Part};
use crate::algebra::{binomial, LogPoly, MPoly, Monomial, PolyQ, RatFuncQ, Rational, Var};
use crate::error::{QsymError, Result};
use crate::qbernoulli::{multinomial, power_sum, qbernoulli_number_base, qbernoulli_poly_base};
use num_traits::{One, Zero};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// A factor with its weights substituted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Concrete {
    /// Base exponent and one `(q-exponent, shift)` pair per residue tuple.
    B { base: u32, terms: Vec<(usize, Rational)> },
    S { base: u32, bound: u32 },
}

fn concretize(f: &Factor, w: &[u32; 3]) -> Result<Concrete> {
    match f {
        Factor::B { base, residues, .. } => {
            if base.0.iter().any(|&e| e < 0) || residues.iter().any(|r| r.qexp.0.iter().any(|&e| e < 0)) {
                return Err(QsymError::Domain(format!("non-polynomial q-power in {f}")));
            }
            let mut terms = vec![(0usize, Rational::zero())];
            for r in residues {
                let e = r.qexp.eval_int(w) as usize;
                let d = r.shift.eval(w);
                let mut next = Vec::with_capacity(terms.len() * w[r.range] as usize);
                for (qe, sh) in &terms {
                    for i in 0..w[r.range] {
                        next.push((qe + e * i as usize, sh + &d * Rational::from_integer(i.into())));
                    }
                }
                terms = next;
            }
            Ok(Concrete::B { base: base.eval_int(w), terms })
        }
        Factor::S { base, bound } => {
            if base.0.iter().any(|&e| e < 0) {
                return Err(QsymError::Domain(format!("non-polynomial q-power in {f}")));
            }
            Ok(Concrete::S { base: base.eval_int(w), bound: w[*bound] })
        }
    }
}

/// `k!`-normalized coefficients `c_0..c_N` of the variable-free part.
fn part_sequence(c: &Concrete, n_max: usize) -> Arc<Vec<LogPoly>> {
    static CACHE: OnceLock<Mutex<HashMap<Concrete, Arc<Vec<LogPoly>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().unwrap().get(c) {
        if v.len() > n_max {
            return v.clone();
        }
    }
    let seq = Arc::new(compute_sequence(c, n_max));
    let mut guard = cache.lock().unwrap();
    let slot = guard.entry(c.clone()).or_insert_with(|| seq.clone());
    if slot.len() < seq.len() {
        *slot = seq.clone();
    }
    seq
}

fn compute_sequence(c: &Concrete, n_max: usize) -> Vec<LogPoly> {
    match c {
        Concrete::S { base, bound } => (0..=n_max)
            .map(|k| LogPoly::constant(RatFuncQ::from_poly(&power_sum(k as u32, bound - 1).stretch(*base as usize))))
            .collect(),
        Concrete::B { base, terms } => {
            // g_k = sum q^E D^k
            let top = terms.iter().map(|t| t.0).max().unwrap_or(0);
            let mut g: Vec<RatFuncQ> = Vec::with_capacity(n_max + 1);
            let mut pw: Vec<Rational> = vec![Rational::one(); terms.len()];
            for _ in 0..=n_max {
                let mut c = vec![Rational::zero(); top + 1];
                for ((e, _), p) in terms.iter().zip(&pw) {
                    c[*e] += p;
                }
                g.push(RatFuncQ::from_poly(&PolyQ::from_coeffs(c)));
                for ((_, d), p) in terms.iter().zip(pw.iter_mut()) {
                    *p *= d;
                }
            }
            (0..=n_max)
                .map(|k| {
                    let mut acc = LogPoly::zero();
                    for j in 0..=k {
                        let gk = &g[k - j];
                        if gk.is_zero() {
                            continue;
                        }
                        let b = qbernoulli_number_base(j, *base).mul_ratfunc(gk);
                        acc = acc.add(&b.scale_by(&Rational::from_integer(binomial(k as u64, j as u64))));
                    }
                    acc
                })
                .collect()
        }
    }
}

/// Values of `expr` at `n = 0..=n_max`.
pub fn evaluate_upto(expr: &IdentityExpr, n_max: usize, w: &[u32; 3]) -> Result<Vec<MPoly>> {
    if w.contains(&0) {
        return Err(QsymError::Domain("weights must be positive".into()));
    }
    let mut acc: Vec<LogPoly> = Vec::new();
    let mut y = MPoly::zero();
    for (idx, p) in expr.parts.iter().enumerate() {
        let s = p.scale.eval(w);
        let seq = part_sequence(&concretize(&p.factor, w)?, n_max);
        let mut sk = Rational::one();
        let a: Vec<LogPoly> = seq[..=n_max]
            .iter()
            .map(|c| {
                let v = c.scale_by(&sk);
                sk *= &s;
                v
            })
            .collect();
        if let Factor::B { var, coeff, .. } = &p.factor {
            y = y.add(&MPoly::var(*var).scale_by(&(coeff.eval(w) * &s)));
        }
        acc = if idx == 0 { a } else { binomial_convolve(&acc, &a) };
    }
    let pre = &expr.coeff * expr.wconst.eval(w);
    let mut ypow = vec![MPoly::one()];
    for m in 1..=n_max {
        ypow.push(ypow[m - 1].mul(&y));
    }
    Ok((0..=n_max)
        .map(|n| {
            let mut v = MPoly::zero();
            for (j, aj) in acc.iter().enumerate().take(n + 1) {
                let c = aj.scale_by(&Rational::from_integer(binomial(n as u64, j as u64)));
                v = v.add(&ypow[n - j].mul_logpoly(&c));
            }
            v.scale_by(&pre)
        })
        .collect())
}

fn binomial_convolve(a: &[LogPoly], b: &[LogPoly]) -> Vec<LogPoly> {
    (0..a.len())
        .map(|n| {
            let mut s = LogPoly::zero();
            for j in 0..=n {
                if a[j].is_zero() || b[n - j].is_zero() {
                    continue;
                }
                s = s.add(&a[j].mul(&b[n - j]).scale_by(&Rational::from_integer(binomial(n as u64, j as u64))));
            }
            s
        })
        .collect()
}

/// Value of `expr` at `n`.
pub fn evaluate(expr: &IdentityExpr, n: usize, w: &[u32; 3]) -> Result<MPoly> {
    Ok(evaluate_upto(expr, n, w)?.swap_remove(n))
}

/// Literal expansion: every composition of `n`, every residue tuple, each
/// `B` factor instantiated as a polynomial and substituted.
pub fn evaluate_naive(expr: &IdentityExpr, n: usize, w: &[u32; 3]) -> Result<MPoly> {
    if w.contains(&0) {
        return Err(QsymError::Domain("weights must be positive".into()));
    }
    let concrete: Vec<Concrete> = expr.parts.iter().map(|p| concretize(&p.factor, w)).collect::<Result<_>>()?;
    let r = expr.parts.len();
    let mut total = MPoly::zero();
    for ks in compositions(n, r) {
        let parts: Vec<u64> = ks.iter().map(|&k| k as u64).collect();
        let mut term = MPoly::from_rational(Rational::from_integer(multinomial(n as u64, &parts)?));
        for ((p, c), &k) in expr.parts.iter().zip(&concrete).zip(&ks) {
            let f = naive_factor(p, c, k, w);
            term = term.mul(&f).scale_by(&p.scale.eval(w).pow(k as i32));
        }
        total = total.add(&term);
    }
    Ok(total.scale_by(&(&expr.coeff * expr.wconst.eval(w))))
}

fn naive_factor(p: &Part, c: &Concrete, k: usize, w: &[u32; 3]) -> MPoly {
    match (c, &p.factor) {
        (Concrete::S { base, bound }, _) => MPoly::constant(LogPoly::constant(RatFuncQ::from_poly(
            &power_sum(k as u32, bound - 1).stretch(*base as usize),
        ))),
        (Concrete::B { base, terms }, Factor::B { var, coeff, .. }) => {
            let poly = qbernoulli_poly_base(k, *base, Var::X);
            let lin = MPoly::var(*var).scale_by(&coeff.eval(w));
            let mut out = MPoly::zero();
            for (e, d) in terms {
                let arg = lin.add(&MPoly::from_rational(d.clone()));
                let qe = LogPoly::constant(RatFuncQ::qpow(*e));
                out = out.add(&poly.substitute(Var::X, &arg).mul_logpoly(&qe));
            }
            out
        }
        _ => unreachable!("concrete form matches its factor"),
    }
}

fn compositions(n: usize, r: usize) -> Vec<Vec<usize>> {
    if r == 1 {
        return vec![vec![n]];
    }
    let mut out = Vec::new();
    for k in 0..=n {
        for mut rest in compositions(n - k, r - 1) {
            rest.insert(0, k);
            out.push(rest);
        }
    }
    out
}

/// `y -> 0` in every variable.
pub fn at_origin(p: &MPoly) -> LogPoly {
    p.coeff(&Monomial::one())
}

#[cfg(test)]
mod tests {
    use super::super::ast::{b, res, s, single, sum2, sum3};
    use super::*;
    use crate::qbernoulli::qbernoulli_number;

    #[test]
    fn trivial_weights_collapse_residues() {
        let e = single(b("w1w2", "y1 + i/w1 + j/w2", &[res("i", "w1", "w2"), res("j", "w2", "w1")]), "(w1 w2)^{n-1}");
        let plain = single(b("1", "y1", &[]), "");
        for n in 0..5 {
            assert_eq!(evaluate(&e, n, &[1, 1, 1]).unwrap(), evaluate(&plain, n, &[1, 1, 1]).unwrap());
        }
    }

    #[test]
    fn triple_product_at_zero() {
        let e = sum3([b("w2w3", "w1 y1", &[]), b("w1w3", "w2 y2", &[]), b("w1w2", "w3 y3", &[])], "w1^{l+m} w2^{k+m} w3^{k+l}");
        let w = [1, 2, 3];
        let v = evaluate(&e, 0, &w).unwrap();
        let b0 = |a: u32| qbernoulli_number(0).substitute_power(a).unwrap();
        assert_eq!(v, MPoly::constant(b0(6).mul(&b0(3)).mul(&b0(2))));
    }

    #[test]
    fn fast_matches_literal() {
        let exprs = [
            sum3([b("w2w3", "w1 y1", &[]), b("w1w3", "w2 y2", &[]), s("w1w2", "w3")], "w1^{l+m} w2^{k+m} w3^{k+l-1}"),
            sum2(b("w1w3", "w2 y1 + w2/w1 i", &[res("i", "w1", "w2w3")]), s("w1w2", "w3"), "w1^{n-1} w2^{n-k} w3^{k-1}"),
            single(b("w1w2", "w3 y1 + w3/w1 i + w3/w2 j", &[res("i", "w1", "w2w3"), res("j", "w2", "w1w3")]), "(w1 w2)^{n-1}"),
            sum3([b("w3", "w1 y", &[]), b("w1", "w2 y", &[]), b("w2", "w3 y", &[])], "w3^k w1^l w2^m"),
        ];
        for e in &exprs {
            for w in [[1, 2, 3], [2, 2, 1], [3, 1, 2]] {
                let fast = evaluate_upto(e, 4, &w).unwrap();
                for (n, v) in fast.iter().enumerate() {
                    assert_eq!(v, &evaluate_naive(e, n, &w).unwrap(), "{e} n={n} w={w:?}");
                }
            }
        }
    }

    #[test]
    fn negative_exponents_are_rational() {
        let e = sum2(b("w2", "w1 y1", &[]), s("w1", "w2"), "w1^{n-k} w2^{k-1}");
        let v = evaluate(&e, 0, &[1, 2, 1]).unwrap();
        // n = 0: B_0(q^2) * S_0(q)(1) / 2 = (2L/(q^2-1)) (1+q) / 2
        let want = qbernoulli_number(0).substitute_power(2).unwrap().mul(&LogPoly::constant(RatFuncQ::qpow_minus_one(2)))
            .mul(&LogPoly::constant(RatFuncQ::qpow_minus_one(1).inv().unwrap()))
            .scale_by(&Rational::new(1.into(), 2.into()));
        assert_eq!(v, MPoly::constant(want));
    }
}
