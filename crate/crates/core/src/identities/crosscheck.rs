//! Series-level checks: expansions against closed forms, the `Λ13`
//! substitution, the geometric quotient identity and its coefficient form.

use super::catalog::{corollary, Expansion};
use super::eval::{at_origin, evaluate_upto};
use super::verify::Report;
use crate::algebra::{binomial, LogPoly, MPoly, RatFuncQ, Rational};
use crate::error::Result;
use crate::algebra::eps_expand;
use crate::qbernoulli::{classical_bernoulli, power_sum, qbernoulli_number, qbernoulli_number_base, rebase};
use crate::series::{bernoulli_gf, build_closed_form, geometric_qexp, series_mul, LambdaFamily, LambdaSpec};
use num_traits::{One, Zero};

fn wp(w: &[u32; 3], k: usize) -> Vec<(&'static str, i64)> {
    vec![("K", k as i64), ("w1", w[0] as i64), ("w2", w[1] as i64), ("w3", w[2] as i64)]
}

/// `n!`-scaled coefficients of the closed form against the expansion's values.
pub fn crosscheck_expansion(e: &Expansion, w: &[u32; 3], order: usize) -> Result<Report> {
    let mut rep = Report::new("expansion", e.id, &wp(w, order));
    let closed = build_closed_form(&LambdaSpec::new(e.family, e.index, *w)?, order)?;
    let vals = evaluate_upto(&e.expr, order, w)?;
    for (n, v) in vals.iter().enumerate() {
        rep.compare(n, "expansion coefficient", &closed.egf_coeff(n), v);
    }
    if let Some(note) = e.note {
        rep.flags.push(note.into());
    }
    if rep.passed {
        rep.detail = format!("{:?} index {} matches through t^{order}", e.family, e.index);
    }
    Ok(rep)
}

/// The pairwise-product shape at `(w2 w3, w1 w3, w1 w2)` equals the
/// single-weight shape at `(w1, w2, w3)` after `t -> P t`, `q -> q^P`,
/// `P = w1 w2 w3`, for every index.
pub fn lambda13_substitution_check(w: &[u32; 3], order: usize) -> Result<Report> {
    let mut rep = Report::new("substitution", "L13", &wp(w, order));
    let p = w[0] * w[1] * w[2];
    let pairs = [w[1] * w[2], w[0] * w[2], w[0] * w[1]];
    let pr = Rational::from_integer(p.into());
    for i in 0..=3 {
        let a = build_closed_form(&LambdaSpec::new(LambdaFamily::L23, i, pairs)?, order)?;
        let b = build_closed_form(&LambdaSpec::new(LambdaFamily::L13, i, *w)?, order)?;
        let mut pk = Rational::one();
        for k in 0..=order {
            let sub = b.coeff(k).substitute_power(p)?.scale_by(&pk);
            rep.compare(k, &format!("index {i} coefficient"), a.coeff(k), &sub);
            pk *= &pr;
        }
    }
    if rep.passed {
        rep.detail = format!("indices 0..=3 agree through t^{order}");
    }
    Ok(rep)
}

/// `sum_{i<w} q^i e^{it} * F_{q^w}(w t) = w F_q(t)`, the quotient identity
/// multiplied out, since `L` is not invertible.
pub fn series_identity_check(w: u32, order: usize) -> Result<Report> {
    let mut rep = Report::new("quotient-series", "geometric", &[("K", order as i64), ("w", w as i64)]);
    let f = bernoulli_gf(order);
    let fw = f.map(|c| rebase(c, w).expect("w >= 1")).dilate(&Rational::from_integer(w.into()));
    let lhs = series_mul(&geometric_qexp(w, order), &fw)?;
    let rhs = f.scale(&Rational::from_integer(w.into()));
    for k in 0..=order {
        rep.compare(k, "t coefficient", &MPoly::constant(rhs.coeff(k).clone()), &MPoly::constant(lhs.coeff(k).clone()));
    }
    if rep.passed {
        rep.detail = format!("agrees through t^{order}");
    }
    Ok(rep)
}

/// `w B_{k,q} = sum_l C(k,l) S_{l,q}(w-1) w^(k-l) B_{k-l,q^w}` for `k <= K`,
/// and the same right side equals `w` times the multiplication-formula
/// corollary at `y1 = 0`.
pub fn coefficient_identity_check(w: u32, order: usize) -> Result<Report> {
    let mut rep = Report::new("coefficient-identity", "geometric", &[("K", order as i64), ("w", w as i64)]);
    let wr = Rational::from_integer(w.into());
    let cor = corollary("F4@w2=w3=1")?;
    let cor_vals = evaluate_upto(&cor.printed[1], order, &[w, 1, 1])?;
    for k in 0..=order {
        let lhs = qbernoulli_number(k).scale_by(&wr);
        let mut rhs = LogPoly::zero();
        for l in 0..=k {
            let s = LogPoly::constant(RatFuncQ::from_poly(&power_sum(l as u32, w - 1)));
            let c = Rational::from_integer(binomial(k as u64, l as u64)) * wr.pow((k - l) as i32);
            let b = rebase(&qbernoulli_number(k - l), w)?;
            debug_assert_eq!(b, qbernoulli_number_base(k - l, w));
            rhs = rhs.add(&s.mul(&b).scale_by(&c));
        }
        rep.compare(k, "coefficient sum", &MPoly::constant(lhs), &MPoly::constant(rhs.clone()));
        let link = at_origin(&cor_vals[k]).scale_by(&wr);
        rep.compare(k, "specialized corollary at y1 = 0", &MPoly::constant(rhs), &MPoly::constant(link));
    }
    if rep.passed {
        rep.detail = format!("L-terms cancel exactly for k <= {order}; corollary link holds");
    }
    Ok(rep)
}

/// At `q = 1 + eps`, `B_{n,q}` has no pole and its constant term is the
/// classical Bernoulli number, for `n <= n_max`.
pub fn limit_check(n_max: usize) -> Result<Report> {
    let mut rep = Report::new("limit", "classical", &[("n_max", n_max as i64)]);
    for n in 0..=n_max {
        let e = eps_expand(&qbernoulli_number(n), 1)?;
        if e.low() < 0 && e.coeffs().iter().take((-e.low()) as usize).any(|c| !c.is_zero()) {
            rep.fail_with(format!("B_{n} has a pole at q = 1"));
            continue;
        }
        let c0 = e.coeff(0).unwrap_or_default();
        let want = classical_bernoulli(n);
        if c0 != want {
            rep.fail_with(format!("B_{n} tends to {c0}, expected {want}"));
        }
    }
    if rep.passed {
        rep.detail = format!("limits are the classical values for n <= {n_max}");
    }
    Ok(rep)
}
