//! `q`-Bernoulli numbers, power sums and closed forms against independent
//! scalar oracles.

use num_traits::{One, Zero};
use proptest::prelude::*;
use qsym_core::algebra::{binomial, factorial, int, rat, LogPoly, MPoly, PolyQ, RatFuncQ, Rational, Var};
use qsym_core::qbernoulli::{
    classical_bernoulli, multinomial, power_sum, qbernoulli_number, qbernoulli_number_base, qbernoulli_poly, rebase,
};
use qsym_core::series::{
    bernoulli_gf, build_closed_form, exp_linear, geometric_qexp, series_div, series_mul, LambdaFamily, LambdaSpec,
    TruncSeries,
};

fn value(a: &LogPoly, q: &Rational, l: &Rational) -> Rational {
    a.coeffs().iter().enumerate().fold(Rational::zero(), |acc, (d, c)| acc + c.eval(q).unwrap() * l.pow(d as i32))
}

/// `n!` times the `t^n` coefficient of `(l + t) / (q e^t - 1)` at scalar
/// `q, l`, by inverting the denominator's power series term by term.
fn scalar_gf(q: &Rational, l: &Rational, order: usize) -> Vec<Rational> {
    let fact = |k: usize| Rational::from_integer(factorial(k as u64));
    let den: Vec<Rational> = (0..=order).map(|k| q / fact(k) - if k == 0 { Rational::one() } else { Rational::zero() }).collect();
    let mut inv = vec![Rational::zero(); order + 1];
    inv[0] = den[0].recip();
    for k in 1..=order {
        let s: Rational = (1..=k).map(|j| &den[j] * &inv[k - j]).sum();
        inv[k] = -s / &den[0];
    }
    (0..=order)
        .map(|n| {
            let c = l * &inv[n] + if n > 0 { inv[n - 1].clone() } else { Rational::zero() };
            c * fact(n)
        })
        .collect()
}

#[test]
fn generating_function_agreement() {
    let gf = bernoulli_gf(12);
    for (q, l) in [(int(2), rat(3, 5)), (rat(-1, 3), int(7))] {
        let oracle = scalar_gf(&q, &l, 12);
        for n in 0..=12 {
            let b = qbernoulli_number(n);
            assert_eq!(gf.egf_coeff(n), b, "series and recurrence differ at n={n}");
            assert_eq!(value(&b, &q, &l), oracle[n], "n={n}");
        }
    }
}

#[test]
fn numbers_are_affine_in_l() {
    for n in 0..=12 {
        assert_eq!(qbernoulli_number(n).l_degree(), Some(1), "n={n}");
    }
}

#[test]
fn small_values() {
    let inv1 = RatFuncQ::inv_qpow_minus_one(1, 1);
    assert_eq!(qbernoulli_number(0), LogPoly::l().mul_ratfunc(&inv1));
    let q_over = RatFuncQ::q().mul(&RatFuncQ::inv_qpow_minus_one(1, 2));
    let b1 = LogPoly::constant(inv1.clone()).sub(&LogPoly::l().mul_ratfunc(&q_over));
    assert_eq!(qbernoulli_number(1), b1);
    let p1 = qbernoulli_poly(1, Var::X);
    let want = MPoly::var(Var::X).mul_logpoly(&qbernoulli_number(0)).add(&MPoly::constant(b1));
    assert_eq!(p1, want);
    for n in 0..6 {
        let p = qbernoulli_poly(n, Var::X).substitute(Var::X, &MPoly::zero());
        assert_eq!(p, MPoly::constant(qbernoulli_number(n)));
    }
}

#[test]
fn rebase_coherence() {
    for w in 1..=4 {
        for n in 0..=8 {
            assert_eq!(rebase(&qbernoulli_number(n), w).unwrap(), qbernoulli_number_base(n, w), "n={n} w={w}");
        }
    }
    assert!(rebase(&qbernoulli_number(1), 0).is_err());
}

/// `n!` times the coefficients of `t / (e^t - 1)`, inverting `(e^t - 1)/t`.
#[test]
fn classical_values() {
    assert_eq!(classical_bernoulli(0), int(1));
    assert_eq!(classical_bernoulli(1), rat(-1, 2));
    assert_eq!(classical_bernoulli(12), rat(-691, 2730));
    let fact = |k: usize| Rational::from_integer(factorial(k as u64));
    let den: Vec<Rational> = (0..=12).map(|k| fact(k + 1).recip()).collect();
    let mut inv = vec![int(1)];
    for k in 1..=12 {
        let s: Rational = (1..=k).map(|j| &den[j] * &inv[k - j]).sum();
        inv.push(-s);
    }
    for n in 0..=12 {
        assert_eq!(&inv[n] * fact(n), classical_bernoulli(n), "n={n}");
    }
}

#[test]
fn power_sum_examples() {
    assert_eq!(power_sum(2, 2), PolyQ::from_i64(&[0, 1, 4]));
    assert_eq!(power_sum(0, 3), PolyQ::from_i64(&[1, 1, 1, 1]));
    assert!(power_sum(3, 0).is_zero());
    assert_eq!(power_sum(0, 0), PolyQ::one());
    assert_eq!(multinomial(3, &[1, 1, 1]).unwrap(), 6.into());
    assert_eq!(multinomial(4, &[2, 1, 1]).unwrap(), 12.into());
    assert_eq!(multinomial(5, &[5, 0, 0]).unwrap(), 1.into());
    assert!(multinomial(4, &[1, 1, 1]).is_err());
}

/// `S_k(a + b) = S_k(a) + q^(a+1) sum_l C(k,l) (a+1)^(k-l) S_l(b-1)`.
#[test]
fn power_sum_splitting() {
    for k in 0..=5u32 {
        for a in 0..=4u32 {
            for b in 1..=4u32 {
                let mut rhs = power_sum(k, a);
                for l in 0..=k {
                    let c = Rational::from_integer(binomial(k as u64, l as u64)) * int(a as i64 + 1).pow((k - l) as i32);
                    rhs = rhs.add(&PolyQ::monomial(c, a as usize + 1).mul(&power_sum(l, b - 1)));
                }
                assert_eq!(power_sum(k, a + b), rhs, "k={k} a={a} b={b}");
            }
        }
    }
}

#[test]
fn series_examples() {
    let a = TruncSeries::new(vec![int(1), int(1)], 2);
    let b = TruncSeries::new(vec![int(1), int(-1)], 2);
    assert_eq!(series_mul(&a, &b).unwrap().coeffs(), &[int(1), int(0), int(-1)][..]);
    let g = series_div(&TruncSeries::one(3), &TruncSeries::new(vec![int(1), int(-1)], 3)).unwrap();
    assert_eq!(g.coeffs(), &[int(1), int(1), int(1), int(1)][..]);
    assert!(series_div(&TruncSeries::one(3), &TruncSeries::new(vec![int(0), int(1)], 3)).is_err());
    assert_eq!(exp_linear(&int(1), 3).coeffs(), &[int(1), int(1), rat(1, 2), rat(1, 6)][..]);
    let y = exp_linear(&MPoly::var(Var::Y1), 2);
    assert_eq!(y.coeff(2), &MPoly::var(Var::Y1).pow(2).scale_by(&rat(1, 2)));
    assert_eq!(geometric_qexp(1, 3), TruncSeries::one(3));
    let q = LogPoly::constant(RatFuncQ::q());
    let g2 = geometric_qexp(2, 2);
    assert_eq!(g2.coeffs(), &[LogPoly::constant(RatFuncQ::from_poly(&PolyQ::from_i64(&[1, 1]))), q.clone(), q.scale_by(&rat(1, 2))][..]);
    for (fam, i) in [(LambdaFamily::L12, 1), (LambdaFamily::L23, 3)] {
        let c = build_closed_form(&LambdaSpec::new(fam, i, [1, 1, 1]).unwrap(), 4).unwrap();
        assert_eq!(c, TruncSeries::one(4), "{fam:?} {i}");
    }
    assert!(LambdaSpec::new(LambdaFamily::L12, 2, [1, 1, 1]).is_err());
    assert!(LambdaSpec::new(LambdaFamily::L23, 0, [1, 0, 1]).is_err());
}

/// Every closed form depends on the weights symmetrically.
#[test]
fn closed_forms_are_symmetric() {
    let shapes = [(LambdaFamily::L23, 0..=3), (LambdaFamily::L13, 0..=3), (LambdaFamily::L12, 0..=1)];
    for (fam, idx) in shapes {
        for i in idx {
            for w in [[1, 2, 3], [2, 2, 3], [1, 1, 2]] {
                let base = build_closed_form(&LambdaSpec::new(fam, i, w).unwrap(), 5).unwrap();
                for p in [[1, 0, 2], [2, 1, 0], [0, 2, 1], [1, 2, 0], [2, 0, 1]] {
                    let wp = [w[p[0]], w[p[1]], w[p[2]]];
                    let other = build_closed_form(&LambdaSpec::new(fam, i, wp).unwrap(), 5).unwrap();
                    assert_eq!(base, other, "{fam:?} {i} {w:?} -> {wp:?}");
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// `B_{n,q}(u + v) = sum_k C(n,k) B_{k,q}(u) v^(n-k)`, with the
    /// polynomial evaluated at scalar points.
    #[test]
    fn appell_shift(n in 0usize..7, u in -4i64..4, v in -4i64..4) {
        let p = qbernoulli_poly(n, Var::X);
        let at = |x: i64| p.substitute(Var::X, &MPoly::from_rational(int(x))).as_constant().unwrap();
        let mut rhs = LogPoly::zero();
        for k in 0..=n {
            let pk = qbernoulli_poly(k, Var::X).substitute(Var::X, &MPoly::from_rational(int(u))).as_constant().unwrap();
            let c = Rational::from_integer(binomial(n as u64, k as u64)) * int(v).pow((n - k) as i32);
            rhs = rhs.add(&pk.scale_by(&c));
        }
        prop_assert_eq!(at(u + v), rhs);
    }

    /// Rebasing commutes with products and with the recurrence at scalar
    /// points `q^w`.
    #[test]
    fn rebase_matches_scalar_oracle(n in 0usize..8, w in 1u32..4) {
        let q = rat(3, 2);
        let l = rat(2, 7);
        let qw = q.pow(w as i32);
        let lw = &l * Rational::from_integer(w.into());
        let oracle = scalar_gf(&qw, &lw, n);
        prop_assert_eq!(value(&qbernoulli_number_base(n, w), &q, &l), oracle[n].clone());
    }
}
