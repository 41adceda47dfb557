//! Algebraic laws of the coefficient tower, checked against pointwise
//! evaluation at rational points.

use proptest::prelude::*;
use qsym_core::algebra::{
    eps_expand, int, mpoly_equal, rat, ratfunc_normalize, LogPoly, MPoly, PolyQ, RatFuncQ, Rational, Var,
};
use qsym_core::qbernoulli::qbernoulli_number;

fn poly() -> impl Strategy<Value = PolyQ> {
    prop::collection::vec(-6i64..=6, 1..4).prop_map(|c| PolyQ::from_i64(&c))
}

fn nonzero_poly() -> impl Strategy<Value = PolyQ> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

/// Denominators are either arbitrary small polynomials or products of
/// `q^a - 1`, the shapes that occur in practice.
fn ratfunc() -> impl Strategy<Value = RatFuncQ> {
    let cyc = prop::collection::vec(1u32..=4, 0..3).prop_map(|v| {
        v.iter().fold(PolyQ::one(), |acc, &a| {
            let mut c = vec![Rational::from_integer((-1).into())];
            c.resize(a as usize, Rational::from_integer(0.into()));
            c.push(Rational::from_integer(1.into()));
            acc.mul(&PolyQ::from_coeffs(c))
        })
    });
    (poly(), prop_oneof![nonzero_poly(), cyc]).prop_map(|(n, d)| RatFuncQ::new(&n, &d).unwrap())
}

fn logpoly() -> impl Strategy<Value = LogPoly> {
    prop::collection::vec(ratfunc(), 1..3).prop_map(LogPoly::from_coeffs)
}

/// Evaluation points avoiding roots of unity.
const POINTS: [(i64, i64); 3] = [(2, 3), (-5, 2), (7, 1)];

fn same_values(a: &RatFuncQ, b: &RatFuncQ) -> bool {
    POINTS.iter().all(|&(n, d)| {
        let x = rat(n, d);
        match (a.eval(&x), b.eval(&x)) {
            (Some(u), Some(v)) => u == v,
            _ => true,
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in ratfunc(), b in ratfunc(), c in ratfunc()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
        if !a.is_zero() {
            prop_assert!(a.mul(&a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn arithmetic_matches_evaluation(a in ratfunc(), b in ratfunc()) {
        for &(n, d) in &POINTS {
            let x = rat(n, d);
            if let (Some(u), Some(v)) = (a.eval(&x), b.eval(&x)) {
                prop_assert_eq!(a.add(&b).eval(&x).unwrap(), &u + &v);
                prop_assert_eq!(a.mul(&b).eval(&x).unwrap(), &u * &v);
            }
        }
    }

    #[test]
    fn normalization_is_idempotent(n in poly(), d in nonzero_poly(), k in 1i64..5) {
        let r = ratfunc_normalize(&n, &d).unwrap();
        prop_assert_eq!(&ratfunc_normalize(&r.numer(), &r.denom()).unwrap(), &r);
        let kk = Rational::from_integer(k.into());
        prop_assert_eq!(&ratfunc_normalize(&n.scale(&kk), &d.scale(&kk)).unwrap(), &r);
        let x = PolyQ::from_i64(&[1, 1]);
        prop_assert_eq!(ratfunc_normalize(&n.mul(&x), &d.mul(&x)).unwrap(), r);
    }

    #[test]
    fn substitute_power_is_a_morphism(a in ratfunc(), b in ratfunc(), w in 1u32..4) {
        let sa = a.substitute_power(w).unwrap();
        let sb = b.substitute_power(w).unwrap();
        prop_assert_eq!(a.mul(&b).substitute_power(w).unwrap(), sa.mul(&sb));
        prop_assert_eq!(a.add(&b).substitute_power(w).unwrap(), sa.add(&sb));
        for &(n, d) in &POINTS {
            let x = rat(n, d);
            if let (Some(u), Some(v)) = (sa.eval(&x), a.eval(&x.pow(w as i32))) {
                prop_assert_eq!(u, v);
            }
        }
    }

    #[test]
    fn substitute_power_scales_l(a in logpoly(), w in 1u32..4) {
        let s = a.substitute_power(w).unwrap();
        for (d, c) in a.coeffs().iter().enumerate() {
            let wd = Rational::from_integer(w.into()).pow(d as i32);
            prop_assert!(same_values(&s.coeff(d), &c.substitute_power(w).unwrap().scale_by(&wd)));
        }
    }

    #[test]
    fn eps_expand_is_a_morphism(a in logpoly(), b in logpoly()) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        let order = 4;
        let ea = eps_expand(&a, order).unwrap();
        let eb = eps_expand(&b, order).unwrap();
        let prod = eps_expand(&a.mul(&b), order).unwrap();
        let expect = ea.mul(&eb);
        let top = prod.precision().min(expect.precision());
        for k in prod.low().min(expect.low())..top {
            prop_assert_eq!(prod.coeff(k), expect.coeff(k), "coefficient of e^{}", k);
        }
        let sum = eps_expand(&a.add(&b), order);
        if let Ok(sum) = sum {
            let expect = ea.add(&eb);
            for k in sum.low().min(expect.low())..sum.precision().min(expect.precision()) {
                prop_assert_eq!(sum.coeff(k), expect.coeff(k));
            }
        }
    }

    #[test]
    fn mpoly_ring_laws(a in logpoly(), b in logpoly()) {
        let x = MPoly::var(Var::Y1).mul_logpoly(&a).add(&MPoly::var(Var::Y2));
        let y = MPoly::var(Var::Y2).mul_logpoly(&b).add(&MPoly::constant(a.clone()));
        prop_assert!(mpoly_equal(&x.mul(&y), &y.mul(&x)));
        prop_assert!(mpoly_equal(&x.add(&y).sub(&y), &x));
        prop_assert!(x.sub(&x).is_zero());
    }
}

#[test]
fn normalization_examples() {
    let r = ratfunc_normalize(&PolyQ::from_i64(&[-1, 0, 1]), &PolyQ::from_i64(&[-1, 1])).unwrap();
    assert_eq!(r, RatFuncQ::from_poly(&PolyQ::from_i64(&[1, 1])));
    assert!(ratfunc_normalize(&PolyQ::zero(), &PolyQ::from_i64(&[0, 0, 0, 1])).unwrap().is_zero());
    let r = ratfunc_normalize(&PolyQ::from_i64(&[0, 2]), &PolyQ::from_i64(&[4])).unwrap();
    assert_eq!(r.numer(), PolyQ::monomial(rat(1, 2), 1));
    assert!(ratfunc_normalize(&PolyQ::one(), &PolyQ::zero()).is_err());
}

#[test]
fn substitute_power_examples() {
    let a = LogPoly::l().mul_ratfunc(&RatFuncQ::inv_qpow_minus_one(1, 1));
    let want = LogPoly::l().mul_ratfunc(&RatFuncQ::inv_qpow_minus_one(2, 1)).scale_by(&int(2));
    assert_eq!(a.substitute_power(2).unwrap(), want);
    assert_eq!(LogPoly::from_int(5).substitute_power(7).unwrap(), LogPoly::from_int(5));
}

#[test]
fn eps_expand_examples() {
    let pole = eps_expand(&LogPoly::constant(RatFuncQ::inv_qpow_minus_one(1, 1)), 2).unwrap();
    assert_eq!((pole.low(), pole.coeff(-1)), (-1, Some(int(1))));
    assert_eq!(pole.coeff(0), Some(int(0)));
    let l = eps_expand(&LogPoly::l(), 3).unwrap();
    assert_eq!(l.coeffs(), &[int(1), rat(-1, 2), rat(1, 3)][..]);
    assert_eq!(l.low(), 1);
    let b0 = eps_expand(&qbernoulli_number(0), 3).unwrap();
    assert_eq!(b0.coeffs(), &[int(1), rat(-1, 2), rat(1, 3)][..]);
    assert_eq!(b0.low(), 0);
}

fn to_f64(c: &Rational) -> f64 {
    c.numer().to_string().parse::<f64>().unwrap() / c.denom().to_string().parse::<f64>().unwrap()
}

/// The truncated expansion of `B_n` summed at `e = h` approximates the value
/// at `q = 1 + h`. The oracle evaluates each coefficient in `Q(q)` exactly and
/// only then combines them with `L = ln q` in floating point, which avoids the
/// cancellation a direct floating-point evaluation suffers near `q = 1`.
#[test]
fn eps_expansion_matches_floating_point() {
    let q = rat(11, 10);
    let h: f64 = 0.1;
    let l = (1.0 + h).ln();
    for n in 0..=6 {
        let b = qbernoulli_number(n);
        let e = eps_expand(&b, 16).unwrap();
        let approx: f64 = e.coeffs().iter().enumerate().map(|(i, c)| to_f64(c) * h.powi(e.low() as i32 + i as i32)).sum();
        let terms: Vec<f64> = b.coeffs().iter().enumerate().map(|(d, c)| to_f64(&c.eval(&q).unwrap()) * l.powi(d as i32)).collect();
        let direct: f64 = terms.iter().sum();
        let scale: f64 = terms.iter().map(|t| t.abs()).sum();
        assert!((approx - direct).abs() < 1e-13 * scale + 1e-12, "n={n}: {approx} vs {direct}");
    }
}
