//! `p`-adic arithmetic and Volkenborn witnesses against exact rational sums.

use num_bigint::BigInt;
use proptest::prelude::*;
use qsym_core::algebra::{int, rat, Rational};
use qsym_core::padic::{
    moment_check, padic_bernoulli, padic_log, shift_identity_check, volkenborn_moment, PadicNum, VolkenbornParams,
};

/// `p^-N sum_{j < p^N} j^n q^j` as an exact rational; only for tiny cutoffs.
fn exact_sum(n: u32, p: u64, cut: u32, q: &Rational) -> Rational {
    let count = p.pow(cut);
    let s: Rational = (0..count).map(|j| int(j as i64).pow(n as i32) * q.pow(j as i32)).sum();
    s / int(count as i64)
}

#[test]
fn moments_match_exact_rational_sums() {
    for (p, q) in [(3u64, int(4)), (3, rat(5, 2)), (5, int(6))] {
        for n in 0..=4 {
            for cut in 1..=2 {
                let v = volkenborn_moment(n, &VolkenbornParams::new(p, cut, 6, q.clone()).unwrap()).unwrap();
                let exact = PadicNum::from_rational(p, &exact_sum(n, p, cut, &q), 40).unwrap();
                let d = v.sub(&exact);
                assert!(d.is_zero(), "p={p} q={q} n={n} N={cut}: {v} vs {exact}");
                assert_eq!(v.abs_precision(), 6);
            }
        }
    }
}

#[test]
fn log_example_and_domain() {
    let l = padic_log(&PadicNum::from_int(3, 4, 3)).unwrap();
    assert_eq!(l.residue(), Some(BigInt::from(21)));
    assert!(l.valuation() >= 1);
    assert!(padic_log(&PadicNum::from_int(5, 1, 8)).unwrap().is_zero());
    assert!(padic_log(&PadicNum::from_int(5, 3, 8)).is_err());
}

#[test]
fn forced_cancellation_reduces_precision() {
    // 1 + 3^4 and 1 agree to four digits, so their difference keeps only
    // the digits both operands still know.
    let a = PadicNum::from_int(3, 82, 10);
    let b = PadicNum::from_int(3, 1, 10);
    let d = a.sub(&b);
    assert_eq!((d.valuation(), d.abs_precision(), d.rel_precision()), (4, 10, 6));
    let c = PadicNum::from_int(3, 1, 6);
    let e = a.sub(&c);
    assert_eq!((e.valuation(), e.abs_precision()), (4, 6));
    // dividing by p^N costs N digits of absolute precision
    let f = d.div(&PadicNum::from_int(3, 27, 20)).unwrap();
    assert_eq!((f.valuation(), f.abs_precision()), (1, 7));
}

#[test]
fn geometric_moment_example() {
    let v = volkenborn_moment(0, &VolkenbornParams::new(3, 1, 4, int(4)).unwrap()).unwrap();
    assert_eq!(v.residue(), Some(BigInt::from(7)));
}

/// For `n = 0` the sum is the geometric closed form
/// `(q^(p^N) - 1) / (p^N (q - 1))` and tends to `log q / (q - 1)`.
#[test]
fn zeroth_moment_closed_form() {
    for p in [3u64, 5, 7] {
        let q = int(1 + p as i64);
        for cut in 1..=3 {
            let v = volkenborn_moment(0, &VolkenbornParams::new(p, cut, 10, q.clone()).unwrap()).unwrap();
            let pn = p.pow(cut);
            let closed = PadicNum::from_int(p, 1 + p as i64, 60)
                .sub(&PadicNum::from_int(p, 1, 60))
                .mul(&PadicNum::from_int(p, pn as i64, 60));
            // q^(p^N) computed modularly through repeated multiplication
            let mut qp = PadicNum::from_int(p, 1, 60);
            for _ in 0..pn {
                qp = qp.mul(&PadicNum::from_int(p, 1 + p as i64, 60));
            }
            let want = qp.sub(&PadicNum::from_int(p, 1, 60)).div(&closed).unwrap();
            assert!(v.sub(&want).is_zero(), "p={p} N={cut}");
            let b0 = padic_bernoulli(0, &q, p, 30).unwrap();
            assert!(v.agreement(&b0) >= cut as i64, "p={p} N={cut}");
        }
    }
}

#[test]
fn moment_grid() {
    for p in [3u64, 5, 7] {
        let q = int(1 + p as i64);
        for n in 0..=6 {
            let r = moment_check(n, p, &q, 12, &[1, 2, 3, 4, 5]).unwrap();
            assert!(r.passed, "p={p} n={n}: {r:?}");
            assert!(r.digits >= 3);
            assert!(r.steps.windows(2).all(|w| w[1].1 >= w[0].1), "steps p={p} n={n}");
            assert!(r.steps.iter().all(|&(nc, v)| v >= nc as i64 - r.offset));
        }
    }
}

#[test]
fn shift_identity() {
    for p in [3u64, 5, 7] {
        for n in [0u32, 1, 2, 3, 5] {
            for cut in 1..=4 {
                let r = shift_identity_check(n, &VolkenbornParams::new(p, cut, 12, int(1 + p as i64)).unwrap()).unwrap();
                assert!(r.passed && r.exact_layer, "p={p} n={n} N={cut}: {r:?}");
            }
        }
    }
}

#[test]
fn invalid_parameters() {
    assert!(VolkenbornParams::new(3, 2, 6, int(1)).is_err());
    assert!(VolkenbornParams::new(3, 2, 6, int(2)).is_err());
    assert!(VolkenbornParams::new(9, 2, 6, int(10)).is_err());
    assert!(VolkenbornParams::new(3, 0, 6, int(4)).is_err());
    assert!(moment_check(1, 3, &int(1), 6, &[1]).is_err());
}

fn unit_near_one(p: u64) -> impl Strategy<Value = PadicNum> {
    (1i64..2000).prop_map(move |k| PadicNum::from_int(p, 1 + p as i64 * k, 12))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn log_is_a_homomorphism_3(a in unit_near_one(3), b in unit_near_one(3)) {
        let lhs = padic_log(&a.mul(&b)).unwrap();
        prop_assert!(lhs.sub(&padic_log(&a).unwrap().add(&padic_log(&b).unwrap())).is_zero());
    }

    #[test]
    fn log_is_a_homomorphism_5(a in unit_near_one(5), b in unit_near_one(5)) {
        let lhs = padic_log(&a.mul(&b)).unwrap();
        prop_assert!(lhs.sub(&padic_log(&a).unwrap().add(&padic_log(&b).unwrap())).is_zero());
    }

    #[test]
    fn log_is_a_homomorphism_7(a in unit_near_one(7), b in unit_near_one(7)) {
        let lhs = padic_log(&a.mul(&b)).unwrap();
        prop_assert!(lhs.sub(&padic_log(&a).unwrap().add(&padic_log(&b).unwrap())).is_zero());
    }

    #[test]
    fn ring_laws(x in -500i64..500, y in -500i64..500, z in -500i64..500) {
        let p = 5;
        let f = |v: i64| PadicNum::from_int(p, v, 10);
        let (a, b, c) = (f(x), f(y), f(z));
        prop_assert!(a.add(&b).sub(&b.add(&a)).is_zero());
        prop_assert!(a.mul(&b.add(&c)).sub(&a.mul(&b).add(&a.mul(&c))).is_zero());
        prop_assert!(a.mul(&b).sub(&f(x * y)).is_zero());
        if !a.is_zero() {
            let r = PadicNum::from_rational(p, &rat(y, x), 10).unwrap();
            prop_assert!(b.div(&a).unwrap().sub(&r).is_zero());
        }
        prop_assert!(a.sub(&a).is_zero() || a.is_zero());
    }
}
