use llab_core::critdim::{
    DEFAULT_REL_TOL, critical_dimension, endpoint_gaps, literature_bounds,
    printed_quartic_coefficients, printed_quartic_gap, reference_quartic, threshold_functions,
};
use llab_core::params::{Exponents, SystemParams};
use proptest::prelude::*;

fn exponents() -> impl Strategy<Value = Exponents> {
    (1.05f64..12.0, -3.9f64..6.0, 0.0f64..6.0)
        .prop_map(|(p, a, b)| Exponents::new(p, a, b).unwrap())
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1e-300)
}

/// Least root of N³ - 4N² - 384N + 2304 in (8, 30) by scan and bisection.
fn cubic_oracle() -> f64 {
    let c = |n: f64| ((n - 4.0) * n - 384.0) * n + 2304.0;
    let mut a = 8.0 + 1e-3;
    while c(a).signum() == c(a + 0.01).signum() {
        a += 0.01;
        assert!(a < 30.0);
    }
    let mut b = a + 0.01;
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if c(m).signum() == c(a).signum() {
            a = m
        } else {
            b = m
        }
    }
    0.5 * (a + b)
}

#[test]
fn p3_root_matches_cubic_oracle() {
    let r = critical_dimension(&Exponents::new(3.0, 0.0, 0.0).unwrap(), DEFAULT_REL_TOL).unwrap();
    let oracle = cubic_oracle();
    assert!((oracle - 18.16).abs() <= 0.05);
    assert!((r.root - 18.16).abs() <= 0.05);
    assert!((r.root - oracle).abs() <= 1e-10 * oracle);
    assert!(r.root > r.cowan_bound.unwrap());
    assert_eq!((r.bracket_lo, r.bracket_hi), (8.0, 30.0));
}

#[test]
fn bracket_signs_on_grid() {
    for p in [2.0, 3.0, 5.0, 9.0] {
        for a in [0.0, 1.0, 2.0] {
            for b in [0.0, 1.0, 2.0] {
                let e = Exponents::new(p, a, b).unwrap();
                let r = critical_dimension(&e, DEFAULT_REL_TOL).unwrap();
                assert!(r.gap_lo > 0.0 && r.gap_hi < 0.0, "({p},{a},{b})");
                assert!(r.bracket_lo < r.root && r.root < r.bracket_hi);
            }
        }
    }
}

#[test]
fn improves_on_literature_bounds() {
    for p in [2.0, 3.0, 5.0, 9.0] {
        let e = Exponents::new(p, 0.0, 0.0).unwrap();
        let r = critical_dimension(&e, DEFAULT_REL_TOL).unwrap();
        assert!(
            r.root - literature_bounds(&e).cowan.unwrap() > 1e-6,
            "p = {p}"
        );
        for a in [0.0, 1.0, 2.0] {
            let e = Exponents::new(p, a, a).unwrap();
            let r = critical_dimension(&e, DEFAULT_REL_TOL).unwrap();
            assert!(
                r.root - literature_bounds(&e).fazly.unwrap() > 1e-6,
                "p = {p}, α = {a}"
            );
        }
    }
}

#[test]
fn quartic_matches_unweighted_but_not_weighted() {
    let e = Exponents::new(3.0, 0.0, 0.0).unwrap();
    let q = reference_quartic(&e);
    assert_eq!(q.eval(10.0), -89856.0);
    assert!(printed_quartic_gap(&e, 10.0).abs() < 1e-9 * 89856.0);
    for (p, a) in [(2.0, 1.0), (5.0, 3.0), (9.0, -1.0)] {
        let e = Exponents::new(p, a, 0.0).unwrap();
        for y in [7.0, 12.5, 20.0] {
            let scale = reference_quartic(&e).eval(y).abs().max(1.0);
            assert!(
                printed_quartic_gap(&e, y).abs() < 1e-9 * scale,
                "({p},{a},0) at {y}"
            );
        }
    }
    // with β ≠ 0 the printed coefficients disagree; the gap is reported, not asserted away
    let e = Exponents::new(5.0, 1.0, 2.0).unwrap();
    let printed: f64 = printed_quartic_coefficients(&e)
        .iter()
        .rev()
        .fold(0.0, |acc, c| acc * 10.0 + c);
    assert_eq!(printed, -2799696.0);
    assert_eq!(reference_quartic(&e).eval(10.0), -2308176.0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn hardy_terms_square(n in -10.0f64..60.0, e in exponents()) {
        let t = threshold_functions(n, &e);
        prop_assert!((t.big_f - t.big_g * t.big_g / 4.0).abs() <= 1e-14 * t.big_f.abs().max(1e-300));
    }

    #[test]
    fn endpoint_gaps_match_direct_differences(e in exponents()) {
        let g = endpoint_gaps(&e);
        let lo = threshold_functions(e.sobolev_threshold(), &e);
        let hi = threshold_functions(e.bracket_hi(), &e);
        prop_assert!(rel(lo.gap(), g.left_gap) <= 1e-10);
        prop_assert!(rel(hi.gap(), g.right_gap_formula) <= 1e-10);
        prop_assert!(rel(lo.g - lo.big_g, g.g_gap) <= 1e-10);
        prop_assert!(rel(lo.f_prime - lo.big_f_prime, g.f_prime_gap) <= 1e-10);
    }

    #[test]
    fn strict_inequalities_below_the_root(e in exponents()) {
        let r = critical_dimension(&e, DEFAULT_REL_TOL).unwrap();
        let h = threshold_functions(r.root, &e).gap();
        let scale = threshold_functions(r.root, &e).big_f;
        prop_assert!(h.abs() <= 1e-9 * scale);
        for i in 1..=64 {
            let n = r.bracket_lo + (r.root - r.bracket_lo) * i as f64 / 65.0;
            let t = threshold_functions(n, &e);
            prop_assert!(t.f > t.big_f, "f <= F at {n}");
            prop_assert!(t.g > t.big_g, "g <= G at {n}");
        }
    }

    #[test]
    fn f_is_p_gamma(n in 5.0f64..40.0, e in exponents()) {
        prop_assume!(e.beta() <= (n - 4.0) / 2.0);
        let params = SystemParams::new(n, e.p(), e.alpha(), e.beta()).unwrap();
        let f = threshold_functions(n, &e).f;
        let pg = e.p() * params.derive().gamma_coef;
        prop_assert!((f - pg).abs() <= 1e-14 * f.abs().max(pg.abs()).max(1e-300));
    }
}
