use lowzero::testfn::{f_eval, fhat_closed, fhat_t, sup_norm_f, FHAT_ROOT};
use proptest::prelude::*;
use std::f64::consts::PI;

/// Composite Simpson on [a, b] with n (even) panels.
fn simpson<G: Fn(f64) -> f64>(g: G, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let mut s = g(a) + g(b);
    for k in 1..n {
        s += g(a + k as f64 * h) * if k % 2 == 1 { 4.0 } else { 2.0 };
    }
    s * h / 3.0
}

fn fhat_oracle(u: f64) -> f64 {
    2.0 * simpson(|x| f_eval(x) * (u * x).cos(), 0.0, 1.0, 4000)
}

#[test]
fn transform_matches_quadrature_on_grid() {
    let mut worst = 0.0f64;
    for k in 0..=2000 {
        let u = k as f64 * 0.01;
        worst = worst.max((fhat_closed(u) - fhat_oracle(u)).abs());
    }
    assert!(worst < 1e-8, "worst {worst:e}");
}

#[test]
fn transform_near_removable_points() {
    for u in [PI - 1e-9, PI, PI + 1e-9, 3.0 * PI, FHAT_ROOT] {
        assert!((fhat_closed(u) - fhat_oracle(u)).abs() < 1e-8, "u = {u}");
    }
    assert!(fhat_closed(FHAT_ROOT).abs() < 1e-14);
    assert!((fhat_closed(0.0) - 16.0 / (PI * PI)).abs() < 1e-15);
}

#[test]
fn sup_norm_window() {
    let s = sup_norm_f();
    assert!(s.max >= 1.2095 && s.max <= 1.2100, "{}", s.max);
    assert!(s.max <= 1.21);
    let mut grid_max = 0.0f64;
    for k in 0..=100_000 {
        grid_max = grid_max.max(f_eval(k as f64 * 1e-5).abs());
    }
    assert!(s.max >= grid_max && s.max - grid_max < 1e-9);
}

proptest! {
    #[test]
    fn f_is_even_with_compact_support(x in -3.0f64..3.0) {
        prop_assert_eq!(f_eval(x), f_eval(-x));
        if x.abs() >= 1.0 {
            prop_assert_eq!(f_eval(x), 0.0);
        }
    }

    #[test]
    fn transform_sign_pattern(u in 0.0f64..60.0) {
        let v = fhat_closed(u);
        if u < FHAT_ROOT - 1e-9 {
            prop_assert!(v >= 0.0);
        } else if u > FHAT_ROOT + 1e-9 {
            prop_assert!(v <= 1e-300);
        }
    }

    #[test]
    fn dilation_scales(u in 0.0f64..10.0, t in 0.1f64..20.0) {
        prop_assert!((fhat_t(u, t).unwrap() - t * fhat_closed(t * u)).abs() <= 1e-15 * t.max(1.0) * 2.0);
    }

    #[test]
    fn transform_even(u in 0.0f64..40.0) {
        prop_assert_eq!(fhat_closed(u), fhat_closed(-u));
    }
}
