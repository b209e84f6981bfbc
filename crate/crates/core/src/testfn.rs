//! The compactly supported test function
//! `F(x) = (1 − |x|) cos(πx) + (3/π) sin(π|x|)` on `[−1, 1]`, its dilates
//! `F_T(x) = F(x/T)`, and the Fourier transform
//! `F̂(u) = ∫ F(x) e^{iux} dx = 2(2 − u²/π²) [2π cos(u/2) / (π² − u²)]²`.

use crate::error::{domain, Result};
use crate::quad;
use serde::Serialize;
use std::f64::consts::{PI, SQRT_2};

/// Positive root of F̂: F̂ ≥ 0 on `[0, √2π]`, ≤ 0 beyond.
pub const FHAT_ROOT: f64 = SQRT_2 * PI;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TestFunctionEval {
    pub x: f64,
    pub value: f64,
}

pub fn f_eval(x: f64) -> f64 {
    let ax = x.abs();
    if ax > 1.0 {
        return 0.0;
    }
    (1.0 - ax) * (PI * ax).cos() + 3.0 / PI * (PI * ax).sin()
}

pub fn eval(x: f64) -> TestFunctionEval {
    TestFunctionEval { x, value: f_eval(x) }
}

/// `1 − F(u)` for `u ≥ 0`, with a series near 0 where the subtraction cancels.
pub(crate) fn one_minus_f(u: f64) -> f64 {
    let u = u.abs();
    if u < 1e-3 {
        // F(u) = 1 + 2u − (π²/2)u² + (π⁴/24)u⁴ − (π⁴/60)u⁵ + O(u⁶)
        let p2 = PI * PI;
        let p4 = p2 * p2;
        return -u * (2.0 - u * (p2 / 2.0 - u * u * (p4 / 24.0 - u * p4 / 60.0)));
    }
    1.0 - f_eval(u)
}

fn check_scale(t: f64) -> Result<()> {
    if t > 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(domain(format!("dilation T must be positive and finite, got {t}")))
    }
}

/// `F_T(x) = F(x / T)`, supported on `[−T, T]`.
pub fn f_t_eval(x: f64, t: f64) -> Result<f64> {
    check_scale(t)?;
    Ok(f_eval(x / t))
}

/// `cos(u/2) / (π² − u²)`, continuous through `u = ±π`.
fn cos_ratio(u: f64) -> f64 {
    let u = u.abs();
    let p2 = PI * PI;
    if (u * u - p2).abs() < 1e-6 * p2 {
        // u = π + h:  cos(u/2)/(π² − u²) = [sin(h/2)/h] / (2π + h)
        let h = u - PI;
        let h2 = h * h;
        let sinc_half = 0.5 - h2 / 48.0 + h2 * h2 / 3840.0 - h2 * h2 * h2 / 645_120.0;
        return sinc_half / (2.0 * PI + h);
    }
    (0.5 * u).cos() / (p2 - u * u)
}

/// Closed-form Fourier transform of F.
pub fn fhat_closed(u: f64) -> f64 {
    let g = 2.0 * PI * cos_ratio(u);
    2.0 * (2.0 - u * u / (PI * PI)) * g * g
}

/// `F̂_T(u) = T F̂(Tu)`.
pub fn fhat_t(u: f64, t: f64) -> Result<f64> {
    check_scale(t)?;
    Ok(t * fhat_closed(t * u))
}

/// Quadrature oracle `2 ∫₀¹ F(x) cos(ux) dx` for F̂(u).
pub fn fhat_numeric(u: f64, tol: f64) -> Result<f64> {
    let r = quad::integrate(|x| f_eval(x) * (u * x).cos(), 0.0, 1.0, 0.5 * tol)?;
    Ok(2.0 * r.value)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SupNorm {
    pub argmax: f64,
    pub max: f64,
}

/// Global maximum of |F| on [0, 1]: grid scan at step 1e-4 then golden-section
/// refinement of the best grid cell to 1e-10.
pub fn sup_norm_f() -> SupNorm {
    const STEP: f64 = 1e-4;
    let n = (1.0 / STEP).round() as usize;
    let (best_i, _) = (0..=n)
        .map(|i| (i, f_eval(i as f64 * STEP).abs()))
        .fold((0, f64::NEG_INFINITY), |acc, (i, v)| if v > acc.1 { (i, v) } else { acc });
    let lo = (best_i as f64 * STEP - STEP).max(0.0);
    let hi = (best_i as f64 * STEP + STEP).min(1.0);
    let argmax = golden_section_max(|x| f_eval(x).abs(), lo, hi, 1e-10);
    SupNorm {
        argmax,
        max: f_eval(argmax).abs(),
    }
}

pub(crate) fn golden_section_max<G: Fn(f64) -> f64>(g: G, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut gc, mut gd) = (g(c), g(d));
    while b - a > tol {
        if gc > gd {
            b = d;
            d = c;
            gd = gc;
            c = b - inv_phi * (b - a);
            gc = g(c);
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + inv_phi * (b - a);
            gd = g(d);
        }
    }
    0.5 * (a + b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f_examples() {
        assert_eq!(f_eval(0.0), 1.0);
        assert!(f_eval(1.0).abs() < 1e-15);
        assert!((f_eval(0.5) - 3.0 / PI).abs() < 1e-15);
        assert_eq!(f_eval(1.5), 0.0);
        assert_eq!(f_eval(-0.3), f_eval(0.3));
    }

    #[test]
    fn f_t_examples() {
        assert_eq!(f_t_eval(0.0, 2.0).unwrap(), 1.0);
        assert!(f_t_eval(2.0, 2.0).unwrap().abs() < 1e-15);
        assert!((f_t_eval(1.0, 2.0).unwrap() - 3.0 / PI).abs() < 1e-15);
        assert!(f_t_eval(1.0, 0.0).is_err());
        assert!(f_t_eval(1.0, -1.0).is_err());
    }

    #[test]
    fn one_minus_f_series_joins_direct_form() {
        for &u in &[1e-9, 1e-6, 5e-4, 9.99e-4] {
            let series = one_minus_f(u);
            let direct = 1.0 - f_eval(u);
            assert!((series - direct).abs() < 1e-15 + 1e-9 * direct.abs(), "{u}");
        }
        assert!((one_minus_f(2e-3) - (1.0 - f_eval(2e-3))).abs() == 0.0);
    }

    #[test]
    fn fhat_examples() {
        assert!((fhat_closed(0.0) - 16.0 / (PI * PI)).abs() < 1e-15);
        assert!((fhat_closed(PI) - 0.5).abs() < 1e-15);
        assert!((fhat_closed(-PI) - 0.5).abs() < 1e-15);
        assert!(fhat_closed(FHAT_ROOT).abs() < 1e-15);
        assert!((fhat_t(0.0, 3.0).unwrap() - 48.0 / (PI * PI)).abs() < 1e-14);
        assert!(fhat_t(FHAT_ROOT / 7.0, 7.0).unwrap().abs() < 1e-14);
        assert!((fhat_t(PI, 1.0).unwrap() - 0.5).abs() < 1e-15);
        assert!(fhat_t(1.0, 0.0).is_err());
    }

    #[test]
    fn fhat_is_smooth_across_guard_band() {
        // The guard band switches formula at |u² − π²| = 1e-6 π².
        let edge = (PI * PI * (1.0 + 1e-6)).sqrt();
        let inside = fhat_closed(edge * (1.0 - 1e-12));
        let outside = fhat_closed(edge * (1.0 + 1e-12));
        assert!((inside - outside).abs() < 1e-9);
        let near = fhat_closed(PI + 1e-7);
        assert!((near - 0.5).abs() < 1e-6);
    }

    #[test]
    fn fhat_numeric_examples() {
        let tol = 1e-10;
        assert!((fhat_numeric(0.0, tol).unwrap() - 16.0 / (PI * PI)).abs() < tol);
        assert!((fhat_numeric(PI, tol).unwrap() - 0.5).abs() < tol);
        assert!((fhat_numeric(20.0, tol).unwrap() - fhat_closed(20.0)).abs() < tol);
    }

    #[test]
    fn sup_norm() {
        let s = sup_norm_f();
        assert!((1.2095..=1.2100).contains(&s.max), "{s:?}");
        assert!(s.max <= 1.21);
        assert!((0.15..0.3).contains(&s.argmax));
        let f025 = 0.75 * (PI / 4.0).cos() + 3.0 / PI * (PI / 4.0).sin();
        assert!((f_eval(0.25) - f025).abs() < 1e-15);
        assert!(f025 <= s.max && 1.0 <= s.max);
    }
}
