//! Euler–Maclaurin evaluation of the Hurwitz and Riemann zeta functions, and
//! the Riemann–Siegel theta function.

use crate::error::{domain, Error, Result};
use crate::special::{ln_gamma, BERNOULLI_EVEN};
use crate::sum::CompensatedComplex;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Number of Bernoulli corrections applied (through B_12).
const EM_ORDER: usize = 6;
const MAX_DOUBLINGS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmValue {
    pub value: Complex64,
    pub err_estimate: f64,
    pub n_terms: usize,
}

/// One Euler–Maclaurin pass with `n` direct terms.
fn hurwitz_pass(s: Complex64, a: f64, n: usize) -> EmValue {
    let mut acc = CompensatedComplex::new();
    for k in 0..n {
        acc.add((-s * (k as f64 + a).ln()).exp());
    }
    let big_n = n as f64 + a;
    let ln_n = big_n.ln();
    let n_pow = (-s * ln_n).exp(); // (N + a)^{−s}
    acc.add(n_pow * big_n / (s - 1.0));
    acc.add(n_pow * 0.5);

    // Σ_j B_{2j}/(2j)! · s(s+1)…(s+2j−2) · (N+a)^{−s−2j+1}
    let mut rising = s; // s(s+1)…(s+2j−2)
    let mut power = n_pow / big_n; // (N+a)^{−s−1}
    let mut factorial = 2.0; // (2j)!
    let mut last = 0.0;
    for j in 1..=EM_ORDER + 1 {
        let term = rising * power * (BERNOULLI_EVEN[j - 1] / factorial);
        if j <= EM_ORDER {
            acc.add(term);
        } else {
            last = term.norm();
        }
        let jf = j as f64;
        rising *= (s + (2.0 * jf - 1.0)) * (s + 2.0 * jf);
        power /= big_n * big_n;
        factorial *= (2.0 * jf + 1.0) * (2.0 * jf + 2.0);
    }
    let value = acc.value();
    EmValue {
        value,
        err_estimate: last + 4.0 * f64::EPSILON * (n as f64).sqrt() * value.norm().max(1.0),
        n_terms: n,
    }
}

/// Hurwitz zeta ζ(s, a) for `0 < a ≤ 1`, `s ≠ 1`, to absolute tolerance `tol`
/// when achievable.
///
/// Starts from `max(20, |Im s|)` direct terms and doubles until the first
/// omitted Bernoulli correction falls below `tol`.
pub fn hurwitz_zeta(s: Complex64, a: f64, tol: f64) -> Result<EmValue> {
    if !(a > 0.0 && a <= 1.0) {
        return Err(domain(format!("Hurwitz parameter must lie in (0, 1], got {a}")));
    }
    if s == Complex64::new(1.0, 0.0) {
        return Err(domain("zeta has a pole at s = 1"));
    }
    let mut n = 20usize.max(s.im.abs().ceil() as usize);
    let mut best = hurwitz_pass(s, a, n);
    for _ in 0..MAX_DOUBLINGS {
        if best.err_estimate <= tol {
            return Ok(best);
        }
        n *= 2;
        best = hurwitz_pass(s, a, n);
    }
    if best.err_estimate <= tol {
        Ok(best)
    } else {
        Err(Error::NoConvergence {
            what: "Euler-Maclaurin zeta",
            iterations: best.n_terms,
            achieved: best.err_estimate,
        })
    }
}

/// ζ(s) by Euler–Maclaurin, for `0 < Re s ≤ 2`, `|Im s| ≤ 100`.
pub fn zeta_em(s: Complex64, tol: f64) -> Result<Complex64> {
    Ok(zeta_em_detailed(s, tol)?.value)
}

pub fn zeta_em_detailed(s: Complex64, tol: f64) -> Result<EmValue> {
    if !(s.re > 0.0 && s.re <= 2.0) || s.im.abs() > 100.0 {
        return Err(domain(format!("zeta_em: s = {s} outside 0 < Re s <= 2, |Im s| <= 100")));
    }
    hurwitz_zeta(s, 1.0, tol)
}

/// θ(t) = arg Γ(1/4 + it/2) − (t/2) ln π on the continuous branch with θ(0) = 0.
pub fn riemann_siegel_theta(t: f64) -> f64 {
    ln_gamma(Complex64::new(0.25, 0.5 * t)).im - 0.5 * t * PI.ln()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_two() {
        let z = zeta_em(Complex64::new(2.0, 0.0), 1e-13).unwrap();
        assert!((z.re - PI * PI / 6.0).abs() < 1e-12);
        assert!(z.im.abs() < 1e-15);
    }

    #[test]
    fn zeta_half() {
        let z = zeta_em(Complex64::new(0.5, 0.0), 1e-13).unwrap();
        assert!((z.re + 1.460_354_508_809_586_8).abs() < 1e-12);
    }

    #[test]
    fn first_zero_neighbourhood() {
        let z = zeta_em(Complex64::new(0.5, 14.134_725), 1e-12).unwrap();
        assert!(z.norm() < 1e-5);
    }

    #[test]
    fn hurwitz_at_one_is_zeta_and_half_relation() {
        // ζ(s, 1/2) = (2^s − 1) ζ(s)
        let s = Complex64::new(0.5, 7.3);
        let z = zeta_em(s, 1e-13).unwrap();
        let h = hurwitz_zeta(s, 0.5, 1e-13).unwrap().value;
        let rhs = ((s * 2f64.ln()).exp() - 1.0) * z;
        assert!((h - rhs).norm() < 1e-11);
    }

    #[test]
    fn domain_errors() {
        assert!(zeta_em(Complex64::new(1.0, 0.0), 1e-10).is_err());
        assert!(zeta_em(Complex64::new(0.5, 120.0), 1e-10).is_err());
        assert!(zeta_em(Complex64::new(-0.5, 1.0), 1e-10).is_err());
        assert!(hurwitz_zeta(Complex64::new(0.5, 1.0), 0.0, 1e-10).is_err());
    }

    #[test]
    fn theta_basic() {
        assert_eq!(riemann_siegel_theta(0.0), 0.0);
        for &t in &[0.7, 5.0, 14.134_725, 33.0, 99.0] {
            assert!((riemann_siegel_theta(-t) + riemann_siegel_theta(t)).abs() < 1e-12);
        }
        // θ(t) ≈ (t/2) ln(t/2π) − t/2 − π/8 + 1/(48t) for large t
        let t = 90.0;
        let asym = 0.5 * t * (t / (2.0 * PI)).ln() - 0.5 * t - PI / 8.0 + 1.0 / (48.0 * t);
        assert!((riemann_siegel_theta(t) - asym).abs() < 1e-6);
    }
}
