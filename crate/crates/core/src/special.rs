//! Complex log-gamma and the upper incomplete gamma function Γ(z, x).

use crate::error::{domain, Error, Result};
use num_complex::Complex64;

/// B_2, B_4, …, B_18.
pub const BERNOULLI_EVEN: [f64; 9] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
];

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_741_78;
const STIRLING_SHIFT: f64 = 15.0;

/// Continuous branch of ln Γ(z) (principal for real z > 0).
///
/// Shifts `z` right until `Re ≥ 15`, applies Stirling through B_18, then
/// subtracts the principal logs of the shift factors. For `Re z > 0` the
/// imaginary part is the continuous `arg Γ` with `arg Γ(x) = 0` on the real axis.
pub fn ln_gamma(z: Complex64) -> Complex64 {
    let mut w = z;
    let mut shift = Complex64::new(0.0, 0.0);
    while w.re < STIRLING_SHIFT {
        shift += w.ln();
        w += 1.0;
    }
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut pow = inv;
    for (k, b) in BERNOULLI_EVEN.iter().enumerate() {
        let two_k = 2.0 * (k + 1) as f64;
        series += pow * (b / (two_k * (two_k - 1.0)));
        pow *= inv2;
    }
    (w - 0.5) * w.ln() - w + LN_SQRT_2PI + series - shift
}

/// Γ(z) for z off the non-positive integers.
pub fn gamma(z: Complex64) -> Complex64 {
    ln_gamma(z).exp()
}

pub const INCOMPLETE_GAMMA_MAX_ITER: usize = 500;

/// Which expansion produced an incomplete-gamma value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GammaBranch {
    /// Γ(z) − γ(z, x) via the power series for γ.
    Series,
    /// Modified-Lentz continued fraction.
    ContinuedFraction,
}

/// Series factor `S` with γ(z, x) = x^z e^{−x} S, `S = Σ_k x^k / (z(z+1)…(z+k))`.
pub(crate) fn lower_series(z: Complex64, x: f64) -> Result<Complex64> {
    let mut term = z.inv();
    let mut sum = term;
    let mut zk = z;
    for k in 0..INCOMPLETE_GAMMA_MAX_ITER {
        zk += 1.0;
        term *= x / zk;
        sum += term;
        if term.norm() <= f64::EPSILON * 0.5 * sum.norm() {
            return Ok(sum);
        }
        if k + 1 == INCOMPLETE_GAMMA_MAX_ITER {
            return Err(Error::NoConvergence {
                what: "lower incomplete gamma series",
                iterations: INCOMPLETE_GAMMA_MAX_ITER,
                achieved: term.norm() / sum.norm(),
            });
        }
    }
    unreachable!()
}

/// Continued-fraction factor `C` with Γ(z, x) = x^z e^{−x} C:
/// `C = 1/(x+1−z− 1(1−z)/(x+3−z− 2(2−z)/(x+5−z− …)))`.
pub(crate) fn upper_cf(z: Complex64, x: f64) -> Result<Complex64> {
    const TINY: f64 = 1e-300;
    let guard = |v: Complex64| if v.norm() < TINY { Complex64::new(TINY, 0.0) } else { v };
    let mut b = Complex64::new(x + 1.0, 0.0) - z;
    let mut c = Complex64::new(1.0 / TINY, 0.0);
    let mut d = guard(b).inv();
    let mut h = d;
    for k in 1..=INCOMPLETE_GAMMA_MAX_ITER {
        let kf = k as f64;
        let an = -kf * (kf - z);
        b += 2.0;
        d = guard(an * d + b).inv();
        c = guard(b + an / c);
        let delta = c * d;
        h *= delta;
        if (delta - 1.0).norm() <= f64::EPSILON {
            return Ok(h);
        }
        if k == INCOMPLETE_GAMMA_MAX_ITER {
            return Err(Error::NoConvergence {
                what: "incomplete gamma continued fraction",
                iterations: k,
                achieved: (delta - 1.0).norm(),
            });
        }
    }
    unreachable!()
}

/// Γ(z, x) = ∫ₓ^∞ t^{z−1} e^{−t} dt for complex `z` and real `x > 0`.
///
/// Uses the series complement below `x = Re(z) + 1` and the continued
/// fraction above it. Working envelope: Re z ∈ [−2, 5], |Im z| ≤ 100.
pub fn upper_incomplete_gamma(z: Complex64, x: f64) -> Result<Complex64> {
    Ok(upper_incomplete_gamma_with_branch(z, x)?.0)
}

pub fn upper_incomplete_gamma_with_branch(z: Complex64, x: f64) -> Result<(Complex64, GammaBranch)> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain(format!("incomplete gamma needs x > 0, got {x}")));
    }
    if !(-2.0..=5.0).contains(&z.re) || z.im.abs() > 100.0 {
        return Err(domain(format!("incomplete gamma parameter {z} outside the working envelope")));
    }
    let prefactor = (z * x.ln() - x).exp();
    if x < z.re + 1.0 {
        let s = lower_series(z, x)?;
        Ok((gamma(z) - prefactor * s, GammaBranch::Series))
    } else {
        let c = upper_cf(z, x)?;
        Ok((prefactor * c, GammaBranch::ContinuedFraction))
    }
}
