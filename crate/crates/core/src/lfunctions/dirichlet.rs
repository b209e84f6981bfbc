//! Completed Dirichlet L-functions Λ(s, χ) = (q/π)^{(s+a)/2} Γ((s+a)/2) L(s, χ)
//! for real primitive characters.
//!
//! Main route: the smoothed approximate functional equation, split at `A`:
//!
//! Λ(s) = Σ χ(n) (q/π)^{z} n^{−s} Γ(z, πn²A/q) + Σ χ(n) (q/π)^{z'} n^{s−1} Γ(z', πn²/(qA)),
//!
//! with `z = (s+a)/2`, `z' = (1−s+a)/2`. The root number is +1, so Λ(s) does
//! not depend on `A`, and for `A = 1` on the critical line the two sums are
//! complex conjugates.
//!
//! Second route (small conductors): L(s, χ) = q^{−s} Σ_{r ≤ q} χ(r) ζ(s, r/q).

use super::zeta::hurwitz_zeta;
use super::CharacterTable;
use crate::error::{domain, Result};
use crate::special::{ln_gamma, lower_series, upper_cf};
use crate::sum::{CompensatedComplex, CompensatedSum};
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

/// Terms are dropped once their weight is below this fraction of the largest.
pub const AFE_RELATIVE_CUTOFF: f64 = 1e-16;
const BLOCK: usize = 1 << 15;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfSum {
    pub value: Complex64,
    /// Σ |term|, for rounding-error estimates.
    pub abs_sum: f64,
    pub max_term: f64,
    pub last_weight: f64,
    pub n_terms: usize,
}

struct TermContext {
    s: Complex64,
    z: Complex64,
    a: f64,
    /// ln((q/π)^z Γ(z))
    log_gamma_factor: Complex64,
    /// A^z
    split_pow: Complex64,
    x_scale: f64,
}

impl TermContext {
    /// Weight of term `n` without the character value.
    #[inline]
    fn term(&self, n: u64) -> Result<Complex64> {
        let nf = n as f64;
        let x = self.x_scale * nf * nf;
        let n_pow_a = if self.a == 0.0 { 1.0 } else { nf };
        if x < self.z.re + 1.0 {
            // (q/π)^z n^{−s} Γ(z) − n^a A^z e^{−x} Σ_k …
            let head = (self.log_gamma_factor - self.s * nf.ln()).exp();
            let s = lower_series(self.z, x)?;
            Ok(head - self.split_pow * s * (n_pow_a * (-x).exp()))
        } else {
            let c = upper_cf(self.z, x)?;
            Ok(self.split_pow * c * (n_pow_a * (-x).exp()))
        }
    }
}

/// Σ_n χ(n) (q/π)^{z} n^{−s} Γ(z, πn²A/q), z = (s+a)/2.
///
/// Summation runs in blocks; each block is summed in parallel and the loop
/// stops after the first block whose final weight falls below the cutoff.
/// `range_factor > 1` extends the summation range beyond that point.
pub(crate) fn afe_half_sum(
    chars: &CharacterTable,
    s: Complex64,
    split: f64,
    range_factor: f64,
) -> Result<HalfSum> {
    let q = chars.character().conductor() as f64;
    let a = chars.character().parity() as f64;
    let z = (s + a) * 0.5;
    let ctx = TermContext {
        s,
        z,
        a,
        log_gamma_factor: z * (q / PI).ln() + ln_gamma(z),
        split_pow: (z * split.ln()).exp(),
        x_scale: PI * split / q,
    };

    let mut acc = CompensatedComplex::new();
    let mut abs_sum = CompensatedSum::new();
    let mut max_term = 0.0f64;
    let mut last_weight = f64::INFINITY;
    let mut next = 1u64;
    let mut stop_at: Option<u64> = None;
    let block = (q.sqrt().ceil() as u64).clamp(64, BLOCK as u64);

    loop {
        let end = match stop_at {
            Some(stop) => (next + block).min(stop + 1),
            None => next + block,
        };
        if next >= end {
            break;
        }
        let partials: Vec<Result<(CompensatedComplex, CompensatedSum, f64, f64)>> = (next..end)
            .collect::<Vec<_>>()
            .par_chunks(4096)
            .map(|chunk| {
                let mut acc = CompensatedComplex::new();
                let mut abs = CompensatedSum::new();
                let mut mx = 0.0f64;
                let mut last = 0.0;
                for &n in chunk {
                    let w = ctx.term(n)?;
                    let wn = w.norm();
                    mx = mx.max(wn);
                    last = wn;
                    let chi = chars.get(n);
                    if chi != 0 {
                        let t = w * chi as f64;
                        acc.add(t);
                        abs.add(wn);
                    }
                }
                Ok((acc, abs, mx, last))
            })
            .collect();
        for part in partials {
            let (pa, pabs, pmx, plast) = part?;
            acc.merge(&pa);
            abs_sum.merge(&pabs);
            max_term = max_term.max(pmx);
            last_weight = plast;
        }
        next = end;
        if stop_at.is_none() {
            let x_last = ctx.x_scale * ((end - 1) as f64).powi(2);
            if x_last > z.re + 1.0 && last_weight < AFE_RELATIVE_CUTOFF * max_term {
                let base = end - 1;
                let stop = (base as f64 * range_factor.max(1.0)).ceil() as u64;
                stop_at = Some(stop);
                if stop <= base {
                    break;
                }
            }
        }
    }

    Ok(HalfSum {
        value: acc.value(),
        abs_sum: abs_sum.value(),
        max_term,
        last_weight,
        n_terms: (next - 1) as usize,
    })
}

/// Λ(s, χ) via the smoothed approximate functional equation with split `A`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AfeValue {
    pub value: Complex64,
    pub err_estimate: f64,
    pub scale: f64,
    pub n_terms: usize,
}

pub fn completed_l_afe(chars: &CharacterTable, s: Complex64, split: f64, range_factor: f64) -> Result<AfeValue> {
    if !(split > 0.0) {
        return Err(domain(format!("AFE split point must be positive, got {split}")));
    }
    let first = afe_half_sum(chars, s, split, range_factor)?;
    let second = afe_half_sum(chars, 1.0 - s, 1.0 / split, range_factor)?;
    Ok(AfeValue {
        value: first.value + second.value,
        err_estimate: rounding_estimate(&first) + rounding_estimate(&second),
        scale: first.max_term.max(second.max_term),
        n_terms: first.n_terms + second.n_terms,
    })
}

pub(crate) fn rounding_estimate(h: &HalfSum) -> f64 {
    // per-term relative error of the incomplete gamma and exponentials,
    // plus the geometric tail past the cutoff
    16.0 * f64::EPSILON * h.abs_sum + 2.0 * h.last_weight
}

/// L(s, χ) by Hurwitz zeta values; cost grows linearly with the conductor.
pub fn l_via_hurwitz(chars: &CharacterTable, s: Complex64, tol: f64) -> Result<Complex64> {
    let q = chars.character().conductor();
    let mut acc = CompensatedComplex::new();
    for r in 1..=q {
        let chi = chars.get(r);
        if chi == 0 {
            continue;
        }
        let h = hurwitz_zeta(s, r as f64 / q as f64, tol)?.value;
        acc.add(h * chi as f64);
    }
    Ok(acc.value() * (-s * (q as f64).ln()).exp())
}

/// ln of the gamma factor (q/π)^{(s+a)/2} Γ((s+a)/2).
pub fn log_gamma_factor(q: u64, parity: u8, s: Complex64) -> Complex64 {
    let z = (s + parity as f64) * 0.5;
    z * (q as f64 / PI).ln() + ln_gamma(z)
}
