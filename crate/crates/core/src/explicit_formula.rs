//! Weil's explicit formula for the dilated test function F_T over ℚ and
//! quadratic fields, evaluated term by term, and the integral bounds on
//! J(F_T) and I(F_T).

use crate::error::{domain, Error, Result};
use crate::fields::{KroneckerCharacter, NumberField};
use crate::lfunctions::{LFunction, LFunctionSpec, MAX_HEIGHT};
use crate::primes::{mangoldt_sieve, quadratic_prime_sum, weighted_prime_sum_with_f, MangoldtTable};
use crate::quad;
use crate::sum::compensated_sum;
use crate::testfn::{f_eval, fhat_t, golden_section_max, one_minus_f};
use crate::zeros::{detect_central_zero_of, zero_list_for_explicit_formula_of};
use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::{LN_2, PI};

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_61;
pub const DEFAULT_TOL: f64 = 1e-10;
/// Ceilings for J(F_T) e^{−T/2} and −I(F_T) e^{−T/2} when T ≥ `INTEGRAL_BOUND_T_MIN`.
pub const J_CEILING: f64 = 0.276;
pub const I_CEILING: f64 = 0.1034;
pub const INTEGRAL_BOUND_T_MIN: f64 = 0.314;
pub const INTEGRAL_BOUND_T_MAX: f64 = 30.0;

/// ln 2π + γ + 2 ln 2, the per-degree constant of the formula.
pub fn degree_constant() -> f64 {
    (2.0 * PI).ln() + EULER_GAMMA + 2.0 * LN_2
}

fn check_t(t: f64) -> Result<()> {
    if t > 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(domain(format!("T must be positive and finite, got {t}")))
    }
}

/// J(F_T) = ∫₀^T F(x/T) / (2 cosh(x/2)) dx.
pub fn j_integral(t: f64, tol: f64) -> Result<f64> {
    check_t(t)?;
    Ok(quad::integrate(|x| f_eval(x / t) / (2.0 * (0.5 * x).cosh()), 0.0, t, tol)?.value)
}

/// Integrand of I(F_T) on (0, T], with its limit −2/T at 0.
fn i_integrand(x: f64, t: f64) -> f64 {
    if x == 0.0 {
        return -2.0 / t;
    }
    one_minus_f(x / t) / (2.0 * (0.5 * x).sinh())
}

/// I(F_T) = ∫₀^∞ (1 − F(x/T)) / (2 sinh(x/2)) dx: quadrature on [0, T] plus
/// the closed-form tail −ln tanh(T/4).
pub fn i_integral(t: f64, tol: f64) -> Result<f64> {
    check_t(t)?;
    let head = quad::integrate(|x| i_integrand(x, t), 0.0, t, tol)?.value;
    Ok(head - (0.25 * t).tanh().ln())
}

/// Φ_T(0) + Φ_T(1) = 4 ∫₀^T F(x/T) cosh(x/2) dx.
pub fn archimedean_term(t: f64, tol: f64) -> Result<f64> {
    check_t(t)?;
    let r = quad::integrate(|x| f_eval(x / t) * (0.5 * x).cosh(), 0.0, t, 0.25 * tol)?;
    Ok(4.0 * r.value)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExplicitFormulaBreakdown {
    #[serde(rename = "T")]
    pub t: f64,
    /// Σ_ρ Φ(ρ) over zeros up to `zero_height_used`; `None` until filled.
    pub zero_sum: Option<f64>,
    pub archimedean: f64,
    pub prime_term: f64,
    pub disc_term: f64,
    pub const_term: f64,
    pub j_term: f64,
    pub i_term: f64,
    /// archimedean − prime_term + disc_term − const_term − j_term + i_term
    pub rhs: f64,
    pub residual: Option<f64>,
    pub zero_height_used: Option<f64>,
    pub zero_count: usize,
    pub central_order: u32,
    /// Estimated size of Σ F̂_T(γ) over the omitted zeros γ > H.
    pub tail_estimate: Option<f64>,
}

impl ExplicitFormulaBreakdown {
    pub fn right_side(&self) -> f64 {
        self.archimedean - self.prime_term + self.disc_term - self.const_term - self.j_term + self.i_term
    }
}

fn check_field_char(field: &NumberField, chi: Option<&KroneckerCharacter>) -> Result<()> {
    match (field.degree, chi) {
        (1, None) => Ok(()),
        (2, Some(c)) if field.disc == BigInt::from(c.discriminant()) => Ok(()),
        (2, Some(c)) => Err(Error::Mismatch(format!(
            "character discriminant {} does not match field discriminant {}",
            c.discriminant(),
            field.disc
        ))),
        (2, None) => Err(Error::Mismatch("quadratic field needs its Kronecker character".into())),
        (1, Some(_)) => Err(Error::Mismatch("the rational field takes no character".into())),
        (n, _) => Err(domain(format!(
            "explicit formula is available for degree 1 and 2 only, got degree {n}"
        ))),
    }
}

/// Every term of the right side for F_T; the zero side is left unset.
pub fn weil_rhs(
    field: &NumberField,
    chi: Option<&KroneckerCharacter>,
    t: f64,
    table: &MangoldtTable,
) -> Result<ExplicitFormulaBreakdown> {
    check_t(t)?;
    check_field_char(field, chi)?;
    let prime_sum = match chi {
        None => weighted_prime_sum_with_f(t, table)?,
        Some(c) => quadratic_prime_sum(c, t, table)?,
    };
    let n = field.degree as f64;
    let mut b = ExplicitFormulaBreakdown {
        t,
        zero_sum: None,
        archimedean: archimedean_term(t, DEFAULT_TOL)?,
        prime_term: 2.0 * prime_sum,
        disc_term: field.log_disc(),
        const_term: n * degree_constant(),
        j_term: field.r1 as f64 * j_integral(t, DEFAULT_TOL)?,
        i_term: n * i_integral(t, DEFAULT_TOL)?,
        rhs: 0.0,
        residual: None,
        zero_height_used: None,
        zero_count: 0,
        central_order: 0,
        tail_estimate: None,
    };
    b.rhs = b.right_side();
    Ok(b)
}

/// central_order · F̂_T(0) + 2 Σ_γ F̂_T(γ) for positive ordinates γ.
pub fn weil_lhs(zero_ordinates: &[f64], t: f64, central_order: u32) -> Result<f64> {
    check_t(t)?;
    if let Some(g) = zero_ordinates.iter().find(|g| !(**g > 0.0)) {
        return Err(domain(format!("zero ordinates must be positive, got {g}")));
    }
    let terms = zero_ordinates
        .iter()
        .map(|&g| fhat_t(g, t).map(|v| 2.0 * v))
        .collect::<Result<Vec<f64>>>()?;
    Ok(central_order as f64 * fhat_t(0.0, t)? + compensated_sum(terms))
}

/// Size of the omitted zero sum: F̂_T(γ) ≈ −8cos²(Tγ/2)/(Tγ²) and zeros of an
/// L-function of conductor q have density ln(qγ/2π)/2π, giving
/// Σ_{γ>H} 2|F̂_T(γ)| ≈ 4(ln(qH/2π) + 1) / (πTH) per L-function.
pub fn zero_tail_estimate(t: f64, height: f64, conductors: &[u64]) -> f64 {
    conductors
        .iter()
        .map(|&q| 4.0 * ((q as f64 * height / (2.0 * PI)).ln() + 1.0) / (PI * t * height))
        .sum()
}

/// Both sides of the formula with zeros up to `zero_height`.
pub fn weil_residual(
    field: &NumberField,
    chi: Option<&KroneckerCharacter>,
    t: f64,
    zero_height: f64,
) -> Result<ExplicitFormulaBreakdown> {
    check_t(t)?;
    check_field_char(field, chi)?;
    if !(zero_height > 0.0 && zero_height <= MAX_HEIGHT) {
        return Err(domain(format!("zero height must lie in (0, {MAX_HEIGHT}], got {zero_height}")));
    }
    let table = mangoldt_sieve(t.exp().ceil() as u64 + 1)?;
    let mut b = weil_rhs(field, chi, t, &table)?;

    let zeta = LFunction::new(LFunctionSpec::riemann_zeta())?;
    let mut zeros = zero_list_for_explicit_formula_of(&zeta, zero_height)?;
    let mut conductors = vec![1u64];
    let mut central_order = 0;
    if let Some(c) = chi {
        let l = LFunction::new(LFunctionSpec::dirichlet(*c))?;
        zeros.extend(zero_list_for_explicit_formula_of(&l, zero_height)?);
        conductors.push(c.conductor());
        // root number +1 forces even order; 2 is the least it can be
        if detect_central_zero_of(&l)?.0 {
            central_order = 2;
        }
    }
    zeros.sort_by(f64::total_cmp);
    let lhs = weil_lhs(&zeros, t, central_order)?;
    b.zero_sum = Some(lhs);
    b.residual = Some(lhs - b.rhs);
    b.zero_height_used = Some(zero_height);
    b.zero_count = zeros.len();
    b.central_order = central_order;
    b.tail_estimate = Some(zero_tail_estimate(t, zero_height, &conductors));
    Ok(b)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IntegralBoundRow {
    #[serde(rename = "T")]
    pub t: f64,
    pub j: f64,
    pub j_scaled: f64,
    pub j_ok: bool,
    pub i: f64,
    pub minus_i_scaled: f64,
    pub i_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IntegralBoundReport {
    pub rows: Vec<IntegralBoundRow>,
    pub sup_j_scaled: f64,
    pub sup_minus_i_scaled: f64,
    pub all_ok: bool,
}

fn bound_row(t: f64) -> Result<IntegralBoundRow> {
    let j = j_integral(t, DEFAULT_TOL)?;
    let i = i_integral(t, DEFAULT_TOL)?;
    let damp = (-0.5 * t).exp();
    Ok(IntegralBoundRow {
        t,
        j,
        j_scaled: j * damp,
        j_ok: j <= J_CEILING * (0.5 * t).exp(),
        i,
        minus_i_scaled: -i * damp,
        i_ok: i >= -I_CEILING * (0.5 * t).exp(),
    })
}

/// Check J(F_T) ≤ 0.276 e^{T/2} and I(F_T) ≥ −0.1034 e^{T/2} on a grid.
pub fn verify_34_35(t_grid: &[f64]) -> Result<IntegralBoundReport> {
    if let Some(t) = t_grid
        .iter()
        .find(|t| !(**t >= INTEGRAL_BOUND_T_MIN && **t <= INTEGRAL_BOUND_T_MAX))
    {
        return Err(domain(format!(
            "grid point {t} outside [{INTEGRAL_BOUND_T_MIN}, {INTEGRAL_BOUND_T_MAX}]"
        )));
    }
    let rows = t_grid.par_iter().map(|&t| bound_row(t)).collect::<Result<Vec<_>>>()?;
    let sup_j_scaled = rows.iter().map(|r| r.j_scaled).fold(f64::NEG_INFINITY, f64::max);
    let sup_minus_i_scaled = rows.iter().map(|r| r.minus_i_scaled).fold(f64::NEG_INFINITY, f64::max);
    let all_ok = rows.iter().all(|r| r.j_ok && r.i_ok);
    Ok(IntegralBoundReport {
        rows,
        sup_j_scaled,
        sup_minus_i_scaled,
        all_ok,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScaledSupremum {
    #[serde(rename = "T")]
    pub t: f64,
    pub value: f64,
}

/// Maximum of `g` on [lo, hi]: grid at `step`, then golden section around the best cell.
fn scan_max<G: Fn(f64) -> f64 + Sync>(g: G, lo: f64, hi: f64, step: f64) -> ScaledSupremum {
    let n = ((hi - lo) / step).ceil() as usize;
    let samples: Vec<(f64, f64)> = (0..=n)
        .into_par_iter()
        .map(|k| {
            let t = (lo + k as f64 * step).min(hi);
            (t, g(t))
        })
        .collect();
    let (best_t, best_v) = samples
        .iter()
        .copied()
        .fold((lo, f64::NEG_INFINITY), |a, b| if b.1 > a.1 { b } else { a });
    let t = golden_section_max(&g, (best_t - step).max(lo), (best_t + step).min(hi), 1e-9);
    let v = g(t);
    if v >= best_v {
        ScaledSupremum { t, value: v }
    } else {
        ScaledSupremum { t: best_t, value: best_v }
    }
}

/// sup of J(F_T) e^{−T/2} over [lo, hi].
pub fn sup_j_scaled(lo: f64, hi: f64) -> Result<ScaledSupremum> {
    check_t(lo)?;
    j_integral(hi, DEFAULT_TOL)?;
    Ok(scan_max(
        |t| j_integral(t, DEFAULT_TOL).map_or(f64::NAN, |j| j * (-0.5 * t).exp()),
        lo,
        hi,
        0.01,
    ))
}

/// sup of −I(F_T) e^{−T/2} over [lo, hi].
pub fn sup_minus_i_scaled(lo: f64, hi: f64) -> Result<ScaledSupremum> {
    check_t(lo)?;
    i_integral(hi, DEFAULT_TOL)?;
    Ok(scan_max(
        |t| i_integral(t, DEFAULT_TOL).map_or(f64::NAN, |i| -i * (-0.5 * t).exp()),
        lo,
        hi,
        0.01,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i_integrand_limit() {
        for t in [0.5, 1.0, 3.0] {
            let near = i_integrand(1e-7, t);
            assert!((near - i_integrand(0.0, t)).abs() < 1e-5, "{near}");
        }
    }

    #[test]
    fn tiny_t_limits() {
        assert!(j_integral(1e-6, DEFAULT_TOL).unwrap().abs() < 1e-6);
        assert!(archimedean_term(1e-6, DEFAULT_TOL).unwrap().abs() < 1e-5);
    }

    #[test]
    fn integral_growth() {
        let i10 = i_integral(10.0, DEFAULT_TOL).unwrap();
        let i20 = i_integral(20.0, DEFAULT_TOL).unwrap();
        // I(F_T) rises toward 0 from below for large T
        assert!(i20 > i10 && i20 < 0.0);
        assert!((i10 + 0.322_030_719_948_226_6).abs() < 1e-9, "{i10}");
        let j10 = j_integral(10.0, DEFAULT_TOL).unwrap();
        assert!(j10 <= 1.21 * PI / 2.0);
        assert!(j10 <= J_CEILING * 5f64.exp());
    }

    #[test]
    fn rationals_small_t_has_no_primes() {
        let table = mangoldt_sieve(100).unwrap();
        let b = weil_rhs(&NumberField::rationals(), None, 0.5, &table).unwrap();
        assert_eq!(b.prime_term, 0.0);
        assert_eq!(b.disc_term, 0.0);
        assert!((b.rhs - b.right_side()).abs() == 0.0);
    }

    #[test]
    fn quadratic_disc_term() {
        let table = mangoldt_sieve(100).unwrap();
        let chi = KroneckerCharacter::new(-4).unwrap();
        let k = NumberField::quadratic(-4).unwrap();
        let b = weil_rhs(&k, Some(&chi), 2.0, &table).unwrap();
        assert!((b.disc_term - 4f64.ln()).abs() < 1e-15);
        let wrong = KroneckerCharacter::new(-3).unwrap();
        assert!(weil_rhs(&k, Some(&wrong), 2.0, &table).is_err());
    }

    #[test]
    fn lhs_central_term() {
        assert_eq!(weil_lhs(&[], 1.0, 0).unwrap(), 0.0);
        let v = weil_lhs(&[], 2.5, 1).unwrap();
        assert!((v - 16.0 * 2.5 / (PI * PI)).abs() < 1e-13);
    }
}
