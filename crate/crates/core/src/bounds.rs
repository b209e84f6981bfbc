//! Upper bounds for the lowest zero τ(K) in terms of the root discriminant,
//! the central-order ceiling, and a numerical audit of the constants.

use crate::error::{domain, Result};
use crate::explicit_formula::{
    degree_constant, sup_j_scaled, sup_minus_i_scaled, I_CEILING, INTEGRAL_BOUND_T_MAX, INTEGRAL_BOUND_T_MIN,
    J_CEILING,
};
use crate::fields::{alpha, NumberField};
use crate::primes::ROSSER_PSI_CONSTANT;
use crate::testfn::sup_norm_f;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::f64::consts::{PI, SQRT_2};

pub const C_LIN: f64 = 1.2874;
pub const C_EXP: f64 = 5.4084;
pub const C_EXP_REMARK: f64 = 5.1561;
pub const THEOREM1_THRESHOLD: f64 = 6.6958;
pub const THEOREM2_THRESHOLD: f64 = 12.1048;
pub const REMARK_THRESHOLD: f64 = 6.4435;
/// Ceiling on sup |F|.
pub const SUP_F_CEILING: f64 = 1.21;
/// Ceiling on sup|F| · 1.0389.
pub const PRIME_CEILING: f64 = 1.2571;
pub const NEUGEBAUER_CAP: f64 = 60.0;

pub fn c_order() -> f64 {
    17.2 / (PI * PI)
}

/// Constants entering the bounds, with the applicability thresholds they imply.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundConstants {
    pub c_lin: f64,
    pub c_exp: f64,
    pub c_exp_remark: f64,
    pub c_order: f64,
    pub theorem1_threshold: f64,
    pub theorem2_threshold: f64,
    pub remark_threshold: f64,
}

impl BoundConstants {
    /// The printed constants.
    pub fn published() -> Self {
        Self {
            c_lin: C_LIN,
            c_exp: C_EXP,
            c_exp_remark: C_EXP_REMARK,
            c_order: c_order(),
            theorem1_threshold: THEOREM1_THRESHOLD,
            theorem2_threshold: THEOREM2_THRESHOLD,
            remark_threshold: REMARK_THRESHOLD,
        }
    }

    /// Sharper constants assembled from the observed suprema of an audit.
    pub fn recomputed(audit: &ConstantAudit) -> Self {
        let (c_lin, c_exp) = (audit.sharp_lin_const, audit.sharp_exp_const);
        Self {
            c_lin,
            c_exp,
            c_exp_remark: C_EXP_REMARK,
            c_order: c_order(),
            theorem1_threshold: c_lin + c_exp,
            theorem2_threshold: c_lin + 2.0 * c_exp,
            remark_threshold: c_lin + C_EXP_REMARK,
        }
    }
}

impl Default for BoundConstants {
    fn default() -> Self {
        Self::published()
    }
}

pub fn theorem1_bound_with(alpha: f64, c: &BoundConstants) -> Option<f64> {
    if !(alpha > c.theorem1_threshold) {
        return None;
    }
    let arg = (alpha - c.c_lin) / c.c_exp;
    (arg > 1.0).then(|| PI / (SQRT_2 * arg.ln()))
}

/// π / (√2 ln((α − 1.2874)/5.4084)) for α > 6.6958.
pub fn theorem1_bound(alpha: f64) -> Option<f64> {
    theorem1_bound_with(alpha, &BoundConstants::published())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Theorem2Bound {
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(rename = "B")]
    pub b: f64,
    pub bound: f64,
}

pub fn theorem2_bound_with(alpha: f64, log_disc: f64, c: &BoundConstants) -> Result<Option<Theorem2Bound>> {
    if !(log_disc > 1.0) {
        return Err(domain(format!("ln|d| must exceed 1 for ln ln|d|, got {log_disc}")));
    }
    if !(alpha > c.theorem2_threshold) {
        return Ok(None);
    }
    let ll = log_disc.ln();
    let a = (alpha - c.c_lin) / (2.0 * c.c_order * alpha / ll);
    let b_arg = (alpha - c.c_lin) / (2.0 * c.c_exp);
    if !(b_arg > 1.0) {
        return Ok(None);
    }
    let b = b_arg.ln();
    Ok(Some(Theorem2Bound {
        a,
        b,
        bound: SQRT_2 * PI / a.min(b),
    }))
}

/// A = (α − 1.2874)/(2(17.2/π²)α/ln ln|d|), B = ln((α − 1.2874)/10.8168),
/// bound √2π/min(A, B), for α > 12.1048.
pub fn theorem2_bound(alpha: f64, log_disc: f64) -> Result<Option<Theorem2Bound>> {
    theorem2_bound_with(alpha, log_disc, &BoundConstants::published())
}

pub fn remark_variant_bound_with(alpha: f64, c: &BoundConstants) -> Option<f64> {
    if !(alpha > c.remark_threshold) {
        return None;
    }
    let arg = (alpha - c.c_lin) / c.c_exp_remark;
    (arg > 1.0).then(|| PI / (SQRT_2 * arg.ln()))
}

/// π / (√2 ln((α − 1.2874)/5.1561)) for α > 6.4435, stated for large degree only.
pub fn remark_variant_bound(alpha: f64) -> Option<f64> {
    remark_variant_bound_with(alpha, &BoundConstants::published())
}

/// min{60, 64π² / ln(¼ ln(82 + 27α))}.
pub fn neugebauer_bound(alpha: f64) -> Result<f64> {
    if !(alpha > 0.0) {
        return Err(domain(format!("alpha must be positive, got {alpha}")));
    }
    let inner = (0.25 * (82.0 + 27.0 * alpha).ln()).ln();
    if !(inner > 0.0) {
        return Err(domain(format!("ln(ln(82 + 27α)/4) is not positive for α = {alpha}")));
    }
    Ok(NEUGEBAUER_CAP.min(64.0 * PI * PI / inner))
}

/// If T > 0 and aT + b e^{T/2} ≥ c with c > 2b, then T ≥ min(c/2a, ln(c/2b)).
pub fn lemma3_threshold(a: f64, b: f64, c: f64) -> Result<f64> {
    if !(a > 0.0 && b > 0.0) {
        return Err(domain(format!("a and b must be positive, got a={a}, b={b}")));
    }
    if !(c > 2.0 * b) {
        return Err(domain(format!("need c > 2b, got b={b}, c={c}")));
    }
    Ok((c / (2.0 * a)).min((c / (2.0 * b)).ln()))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Lemma3Report {
    pub seed: u64,
    /// Instances satisfying the hypothesis aT + b e^{T/2} ≥ c > 2b.
    pub instances: usize,
    /// Random (a, b, T) triples drawn, including those with aT + b e^{T/2} ≤ 2b.
    pub draws: usize,
    /// Instances with c = aT + b e^{T/2} exactly.
    pub boundary_instances: usize,
    pub violations: usize,
    /// Smallest T − threshold observed.
    pub min_margin: f64,
}

/// Random instances of the implication: a, b, T log-uniform, then c drawn in
/// (2b, aT + b e^{T/2}] so the hypothesis holds; every tenth instance takes c
/// at the upper end.
pub fn lemma3_property_check(instances: usize, seed: u64) -> Result<Lemma3Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = Lemma3Report {
        seed,
        instances: 0,
        draws: 0,
        boundary_instances: 0,
        violations: 0,
        min_margin: f64::INFINITY,
    };
    while report.instances < instances {
        let a = rng.gen_range(-7.0f64..7.0).exp();
        let b = rng.gen_range(-7.0f64..7.0).exp();
        let t = rng.gen_range(-9.0f64..3.7).exp();
        report.draws += 1;
        let h = a * t + b * (0.5 * t).exp();
        if !(h > 2.0 * b) {
            continue;
        }
        let c = if report.instances % 10 == 0 {
            report.boundary_instances += 1;
            h
        } else {
            2.0 * b + rng.gen_range(f64::EPSILON..=1.0) * (h - 2.0 * b)
        };
        if !(c > 2.0 * b) {
            continue;
        }
        report.instances += 1;
        let margin = t - lemma3_threshold(a, b, c)?;
        report.min_margin = report.min_margin.min(margin);
        // the boundary case is an equality up to rounding of h
        if margin < -1e-12 * t.max(1.0) {
            report.violations += 1;
        }
    }
    Ok(report)
}

/// r ≤ ln|d|/ln ln|d| + n/(2 ln ln|d|).
pub fn central_order_bound(log_disc: f64, degree: u32) -> Result<f64> {
    if !(log_disc > 1.0) {
        return Err(domain(format!("ln|d| must exceed 1, got {log_disc}")));
    }
    let ll = log_disc.ln();
    Ok(log_disc / ll + degree as f64 / (2.0 * ll))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstantAudit {
    pub sup_f: f64,
    pub sup_f_argmax: f64,
    pub sup_f_ceiling: f64,
    /// sup|F| · 1.0389 as observed.
    pub prime_const: f64,
    pub prime_ceiling: f64,
    /// sup of J(F_T) e^{−T/2} over the T range, and where it is attained.
    pub j_const: f64,
    pub j_const_at: f64,
    pub j_ceiling: f64,
    /// sup of −I(F_T) e^{−T/2} over the T range, and where it is attained.
    pub i_const: f64,
    pub i_const_at: f64,
    pub i_ceiling: f64,
    pub t_range: [f64; 2],
    pub ceilings_dominate: bool,
    /// 4·prime_ceiling + j_ceiling + i_ceiling, each ceiling checked above.
    pub assembled_exp_const: f64,
    /// (ln 2π + γ + 2 ln 2) − 2·prime_ceiling.
    pub assembled_lin_const: f64,
    /// The same assembly from the observed suprema.
    pub sharp_exp_const: f64,
    pub sharp_lin_const: f64,
    pub published_exp_const: f64,
    pub published_lin_const: f64,
    pub exp_delta: f64,
    pub lin_delta: f64,
    /// 17.2/π² ≥ (16/π²)(1 + 1/(2α)) at the threshold α = 12.1048.
    pub order_const_majorizes: bool,
}

impl ConstantAudit {
    pub fn within(&self, tol: f64) -> bool {
        self.exp_delta.abs() <= tol && self.lin_delta.abs() <= tol
    }
}

/// Recompute every ingredient of ln|d| ≤ 5.4084 n e^{T/2} + 1.2874 n.
pub fn derive_inequality_constants(tol: f64) -> Result<ConstantAudit> {
    if !(tol >= 1e-8) {
        return Err(domain(format!("audit tolerance must be at least 1e-8, got {tol}")));
    }
    let sup = sup_norm_f();
    let j = sup_j_scaled(INTEGRAL_BOUND_T_MIN, INTEGRAL_BOUND_T_MAX)?;
    let i = sup_minus_i_scaled(INTEGRAL_BOUND_T_MIN, INTEGRAL_BOUND_T_MAX)?;
    let prime_const = sup.max * ROSSER_PSI_CONSTANT;
    let lin_base = degree_constant();
    let assembled_exp_const = 4.0 * PRIME_CEILING + J_CEILING + I_CEILING;
    let assembled_lin_const = lin_base - 2.0 * PRIME_CEILING;
    let alpha2 = THEOREM2_THRESHOLD;
    Ok(ConstantAudit {
        sup_f: sup.max,
        sup_f_argmax: sup.argmax,
        sup_f_ceiling: SUP_F_CEILING,
        prime_const,
        prime_ceiling: PRIME_CEILING,
        j_const: j.value,
        j_const_at: j.t,
        j_ceiling: J_CEILING,
        i_const: i.value,
        i_const_at: i.t,
        i_ceiling: I_CEILING,
        t_range: [INTEGRAL_BOUND_T_MIN, INTEGRAL_BOUND_T_MAX],
        ceilings_dominate: sup.max <= SUP_F_CEILING
            && SUP_F_CEILING * ROSSER_PSI_CONSTANT <= PRIME_CEILING
            && j.value <= J_CEILING
            && i.value <= I_CEILING,
        assembled_exp_const,
        assembled_lin_const,
        sharp_exp_const: 4.0 * prime_const + j.value + i.value,
        sharp_lin_const: lin_base - 2.0 * prime_const,
        published_exp_const: C_EXP,
        published_lin_const: C_LIN,
        exp_delta: assembled_exp_const - C_EXP,
        lin_delta: assembled_lin_const - C_LIN,
        order_const_majorizes: c_order() >= 16.0 / (PI * PI) * (1.0 + 1.0 / (2.0 * alpha2)),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub field: String,
    pub degree: u32,
    pub alpha: f64,
    pub log_disc: f64,
    pub central_zero: bool,
    pub theorem1: Option<f64>,
    pub theorem1_applicable: bool,
    pub theorem1_note: Option<String>,
    pub theorem2: Option<Theorem2Bound>,
    pub theorem2_applicable: bool,
    pub theorem2_note: Option<String>,
    pub central_order_bound: Option<f64>,
    pub remark_variant: Option<f64>,
    pub remark_applicable: bool,
    pub remark_warning: &'static str,
    pub neugebauer: f64,
    pub constants_used: BoundConstants,
    pub dichotomy_note: String,
}

const REMARK_WARNING: &str = "valid only for sufficiently large degree; no degree check is made";

/// The linear bound when ζ_K(1/2) ≠ 0, the A/B bound when it vanishes; the large-degree variant
/// and Neugebauer's bound are always included.
pub fn bound_report_with(field: &NumberField, central_zero: bool, c: &BoundConstants) -> Result<BoundReport> {
    let a = alpha(field)?;
    let log_disc = field.log_disc();
    let (theorem1, theorem1_note) = if central_zero {
        (None, Some("ζ_K(1/2) = 0: the non-vanishing case does not apply".to_string()))
    } else {
        match theorem1_bound_with(a, c) {
            Some(b) => (Some(b), None),
            None => (None, Some(format!("α = {a} ≤ {}", c.theorem1_threshold))),
        }
    };
    let (theorem2, theorem2_note, order) = if !central_zero {
        (None, Some("ζ_K(1/2) ≠ 0: the vanishing case does not apply".to_string()), None)
    } else if a > c.theorem2_threshold {
        let t2 = theorem2_bound_with(a, log_disc, c)?;
        let note = t2.is_none().then(|| "B is not positive".to_string());
        (t2, note, Some(central_order_bound(log_disc, field.degree)?))
    } else {
        (None, Some(format!("α = {a} ≤ {}", c.theorem2_threshold)), None)
    };
    let remark_variant = remark_variant_bound_with(a, c);
    let shown = theorem1.or(theorem2.map(|t| t.bound));
    let dichotomy_note = match shown {
        Some(b) => format!("either τ(K) ≥ τ₀ = 14.1347… or τ(K) ≤ {b}"),
        None => "no bound applies; either τ(K) ≥ τ₀ = 14.1347… or the field is outside the hypotheses".into(),
    };
    Ok(BoundReport {
        field: field.to_string(),
        degree: field.degree,
        alpha: a,
        log_disc,
        central_zero,
        theorem1_applicable: theorem1.is_some(),
        theorem1,
        theorem1_note,
        theorem2_applicable: theorem2.is_some(),
        theorem2,
        theorem2_note,
        central_order_bound: order,
        remark_applicable: remark_variant.is_some(),
        remark_variant,
        remark_warning: REMARK_WARNING,
        neugebauer: neugebauer_bound(a)?,
        constants_used: *c,
        dichotomy_note,
    })
}

pub fn bound_report(field: &NumberField, central_zero: bool) -> Result<BoundReport> {
    bound_report_with(field, central_zero, &BoundConstants::published())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::E;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn theorem1_rows() {
        assert!(rel(theorem1_bound(7.26472993307674).unwrap(), 22.2098243056698) < 1e-3);
        assert!(rel(theorem1_bound(8.73694942265996).unwrap(), 6.93766313396318) < 1e-3);
        assert!(theorem1_bound(6.6958).is_none());
    }

    #[test]
    fn theorem2_row5() {
        let t = theorem2_bound(13.70533805, 27.41067610).unwrap().unwrap();
        assert!((t.a - 0.8607).abs() < 1e-4, "{}", t.a);
        assert!((t.b - 0.1380).abs() < 1e-4, "{}", t.b);
        assert!((t.bound - SQRT_2 * PI / t.b).abs() < 1e-12);
        assert!((t.bound - 32.2).abs() < 0.05);
        assert!(theorem2_bound(12.1048, 30.0).unwrap().is_none());
        assert!(theorem2_bound(13.0, 1.0).is_err());
    }

    #[test]
    fn remark_variant() {
        let v = remark_variant_bound(7.26472993).unwrap();
        let direct = PI / (SQRT_2 * ((7.26472993 - 1.2874) / 5.1561f64).ln());
        assert!((v - direct).abs() < 1e-12 && (v - 15.03).abs() < 0.01);
        assert!(remark_variant_bound(6.4435).is_none());
    }

    #[test]
    fn neugebauer_clamps() {
        assert_eq!(neugebauer_bound(7.2647).unwrap(), 60.0);
        assert_eq!(neugebauer_bound(1e6).unwrap(), 60.0);
        assert!(neugebauer_bound(0.0).is_err());
    }

    #[test]
    fn lemma3_examples() {
        assert!((lemma3_threshold(1.0, 1.0, 10.0).unwrap() - 5f64.ln()).abs() < 1e-15);
        assert!((lemma3_threshold(100.0, 1.0, 10.0).unwrap() - 0.05).abs() < 1e-15);
        assert!(lemma3_threshold(1.0, 5.0, 10.0).is_err());
    }

    #[test]
    fn central_order_examples() {
        let v = central_order_bound(E * E, 2).unwrap();
        let ll = (E * E).ln();
        assert!((v - (E * E / ll + 1.0 / ll)).abs() < 1e-12);
        let row5 = central_order_bound(27.4107, 2).unwrap();
        assert!((row5 - 8.580).abs() < 2e-3, "{row5}");
        assert!(central_order_bound(1.0, 2).is_err());
    }

    #[test]
    fn report_dispatch() {
        let k = NumberField::quadratic(-2042040).unwrap();
        let r = bound_report(&k, false).unwrap();
        assert!(rel(r.theorem1.unwrap(), 22.2098243056698) < 1e-3);
        assert!(r.theorem2.is_none());
        let z = bound_report(&k, true).unwrap();
        assert!(z.theorem1.is_none() && z.theorem2.is_none() && !z.theorem2_applicable);
        let small = bound_report(&NumberField::quadratic(5).unwrap(), false).unwrap();
        assert!(small.theorem1.is_none());
    }
}
