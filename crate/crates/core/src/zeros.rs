//! Critical-line zeros: grid scan for sign changes of the real Hardy-type
//! function, bisection to a 1e-9 bracket, one secant polish step.

use crate::error::{domain, Error, Result};
use crate::fields::KroneckerCharacter;
use crate::lfunctions::{CompletedValue, HardyFunction, LFunction, LFunctionSpec, MAX_HEIGHT};
use crate::testfn::golden_section_max;
use rayon::prelude::*;
use serde::Serialize;

pub const DEFAULT_GRID_STEP: f64 = 1.0 / 64.0;
pub const MAX_GRID_STEP: f64 = 0.05;
pub const BRACKET_WIDTH: f64 = 1e-9;
/// |Z| dips below this (in normalized units) without a sign change are reported.
pub const DIP_THRESHOLD: f64 = 1e-4;
/// Central vanishing threshold relative to the evaluation scale.
pub const CENTRAL_ZERO_THRESHOLD: f64 = 1e-8;
/// Low zeros are searched on (0, 1] with a grid four times finer.
pub const LOW_REFINEMENT_CEILING: f64 = 1.0;
pub const LOW_REFINEMENT_FACTOR: f64 = 4.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Zero {
    pub gamma: f64,
    pub bracket_width: f64,
}

/// A local minimum of |Z| that never changed sign.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SuspectedDip {
    pub t: f64,
    pub normalized: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZeroScanResult {
    pub spec_id: String,
    pub zeros: Vec<Zero>,
    pub t_max: f64,
    pub grid_step: f64,
    pub suspected_even_order: Vec<SuspectedDip>,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LowestZeroStatus {
    Found,
    NoneBelowCeiling,
    CentralZeroDetected,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ZeroSource {
    Zeta,
    Character,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LowestZeroResult {
    pub tau: Option<f64>,
    pub bracket_width: Option<f64>,
    pub status: LowestZeroStatus,
    /// Λ(1/2) (Z(0) for ζ).
    pub central_value: f64,
    pub t_max: f64,
    /// Which factor of ζ_K produced `tau` (quadratic fields only).
    pub source: Option<ZeroSource>,
    pub suspected_even_order: Vec<SuspectedDip>,
    pub evaluations: usize,
}

fn at_t(t: f64, e: Error) -> Error {
    match e {
        Error::Evaluation { .. } => e,
        other => Error::Evaluation {
            t,
            reason: other.to_string(),
        },
    }
}

fn eval_at<F: HardyFunction + ?Sized>(f: &F, t: f64) -> Result<CompletedValue> {
    f.eval(t).map_err(|e| at_t(t, e))
}

fn eval_grid<F: HardyFunction + ?Sized>(f: &F, ts: &[f64]) -> Result<Vec<f64>> {
    ts.par_iter()
        .map(|&t| eval_at(f, t).map(|v| v.normalized))
        .collect()
}

/// Bisect a sign change to width `BRACKET_WIDTH`, then take the secant point.
fn refine<F: HardyFunction + ?Sized>(
    f: &F,
    mut lo: f64,
    mut hi: f64,
    mut f_lo: f64,
    mut f_hi: f64,
    evaluations: &mut usize,
) -> Result<Zero> {
    debug_assert!(f_lo * f_hi < 0.0);
    while hi - lo > BRACKET_WIDTH {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = eval_at(f, mid)?.normalized;
        *evaluations += 1;
        if f_mid == 0.0 {
            return Ok(Zero {
                gamma: mid,
                bracket_width: 0.0,
            });
        }
        if (f_mid < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
            f_hi = f_mid;
        }
    }
    let secant = lo - f_lo * (hi - lo) / (f_hi - f_lo);
    Ok(Zero {
        gamma: secant.clamp(lo, hi),
        bracket_width: hi - lo,
    })
}

fn grid(start: f64, end: f64, step: f64) -> Vec<f64> {
    let n = ((end - start) / step + 1e-9).floor() as usize;
    let mut ts: Vec<f64> = (0..=n).map(|k| start + k as f64 * step).collect();
    if end - ts[n] > 1e-12 {
        ts.push(end);
    }
    ts
}

/// Zeros and dips among consecutive grid samples.
fn process_grid<F: HardyFunction + ?Sized>(
    f: &F,
    ts: &[f64],
    vs: &[f64],
    zeros: &mut Vec<Zero>,
    dips: &mut Vec<SuspectedDip>,
    evaluations: &mut usize,
    stop_at_first: bool,
) -> Result<()> {
    for k in 0..ts.len() - 1 {
        let (t0, t1, v0, v1) = (ts[k], ts[k + 1], vs[k], vs[k + 1]);
        if v1 == 0.0 && t1 > 0.0 {
            zeros.push(Zero {
                gamma: t1,
                bracket_width: 0.0,
            });
        } else if v0 * v1 < 0.0 {
            zeros.push(refine(f, t0, t1, v0, v1, evaluations)?);
        } else if k > 0 && v0 != 0.0 {
            let prev = vs[k - 1];
            let local_min = v0.abs() < prev.abs() && v0.abs() < v1.abs();
            if local_min && prev * v0 > 0.0 && v0.abs() < 100.0 * DIP_THRESHOLD {
                // sharpen the minimum before judging it
                let (a, b) = (ts[k - 1], t1);
                let count = std::cell::Cell::new(0usize);
                let t_min = golden_section_max(
                    |t| {
                        count.set(count.get() + 1);
                        -f.eval(t).map(|v| v.normalized.abs()).unwrap_or(f64::INFINITY)
                    },
                    a,
                    b,
                    1e-7,
                );
                *evaluations += count.get() + 1;
                let v = eval_at(f, t_min)?.normalized;
                if v.abs() < DIP_THRESHOLD || v * v0 < 0.0 {
                    dips.push(SuspectedDip {
                        t: t_min,
                        normalized: v,
                    });
                }
            }
        }
        if stop_at_first && !zeros.is_empty() {
            break;
        }
    }
    Ok(())
}

fn check_step(grid_step: f64) -> Result<()> {
    if !(grid_step > 0.0 && grid_step <= MAX_GRID_STEP) {
        return Err(domain(format!(
            "grid step must lie in (0, {MAX_GRID_STEP}], got {grid_step}"
        )));
    }
    Ok(())
}

fn check_height(t_max: f64) -> Result<()> {
    if !(t_max <= MAX_HEIGHT) {
        return Err(domain(format!("scan ceiling must be at most {MAX_HEIGHT}, got {t_max}")));
    }
    Ok(())
}

/// All sign changes of `f` on `(0, t_max]` at the given grid resolution.
pub fn scan_zeros_of<F: HardyFunction + ?Sized>(f: &F, t_max: f64, grid_step: f64) -> Result<ZeroScanResult> {
    check_step(grid_step)?;
    check_height(t_max)?;
    let mut result = ZeroScanResult {
        spec_id: f.label(),
        zeros: Vec::new(),
        t_max,
        grid_step,
        suspected_even_order: Vec::new(),
        evaluations: 0,
    };
    if t_max <= 0.0 {
        return Ok(result);
    }
    let ts = grid(0.0, t_max, grid_step);
    let vs = eval_grid(f, &ts)?;
    result.evaluations = ts.len();
    process_grid(
        f,
        &ts,
        &vs,
        &mut result.zeros,
        &mut result.suspected_even_order,
        &mut result.evaluations,
        false,
    )?;
    result.zeros.retain(|z| z.gamma > 0.0 && z.gamma <= t_max);
    Ok(result)
}

pub fn scan_zeros(spec: &LFunctionSpec, t_max: f64, grid_step: f64) -> Result<ZeroScanResult> {
    scan_zeros_of(&LFunction::new(*spec)?, t_max, grid_step)
}

pub fn central_zero_from_value(v: &CompletedValue) -> bool {
    v.lambda_value.abs() < CENTRAL_ZERO_THRESHOLD * v.scale
}

/// Whether the completed function vanishes at s = 1/2, with Λ(1/2).
pub fn detect_central_zero_of<F: HardyFunction + ?Sized>(f: &F) -> Result<(bool, f64)> {
    let v = eval_at(f, 0.0)?;
    Ok((central_zero_from_value(&v), v.lambda_value))
}

pub fn detect_central_zero(spec: &LFunctionSpec) -> Result<(bool, f64)> {
    detect_central_zero_of(&LFunction::new(*spec)?)
}

/// Lowest positive zero: scans upward in batches and stops at the first sign
/// change. The grid is `grid_step / 4` on (0, 1].
pub fn lowest_zero_of<F: HardyFunction + ?Sized>(f: &F, t_max: f64, grid_step: f64) -> Result<LowestZeroResult> {
    if !(t_max >= 0.05) {
        return Err(domain(format!("lowest-zero ceiling must be at least 0.05, got {t_max}")));
    }
    check_step(grid_step)?;
    check_height(t_max)?;
    let central = eval_at(f, 0.0)?;
    let central_zero = central_zero_from_value(&central);

    let fine = grid_step / LOW_REFINEMENT_FACTOR;
    let split = LOW_REFINEMENT_CEILING.min(t_max);
    let mut ts = grid(0.0, split, fine);
    if t_max > split {
        ts.extend(grid(split, t_max, grid_step).into_iter().skip(1));
    }

    let mut zeros = Vec::new();
    let mut dips = Vec::new();
    let mut evaluations = 1usize;
    let mut prev: Option<(f64, f64)> = None;
    // a central zero has even order, so the scan starts just past it
    let start = usize::from(central_zero);
    const BATCH: usize = 16;
    let mut k = start;
    while k < ts.len() && zeros.is_empty() {
        let end = (k + BATCH).min(ts.len());
        let mut bts: Vec<f64> = Vec::with_capacity(end - k + 1);
        let mut bvs: Vec<f64> = Vec::with_capacity(end - k + 1);
        if let Some((pt, pv)) = prev {
            bts.push(pt);
            bvs.push(pv);
        }
        let batch_ts = &ts[k..end];
        let batch_vs = if k == 0 {
            let mut v = vec![central.normalized];
            v.extend(eval_grid(f, &batch_ts[1..])?);
            v
        } else {
            eval_grid(f, batch_ts)?
        };
        evaluations += batch_ts.len();
        bts.extend_from_slice(batch_ts);
        bvs.extend_from_slice(&batch_vs);
        process_grid(f, &bts, &bvs, &mut zeros, &mut dips, &mut evaluations, true)?;
        prev = Some((bts[bts.len() - 1], bvs[bvs.len() - 1]));
        k = end;
    }
    zeros.retain(|z| z.gamma > 0.0);
    let first = zeros.first().copied();
    let status = if central_zero {
        LowestZeroStatus::CentralZeroDetected
    } else if first.is_some() {
        LowestZeroStatus::Found
    } else {
        LowestZeroStatus::NoneBelowCeiling
    };
    Ok(LowestZeroResult {
        tau: first.map(|z| z.gamma),
        bracket_width: first.map(|z| z.bracket_width),
        status,
        central_value: central.lambda_value,
        t_max,
        source: None,
        suspected_even_order: dips,
        evaluations,
    })
}

pub fn lowest_zero(spec: &LFunctionSpec, t_max: f64) -> Result<LowestZeroResult> {
    lowest_zero_of(&LFunction::new(*spec)?, t_max, DEFAULT_GRID_STEP)
}

/// τ(K) for the quadratic field of discriminant `d`: the lower of the lowest
/// zeros of ζ and of L(s, χ_d).
pub fn tau_quadratic(d: i64, t_max: f64) -> Result<LowestZeroResult> {
    let chi = KroneckerCharacter::new(d)?;
    let char_fn = LFunction::new(LFunctionSpec::dirichlet(chi))?;
    let zeta_fn = LFunction::new(LFunctionSpec::riemann_zeta())?;
    tau_from_factors(&zeta_fn, &char_fn, t_max, DEFAULT_GRID_STEP)
}

pub fn tau_from_factors<Z, C>(zeta_fn: &Z, char_fn: &C, t_max: f64, grid_step: f64) -> Result<LowestZeroResult>
where
    Z: HardyFunction + ?Sized,
    C: HardyFunction + ?Sized,
{
    let mut from_char = lowest_zero_of(char_fn, t_max, grid_step)?;
    // ζ only needs scanning below the character's zero
    let zeta_ceiling = from_char.tau.map_or(t_max, |c| (c + grid_step).min(t_max)).max(0.05);
    let mut from_zeta = lowest_zero_of(zeta_fn, zeta_ceiling, grid_step)?;
    from_zeta.t_max = t_max;
    let central_value = from_zeta.central_value * from_char.central_value;
    let evaluations = from_zeta.evaluations + from_char.evaluations;
    let pick_zeta = match (from_zeta.tau, from_char.tau) {
        (Some(z), Some(c)) => z < c,
        (Some(_), None) => true,
        _ => false,
    };
    let mut out = if pick_zeta {
        let mut z = from_zeta;
        z.source = Some(ZeroSource::Zeta);
        z.status = from_char.status.min_status(z.status);
        z.suspected_even_order.append(&mut from_char.suspected_even_order);
        z
    } else {
        let mut c = from_char;
        c.source = c.tau.map(|_| ZeroSource::Character);
        c.suspected_even_order.extend(from_zeta.suspected_even_order);
        c
    };
    out.central_value = central_value;
    out.evaluations = evaluations;
    Ok(out)
}

impl LowestZeroStatus {
    fn min_status(self, other: LowestZeroStatus) -> LowestZeroStatus {
        if self == LowestZeroStatus::CentralZeroDetected || other == LowestZeroStatus::CentralZeroDetected {
            LowestZeroStatus::CentralZeroDetected
        } else {
            other
        }
    }
}

/// Positive zero ordinates up to `height`, for the explicit-formula zero sum.
/// Aborts when an unresolved even-order candidate is seen.
pub fn zero_list_for_explicit_formula_of<F: HardyFunction + ?Sized>(f: &F, height: f64) -> Result<Vec<f64>> {
    let scan = scan_zeros_of(f, height, DEFAULT_GRID_STEP)?;
    if let Some(dip) = scan.suspected_even_order.first() {
        return Err(Error::EvenOrderZero {
            t: dip.t,
            value: dip.normalized,
        });
    }
    Ok(scan.zeros.iter().map(|z| z.gamma).collect())
}

pub fn zero_list_for_explicit_formula(spec: &LFunctionSpec, height: f64) -> Result<Vec<f64>> {
    zero_list_for_explicit_formula_of(&LFunction::new(*spec)?, height)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lfunctions::EvalMethod;

    const ZETA_ZEROS: [f64; 10] = [
        14.134725141734693,
        21.022039638771555,
        25.010857580145688,
        30.424876125859513,
        32.935061587739189,
        37.586178158825671,
        40.918719012147495,
        43.327073280914999,
        48.005150881167159,
        49.773832477672302,
    ];

    struct Synthetic<G: Fn(f64) -> f64 + Sync>(G);

    impl<G: Fn(f64) -> f64 + Sync> HardyFunction for Synthetic<G> {
        fn eval(&self, t: f64) -> Result<CompletedValue> {
            let v = (self.0)(t);
            Ok(CompletedValue {
                t,
                lambda_value: v,
                err_estimate: 0.0,
                scale: 1.0,
                gamma_factor: 1.0,
                normalized: v,
                imag_residual: 0.0,
                n_terms: 0,
                method: EvalMethod::EulerMaclaurin,
            })
        }
        fn label(&self) -> String {
            "synthetic".into()
        }
    }

    #[test]
    fn zeta_zero_counts_and_positions() {
        let scan = scan_zeros(&LFunctionSpec::riemann_zeta(), 50.0, DEFAULT_GRID_STEP).unwrap();
        assert!(scan.suspected_even_order.is_empty());
        let g: Vec<f64> = scan.zeros.iter().map(|z| z.gamma).collect();
        assert_eq!(g.len(), 10);
        for (a, b) in g.iter().zip(ZETA_ZEROS) {
            assert!((a - b).abs() < 1e-8, "{a} vs {b}");
        }
        assert_eq!(g.iter().filter(|&&x| x <= 15.0).count(), 1);
        assert_eq!(g.iter().filter(|&&x| x <= 31.0).count(), 4);
    }

    #[test]
    fn lowest_zeta_zero() {
        let r = lowest_zero(&LFunctionSpec::riemann_zeta(), 20.0).unwrap();
        assert_eq!(r.status, LowestZeroStatus::Found);
        assert!((r.tau.unwrap() - ZETA_ZEROS[0]).abs() < 1e-8);
        let none = lowest_zero(&LFunctionSpec::riemann_zeta(), 10.0).unwrap();
        assert_eq!(none.status, LowestZeroStatus::NoneBelowCeiling);
        assert!(none.tau.is_none());
    }

    #[test]
    fn chi_minus_four() {
        let spec = LFunctionSpec::from_discriminant(-4).unwrap();
        assert!(scan_zeros(&spec, 5.0, DEFAULT_GRID_STEP).unwrap().zeros.is_empty());
        let r = lowest_zero(&spec, 10.0).unwrap();
        assert!((r.tau.unwrap() - 6.020948904697597).abs() < 1e-8);
    }

    #[test]
    fn quadratic_tau_takes_lower_factor() {
        let r = tau_quadratic(-4, 20.0).unwrap();
        assert_eq!(r.source, Some(ZeroSource::Character));
        assert!((r.tau.unwrap() - 6.020948904697597).abs() < 1e-8);
    }

    #[test]
    fn grid_halving_is_stable() {
        let spec = LFunctionSpec::from_discriminant(-3).unwrap();
        let a = scan_zeros(&spec, 20.0, 0.05).unwrap();
        let b = scan_zeros(&spec, 20.0, 0.025).unwrap();
        assert_eq!(a.zeros.len(), b.zeros.len());
        for (x, y) in a.zeros.iter().zip(&b.zeros) {
            assert!((x.gamma - y.gamma).abs() < 1e-8);
        }
    }

    #[test]
    fn synthetic_double_zero_is_flagged() {
        let f = Synthetic(|t: f64| (t - 3.01).powi(2) + 1.0e-9);
        let scan = scan_zeros_of(&f, 5.0, DEFAULT_GRID_STEP).unwrap();
        assert!(scan.zeros.is_empty());
        assert_eq!(scan.suspected_even_order.len(), 1);
        assert!((scan.suspected_even_order[0].t - 3.01).abs() < 1e-6);
        assert!(matches!(
            zero_list_for_explicit_formula_of(&f, 5.0),
            Err(Error::EvenOrderZero { .. })
        ));
    }

    #[test]
    fn synthetic_central_zero() {
        let f = Synthetic(|t: f64| t * t * (t - 2.0));
        let (flag, _) = detect_central_zero_of(&f).unwrap();
        assert!(flag);
        let r = lowest_zero_of(&f, 5.0, DEFAULT_GRID_STEP).unwrap();
        assert_eq!(r.status, LowestZeroStatus::CentralZeroDetected);
        assert!((r.tau.unwrap() - 2.0).abs() < 1e-9);
    }

    #[test]
    fn bad_grid_step_rejected() {
        let spec = LFunctionSpec::riemann_zeta();
        assert!(scan_zeros(&spec, 10.0, 0.1).is_err());
        assert!(scan_zeros(&spec, 10.0, 0.0).is_err());
        assert!(scan_zeros(&spec, 120.0, 0.01).is_err());
    }

    #[test]
    fn returned_zeros_vanish() {
        let f = LFunction::new(LFunctionSpec::from_discriminant(-2042040).unwrap()).unwrap();
        let r = lowest_zero_of(&f, 2.0, DEFAULT_GRID_STEP).unwrap();
        let tau = r.tau.unwrap();
        assert!((tau - 0.195366057287247).abs() < 1e-8, "{tau}");
        let v = f.eval(tau).unwrap();
        assert!(v.lambda_value.abs() < CENTRAL_ZERO_THRESHOLD * v.scale);
    }
}
