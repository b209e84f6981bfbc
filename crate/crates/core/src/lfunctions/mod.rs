//! Completed ζ and Dirichlet L-functions of real primitive characters,
//! evaluated on the critical line as real Hardy-type functions.

pub mod dirichlet;
pub mod zeta;

pub use dirichlet::{completed_l_afe, l_via_hurwitz, log_gamma_factor, AfeValue};
pub use zeta::{hurwitz_zeta, riemann_siegel_theta, zeta_em, zeta_em_detailed, EmValue};

use crate::error::{domain, Error, Result};
use crate::fields::{kronecker, KroneckerCharacter};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use std::sync::Arc;

/// Largest conductor accepted by the evaluators.
pub const MAX_CONDUCTOR: u64 = 1_000_000_000_000;
/// Largest character table built in one go.
pub const MAX_CHAR_CACHE: u64 = 10_000_000;
/// Conductors up to this size switch to the Hurwitz route above `AFE_HIGH_T`.
pub const HURWITZ_MAX_CONDUCTOR: u64 = 10_000;
/// Above this height the AFE loses roughly e^{πt/4} in relative accuracy.
pub const AFE_HIGH_T: f64 = 12.0;
pub const MAX_HEIGHT: f64 = 100.0;
pub const DEFAULT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LKind {
    RiemannZeta,
    DirichletReal,
}

/// Which completed L-function is being evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LFunctionSpec {
    pub kind: LKind,
    #[serde(rename = "d")]
    pub character: Option<KroneckerCharacter>,
    pub conductor: u64,
    pub parity: u8,
    pub has_pole: bool,
    pub root_number: i8,
}

impl LFunctionSpec {
    pub fn riemann_zeta() -> Self {
        Self {
            kind: LKind::RiemannZeta,
            character: None,
            conductor: 1,
            parity: 0,
            has_pole: true,
            root_number: 1,
        }
    }

    pub fn dirichlet(chi: KroneckerCharacter) -> Self {
        Self {
            kind: LKind::DirichletReal,
            character: Some(chi),
            conductor: chi.conductor(),
            parity: chi.parity(),
            has_pole: false,
            root_number: 1,
        }
    }

    pub fn from_discriminant(d: i64) -> Result<Self> {
        Ok(Self::dirichlet(KroneckerCharacter::new(d)?))
    }

    pub fn label(&self) -> String {
        match self.character {
            None => "zeta".to_string(),
            Some(chi) => format!("L(s, chi_{})", chi.discriminant()),
        }
    }
}

/// χ_d(n) for `1 ≤ n ≤ n_max`, read-only after construction.
#[derive(Debug, Clone)]
pub struct CharacterTable {
    chi: KroneckerCharacter,
    values: Vec<i8>,
}

impl CharacterTable {
    pub fn character(&self) -> KroneckerCharacter {
        self.chi
    }

    pub fn n_max(&self) -> u64 {
        self.values.len() as u64
    }

    /// χ(n); falls back to a direct Kronecker evaluation past the table.
    #[inline]
    pub fn get(&self, n: u64) -> i8 {
        match self.values.get((n as usize).wrapping_sub(1)) {
            Some(&v) if n >= 1 => v,
            _ => kronecker(self.chi.discriminant(), n),
        }
    }

    pub fn values(&self) -> &[i8] {
        &self.values
    }
}

/// Tabulate χ_d(1..=n_max).
pub fn char_coefficient_cache(chi: KroneckerCharacter, n_max: u64) -> Result<CharacterTable> {
    if n_max > MAX_CHAR_CACHE {
        return Err(Error::Range {
            what: "character table size",
            requested: n_max as f64,
            limit: MAX_CHAR_CACHE as f64,
        });
    }
    let d = chi.discriminant();
    let values = (1..=n_max).into_par_iter().map(|n| kronecker(d, n)).collect();
    Ok(CharacterTable { chi, values })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EvalMethod {
    EulerMaclaurin,
    ApproximateFunctionalEquation,
    Hurwitz,
}

/// A completed L-value on the critical line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CompletedValue {
    pub t: f64,
    /// Z(t) for ζ; Λ(1/2 + it, χ) for Dirichlet L-functions.
    pub lambda_value: f64,
    pub err_estimate: f64,
    /// Largest single term of the evaluated series.
    pub scale: f64,
    /// |(q/π)^{(s+a)/2} Γ((s+a)/2)| (1 for ζ); `lambda_value / gamma_factor`
    /// is ±|L(1/2 + it)|.
    pub gamma_factor: f64,
    pub normalized: f64,
    /// |Im| of the rotated value before taking the real part.
    pub imag_residual: f64,
    pub n_terms: usize,
    pub method: EvalMethod,
}

/// A real-valued function on the critical line whose sign changes are zeros.
pub trait HardyFunction: Sync {
    fn eval(&self, t: f64) -> Result<CompletedValue>;
    fn label(&self) -> String;
}

/// Evaluator for a spec with its character table built once.
#[derive(Debug, Clone)]
pub struct LFunction {
    spec: LFunctionSpec,
    chars: Option<Arc<CharacterTable>>,
    tol: f64,
}

impl LFunction {
    pub fn new(spec: LFunctionSpec) -> Result<Self> {
        Self::with_tolerance(spec, DEFAULT_TOL)
    }

    pub fn with_tolerance(spec: LFunctionSpec, tol: f64) -> Result<Self> {
        if !(tol >= 1e-10) {
            return Err(domain(format!("tolerance must be at least 1e-10, got {tol}")));
        }
        let chars = match spec.character {
            None => None,
            Some(chi) => {
                let q = chi.conductor();
                if q > MAX_CONDUCTOR {
                    return Err(Error::Range {
                        what: "conductor",
                        requested: q as f64,
                        limit: MAX_CONDUCTOR as f64,
                    });
                }
                let n_max = (4.0 * (q as f64).sqrt()).ceil() as u64 + 64;
                Some(Arc::new(char_coefficient_cache(chi, n_max.min(MAX_CHAR_CACHE))?))
            }
        };
        Ok(Self { spec, chars, tol })
    }

    pub fn spec(&self) -> &LFunctionSpec {
        &self.spec
    }

    pub fn characters(&self) -> Option<&CharacterTable> {
        self.chars.as_deref()
    }

    fn check_t(&self, t: f64) -> Result<()> {
        if !t.is_finite() || t.abs() > MAX_HEIGHT {
            return Err(domain(format!("|t| must be at most {MAX_HEIGHT}, got {t}")));
        }
        Ok(())
    }

    fn eval_zeta(&self, t: f64) -> Result<CompletedValue> {
        let s = Complex64::new(0.5, t);
        let em = zeta_em_detailed(s, 0.1 * self.tol)?;
        let rotated = Complex64::from_polar(1.0, riemann_siegel_theta(t)) * em.value;
        Ok(CompletedValue {
            t,
            lambda_value: rotated.re,
            err_estimate: em.err_estimate + rotated.im.abs(),
            scale: 1.0,
            gamma_factor: 1.0,
            normalized: rotated.re,
            imag_residual: rotated.im.abs(),
            n_terms: em.n_terms,
            method: EvalMethod::EulerMaclaurin,
        })
    }

    fn eval_afe(&self, chars: &CharacterTable, t: f64, range_factor: f64) -> Result<CompletedValue> {
        let s = Complex64::new(0.5, t);
        // With A = 1 the second half-sum is the conjugate of the first.
        let half = dirichlet::afe_half_sum(chars, s, 1.0, range_factor)?;
        let lambda = 2.0 * half.value.re;
        let gamma_factor = log_gamma_factor(chars.character().conductor(), chars.character().parity(), s)
            .re
            .exp();
        Ok(CompletedValue {
            t,
            lambda_value: lambda,
            err_estimate: 2.0 * dirichlet::rounding_estimate(&half),
            scale: half.max_term,
            gamma_factor,
            normalized: lambda / gamma_factor,
            imag_residual: 0.0,
            n_terms: 2 * half.n_terms,
            method: EvalMethod::ApproximateFunctionalEquation,
        })
    }

    fn eval_hurwitz(&self, chars: &CharacterTable, t: f64) -> Result<CompletedValue> {
        let s = Complex64::new(0.5, t);
        let l = l_via_hurwitz(chars, s, 1e-13)?;
        let lgf = log_gamma_factor(chars.character().conductor(), chars.character().parity(), s);
        let gamma_factor = lgf.re.exp();
        let rotated = Complex64::from_polar(1.0, lgf.im) * l;
        let q = chars.character().conductor() as f64;
        Ok(CompletedValue {
            t,
            lambda_value: gamma_factor * rotated.re,
            err_estimate: gamma_factor * (rotated.im.abs() + 1e-13 * q),
            scale: gamma_factor,
            gamma_factor,
            normalized: rotated.re,
            imag_residual: gamma_factor * rotated.im.abs(),
            n_terms: chars.character().conductor() as usize,
            method: EvalMethod::Hurwitz,
        })
    }

    /// Evaluate with an explicit method choice and AFE range factor.
    pub fn eval_with(&self, t: f64, method: EvalMethod, range_factor: f64) -> Result<CompletedValue> {
        self.check_t(t)?;
        let value = match (&self.chars, method) {
            (None, EvalMethod::EulerMaclaurin) => self.eval_zeta(t)?,
            (Some(chars), EvalMethod::ApproximateFunctionalEquation) => self.eval_afe(chars, t, range_factor)?,
            (Some(chars), EvalMethod::Hurwitz) => self.eval_hurwitz(chars, t)?,
            _ => return Err(domain(format!("{method:?} does not apply to {}", self.spec.label()))),
        };
        if !value.lambda_value.is_finite() {
            return Err(Error::Evaluation {
                t,
                reason: "non-finite value".into(),
            });
        }
        if value.err_estimate > self.tol * (value.lambda_value.abs() + value.scale) {
            return Err(Error::Evaluation {
                t,
                reason: format!(
                    "error estimate {:e} exceeds tolerance (value {:e}, scale {:e})",
                    value.err_estimate, value.lambda_value, value.scale
                ),
            });
        }
        Ok(value)
    }

    /// Default method for height `t`.
    pub fn method_for(&self, t: f64) -> EvalMethod {
        match &self.chars {
            None => EvalMethod::EulerMaclaurin,
            Some(c) if c.character().conductor() <= HURWITZ_MAX_CONDUCTOR && t.abs() > AFE_HIGH_T => {
                EvalMethod::Hurwitz
            }
            Some(_) => EvalMethod::ApproximateFunctionalEquation,
        }
    }

    /// Λ(s) at an arbitrary point via the AFE split at `A` (Dirichlet only).
    pub fn completed_at(&self, s: Complex64, split: f64) -> Result<AfeValue> {
        let chars = self
            .chars
            .as_deref()
            .ok_or_else(|| domain("completed_at applies to Dirichlet L-functions"))?;
        completed_l_afe(chars, s, split, 1.0)
    }
}

impl HardyFunction for LFunction {
    fn eval(&self, t: f64) -> Result<CompletedValue> {
        self.eval_with(t, self.method_for(t), 1.0)
    }

    fn label(&self) -> String {
        self.spec.label()
    }
}

/// Evaluate the real completed function of `spec` at `1/2 + it`.
pub fn hardy_z(spec: &LFunctionSpec, t: f64, tol: f64) -> Result<CompletedValue> {
    LFunction::with_tolerance(*spec, tol)?.eval(t)
}
