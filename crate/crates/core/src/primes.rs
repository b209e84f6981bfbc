//! Von Mangoldt tables, Chebyshev ψ, and the weighted prime sums that enter
//! the explicit formula for ℚ and for quadratic fields.

use crate::error::{domain, Error, Result};
use crate::fields::KroneckerCharacter;
use crate::sum::CompensatedSum;
use crate::testfn::f_eval;
use rayon::prelude::*;
use serde::Serialize;

/// Largest table the flat sieve builds; above this the sieve is segmented.
pub const FLAT_SIEVE_LIMIT: u64 = 100_000_000;
/// Default ceiling on `x_max`.
pub const DEFAULT_SIEVE_CAP: u64 = 100_000_000;
/// Absolute ceiling on `x_max`.
pub const MAX_SIEVE_CAP: u64 = 1_000_000_000;

const SEGMENT_LEN: u64 = 1 << 21;

/// All prime powers up to `x_max`, stored as primes plus the (few) higher powers.
#[derive(Debug, Clone)]
pub struct MangoldtTable {
    x_max: u64,
    primes: Vec<u32>,
    // (p^m, p) for m ≥ 2, sorted by p^m
    higher: Vec<(u32, u32)>,
}

impl MangoldtTable {
    pub fn x_max(&self) -> u64 {
        self.x_max
    }

    pub fn primes(&self) -> &[u32] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len() + self.higher.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `(n, Λ(n))` for every prime power `n ≤ x_max`, ascending in `n`.
    pub fn entries(&self) -> impl Iterator<Item = (u64, f64)> + '_ {
        let mut primes = self.primes.iter().peekable();
        let mut higher = self.higher.iter().peekable();
        std::iter::from_fn(move || {
            let take_prime = match (primes.peek(), higher.peek()) {
                (Some(&&p), Some(&&(n, _))) => p < n,
                (Some(_), None) => true,
                (None, Some(_)) => false,
                (None, None) => return None,
            };
            if take_prime {
                let p = *primes.next()?;
                Some((p as u64, (p as f64).ln()))
            } else {
                let (n, p) = *higher.next()?;
                Some((n as u64, (p as f64).ln()))
            }
        })
    }

    /// Every `(n, p)` with `n = p^m ≤ limit`, in no particular order.
    fn prime_powers_upto(&self, limit: u64) -> impl Iterator<Item = (u64, u32)> + '_ {
        let end = self.primes.partition_point(|&p| (p as u64) <= limit);
        self.primes[..end]
            .iter()
            .map(|&p| (p as u64, p))
            .chain(
                self.higher
                    .iter()
                    .take_while(move |&&(n, _)| (n as u64) <= limit)
                    .map(|&(n, p)| (n as u64, p)),
            )
    }

    /// Sums run over n ≤ x, so only ⌊x⌋ has to be covered.
    fn check_range(&self, what: &'static str, x: f64) -> Result<()> {
        if !(x.floor() <= self.x_max as f64) {
            return Err(Error::Range {
                what,
                requested: x,
                limit: self.x_max as f64,
            });
        }
        Ok(())
    }
}

/// Sieve all prime powers up to `x_max` under the default cap.
pub fn mangoldt_sieve(x_max: u64) -> Result<MangoldtTable> {
    mangoldt_sieve_with_cap(x_max, DEFAULT_SIEVE_CAP)
}

pub fn mangoldt_sieve_with_cap(x_max: u64, cap: u64) -> Result<MangoldtTable> {
    let cap = cap.min(MAX_SIEVE_CAP);
    if x_max < 2 {
        return Err(domain(format!("sieve limit must be at least 2, got {x_max}")));
    }
    if x_max > cap {
        return Err(Error::Range {
            what: "sieve limit",
            requested: x_max as f64,
            limit: cap as f64,
        });
    }
    let primes = if x_max <= FLAT_SIEVE_LIMIT {
        flat_sieve(x_max)
    } else {
        segmented_sieve(x_max)
    };
    let mut higher = Vec::new();
    for &p in &primes {
        let p64 = p as u64;
        if p64 * p64 > x_max {
            break;
        }
        let mut n = p64 * p64;
        while n <= x_max {
            higher.push((n as u32, p));
            n *= p64;
        }
    }
    higher.sort_unstable();
    Ok(MangoldtTable { x_max, primes, higher })
}

/// Odd-only bit sieve of Eratosthenes.
fn flat_sieve(limit: u64) -> Vec<u32> {
    if limit < 2 {
        return Vec::new();
    }
    // bit i stands for 2i + 1
    let n_odd = (limit + 1) / 2;
    let mut composite = vec![0u64; (n_odd as usize + 63) / 64];
    let mut i = 1u64;
    while (2 * i + 1) * (2 * i + 1) <= limit {
        if composite[(i / 64) as usize] >> (i % 64) & 1 == 0 {
            let p = 2 * i + 1;
            let mut j = (p * p) / 2;
            while j < n_odd {
                composite[(j / 64) as usize] |= 1 << (j % 64);
                j += p;
            }
        }
        i += 1;
    }
    let mut primes = vec![2u32];
    for i in 1..n_odd {
        if composite[(i / 64) as usize] >> (i % 64) & 1 == 0 {
            primes.push((2 * i + 1) as u32);
        }
    }
    primes
}

/// Primes in `[lo, hi)` using base primes up to √hi.
fn sieve_segment(lo: u64, hi: u64, base: &[u32]) -> Vec<u32> {
    let len = (hi - lo) as usize;
    let mut composite = vec![false; len];
    for &p in base {
        let p = p as u64;
        if p * p >= hi {
            break;
        }
        let start = (p * p).max(lo.div_ceil(p) * p);
        let mut m = start;
        while m < hi {
            composite[(m - lo) as usize] = true;
            m += p;
        }
    }
    (0..len)
        .filter(|&k| !composite[k] && lo + k as u64 >= 2)
        .map(|k| (lo + k as u64) as u32)
        .collect()
}

/// Segmented sieve; segments are independent and sieved in parallel.
pub(crate) fn segmented_sieve(limit: u64) -> Vec<u32> {
    let root = crate::fields::isqrt(limit);
    let base = flat_sieve(root.max(2));
    let n_segments = (limit + 1).div_ceil(SEGMENT_LEN);
    let chunks: Vec<Vec<u32>> = (0..n_segments)
        .into_par_iter()
        .map(|k| {
            let lo = k * SEGMENT_LEN;
            let hi = ((k + 1) * SEGMENT_LEN).min(limit + 1);
            sieve_segment(lo, hi, &base)
        })
        .collect();
    chunks.concat()
}

/// ψ(x) = Σ_{n ≤ x} Λ(n).
pub fn chebyshev_psi(x: f64, table: &MangoldtTable) -> Result<f64> {
    table.check_range("psi argument", x)?;
    if x < 2.0 {
        return Ok(0.0);
    }
    let limit = x.floor() as u64;
    let acc: CompensatedSum = table
        .prime_powers_upto(limit)
        .map(|(_, p)| (p as f64).ln())
        .sum();
    Ok(acc.value())
}

fn exp_cutoff(what: &'static str, t: f64, table: &MangoldtTable) -> Result<Option<u64>> {
    if !(t > 0.0) {
        return Err(domain(format!("{what}: T must be positive, got {t}")));
    }
    let x = t.exp();
    table.check_range(what, x)?;
    Ok(if x < 2.0 { None } else { Some(x.floor() as u64) })
}

/// Σ_{n ≤ e^T} Λ(n)/√n.
pub fn lambda_weighted_sum(t: f64, table: &MangoldtTable) -> Result<f64> {
    let Some(limit) = exp_cutoff("lambda-weighted sum", t, table)? else {
        return Ok(0.0);
    };
    let acc: CompensatedSum = table
        .prime_powers_upto(limit)
        .map(|(n, p)| (p as f64).ln() / (n as f64).sqrt())
        .sum();
    Ok(acc.value())
}

/// Σ_{n ≤ e^T} Λ(n)/√n · F_T(ln n), the prime side of the explicit formula for ℚ.
pub fn weighted_prime_sum_with_f(t: f64, table: &MangoldtTable) -> Result<f64> {
    let Some(limit) = exp_cutoff("weighted prime sum", t, table)? else {
        return Ok(0.0);
    };
    let acc: CompensatedSum = table
        .prime_powers_upto(limit)
        .map(|(n, p)| {
            let n = n as f64;
            (p as f64).ln() / n.sqrt() * f_eval(n.ln() / t)
        })
        .sum();
    Ok(acc.value())
}

/// Upper bound 1.0389(2e^{T/2} − 1) on Σ_{n ≤ e^T} Λ(n)/√n from ψ(x) ≤ 1.0389x.
pub fn lambda_weighted_bound(t: f64) -> f64 {
    ROSSER_PSI_CONSTANT * (2.0 * (0.5 * t).exp() - 1.0)
}

/// ψ(x) ≤ 1.0389 x for all x > 0.
pub const ROSSER_PSI_CONSTANT: f64 = 1.0389;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LambdaBoundRow {
    #[serde(rename = "T")]
    pub t: f64,
    pub sum: f64,
    pub bound: f64,
    pub holds: bool,
}

/// Σ_{n ≤ e^T} Λ(n)/√n against 1.0389(2e^{T/2} − 1) on a grid of T, in one
/// pass over the table.
pub fn verify_lambda_sum_bound(t_grid: &[f64], table: &MangoldtTable) -> Result<Vec<LambdaBoundRow>> {
    let mut order: Vec<usize> = (0..t_grid.len()).collect();
    order.sort_by(|&a, &b| t_grid[a].total_cmp(&t_grid[b]));
    let mut cutoffs = Vec::with_capacity(t_grid.len());
    for &t in t_grid {
        cutoffs.push(exp_cutoff("lambda-weighted sum", t, table)?.unwrap_or(0));
    }
    let mut sums = vec![0.0; t_grid.len()];
    let mut acc = CompensatedSum::new();
    let mut entries = table.entries().peekable();
    for &i in &order {
        while let Some(&(n, ln_p)) = entries.peek() {
            if n > cutoffs[i] {
                break;
            }
            acc.add(ln_p / (n as f64).sqrt());
            entries.next();
        }
        sums[i] = acc.value();
    }
    Ok(t_grid
        .iter()
        .zip(sums)
        .map(|(&t, sum)| {
            let bound = lambda_weighted_bound(t);
            LambdaBoundRow { t, sum, bound, holds: sum <= bound }
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Splitting {
    Split,
    Inert,
    Ramified,
}

/// Prime ideals of a quadratic field above a rational prime `p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimeIdealLocal {
    pub p: u64,
    pub splitting: Splitting,
    /// (ideal norm, number of ideals with that norm)
    pub ideal_norms: Vec<(u64, u32)>,
}

pub fn prime_ideal_decomposition(chi: &KroneckerCharacter, p: u64) -> Result<PrimeIdealLocal> {
    if !is_prime(p) {
        return Err(domain(format!("{p} is not prime")));
    }
    let (splitting, ideal_norms) = match chi.value(p) {
        1 => (Splitting::Split, vec![(p, 2)]),
        -1 => (Splitting::Inert, vec![(p * p, 1)]),
        _ => (Splitting::Ramified, vec![(p, 1)]),
    };
    Ok(PrimeIdealLocal { p, splitting, ideal_norms })
}

/// Σ_𝔭 Σ_m ln N𝔭 / N𝔭^{m/2} · F_T(m ln N𝔭) over the prime ideals of the
/// quadratic field attached to `chi`.
pub fn quadratic_prime_sum(chi: &KroneckerCharacter, t: f64, table: &MangoldtTable) -> Result<f64> {
    let Some(limit) = exp_cutoff("quadratic prime sum", t, table)? else {
        return Ok(0.0);
    };
    let end = table.primes.partition_point(|&p| (p as u64) <= limit);
    let mut acc = CompensatedSum::new();
    for &p in &table.primes[..end] {
        let p = p as u64;
        let (norm, count) = match chi.value(p) {
            1 => (p, 2.0),
            -1 => match p.checked_mul(p) {
                Some(n2) if n2 <= limit => (n2, 1.0),
                _ => continue,
            },
            _ => (p, 1.0),
        };
        let ln_norm = (norm as f64).ln();
        let mut m = 1u32;
        loop {
            let arg = m as f64 * ln_norm;
            if arg > t {
                break;
            }
            let weight = ln_norm * (-0.5 * arg).exp();
            acc.add(count * weight * f_eval(arg / t));
            m += 1;
        }
    }
    Ok(acc.value())
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &SMALL {
        if n % p == 0 {
            return n == p;
        }
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let pow = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mul(r, b);
            }
            b = mul(b, b);
            e >>= 1;
        }
        r
    };
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &SMALL {
        let mut x = pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::LN_2;

    #[test]
    fn small_table() {
        let t = mangoldt_sieve(10).unwrap();
        let got: Vec<(u64, f64)> = t.entries().collect();
        let ln = |p: f64| p.ln();
        let want = [
            (2, LN_2),
            (3, ln(3.0)),
            (4, LN_2),
            (5, ln(5.0)),
            (7, ln(7.0)),
            (8, LN_2),
            (9, ln(3.0)),
        ];
        assert_eq!(got.len(), want.len());
        for ((n, l), (wn, wl)) in got.iter().zip(want) {
            assert_eq!(*n, wn);
            assert_eq!(*l, wl);
        }
        let t2 = mangoldt_sieve(2).unwrap();
        assert_eq!(t2.entries().collect::<Vec<_>>(), vec![(2, LN_2)]);
    }

    #[test]
    fn fractional_limit_within_table() {
        let t = mangoldt_sieve(22026).unwrap();
        assert!(t.check_range("sum", 22026.465794806718).is_ok());
        assert!(t.check_range("sum", 22027.0).is_err());
    }

    #[test]
    fn sieve_limits() {
        assert!(mangoldt_sieve(1).is_err());
        assert!(matches!(mangoldt_sieve(DEFAULT_SIEVE_CAP + 1), Err(Error::Range { .. })));
        assert!(matches!(
            mangoldt_sieve_with_cap(MAX_SIEVE_CAP + 1, u64::MAX),
            Err(Error::Range { .. })
        ));
    }

    #[test]
    fn segmented_matches_flat() {
        for limit in [2u64, 3, 100, 65_537, SEGMENT_LEN - 1, SEGMENT_LEN, 3 * SEGMENT_LEN + 17] {
            assert_eq!(segmented_sieve(limit), flat_sieve(limit), "limit {limit}");
        }
    }

    #[test]
    fn psi_examples() {
        let t = mangoldt_sieve(1000).unwrap();
        let want = 3.0 * LN_2 + 2.0 * 3f64.ln() + 5f64.ln() + 7f64.ln();
        assert!((chebyshev_psi(10.0, &t).unwrap() - want).abs() < 1e-14);
        assert!((chebyshev_psi(10.0, &t).unwrap() - 7.832).abs() < 1e-4);
        assert_eq!(chebyshev_psi(1.5, &t).unwrap(), 0.0);
        assert!(chebyshev_psi(100.0, &t).unwrap() <= 1.0389 * 100.0);
        assert_eq!(chebyshev_psi(1000.5, &t).unwrap(), chebyshev_psi(1000.0, &t).unwrap());
        assert!(chebyshev_psi(1001.0, &t).is_err());
    }

    #[test]
    fn weighted_sum_examples() {
        let t = mangoldt_sieve(100_000).unwrap();
        let want = LN_2 / 2f64.sqrt() + 3f64.ln() / 3f64.sqrt() + LN_2 / 2.0
            + 5f64.ln() / 5f64.sqrt()
            + 7f64.ln() / 7f64.sqrt();
        let got = lambda_weighted_sum(2.0, &t).unwrap();
        assert!((got - want).abs() < 1e-14);
        assert!((got - 2.9263).abs() < 1e-4);
        assert_eq!(lambda_weighted_sum(0.5, &t).unwrap(), 0.0);
        let s10 = lambda_weighted_sum(10.0, &t).unwrap();
        assert!(s10 <= lambda_weighted_bound(10.0));
        assert!(lambda_weighted_sum(12.0, &t).is_err());
        assert!(lambda_weighted_sum(0.0, &t).is_err());
    }

    #[test]
    fn prime_sum_with_f_examples() {
        let t = mangoldt_sieve(100_000).unwrap();
        assert_eq!(weighted_prime_sum_with_f(0.5, &t).unwrap(), 0.0);
        let one = weighted_prime_sum_with_f(1.0, &t).unwrap();
        assert!((one - LN_2 / 2f64.sqrt() * f_eval(LN_2)).abs() < 1e-15);
        for tt in [1.5, 3.0, 7.0, 11.0] {
            let s = weighted_prime_sum_with_f(tt, &t).unwrap();
            assert!(s.abs() <= 1.21 * lambda_weighted_sum(tt, &t).unwrap());
        }
    }

    #[test]
    fn ideal_decomposition() {
        let chi = KroneckerCharacter::new(-4).unwrap();
        let split = prime_ideal_decomposition(&chi, 5).unwrap();
        assert_eq!(split.splitting, Splitting::Split);
        assert_eq!(split.ideal_norms, vec![(5, 2)]);
        let inert = prime_ideal_decomposition(&chi, 3).unwrap();
        assert_eq!(inert.splitting, Splitting::Inert);
        assert_eq!(inert.ideal_norms, vec![(9, 1)]);
        let ram = prime_ideal_decomposition(&chi, 2).unwrap();
        assert_eq!(ram.splitting, Splitting::Ramified);
        assert_eq!(ram.ideal_norms, vec![(2, 1)]);
        assert!(prime_ideal_decomposition(&chi, 9).is_err());
    }

    #[test]
    fn quadratic_sum_examples() {
        let t = mangoldt_sieve(1000).unwrap();
        let chi = KroneckerCharacter::new(-4).unwrap();
        assert_eq!(quadratic_prime_sum(&chi, 0.5, &t).unwrap(), 0.0);
        let one = quadratic_prime_sum(&chi, 1.0, &t).unwrap();
        assert!((one - LN_2 / 2f64.sqrt() * f_eval(LN_2)).abs() < 1e-15);
    }

    #[test]
    fn miller_rabin() {
        let small: Vec<u64> = (0..200).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, flat_sieve(199).iter().map(|&p| p as u64).collect::<Vec<_>>());
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to bases 2, 3, 5, 7
        assert!(is_prime(18_446_744_073_709_551_557));
    }
}
