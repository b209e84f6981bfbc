use lowzero::fields::{is_fundamental_discriminant, KroneckerCharacter};
use lowzero::primes::{
    chebyshev_psi, lambda_weighted_bound, lambda_weighted_sum, mangoldt_sieve, prime_ideal_decomposition,
    quadratic_prime_sum, verify_lambda_sum_bound, weighted_prime_sum_with_f, Splitting,
};
use lowzero::testfn::f_eval;
use proptest::prelude::*;

/// Λ(n) by trial division.
fn mangoldt_oracle(n: u64) -> f64 {
    if n < 2 {
        return 0.0;
    }
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut m = n;
            while m % p == 0 {
                m /= p;
            }
            return if m == 1 { (p as f64).ln() } else { 0.0 };
        }
        p += 1;
    }
    (n as f64).ln()
}

fn chi_oracle(d: i64, n: u64) -> i64 {
    KroneckerCharacter::new(d).unwrap().value(n) as i64
}

/// Number of ideals of norm n: Σ_{m | n} χ_d(m).
fn ideal_count_brute(d: i64, n: u64) -> i64 {
    (1..=n).filter(|m| n % m == 0).map(|m| chi_oracle(d, m)).sum()
}

/// Number of ideals of norm n assembled from the local prime-ideal data.
fn ideal_count_from_local(chi: &KroneckerCharacter, n: u64) -> i64 {
    let mut rest = n;
    let mut total = 1i64;
    let mut p = 2;
    while rest > 1 {
        if p * p > rest {
            p = rest;
        }
        if rest % p != 0 {
            p += 1;
            continue;
        }
        let mut k = 0u32;
        while rest % p == 0 {
            rest /= p;
            k += 1;
        }
        let local = prime_ideal_decomposition(chi, p).unwrap();
        // ways to write p^k as a product of ideal norms above p
        let mut ways = vec![0i64; k as usize + 1];
        ways[0] = 1;
        for &(norm, count) in &local.ideal_norms {
            let e = (norm as f64).log(p as f64).round() as usize;
            for _ in 0..count {
                for j in e..=k as usize {
                    ways[j] += ways[j - e];
                }
            }
        }
        total *= ways[k as usize];
        p += 1;
    }
    total
}

fn fundamental() -> impl Strategy<Value = i64> {
    (-5000i64..5000).prop_filter("fundamental", |&d| is_fundamental_discriminant(d))
}

proptest! {
    #[test]
    fn ideal_counts_factor_as_zeta_times_l(d in fundamental(), n in 1u64..3000) {
        let chi = KroneckerCharacter::new(d).unwrap();
        prop_assert_eq!(ideal_count_from_local(&chi, n), ideal_count_brute(d, n));
    }

    #[test]
    fn psi_matches_trial_division(x in 2.0f64..5000.0) {
        let table = mangoldt_sieve(5000).unwrap();
        let brute: f64 = (2..=x.floor() as u64).map(mangoldt_oracle).sum();
        prop_assert!((chebyshev_psi(x, &table).unwrap() - brute).abs() < 1e-9);
    }

    #[test]
    fn quadratic_prime_sum_matches_coefficients(d in fundamental(), t in 0.5f64..9.0) {
        // −ζ_K'/ζ_K has coefficients Λ(n)(1 + χ_d(n))
        let table = mangoldt_sieve(10_000).unwrap();
        let chi = KroneckerCharacter::new(d).unwrap();
        let brute: f64 = (2..=t.exp().floor() as u64)
            .map(|n| {
                let l = mangoldt_oracle(n);
                if l == 0.0 { 0.0 } else {
                    l * (1.0 + chi_oracle(d, n) as f64) / (n as f64).sqrt() * f_eval((n as f64).ln() / t)
                }
            })
            .sum();
        let got = quadratic_prime_sum(&chi, t, &table).unwrap();
        prop_assert!((got - brute).abs() < 1e-10 * (1.0 + brute.abs()), "{got} vs {brute}");
    }

    #[test]
    fn rational_prime_sum_matches(t in 0.1f64..9.0) {
        let table = mangoldt_sieve(10_000).unwrap();
        let brute: f64 = (2..=t.exp().floor() as u64)
            .map(|n| mangoldt_oracle(n) / (n as f64).sqrt() * f_eval((n as f64).ln() / t))
            .sum();
        prop_assert!((weighted_prime_sum_with_f(t, &table).unwrap() - brute).abs() < 1e-10);
    }
}

#[test]
fn splitting_types() {
    let chi = KroneckerCharacter::new(-4).unwrap();
    assert_eq!(prime_ideal_decomposition(&chi, 2).unwrap().splitting, Splitting::Ramified);
    assert_eq!(prime_ideal_decomposition(&chi, 5).unwrap().splitting, Splitting::Split);
    assert_eq!(prime_ideal_decomposition(&chi, 7).unwrap().splitting, Splitting::Inert);
    assert_eq!(prime_ideal_decomposition(&chi, 7).unwrap().ideal_norms, vec![(49, 1)]);
}

#[test]
fn lambda_sum_bound_and_one_pass_agree() {
    let table = mangoldt_sieve(1_000_000).unwrap();
    let grid: Vec<f64> = (1..=27).map(|k| 0.5 * k as f64).collect();
    let rows = verify_lambda_sum_bound(&grid, &table).unwrap();
    for r in rows {
        assert!(r.holds, "T = {}", r.t);
        assert!((r.sum - lambda_weighted_sum(r.t, &table).unwrap()).abs() < 1e-9 * r.sum.max(1.0));
        assert_eq!(r.bound, lambda_weighted_bound(r.t));
    }
}

#[test]
fn sieve_range_is_enforced() {
    let table = mangoldt_sieve(100).unwrap();
    assert!(chebyshev_psi(101.0, &table).is_err());
    assert!(lambda_weighted_sum(5.0, &table).is_err());
}
