//! Number-field invariants for the fields this crate handles: the rationals,
//! quadratic fields, and pure fields `Q(β)` with `β^k = −c`.

use crate::error::{Error, Result};
use num_bigint::{BigInt, Sign};
use num_traits::{Signed, ToPrimitive};
use serde::{Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

/// Degree, signature, discriminant and log root discriminant of a number field.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NumberField {
    pub degree: u32,
    pub r1: u32,
    pub r2: u32,
    #[serde(serialize_with = "decimal_string")]
    pub disc: BigInt,
    pub alpha: f64,
    /// False when `disc` is a polynomial discriminant whose order was not
    /// checked for maximality.
    pub disc_is_field_disc: bool,
}

fn decimal_string<S: Serializer>(d: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&d.to_string())
}

impl NumberField {
    /// Build a field record from explicit invariants.
    pub fn new(degree: u32, r1: u32, r2: u32, disc: BigInt) -> Result<Self> {
        if degree == 0 {
            return Err(Error::DegenerateField("degree must be positive".into()));
        }
        if r1 + 2 * r2 != degree {
            return Err(Error::DegenerateField(format!(
                "signature ({r1}, {r2}) does not match degree {degree}"
            )));
        }
        let abs = disc.abs();
        if degree == 1 {
            if abs != BigInt::from(1) {
                return Err(Error::DegenerateField("degree-1 field must have |d| = 1".into()));
            }
        } else if abs < BigInt::from(3) {
            return Err(Error::DegenerateField(format!(
                "|d_K| = {abs} is impossible for degree {degree}"
            )));
        }
        // Brill: sign(d_K) = (−1)^{r2}.
        let expected = if r2 % 2 == 0 { Sign::Plus } else { Sign::Minus };
        if disc.sign() != expected {
            return Err(Error::DegenerateField(format!(
                "discriminant sign disagrees with r2 = {r2}"
            )));
        }
        let alpha = ln_abs(&disc) / degree as f64;
        Ok(Self {
            degree,
            r1,
            r2,
            disc,
            alpha,
            disc_is_field_disc: true,
        })
    }

    pub fn rationals() -> Self {
        Self {
            degree: 1,
            r1: 1,
            r2: 0,
            disc: BigInt::from(1),
            alpha: 0.0,
            disc_is_field_disc: true,
        }
    }

    /// The quadratic field of fundamental discriminant `d`.
    pub fn quadratic(d: i64) -> Result<Self> {
        if !is_fundamental_discriminant(d) {
            return Err(Error::NotFundamental(d));
        }
        let (r1, r2) = if d > 0 { (2, 0) } else { (0, 1) };
        Self::new(2, r1, r2, BigInt::from(d))
    }

    /// ln|d_K|.
    pub fn log_disc(&self) -> f64 {
        ln_abs(&self.disc)
    }

    /// The discriminant as an `i64`, when it fits.
    pub fn disc_i64(&self) -> Option<i64> {
        self.disc.to_i64()
    }
}

impl fmt::Display for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "degree {} signature ({}, {}) disc {} alpha {}",
            self.degree, self.r1, self.r2, self.disc, self.alpha
        )
    }
}

/// Natural log of |d| for arbitrarily large integers: the top 64 bits go
/// through `f64::ln`, the remaining bit length is added as a multiple of ln 2.
pub fn ln_abs(d: &BigInt) -> f64 {
    let mag = d.magnitude();
    let bits = mag.bits();
    if bits <= 64 {
        return mag.to_u64().map_or(f64::NAN, |v| (v as f64).ln());
    }
    let shift = bits - 64;
    let top = (mag >> shift).to_u64().expect("64-bit window");
    (top as f64).ln() + shift as f64 * std::f64::consts::LN_2
}

/// Log root discriminant ln|d_K| / n_K.
pub fn alpha(field: &NumberField) -> Result<f64> {
    if field.disc.abs() < BigInt::from(2) {
        return Err(Error::DegenerateField(format!(
            "|d_K| = {} has no meaningful log root discriminant",
            field.disc.abs()
        )));
    }
    Ok(ln_abs(&field.disc) / field.degree as f64)
}

/// A parsed `x^k+c` spec.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PureFieldSpec {
    pub k: u32,
    pub c: u64,
}

impl FromStr for PureFieldSpec {
    type Err = Error;

    fn from_str(spec: &str) -> Result<Self> {
        let bad = |reason: &str| Error::FieldSpec {
            spec: spec.to_string(),
            reason: reason.to_string(),
        };
        let compact: String = spec.chars().filter(|c| !c.is_whitespace()).collect();
        let rest = compact
            .strip_prefix("x^")
            .ok_or_else(|| bad("expected the form x^k+c"))?;
        let (k, c) = rest.split_once('+').ok_or_else(|| bad("missing `+c`"))?;
        let k: u32 = k.parse().map_err(|_| bad("exponent is not a positive integer"))?;
        let c: u64 = c
            .parse()
            .map_err(|_| bad("constant is not a non-negative integer below 2^64"))?;
        if k < 2 {
            return Err(bad("exponent must be at least 2"));
        }
        if c == 0 {
            return Err(bad("constant must be positive"));
        }
        Ok(Self { k, c })
    }
}

/// Field invariants for `Q(β)`, `β` a root of `x^k + c`.
///
/// For `k = 2` the exact field discriminant is produced. For `k ≥ 3` the
/// polynomial discriminant `(−1)^{k(k−1)/2} k^k c^{k−1}` is used and the
/// record is flagged as not checked for maximality.
pub fn parse_field_spec(spec: &str) -> Result<NumberField> {
    let PureFieldSpec { k, c } = spec.parse()?;
    if k == 2 {
        let d = quadratic_disc_of_x2_plus(c)?;
        let mut field = NumberField::new(2, 0, 1, BigInt::from(d))?;
        field.disc_is_field_disc = true;
        return Ok(field);
    }
    let magnitude = BigInt::from(k).pow(k) * BigInt::from(c).pow(k - 1);
    let negative = (k as u64 * (k as u64 - 1) / 2) % 2 == 1;
    let disc = if negative { -magnitude } else { magnitude };
    let (r1, r2) = if k % 2 == 1 { (1, (k - 1) / 2) } else { (0, k / 2) };
    let mut field = NumberField::new(k, r1, r2, disc)?;
    field.disc_is_field_disc = false;
    Ok(field)
}

/// Discriminant of `Q(√−c)`: D = squarefree part of −c, d = D if D ≡ 1 mod 4 else 4D.
pub fn quadratic_disc_of_x2_plus(c: u64) -> Result<i64> {
    let (core, _) = squarefree_decompose(c);
    let core = i64::try_from(core).map_err(|_| Error::FieldSpec {
        spec: format!("x^2+{c}"),
        reason: "squarefree part exceeds the i64 discriminant range".into(),
    })?;
    let big_d = -core;
    if big_d.rem_euclid(4) == 1 {
        Ok(big_d)
    } else {
        big_d.checked_mul(4).ok_or_else(|| Error::FieldSpec {
            spec: format!("x^2+{c}"),
            reason: "discriminant exceeds the i64 range".into(),
        })
    }
}

/// Write `m = s·f²` with `s` squarefree; returns `(s, f)`.
///
/// Trial division runs up to the cube root of `m`; what remains has at most
/// two prime factors and is squarefree unless it is a perfect square.
pub fn squarefree_decompose(m: u64) -> (u64, u64) {
    assert!(m >= 1, "squarefree_decompose needs m >= 1");
    let mut rem = m;
    let mut core = 1u64;
    let mut root = 1u64;
    let mut p = 2u64;
    while p.saturating_mul(p).saturating_mul(p) <= m && p.saturating_mul(p) <= rem {
        if rem % p == 0 {
            let mut e = 0;
            while rem % p == 0 {
                rem /= p;
                e += 1;
            }
            root *= p.pow(e / 2);
            if e % 2 == 1 {
                core *= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rem > 1 {
        let s = isqrt(rem);
        if s * s == rem {
            root *= s;
        } else {
            core *= rem;
        }
    }
    (core, root)
}

pub(crate) fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r.saturating_mul(r) > n {
        r -= 1;
    }
    while (r + 1).saturating_mul(r + 1) <= n {
        r += 1;
    }
    r
}

pub fn is_squarefree(m: u64) -> bool {
    m >= 1 && squarefree_decompose(m).1 == 1
}

/// Discriminant of a quadratic field: squarefree d ≡ 1 mod 4 (d ≠ 1), or
/// d = 4m with m ≡ 2, 3 mod 4 squarefree.
pub fn is_fundamental_discriminant(d: i64) -> bool {
    if d == 0 || d == 1 {
        return false;
    }
    match d.rem_euclid(4) {
        1 => is_squarefree(d.unsigned_abs()),
        0 => {
            let m = d / 4;
            matches!(m.rem_euclid(4), 2 | 3) && is_squarefree(m.unsigned_abs())
        }
        _ => false,
    }
}

/// Jacobi symbol (a/n) for odd n ≥ 1.
pub fn jacobi(a: u64, n: u64) -> i8 {
    debug_assert!(n % 2 == 1);
    let mut a = a % n;
    let mut n = n;
    let mut result = 1i8;
    while a != 0 {
        let tz = a.trailing_zeros();
        a >>= tz;
        if tz % 2 == 1 && matches!(n % 8, 3 | 5) {
            result = -result;
        }
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        std::mem::swap(&mut a, &mut n);
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// Kronecker symbol (d/n) for n ≥ 1.
pub fn kronecker(d: i64, n: u64) -> i8 {
    if n == 0 {
        return if d.unsigned_abs() == 1 { 1 } else { 0 };
    }
    let tz = n.trailing_zeros();
    let mut result = 1i8;
    if tz > 0 {
        if d % 2 == 0 {
            return 0;
        }
        if tz % 2 == 1 && matches!(d.rem_euclid(8), 3 | 5) {
            result = -result;
        }
    }
    let odd = n >> tz;
    let a = (d as i128).rem_euclid(odd as i128) as u64;
    result * jacobi(a, odd)
}

/// The real primitive character `n ↦ (d/n)` of a fundamental discriminant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct KroneckerCharacter {
    d: i64,
}

impl KroneckerCharacter {
    pub fn new(d: i64) -> Result<Self> {
        if !is_fundamental_discriminant(d) {
            return Err(Error::NotFundamental(d));
        }
        Ok(Self { d })
    }

    pub fn discriminant(&self) -> i64 {
        self.d
    }

    pub fn conductor(&self) -> u64 {
        self.d.unsigned_abs()
    }

    /// 0 for even characters (d > 0), 1 for odd ones.
    pub fn parity(&self) -> u8 {
        u8::from(self.d < 0)
    }

    #[inline]
    pub fn value(&self, n: u64) -> i8 {
        kronecker(self.d, n)
    }

    /// χ(−1).
    pub fn sign(&self) -> i8 {
        if self.d > 0 {
            1
        } else {
            -1
        }
    }
}
