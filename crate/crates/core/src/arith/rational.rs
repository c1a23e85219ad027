//! Exact rationals and the few floating-point conversions the reports need.
//!
//! [`BigRat`] is `num::BigRational`, which keeps values in lowest terms with a
//! positive denominator. Everything in this crate that is a mass, a zeta value
//! or a class number is one of these; `f64` only appears when a `log_q` is
//! reported.

use num::bigint::Sign;
use num::{BigInt, BigUint, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type BigRat = num::BigRational;

/// Parses `"p/q"`, `"p"` or `"-p/q"` into a normalized rational.
pub fn parse_rat(s: &str) -> Result<BigRat> {
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (t, "1"),
    };
    let n: BigInt = num.parse().map_err(|_| Error::Parse(format!("bad rational numerator in {s:?}")))?;
    let d: BigInt = den.parse().map_err(|_| Error::Parse(format!("bad rational denominator in {s:?}")))?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(BigRat::new(n, d))
}

pub fn rat(n: i64, d: i64) -> BigRat {
    BigRat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: impl Into<BigInt>) -> BigRat {
    BigRat::from_integer(n.into())
}

/// `q^k` for any integer `k`, exactly.
pub fn q_pow(q: u64, k: i64) -> BigRat {
    let base = BigInt::from(q);
    let mag = num::pow(base, k.unsigned_abs() as usize);
    if k >= 0 {
        BigRat::from_integer(mag)
    } else {
        BigRat::new(BigInt::one(), mag)
    }
}

/// `q^k` for a rational exponent that must be an integer.
pub fn q_pow_rat(q: u64, k: &BigRat) -> Option<BigRat> {
    if !k.is_integer() {
        return None;
    }
    k.to_integer().to_i64().map(|e| q_pow(q, e))
}

/// Fractional part in `[0, 1)`.
pub fn frac(x: &BigRat) -> BigRat {
    x - x.floor()
}

/// Correctly rounded conversion to binary64 (as provided by `num`).
pub fn to_f64(x: &BigRat) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

fn ln_biguint(n: &BigUint) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        return n.to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    let top = (n >> shift).to_f64().unwrap_or(f64::INFINITY);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Natural logarithm of a positive rational.
///
/// Near 1 the value goes through `ln_1p` so that ratios like `1 - q^-m`
/// keep full relative precision.
pub fn ln_rat(x: &BigRat) -> f64 {
    debug_assert!(x.is_positive());
    let half = rat(1, 2);
    let two = rat(2, 1);
    if *x >= half && *x <= two {
        return to_f64(&(x - BigRat::one())).ln_1p();
    }
    let (_, n) = x.numer().to_bytes_le();
    let n = BigUint::from_bytes_le(&n);
    let d = BigUint::from_bytes_le(&x.denom().to_bytes_le().1);
    ln_biguint(&n) - ln_biguint(&d)
}

pub fn log_q_rat(x: &BigRat, q: u64) -> f64 {
    ln_rat(x) / (q as f64).ln()
}

/// `ln(1 - x)` for an exact `x` in `[0, 1)`, through `ln_1p`.
///
/// Every `log_q(1 - q^-k)` in the asymptotic formulas is evaluated here so
/// that distinct callers produce bit-identical summands.
pub fn ln_one_minus(x: &BigRat) -> f64 {
    (-to_f64(x)).ln_1p()
}

/// Rational enclosure `lo <= sqrt(n) <= hi` with `hi - lo = 2^-bits`,
/// exact (`lo == hi`) when `n` is a perfect square.
pub fn sqrt_enclosure(n: &BigUint, bits: u32) -> (BigRat, BigRat) {
    let r = n.sqrt();
    if &r * &r == *n {
        let v = BigRat::from_integer(BigInt::from(r));
        return (v.clone(), v);
    }
    let scale = BigUint::one() << (2 * bits as usize);
    let s = (n * scale).sqrt();
    let den = BigInt::one() << bits as usize;
    let lo = BigRat::new(BigInt::from_biguint(Sign::Plus, s.clone()), den.clone());
    let hi = BigRat::new(BigInt::from_biguint(Sign::Plus, s + 1u32), den);
    (lo, hi)
}

pub fn is_nonneg_integer(x: &BigRat) -> bool {
    x.is_integer() && !x.is_negative()
}

pub fn bigint_pow(q: u64, k: u32) -> BigInt {
    num::pow(BigInt::from(q), k as usize)
}

/// Smallest prime factor check by trial division; fine for field characteristics.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Decomposes a prime power `q = p^e`, or returns `None`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    while p.saturating_mul(p) <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let mut e = 0;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        e += 1;
    }
    (r == 1).then_some((p, e))
}

/// Möbius function by trial division.
pub fn mobius(n: u64) -> i64 {
    let mut n = n;
    let mut mu = 1i64;
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return 0;
            }
            mu = -mu;
        }
        d += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_normalize() {
        assert_eq!(parse_rat("6/4").unwrap(), rat(3, 2));
        assert_eq!(parse_rat("-2/-4").unwrap(), rat(1, 2));
        assert_eq!(parse_rat("7").unwrap(), rat(7, 1));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
        assert_eq!(rat(8, 3).to_string(), "8/3");
        assert_eq!(rat(3, 1).to_string(), "3");
    }

    #[test]
    fn powers_and_fractional_parts() {
        assert_eq!(q_pow(2, -3), rat(1, 8));
        assert_eq!(q_pow(3, 2), rat(9, 1));
        assert_eq!(frac(&rat(7, 3)), rat(1, 3));
        assert_eq!(frac(&rat(-1, 3)), rat(2, 3));
        assert_eq!(frac(&rat(2, 1)), rat(0, 1));
        assert_eq!(q_pow_rat(2, &rat(1, 2)), None);
        assert_eq!(q_pow_rat(2, &rat(-4, 2)), Some(rat(1, 4)));
    }

    #[test]
    fn sqrt_enclosures() {
        let (lo, hi) = sqrt_enclosure(&BigUint::from(9u32), 40);
        assert_eq!(lo, hi);
        assert_eq!(lo, rat(3, 1));
        let (lo, hi) = sqrt_enclosure(&BigUint::from(2u32), 40);
        assert!(&lo * &lo < rat(2, 1));
        assert!(&hi * &hi > rat(2, 1));
        assert_eq!(&hi - &lo, q_pow(2, -40));
    }

    #[test]
    fn logs() {
        assert!((ln_rat(&rat(3, 4)) - (0.75f64).ln()).abs() < 1e-15);
        assert!((log_q_rat(&rat(1024, 1), 2) - 10.0).abs() < 1e-12);
        let huge = q_pow(3, 2000);
        assert!((log_q_rat(&huge, 3) - 2000.0).abs() < 1e-9);
        assert!((log_q_rat(&q_pow(3, -2000), 3) + 2000.0).abs() < 1e-9);
    }

    #[test]
    fn number_theory_helpers() {
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
        assert_eq!((1..=10).map(mobius).collect::<Vec<_>>(), vec![1, -1, -1, 0, -1, 1, -1, 0, 0, 1]);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert!(is_prime(2) && is_prime(65537) && !is_prime(1) && !is_prime(91));
    }
}
