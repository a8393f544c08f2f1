use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Shorthand for `n/d` as a reduced rational.
pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Exact `x^k` for signed `k`.
pub fn rational_pow(x: &BigRational, k: i64) -> Result<BigRational> {
    if k < 0 && x.is_zero() {
        return Err(Error::Domain("zero raised to a negative power".into()));
    }
    let e = k.unsigned_abs();
    let mut base = if k < 0 { x.recip() } else { x.clone() };
    let mut acc = BigRational::one();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &base;
        }
        e >>= 1;
        if e > 0 {
            base = &base * &base;
        }
    }
    Ok(acc)
}

pub fn int_gcd(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}

/// Least common multiple of the denominators.
pub fn denom_lcm<'a>(xs: impl IntoIterator<Item = &'a BigRational>) -> BigInt {
    xs.into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Divides an integer vector by the gcd of its entries. The zero vector is
/// returned unchanged.
pub fn vec_gcd_normalize(v: &[BigInt]) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

/// Parses `"7"`, `"-5/2"` or `"0.25"` into an exact rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        let neg = ip.starts_with('-');
        let ip_abs = ip.trim_start_matches(['-', '+']);
        if !fp.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let whole: BigInt = if ip_abs.is_empty() { BigInt::zero() } else { ip_abs.parse().ok()? };
        let frac: BigInt = if fp.is_empty() { BigInt::zero() } else { fp.parse().ok()? };
        let scale = BigInt::from(10u32).pow(fp.len() as u32);
        let v = BigRational::new(whole * &scale + frac, scale);
        return Some(if neg { -v } else { v });
    }
    let n: BigInt = s.parse().ok()?;
    Some(BigRational::from_integer(n))
}
