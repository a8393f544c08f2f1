//! Reference logarithms built from integer arithmetic only: arctanh series
//! of reciprocals and rationals, and Machin-type combinations of them.
//! Nothing here calls into the crate under test.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

const GUARD: u32 = 12;

fn pow10(k: u32) -> BigInt {
    num_traits::pow(BigInt::from(10), k as usize)
}

/// `atanh(num/den)·10^scale`, truncated, for `0 ≤ num < den`.
fn atanh_scaled(num: &BigInt, den: &BigInt, scale: u32) -> BigInt {
    let one = pow10(scale);
    let x2_num = num * num;
    let x2_den = den * den;
    let mut power = &one * num / den;
    let mut sum = BigInt::zero();
    let mut k = 1u64;
    while !power.is_zero() {
        sum += &power / BigInt::from(k);
        power = &power * &x2_num / &x2_den;
        k += 2;
    }
    sum
}

/// Machin-type weights on `atanh(1/251), atanh(1/449), atanh(1/4801), atanh(1/8749)`.
pub fn machin_weights(p: u32) -> Option<[i64; 4]> {
    match p {
        2 => Some([144, 54, -38, 62]),
        3 => Some([228, 86, -60, 98]),
        5 => Some([334, 126, -88, 144]),
        _ => None,
    }
}

/// `ln p · 10^digits` truncated, for `p ∈ {2, 3, 5}`, from the four-term
/// arctanh formulas.
pub fn machin_log_scaled(p: u32, digits: u32) -> BigInt {
    let w = machin_weights(p).expect("p in {2, 3, 5}");
    let scale = digits + GUARD;
    let mut acc = BigInt::zero();
    for (wi, k) in w.iter().zip([251u32, 449, 4801, 8749]) {
        acc += BigInt::from(*wi) * atanh_scaled(&BigInt::one(), &BigInt::from(k), scale);
    }
    acc / pow10(GUARD)
}

/// `ln x · 10^digits` truncated toward zero, for rational `x > 0`, from
/// `ln x = 2 atanh((x−1)/(x+1))`, halving by `ln 2` until the argument is
/// below 2.
pub fn log_rational_scaled(x: &BigRational, digits: u32) -> BigInt {
    assert!(x.is_positive());
    let scale = digits + GUARD;
    let two = BigRational::from_integer(2.into());
    let half = BigRational::new(1.into(), 2.into());
    let mut y = x.clone();
    let mut shift = 0i64;
    while y > two {
        y /= &two;
        shift += 1;
    }
    while y < half {
        y *= &two;
        shift -= 1;
    }
    let (n, d) = ((y.numer() - y.denom()), (y.numer() + y.denom()));
    let core = if n.is_negative() {
        -atanh_scaled(&-n, &d, scale)
    } else {
        atanh_scaled(&n, &d, scale)
    };
    let ln2 = atanh_scaled(&BigInt::one(), &BigInt::from(3), scale);
    let total: BigInt = (core + ln2 * BigInt::from(shift)) * 2;
    let (q, _) = total.div_rem(&pow10(GUARD));
    q
}

/// Fractional digits of `|v|/10^digits` as text (the value is assumed in (0, 10)).
pub fn fraction_text(scaled: &BigInt, digits: u32) -> String {
    let s = scaled.abs().to_string();
    let s = format!("{}{}", "0".repeat((digits as usize + 1).saturating_sub(s.len())), s);
    s[s.len() - digits as usize..].to_string()
}

/// Length of the common prefix of two digit strings.
pub fn common_prefix(a: &str, b: &str) -> usize {
    a.bytes().zip(b.bytes()).take_while(|(x, y)| x == y).count()
}

pub fn int(p: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(p))
}
