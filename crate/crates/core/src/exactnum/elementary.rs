//! Elementary functions on [`FixedReal`].
//!
//! Each function works internally with a few dozen guard bits and truncates
//! to the precision of its argument. Results are accurate to a handful of
//! ulps, which callers cover with their own guard bits.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::fixed::{shr_trunc, FixedReal};

const GUARD: u32 = 32;

/// `Σ x^(2j+1)/(2j+1)·s^j` for `x = 1/q`, `s = ±1`, as a mantissa at `bits`.
fn arc_series_inv(q: u64, bits: u32, alternate: bool) -> BigInt {
    let q = BigInt::from(q);
    let q2 = &q * &q;
    let mut power = (BigInt::one() << bits as usize) / &q;
    let mut sum = power.clone();
    let mut j: u64 = 1;
    loop {
        power = &power / &q2;
        if power.is_zero() {
            break;
        }
        let t = &power / BigInt::from(2 * j + 1);
        if alternate && j % 2 == 1 {
            sum -= t;
        } else {
            sum += t;
        }
        j += 1;
    }
    sum
}

/// π at `bits` fractional bits.
pub fn pi(bits: u32) -> FixedReal {
    let w = bits + GUARD;
    let m = arc_series_inv(5, w, true) * 16 - arc_series_inv(239, w, true) * 4;
    FixedReal::new(m, w).with_bits(bits)
}

/// ln 2 at `bits` fractional bits.
pub fn ln2(bits: u32) -> FixedReal {
    let w = bits + GUARD;
    let m = arc_series_inv(26, w, false) * 18 - arc_series_inv(4801, w, false) * 2
        + arc_series_inv(8749, w, false) * 8;
    FixedReal::new(m, w).with_bits(bits)
}

/// Odd series `Σ s^j x^(2j+1)/(2j+1)` for small `|x|`, alternating for atan.
fn odd_series(x: &FixedReal, alternate: bool) -> FixedReal {
    let bits = x.bits();
    let x2 = x * x;
    let mut power = x.clone();
    let mut sum = x.clone();
    let mut j: i64 = 1;
    loop {
        power = &power * &x2;
        if power.is_zero() {
            break;
        }
        let t = power.div_int(&BigInt::from(2 * j + 1));
        sum = if alternate && j % 2 == 1 { &sum - &t } else { &sum + &t };
        j += 1;
    }
    FixedReal::new(sum.mantissa().clone(), bits)
}

/// `atanh(x)` for `|x| < 1`.
pub fn atanh(x: &FixedReal) -> FixedReal {
    let bits = x.bits();
    let w = bits + GUARD;
    let xw = x.with_bits(w);
    if xw.abs() < FixedReal::from_rational(&super::ratio(1, 4), w) {
        return odd_series(&xw, false).with_bits(bits);
    }
    // atanh x = ln((1+x)/(1-x)) / 2
    let one = FixedReal::one(w);
    let q = &(&one + &xw) / &(&one - &xw);
    ln(&q).mul_pow2(-1).with_bits(bits)
}

/// Natural logarithm, `None` unless `x > 0`.
pub fn ln_checked(x: &FixedReal) -> Option<FixedReal> {
    if x.signum() <= 0 {
        return None;
    }
    let bits = x.bits();
    let w = bits + GUARD;
    let xw = x.with_bits(w);
    // x = m · 2^e with m in [1/√2, √2)
    let mut e = xw.mantissa().bits() as i64 - 1 - w as i64;
    let mut m = if e >= 0 {
        FixedReal::new(shr_trunc(xw.mantissa(), e as u32), w)
    } else {
        xw.mul_pow2(-e)
    };
    let sqrt2 = FixedReal::from_int(2, w).sqrt().unwrap();
    if m > sqrt2 {
        m = m.mul_pow2(-1);
        e += 1;
    }
    let one = FixedReal::one(w);
    let t = &(&m - &one) / &(&m + &one);
    let lm = odd_series(&t, false).mul_int(&BigInt::from(2));
    let r = &lm + &ln2(w).mul_int(&BigInt::from(e));
    Some(r.with_bits(bits))
}

/// Natural logarithm; panics unless `x > 0`.
pub fn ln(x: &FixedReal) -> FixedReal {
    ln_checked(x).expect("logarithm of a non-positive number")
}

/// `atan(x)` on the whole real line.
pub fn atan(x: &FixedReal) -> FixedReal {
    let bits = x.bits();
    let w = bits + GUARD;
    let mut xw = x.with_bits(w);
    let one = FixedReal::one(w);
    if xw.abs() > one {
        let half_pi = pi(w).mul_pow2(-1);
        let inner = atan(&(&one / &xw));
        let r = if xw.is_negative() { &(-&half_pi) - &inner } else { &half_pi - &inner };
        return r.with_bits(bits);
    }
    // halve the angle until the series converges quickly
    let mut halvings = 0;
    let eighth = FixedReal::from_rational(&super::ratio(1, 8), w);
    while xw.abs() > eighth {
        let s = (&one + &(&xw * &xw)).sqrt().unwrap();
        xw = &xw / &(&one + &s);
        halvings += 1;
    }
    odd_series(&xw, true).mul_pow2(halvings).with_bits(bits)
}

/// Angle of `(x, y)` in `(-π, π]`; zero at the origin.
pub fn atan2(y: &FixedReal, x: &FixedReal) -> FixedReal {
    let bits = x.bits().max(y.bits());
    let w = bits + GUARD;
    let (yw, xw) = (y.with_bits(w), x.with_bits(w));
    let r = if xw.is_zero() {
        match yw.signum() {
            0 => FixedReal::zero(w),
            s => pi(w).mul_pow2(-1).mul_int(&BigInt::from(s)),
        }
    } else {
        let a = atan(&(&yw / &xw));
        if !xw.is_negative() {
            a
        } else if yw.is_negative() {
            &a - &pi(w)
        } else {
            &a + &pi(w)
        }
    };
    r.with_bits(bits)
}

/// `(sin x, cos x)`.
pub fn sin_cos(x: &FixedReal) -> (FixedReal, FixedReal) {
    let bits = x.bits();
    let halvings: u32 = 16;
    let w = bits + GUARD + 2 * halvings;
    let mut xw = x.with_bits(w);
    let two_pi = pi(w).mul_pow2(1);
    if xw.abs() > two_pi {
        let k = (&xw / &two_pi).trunc_int();
        xw = &xw - &two_pi.mul_int(&k);
    }
    let y = xw.mul_pow2(-(halvings as i64));
    let y2 = &y * &y;
    let mut s = y.clone();
    let mut c = FixedReal::one(w);
    let mut term_s = y.clone();
    let mut term_c = FixedReal::one(w);
    let mut j: i64 = 1;
    loop {
        term_c = (&term_c * &y2).div_int(&BigInt::from(-(2 * j - 1) * (2 * j)));
        term_s = (&term_s * &y2).div_int(&BigInt::from(-(2 * j) * (2 * j + 1)));
        if term_c.is_zero() && term_s.is_zero() {
            break;
        }
        c = &c + &term_c;
        s = &s + &term_s;
        j += 1;
    }
    let one = FixedReal::one(w);
    for _ in 0..halvings {
        let s2 = (&s * &c).mul_pow2(1);
        c = &(&c * &c).mul_pow2(1) - &one;
        s = s2;
    }
    (s.with_bits(bits), c.with_bits(bits))
}

/// Exponential; used for small arguments only (|x| up to a few hundred).
pub fn exp(x: &FixedReal) -> FixedReal {
    let bits = x.bits();
    let l2 = ln2(bits + GUARD);
    let k = (&x.with_bits(bits + GUARD) / &l2).trunc_int();
    let kk: i64 = i64::try_from(&k).expect("exponent in range");
    let w = bits + GUARD + kk.unsigned_abs() as u32;
    let r = &x.with_bits(w) - &ln2(w).mul_int(&k);
    let halvings = 12;
    let y = r.mul_pow2(-halvings);
    let mut sum = FixedReal::one(w);
    let mut term = FixedReal::one(w);
    let mut j = 1i64;
    loop {
        term = (&term * &y).div_int(&BigInt::from(j));
        if term.is_zero() {
            break;
        }
        sum = &sum + &term;
        j += 1;
    }
    for _ in 0..halvings {
        sum = &sum * &sum;
    }
    sum.mul_pow2(kk).with_bits(bits)
}

/// Absolute value in ulps of `a − b` at the precision of `a`.
pub fn ulps_apart(a: &FixedReal, b: &FixedReal) -> BigInt {
    (a - b).with_bits(a.bits()).mantissa().abs()
}
