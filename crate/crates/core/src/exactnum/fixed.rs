use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A binary fixed-point real: `mantissa · 2^(-bits)`.
///
/// Operations truncate toward zero, so each one is off by at most one unit
/// in the last place. Operands of different precision are aligned to the
/// larger one first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FixedReal {
    mantissa: BigInt,
    bits: u32,
}

/// `x / 2^n` truncated toward zero.
pub(crate) fn shr_trunc(x: &BigInt, n: u32) -> BigInt {
    if n == 0 {
        return x.clone();
    }
    let mag = x.magnitude() >> n as usize;
    BigInt::from_biguint(x.sign(), mag)
}

impl FixedReal {
    pub fn new(mantissa: BigInt, bits: u32) -> Self {
        Self { mantissa, bits }
    }

    pub fn zero(bits: u32) -> Self {
        Self::new(BigInt::zero(), bits)
    }

    pub fn one(bits: u32) -> Self {
        Self::new(BigInt::one() << bits as usize, bits)
    }

    pub fn from_int(n: i64, bits: u32) -> Self {
        Self::new(BigInt::from(n) << bits as usize, bits)
    }

    pub fn from_bigint(n: &BigInt, bits: u32) -> Self {
        Self::new(n << bits as usize, bits)
    }

    /// Nearest value toward zero with `bits` fractional bits; the error is
    /// below `2^-bits`.
    pub fn from_rational(x: &BigRational, bits: u32) -> Self {
        let num = x.numer() << bits as usize;
        Self::new(num / x.denom(), bits)
    }

    /// Exact conversion of a finite `f64`, then truncation to `bits`.
    pub fn from_f64(x: f64, bits: u32) -> Self {
        let r = BigRational::from_float(x).expect("finite f64");
        Self::from_rational(&r, bits)
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.mantissa.clone(), BigInt::one() << self.bits as usize)
    }

    pub fn to_f64(&self) -> f64 {
        let nb = self.mantissa.bits();
        if nb <= 60 {
            return self.mantissa.to_f64().unwrap() * (-(self.bits as f64)).exp2();
        }
        let drop = (nb - 60) as u32;
        let top = shr_trunc(&self.mantissa, drop).to_f64().unwrap();
        top * (drop as f64 - self.bits as f64).exp2()
    }

    /// Re-express at another precision (truncating when bits decrease).
    pub fn with_bits(&self, bits: u32) -> Self {
        match bits.cmp(&self.bits) {
            Ordering::Equal => self.clone(),
            Ordering::Greater => Self::new(&self.mantissa << (bits - self.bits) as usize, bits),
            Ordering::Less => Self::new(shr_trunc(&self.mantissa, self.bits - bits), bits),
        }
    }

    fn aligned(&self, o: &Self) -> (BigInt, BigInt, u32) {
        let b = self.bits.max(o.bits);
        (self.with_bits(b).mantissa, o.with_bits(b).mantissa, b)
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    pub fn abs(&self) -> Self {
        Self::new(self.mantissa.abs(), self.bits)
    }

    pub fn signum(&self) -> i32 {
        match self.mantissa.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn mul_int(&self, k: &BigInt) -> Self {
        Self::new(&self.mantissa * k, self.bits)
    }

    pub fn div_int(&self, k: &BigInt) -> Self {
        Self::new(&self.mantissa / k, self.bits)
    }

    pub fn mul_rational(&self, q: &BigRational) -> Self {
        Self::new(&self.mantissa * q.numer() / q.denom(), self.bits)
    }

    /// Multiplication by `2^k` (k may be negative).
    pub fn mul_pow2(&self, k: i64) -> Self {
        if k >= 0 {
            Self::new(&self.mantissa << k as usize, self.bits)
        } else {
            Self::new(shr_trunc(&self.mantissa, (-k) as u32), self.bits)
        }
    }

    /// Square root, `None` for negative input.
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let m: BigInt = &self.mantissa << self.bits as usize;
        Some(Self::new(m.sqrt(), self.bits))
    }

    /// Integer part toward zero.
    pub fn trunc_int(&self) -> BigInt {
        shr_trunc(&self.mantissa, self.bits)
    }

    /// `|x| < 2^-k`.
    pub fn below_pow2(&self, k: i64) -> bool {
        // |m| / 2^bits < 2^-k  <=>  |m| < 2^(bits-k)
        let e = self.bits as i64 - k;
        if e < 0 {
            return self.mantissa.is_zero();
        }
        self.mantissa.magnitude().bits() <= e as u64
            && self.mantissa.magnitude() < &(num_bigint::BigUint::one() << e as usize)
    }

    /// Decimal rendering truncated to `digits` fractional digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        let scaled = self.mantissa.abs() * BigInt::from(10u32).pow(digits as u32);
        let q = shr_trunc(&scaled, self.bits);
        format_scaled(&q, digits, self.is_negative() && !q.is_zero())
    }
}

/// Renders the integer `q = |x|·10^digits` as `[-]int.frac`.
pub(crate) fn format_scaled(q: &BigInt, digits: usize, negative: bool) -> String {
    let s = q.to_string();
    let s = if s.len() <= digits { format!("{}{}", "0".repeat(digits + 1 - s.len()), s) } else { s };
    let (ip, fp) = s.split_at(s.len() - digits);
    let sign = if negative { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{ip}")
    } else {
        format!("{sign}{ip}.{fp}")
    }
}

impl fmt::Display for FixedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(((self.bits as f64) * 0.30103) as usize);
        write!(f, "{}", self.to_decimal(digits))
    }
}

impl PartialOrd for FixedReal {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        let (a, b, _) = self.aligned(o);
        Some(a.cmp(&b))
    }
}

impl Add for &FixedReal {
    type Output = FixedReal;
    fn add(self, o: &FixedReal) -> FixedReal {
        let (a, b, bits) = self.aligned(o);
        FixedReal::new(a + b, bits)
    }
}

impl Sub for &FixedReal {
    type Output = FixedReal;
    fn sub(self, o: &FixedReal) -> FixedReal {
        let (a, b, bits) = self.aligned(o);
        FixedReal::new(a - b, bits)
    }
}

impl Mul for &FixedReal {
    type Output = FixedReal;
    fn mul(self, o: &FixedReal) -> FixedReal {
        let (a, b, bits) = self.aligned(o);
        FixedReal::new(shr_trunc(&(a * b), bits), bits)
    }
}

impl Div for &FixedReal {
    type Output = FixedReal;
    fn div(self, o: &FixedReal) -> FixedReal {
        let (a, b, bits) = self.aligned(o);
        assert!(!b.is_zero(), "fixed-point division by zero");
        FixedReal::new((a << bits as usize) / b, bits)
    }
}

impl Neg for &FixedReal {
    type Output = FixedReal;
    fn neg(self) -> FixedReal {
        FixedReal::new(-&self.mantissa, self.bits)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for FixedReal {
            type Output = FixedReal;
            fn $m(self, o: FixedReal) -> FixedReal {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for FixedReal {
    type Output = FixedReal;
    fn neg(self) -> FixedReal {
        -&self
    }
}
