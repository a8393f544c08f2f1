use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::fixed::FixedReal;

/// Dense univariate polynomial with rational coefficients, ascending degree.
///
/// The highest stored coefficient is never zero; the zero polynomial has no
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigRational>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// Integer coefficients, ascending.
    pub fn from_ints(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn from_bigints(cs: &[BigInt]) -> Self {
        Self::new(cs.iter().map(|c| BigRational::from_integer(c.clone())).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self::from_ints(&[0, 1])
    }

    /// `a·x + b`.
    pub fn linear(a: BigRational, b: BigRational) -> Self {
        Self::new(vec![b, a])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_int(&self, n: i64) -> BigRational {
        self.eval(&BigRational::from_integer(n.into()))
    }

    pub fn eval_fixed(&self, x: &FixedReal) -> FixedReal {
        let mut acc = FixedReal::zero(x.bits());
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + &FixedReal::from_rational(c, x.bits());
        }
        acc
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(BigRational::one());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// `self(g(x))`.
    pub fn compose(&self, g: &IntPoly) -> Self {
        let mut acc = IntPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * g) + &IntPoly::constant(c.clone());
        }
        acc
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &IntPoly) -> (IntPoly, IntPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead = d.leading();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigRational::zero(); r.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let top = r.len() - 1;
            let c = &r[top] / &lead;
            let shift = top - dd;
            for (i, dc) in d.coeffs.iter().enumerate() {
                r[shift + i] -= &c * dc;
            }
            q[shift] = c;
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        (IntPoly::new(q), IntPoly::new(r))
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            let l = a.leading().recip();
            a.scale(&l)
        }
    }

    /// Returns `(k, q)` with `self = k·q`, `q` having coprime integer
    /// coefficients and a positive leading coefficient.
    pub fn primitive(&self) -> (BigRational, IntPoly) {
        if self.is_zero() {
            return (BigRational::one(), IntPoly::zero());
        }
        let l = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * BigRational::from_integer(l.clone())).to_integer()).collect();
        let mut g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if ints.last().unwrap().is_negative() {
            g = -g;
        }
        let q = IntPoly::from_bigints(&ints.iter().map(|c| c / &g).collect::<Vec<_>>());
        (BigRational::new(g, l), q)
    }

    /// Integer coefficients if all are integral.
    pub fn to_integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs.iter().map(|c| c.is_integer().then(|| c.to_integer())).collect()
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_poly(f, &self.coeffs, "x")
    }
}

pub(crate) fn fmt_poly(f: &mut fmt::Formatter<'_>, coeffs: &[BigRational], var: &str) -> fmt::Result {
    if coeffs.is_empty() {
        return write!(f, "0");
    }
    let mut first = true;
    for (i, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let a = c.abs();
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { '-' } else { '+' })?;
        }
        first = false;
        let show_coeff = i == 0 || !a.is_one();
        if show_coeff {
            if a.is_integer() || i == 0 {
                write!(f, "{a}")?;
            } else {
                write!(f, "({a})")?;
            }
        }
        match i {
            0 => {}
            1 => write!(f, "{var}")?,
            _ => write!(f, "{var}^{i}")?,
        }
    }
    Ok(())
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, o: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, o: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, o: &IntPoly) -> IntPoly {
        if self.is_zero() || o.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Add for IntPoly {
    type Output = IntPoly;
    fn add(self, o: IntPoly) -> IntPoly {
        &self + &o
    }
}

impl Sub for IntPoly {
    type Output = IntPoly;
    fn sub(self, o: IntPoly) -> IntPoly {
        &self - &o
    }
}

impl Mul for IntPoly {
    type Output = IntPoly;
    fn mul(self, o: IntPoly) -> IntPoly {
        &self * &o
    }
}

/// Quotient of two polynomials in one variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFunc {
    pub num: IntPoly,
    pub den: IntPoly,
}

impl RatFunc {
    pub fn new(num: IntPoly, den: IntPoly) -> Self {
        Self { num, den }
    }

    /// `None` at a pole.
    pub fn eval(&self, x: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(x);
        (!d.is_zero()).then(|| self.num.eval(x) / d)
    }

    /// Cancels the common factor and scales the denominator to a primitive
    /// integer polynomial with positive leading coefficient.
    pub fn reduced(&self) -> RatFunc {
        let g = self.num.gcd(&self.den);
        let (num, den) = if g.degree().unwrap_or(0) > 0 {
            (self.num.div_rem(&g).0, self.den.div_rem(&g).0)
        } else {
            (self.num.clone(), self.den.clone())
        };
        let (k, den) = den.primitive();
        RatFunc { num: num.scale(&k.recip()), den }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::ratio;
    use proptest::prelude::*;

    #[test]
    fn numerators_at_first_term() {
        assert_eq!(IntPoly::from_ints(&[-14, 88]).eval_int(1), ratio(74, 1));
        assert_eq!(IntPoly::from_ints(&[-297, 1794]).eval_int(1), ratio(1497, 1));
        assert_eq!(IntPoly::zero().eval(&ratio(7, 3)), ratio(0, 1));
    }

    #[test]
    fn normalizes_trailing_zeros() {
        let p = IntPoly::from_ints(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(IntPoly::from_ints(&[0, 0]).degree(), None);
    }

    #[test]
    fn division_and_gcd() {
        // (x-1)(x+2) and (x-1)(x-3)
        let a = IntPoly::from_ints(&[-2, 1, 1]);
        let b = IntPoly::from_ints(&[3, -4, 1]);
        assert_eq!(a.gcd(&b), IntPoly::from_ints(&[-1, 1]));
        let (q, r) = a.div_rem(&IntPoly::from_ints(&[-1, 1]));
        assert_eq!(q, IntPoly::from_ints(&[2, 1]));
        assert!(r.is_zero());
    }

    #[test]
    fn primitive_part() {
        let p = IntPoly::new(vec![ratio(-3, 2), ratio(0, 1), ratio(-9, 4)]);
        let (k, q) = p.primitive();
        assert_eq!(q, IntPoly::from_ints(&[2, 0, 3]));
        assert_eq!(k, ratio(-3, 4));
    }

    #[test]
    fn compose_and_display() {
        let p = IntPoly::from_ints(&[0, 0, 1]);
        let g = IntPoly::from_ints(&[1, 0, -1]);
        assert_eq!(p.compose(&g), IntPoly::from_ints(&[1, 0, -2, 0, 1]));
        assert_eq!(IntPoly::from_ints(&[576, 0, -1, 1]).to_string(), "x^3 - x^2 + 576");
    }

    fn small_poly() -> impl Strategy<Value = Vec<i64>> {
        proptest::collection::vec(-1000i64..1000, 0..=9)
    }

    proptest! {
        #[test]
        fn horner_matches_power_sum(cs in small_poly(), n in -50i64..50, d in 1i64..50) {
            let x = ratio(n, d);
            let p = IntPoly::from_ints(&cs);
            let mut direct = BigRational::zero();
            let mut xp = BigRational::one();
            for c in &cs {
                direct += BigRational::from_integer((*c).into()) * &xp;
                xp *= &x;
            }
            prop_assert_eq!(p.eval(&x), direct);
        }

        #[test]
        fn div_rem_reconstructs(a in small_poly(), b in small_poly()) {
            let a = IntPoly::from_ints(&a);
            let b = IntPoly::from_ints(&b);
            prop_assume!(!b.is_zero());
            let (q, r) = a.div_rem(&b);
            prop_assert_eq!(&(&q * &b) + &r, a);
            prop_assert!(r.degree().map_or(true, |dr| dr < b.degree().unwrap()));
        }
    }
}
