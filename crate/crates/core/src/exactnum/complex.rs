use std::ops::{Add, Div, Mul, Neg, Sub};

use super::elementary;
use super::fixed::FixedReal;
use super::gaussian::GaussianRational;

/// Complex number with fixed-point parts at a common precision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexFixed {
    pub re: FixedReal,
    pub im: FixedReal,
}

impl ComplexFixed {
    pub fn new(re: FixedReal, im: FixedReal) -> Self {
        let b = re.bits().max(im.bits());
        Self { re: re.with_bits(b), im: im.with_bits(b) }
    }

    pub fn from_real(re: FixedReal) -> Self {
        let b = re.bits();
        Self { re, im: FixedReal::zero(b) }
    }

    pub fn from_gaussian(z: &GaussianRational, bits: u32) -> Self {
        Self::new(FixedReal::from_rational(&z.re, bits), FixedReal::from_rational(&z.im, bits))
    }

    pub fn zero(bits: u32) -> Self {
        Self::from_real(FixedReal::zero(bits))
    }

    pub fn one(bits: u32) -> Self {
        Self::from_real(FixedReal::one(bits))
    }

    pub fn i(bits: u32) -> Self {
        Self::new(FixedReal::zero(bits), FixedReal::one(bits))
    }

    pub fn bits(&self) -> u32 {
        self.re.bits()
    }

    pub fn with_bits(&self, bits: u32) -> Self {
        Self::new(self.re.with_bits(bits), self.im.with_bits(bits))
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -&self.im)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn norm_sqr(&self) -> FixedReal {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn abs(&self) -> FixedReal {
        self.norm_sqr().sqrt().unwrap()
    }

    /// Argument in `(-π, π]`.
    pub fn arg(&self) -> FixedReal {
        elementary::atan2(&self.im, &self.re)
    }

    pub fn scale(&self, k: &FixedReal) -> Self {
        Self::new(&self.re * k, &self.im * k)
    }

    /// Principal square root (branch cut on the negative real axis,
    /// `sqrt(-x) = i·sqrt(x)`).
    pub fn sqrt(&self) -> Self {
        let r = self.abs();
        let a = (&r + &self.re).mul_pow2(-1).sqrt().unwrap_or_else(|| FixedReal::zero(self.bits()));
        let b = (&r - &self.re).mul_pow2(-1).sqrt().unwrap_or_else(|| FixedReal::zero(self.bits()));
        let b = if self.im.is_negative() { -b } else { b };
        Self::new(a, b)
    }

    /// Principal logarithm; `None` at zero.
    pub fn ln(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let bits = self.bits();
        let w = bits + 16;
        let zw = self.with_bits(w);
        let re = elementary::ln(&zw.norm_sqr()).mul_pow2(-1);
        Some(Self::new(re, zw.arg()).with_bits(bits))
    }

    /// Principal `atanh z = (ln(1+z) − ln(1−z))/2`.
    pub fn atanh(&self) -> Option<Self> {
        let one = Self::one(self.bits());
        let a = (&one + self).ln()?;
        let b = (&one - self).ln()?;
        let d = &a - &b;
        Some(Self::new(d.re.mul_pow2(-1), d.im.mul_pow2(-1)))
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

impl Add for &ComplexFixed {
    type Output = ComplexFixed;
    fn add(self, o: &ComplexFixed) -> ComplexFixed {
        ComplexFixed::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl Sub for &ComplexFixed {
    type Output = ComplexFixed;
    fn sub(self, o: &ComplexFixed) -> ComplexFixed {
        ComplexFixed::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl Mul for &ComplexFixed {
    type Output = ComplexFixed;
    fn mul(self, o: &ComplexFixed) -> ComplexFixed {
        ComplexFixed::new(
            &(&self.re * &o.re) - &(&self.im * &o.im),
            &(&self.re * &o.im) + &(&self.im * &o.re),
        )
    }
}

impl Div for &ComplexFixed {
    type Output = ComplexFixed;
    fn div(self, o: &ComplexFixed) -> ComplexFixed {
        let d = o.norm_sqr();
        let n = self * &o.conj();
        ComplexFixed::new(&n.re / &d, &n.im / &d)
    }
}

impl Neg for &ComplexFixed {
    type Output = ComplexFixed;
    fn neg(self) -> ComplexFixed {
        ComplexFixed::new(-&self.re, -&self.im)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for ComplexFixed {
            type Output = ComplexFixed;
            fn $m(self, o: ComplexFixed) -> ComplexFixed {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::ratio;

    fn c(re: f64, im: f64) -> ComplexFixed {
        ComplexFixed::new(FixedReal::from_f64(re, 128), FixedReal::from_f64(im, 128))
    }

    fn close(a: &ComplexFixed, re: f64, im: f64) -> bool {
        let (x, y) = a.to_f64();
        (x - re).abs() < 1e-14 && (y - im).abs() < 1e-14
    }

    #[test]
    fn principal_branches() {
        assert!(close(&c(-4.0, 0.0).sqrt(), 0.0, 2.0));
        assert!(close(&c(-4.0, -0.0).sqrt(), 0.0, 2.0));
        assert!(close(&c(3.0, -4.0).sqrt(), 2.0, -1.0));
        let l = c(-1.0, 0.0).ln().unwrap();
        assert!(close(&l, 0.0, std::f64::consts::PI));
        let l = c(0.0, -2.0).ln().unwrap();
        assert!(close(&l, 2f64.ln(), -std::f64::consts::FRAC_PI_2));
        assert!(c(0.0, 0.0).ln().is_none());
    }

    #[test]
    fn field_ops() {
        let a = c(1.5, -2.0);
        let b = c(0.25, 3.0);
        let q = &(&a * &b) / &b;
        assert!(close(&q, 1.5, -2.0));
        let g = GaussianRational::new(ratio(2, 1), ratio(1, 1));
        let z = ComplexFixed::from_gaussian(&g, 64);
        assert!(close(&(&z * &z.conj()), 5.0, 0.0));
    }

    #[test]
    fn atanh_of_imaginary_is_atan() {
        // atanh(i y) = i atan(y)
        let z = c(0.0, 0.5);
        assert!(close(&z.atanh().unwrap(), 0.0, 0.5f64.atan()));
    }
}
