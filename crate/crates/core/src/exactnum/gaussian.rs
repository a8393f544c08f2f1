use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// An element `re + im·i` of Q(i).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn from_rational(re: BigRational) -> Self {
        Self { re, im: BigRational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn i() -> Self {
        Self { re: BigRational::zero(), im: BigRational::one() }
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -&self.im }
    }

    /// `re² + im²`.
    pub fn norm(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::Domain("inverse of zero Gaussian rational".into()));
        }
        Ok(Self { re: &self.re / &n, im: -&self.im / &n })
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self { re: &self.re * k, im: &self.im * k }
    }

    pub fn powi(&self, k: i64) -> Result<Self> {
        let mut base = if k < 0 { self.inv()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }
}

impl From<BigRational> for GaussianRational {
    fn from(r: BigRational) -> Self {
        Self::from_rational(r)
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}*i", self.im)
        } else if self.im < BigRational::zero() {
            write!(f, "{} - {}*i", self.re, -&self.im)
        } else {
            write!(f, "{} + {}*i", self.re, self.im)
        }
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl Div for &GaussianRational {
    type Output = GaussianRational;
    /// Panics on division by zero, like the rational division it wraps.
    fn div(self, o: &GaussianRational) -> GaussianRational {
        self * &o.inv().expect("division by zero")
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -&self.re, im: -&self.im }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, o: GaussianRational) -> GaussianRational {
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
    use proptest::prelude::*;

    fn g(a: i64, b: i64, c: i64, d: i64) -> GaussianRational {
        GaussianRational::new(ratio(a, b), ratio(c, d))
    }

    #[test]
    fn basic_field_ops() {
        let p = g(2, 1, 1, 1);
        assert_eq!(p.norm(), ratio(5, 1));
        assert_eq!(&p * &p.conj(), GaussianRational::from_int(5));
        assert_eq!(&p * &p.inv().unwrap(), GaussianRational::one());
        assert_eq!(&GaussianRational::i() * &GaussianRational::i(), GaussianRational::from_int(-1));
        assert_eq!(p.powi(-2).unwrap(), (&p * &p).inv().unwrap());
        assert!(GaussianRational::zero().inv().is_err());
    }

    fn arb() -> impl Strategy<Value = GaussianRational> {
        (-200i64..200, 1i64..50, -200i64..200, 1i64..50).prop_map(|(a, b, c, d)| g(a, b, c, d))
    }

    proptest! {
        #[test]
        fn norm_is_multiplicative(x in arb(), y in arb()) {
            prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
        }

        #[test]
        fn conj_is_involution(x in arb(), y in arb()) {
            prop_assert_eq!(x.conj().conj(), x.clone());
            prop_assert_eq!((&x * &y).conj(), &x.conj() * &y.conj());
            prop_assert!(x.norm() >= BigRational::zero());
        }
    }
}
