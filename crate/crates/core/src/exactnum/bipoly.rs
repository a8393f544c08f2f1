use std::collections::BTreeMap;
use std::ops::{Add, Mul};

use num_rational::BigRational;

use super::gaussian::GaussianRational;

/// Sparse polynomial in two variables `(n, k)` with Gaussian-rational
/// coefficients. Keys are `(deg_n, deg_k)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), GaussianRational>,
}

impl BiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::from_terms([((0, 0), c)])
    }

    pub fn from_terms(it: impl IntoIterator<Item = ((u32, u32), GaussianRational)>) -> Self {
        let mut p = Self::zero();
        for (key, c) in it {
            p.add_term(key, c);
        }
        p
    }

    /// Integer coefficients given as `(deg_n, deg_k, c)`.
    pub fn from_int_terms(ts: &[(u32, u32, i64)]) -> Self {
        Self::from_terms(ts.iter().map(|&(i, j, c)| ((i, j), GaussianRational::from_int(c))))
    }

    /// `a·n + b·k + c`.
    pub fn linear(a: i64, b: i64, c: i64) -> Self {
        Self::from_int_terms(&[(1, 0, a), (0, 1, b), (0, 0, c)])
    }

    fn add_term(&mut self, key: (u32, u32), c: GaussianRational) {
        let e = self.terms.entry(key).or_insert_with(GaussianRational::zero);
        *e = &*e + &c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, k: &GaussianRational) -> Self {
        Self::from_terms(self.terms.iter().map(|(key, c)| (*key, c * k)))
    }

    pub fn eval(&self, n: &BigRational, k: &BigRational) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for (&(i, j), c) in &self.terms {
            let mono = num_traits::pow(n.clone(), i as usize) * num_traits::pow(k.clone(), j as usize);
            acc = &acc + &c.scale(&mono);
        }
        acc
    }

    pub fn eval_int(&self, n: i64, k: i64) -> GaussianRational {
        self.eval(&BigRational::from_integer(n.into()), &BigRational::from_integer(k.into()))
    }

    /// Complex conjugate of every coefficient.
    pub fn conj(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(key, c)| (*key, c.conj())))
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, o: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (key, c) in &o.terms {
            out.add_term(*key, c.clone());
        }
        out
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, o: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(a, b), x) in &self.terms {
            for (&(c, d), y) in &o.terms {
                out.add_term((a + c, b + d), x * y);
            }
        }
        out
    }
}

impl Add for BiPoly {
    type Output = BiPoly;
    fn add(self, o: BiPoly) -> BiPoly {
        &self + &o
    }
}

impl Mul for BiPoly {
    type Output = BiPoly;
    fn mul(self, o: BiPoly) -> BiPoly {
        &self * &o
    }
}

/// `num(n,k) / den(n,k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiRatFunc {
    pub num: BiPoly,
    pub den: BiPoly,
}

impl BiRatFunc {
    pub fn new(num: BiPoly, den: BiPoly) -> Self {
        Self { num, den }
    }

    /// `None` when the denominator vanishes.
    pub fn eval_int(&self, n: i64, k: i64) -> Option<GaussianRational> {
        let d = self.den.eval_int(n, k);
        if d.is_zero() {
            return None;
        }
        let q = &self.num.eval_int(n, k) / &d;
        Some(q)
    }

    pub fn conj(&self) -> Self {
        Self::new(self.num.conj(), self.den.conj())
    }
}
