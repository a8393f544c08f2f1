//! Series data model: hypergeometric motives, series specifications, the
//! fixed catalog, the parametric families and the d=2 parameter forms.
//!
//! A series is
//!
//! ```text
//! normalizer · Σ_{n ≥ start} p(n)/r(n) · ρ^n · M(n),
//! M(n) = Π_{k=1..n} Π_l (r_l + k − 1) / Π_m (q_m + k − 1)
//! ```
//!
//! with `r_l`, `q_m` the motive parameters.

pub mod catalog;
pub mod d2;
mod families;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{elementary, FixedReal, IntPoly};

pub use catalog::{catalog_entries, catalog_get, catalog_json, fastest_for, CatalogEntry, CATALOG_LABELS};
pub use d2::{d2_convert, d2_invert, table_one, table_one_row, D2Params};
pub use families::{d4_family, d6_family, level1_series, level2_series, Family};

/// Guard digits added by [`estimate_terms`].
pub const TERM_GUARD_DIGITS: u64 = 10;

/// Ratio of Pochhammer products with its convergence rate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Motive {
    num_params: Vec<BigRational>,
    den_params: Vec<BigRational>,
    rho: BigRational,
}

impl Motive {
    pub fn new(num_params: Vec<BigRational>, den_params: Vec<BigRational>, rho: BigRational) -> Result<Self> {
        if num_params.is_empty() || num_params.len() != den_params.len() {
            return Err(Error::InvalidSpec(format!(
                "motive needs d ≥ 1 parameters on each side, got {} and {}",
                num_params.len(),
                den_params.len()
            )));
        }
        let in_range = |x: &BigRational| x.is_positive() && *x <= BigRational::one();
        if let Some(bad) = num_params.iter().chain(&den_params).find(|x| !in_range(x)) {
            return Err(Error::InvalidSpec(format!("motive parameter {bad} outside (0,1]")));
        }
        if let Some(shared) = num_params.iter().find(|x| den_params.contains(x)) {
            return Err(Error::InvalidSpec(format!("parameter {shared} appears on both sides")));
        }
        if rho.abs() > BigRational::one() {
            return Err(Error::Divergent(rho.to_string()));
        }
        Ok(Self { num_params, den_params, rho })
    }

    /// Motive from small integer fractions `(n, d)`.
    pub fn from_pairs(num: &[(i64, i64)], den: &[(i64, i64)], rho: BigRational) -> Result<Self> {
        let f = |v: &[(i64, i64)]| v.iter().map(|&(a, b)| crate::exactnum::ratio(a, b)).collect();
        Self::new(f(num), f(den), rho)
    }

    pub fn degree(&self) -> usize {
        self.num_params.len()
    }

    pub fn num_params(&self) -> &[BigRational] {
        &self.num_params
    }

    pub fn den_params(&self) -> &[BigRational] {
        &self.den_params
    }

    pub fn rho(&self) -> &BigRational {
        &self.rho
    }

    /// `r(k)/q(k) = ρ · Π(k−1+r_l) / Π(k−1+q_m)` for `k ≥ 1`.
    pub fn step(&self, k: u64) -> Result<BigRational> {
        if k == 0 {
            return Err(Error::InvalidSpec("term ratio is defined for k ≥ 1".into()));
        }
        let km1 = BigRational::from_integer(BigInt::from(k - 1));
        let num: BigRational = self.num_params.iter().map(|r| &km1 + r).product();
        let den: BigRational = self.den_params.iter().map(|q| &km1 + q).product();
        if den.is_zero() {
            return Err(Error::InvalidSpec(format!("q({k}) vanishes")));
        }
        Ok(&self.rho * num / den)
    }

    /// `ρ^n M(n)` exactly.
    pub fn factor(&self, n: u64) -> BigRational {
        (1..=n).map(|k| self.step(k).expect("k ≥ 1")).product()
    }
}

/// A complete series definition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesSpec {
    pub label: String,
    pub motive: Motive,
    pub numerator: IntPoly,
    pub denominator: IntPoly,
    pub normalizer: BigRational,
    pub start_index: u32,
    /// The `p` such that the series sums to `log p`, when known.
    pub log_of: Option<BigRational>,
}

impl SeriesSpec {
    pub fn new(
        label: impl Into<String>,
        motive: Motive,
        numerator: IntPoly,
        denominator: IntPoly,
        normalizer: BigRational,
        start_index: u32,
        log_of: Option<BigRational>,
    ) -> Result<Self> {
        let label = label.into();
        if start_index > 1 {
            return Err(Error::InvalidSpec(format!("{label}: start index must be 0 or 1")));
        }
        if denominator.degree() != Some(motive.degree()) {
            return Err(Error::InvalidSpec(format!(
                "{label}: denominator degree {:?} differs from d = {}",
                denominator.degree(),
                motive.degree()
            )));
        }
        if let Some(n) = integer_root_at_or_above(&denominator, start_index as i64) {
            return Err(Error::InvalidSpec(format!("{label}: r(n) vanishes at n = {n}")));
        }
        Ok(Self { label, motive, numerator, denominator, normalizer, start_index, log_of })
    }

    pub fn degree(&self) -> usize {
        self.motive.degree()
    }

    pub fn rho(&self) -> &BigRational {
        self.motive.rho()
    }

    /// Exact value of the `n`-th term including the normalizer.
    pub fn term(&self, n: u64) -> BigRational {
        let nn = BigRational::from_integer(BigInt::from(n));
        &self.normalizer * self.numerator.eval(&nn) / self.denominator.eval(&nn) * self.motive.factor(n)
    }

    /// Exact partial sum of the first `count` terms. Quadratic; intended
    /// for tests and small cases.
    pub fn partial_sum_naive(&self, count: u64) -> BigRational {
        let mut acc = BigRational::zero();
        let mut factor = self.motive.factor(self.start_index as u64);
        for i in 0..count {
            let n = self.start_index as u64 + i;
            if i > 0 {
                factor *= self.motive.step(n).expect("n ≥ 1");
            }
            let nn = BigRational::from_integer(BigInt::from(n));
            acc += self.numerator.eval(&nn) / self.denominator.eval(&nn) * &factor;
        }
        acc * &self.normalizer
    }
}

/// Smallest integer `n ≥ lo` with `poly(n) = 0`, using the Cauchy root bound.
fn integer_root_at_or_above(poly: &IntPoly, lo: i64) -> Option<i64> {
    let lead = poly.leading().abs();
    let bound = poly
        .coeffs()
        .iter()
        .map(|c| c.abs() / &lead)
        .fold(BigRational::zero(), |m, x| if x > m { x } else { m });
    let bound = (bound.ceil().to_integer() + BigInt::one()).to_i64().unwrap_or(i64::MAX);
    (lo..=bound).find(|&n| poly.eval_int(n).is_zero())
}

/// `r(k)/q(k)`, the exact ratio of consecutive motive factors.
pub fn term_ratio(spec: &SeriesSpec, k: u64) -> Result<BigRational> {
    spec.motive.step(k)
}

/// Binary splitting cost `−4d / ln|ρ|` at `bits` of precision (at least 64).
pub fn binary_splitting_cost(spec: &SeriesSpec, bits: u32) -> Result<FixedReal> {
    cost_of(spec.degree(), spec.rho(), bits)
}

pub(crate) fn cost_of(d: usize, rho: &BigRational, bits: u32) -> Result<FixedReal> {
    let bits = bits.max(64);
    let a = rho.abs();
    if a >= BigRational::one() {
        return Err(Error::Divergent(rho.to_string()));
    }
    if a.is_zero() {
        return Ok(FixedReal::zero(bits));
    }
    let l = elementary::ln(&FixedReal::from_rational(&a, bits + 16));
    let four_d = FixedReal::from_int(-4 * d as i64, bits + 16);
    Ok((&four_d / &l).with_bits(bits))
}

/// Number of terms so that `|ρ|^N ≤ 10^−(digits+guard)`.
pub fn estimate_terms(spec: &SeriesSpec, digits: u64) -> Result<u64> {
    if digits == 0 {
        return Err(Error::Domain("at least one digit must be requested".into()));
    }
    terms_for_rho(spec.rho(), digits + TERM_GUARD_DIGITS)
}

/// Smallest `N` with `|ρ|^N ≤ 10^−e`, decided with exact integers.
pub(crate) fn terms_for_rho(rho: &BigRational, e: u64) -> Result<u64> {
    let a = rho.abs();
    if a >= BigRational::one() {
        return Err(Error::Divergent(rho.to_string()));
    }
    if a.is_zero() {
        return Ok(1);
    }
    let (num, den) = (a.numer().clone(), a.denom().clone());
    let ten_e = num_traits::pow(BigInt::from(10), e as usize);
    let ok = |n: u64| num_traits::pow(num.clone(), n as usize) * &ten_e <= num_traits::pow(den.clone(), n as usize);
    let per_term = elementary_log10(&den) - elementary_log10(&num);
    let mut n = ((e as f64) / per_term).ceil().max(1.0) as u64;
    while !ok(n) {
        n += 1;
    }
    while n > 1 && ok(n - 1) {
        n -= 1;
    }
    Ok(n)
}

/// `log10` of a positive big integer in double precision.
pub(crate) fn elementary_log10(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits < 1000 {
        return x.to_f64().unwrap().log10();
    }
    let shift = bits - 900;
    (x >> shift as usize).to_f64().unwrap().log10() + shift as f64 * std::f64::consts::LOG10_2
}
