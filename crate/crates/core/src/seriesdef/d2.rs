use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{ratio, vec_gcd_normalize};

/// Parameters of a d=2 series for `log p` in both printed forms:
///
/// * `log p = (1/γ) Σ_{n≥1} (αn+β)/(n(2n−1)) ρ^n M(n)`
/// * `log p = (1/c) Σ_{n≥0} (an+b)/((6n+1)(6n+5)) ρ^n M(n)`
///
/// with `M` the `[1, 1/2; 1/6, 5/6]` motive. `z` enters only through `z²`,
/// since `ρ = 4 / (27 z² (1 − z²)²)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct D2Params {
    pub p: i64,
    pub alpha: i64,
    pub beta: i64,
    pub gamma: i64,
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub z_sq: BigRational,
    /// `z` as printed, for display.
    pub z: &'static str,
    pub rho: BigRational,
    /// Beta-integral weights `(A1, A2, A3)`.
    pub weights: [BigRational; 3],
}

impl D2Params {
    /// `4 / (27 z² (1 − z²)²)`.
    pub fn rho_from_z(&self) -> BigRational {
        let one = BigRational::from_integer(1.into());
        let w = &one - &self.z_sq;
        ratio(4, 27) / (&self.z_sq * &w * &w)
    }
}

pub fn table_one() -> Vec<D2Params> {
    let row = |p, (alpha, beta, gamma), (a, b, c), z_sq: BigRational, z, rho, weights: [(i64, i64); 3]| D2Params {
        p,
        alpha,
        beta,
        gamma,
        a,
        b,
        c,
        z_sq,
        z,
        rho,
        weights: weights.map(|(n, d)| ratio(n, d)),
    };
    vec![
        row(2, (1794, -297, 2), (598, 499, 144), ratio(9, 1), "3", ratio(1, 3888), [(25, 72), (-1, 192), (1, 192)]),
        row(3, (88, -14, 1), (176, 148, 27), ratio(4, 1), "2", ratio(1, 243), [(5, 9), (-1, 18), (1, 18)]),
        row(5, (-364, 62, 1), (728, 604, 75), ratio(-4, 1), "2i", ratio(-1, 675), [(4, 5), (1, 25), (-1, 25)]),
        row(7, (312, -16, 81), (468, 444, 49), ratio(16, 9), "4/3", ratio(27, 196), [(15, 14), (-243, 196), (243, 196)]),
        row(10, (-126, 23, 2), (1134, 927, 80), ratio(-5, 3), "i*sqrt(5/3)", ratio(-1, 80), [(9, 8), (81, 320), (-81, 320)]),
    ]
}

pub fn table_one_row(p: i64) -> Option<D2Params> {
    table_one().into_iter().find(|r| r.p == p)
}

fn normalized_positive_last(v: [BigInt; 3]) -> [BigInt; 3] {
    let mut out = vec_gcd_normalize(&v);
    if out[2].is_negative() {
        for x in &mut out {
            *x = -x.clone();
        }
    }
    [out[0].clone(), out[1].clone(), out[2].clone()]
}

/// `(α, β, γ) ↦ (a, b, c)`: `u = den(ρ)·(18ρα, 18ρ(α+β), γ)`, divided by its
/// gcd, with `c > 0`.
pub fn d2_convert(alpha: &BigInt, beta: &BigInt, gamma: &BigInt, rho: &BigRational) -> Result<[BigInt; 3]> {
    if gamma.is_zero() {
        return Err(Error::Domain("γ must be nonzero".into()));
    }
    if rho.is_zero() {
        return Err(Error::Domain("ρ must be nonzero".into()));
    }
    let k = 18 * rho.numer();
    let u = [&k * alpha, &k * (alpha + beta), rho.denom() * gamma];
    Ok(normalized_positive_last(u))
}

/// `(a, b, c) ↦ (α, β, γ)`: `v = sgn(ρ)·den(ρ)·(a, b−a, 18cρ)`, divided by
/// its gcd, with `γ > 0`.
pub fn d2_invert(a: &BigInt, b: &BigInt, c: &BigInt, rho: &BigRational) -> Result<[BigInt; 3]> {
    if c.is_zero() {
        return Err(Error::Domain("c must be nonzero".into()));
    }
    if rho.is_zero() {
        return Err(Error::Domain("ρ must be nonzero".into()));
    }
    let s = rho.denom() * if rho.is_negative() { -1 } else { 1 };
    let v = [&s * a, &s * (b - a), 18 * c * rho.numer() * if rho.is_negative() { -1 } else { 1 }];
    Ok(normalized_positive_last(v))
}
