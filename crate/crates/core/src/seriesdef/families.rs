//! Series for `log p` whose data depend on a rational parameter `p`.

use num_rational::BigRational;
use num_traits::{One, Signed};

use super::catalog::{linear_product, D2_MOTIVE, D6_DEN, D6_NUM, EQ9_DEN, EQ9_NUM};
use super::{Motive, SeriesSpec};
use crate::error::{Error, Result};
use crate::exactnum::{ratio, rational_pow, IntPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Level1,
    Level2,
    D4,
    D6,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Level1 => "level1",
            Family::Level2 => "level2",
            Family::D4 => "d4",
            Family::D6 => "d6",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [Family::Level1, Family::Level2, Family::D4, Family::D6].into_iter().find(|f| f.name() == s)
    }

    pub fn build(self, p: &BigRational) -> Result<SeriesSpec> {
        match self {
            Family::Level1 => level1_series(p),
            Family::Level2 => level2_series(p),
            Family::D4 => d4_family(p),
            Family::D6 => d6_family(p),
        }
    }

    /// `ρ(p)` without the domain check.
    pub fn rho(self, p: &BigRational) -> BigRational {
        let one = BigRational::one();
        let pm = p - &one;
        let pp = p + &one;
        let pw = |x: &BigRational, k: i64| rational_pow(x, k).expect("nonzero base");
        match self {
            Family::Level1 => pw(&pm, 6) / (ratio(108, 1) * p * p * &pp * &pp),
            Family::Level2 => -pw(&pm, 4) / (ratio(16, 1) * p * &pp * &pp),
            Family::D4 => ratio(27, 12500) * pw(&pm, 10) / (p * p * pw(&pp, 6)),
            Family::D6 => ratio(27, 823543) * pw(&pm, 14) / (pw(p, 4) * pw(&pp, 6)),
        }
    }
}

/// Polynomial in `p` from integer coefficients, descending degree.
fn poly_desc(cs: &[i64]) -> IntPoly {
    let mut v = cs.to_vec();
    v.reverse();
    IntPoly::from_ints(&v)
}

/// Descending coefficients of a palindrome given its upper half
/// (`deg + 1 − half.len()` entries are mirrored).
fn palindrome(upper: &[i64], deg: usize) -> Vec<i64> {
    (0..=deg).map(|i| upper[i.min(deg - i)]).collect()
}

/// `Σ_j coeffs[j](p) · n^j`.
fn poly_in_n(coeffs: &[IntPoly], p: &BigRational) -> IntPoly {
    IntPoly::new(coeffs.iter().map(|c| c.eval(p)).collect())
}

fn check_positive_convergent(family: Family, p: &BigRational) -> Result<BigRational> {
    if !p.is_positive() {
        return Err(Error::Domain(format!("{}: p = {p} must be positive", family.name())));
    }
    let rho = family.rho(p);
    if rho.abs() >= BigRational::one() {
        return Err(Error::Domain(format!("{}: |ρ({p})| = {} is not below 1", family.name(), rho.abs())));
    }
    Ok(rho)
}

fn family_label(f: Family, p: &BigRational) -> String {
    format!("{}-p{}", f.name(), p)
}

/// Level-1 family: convergent for `|p − 7| < 4√3`, `p > 0`.
pub fn level1_series(p: &BigRational) -> Result<SeriesSpec> {
    let seven = ratio(7, 1);
    let dist = p - &seven;
    if !p.is_positive() || &dist * &dist >= ratio(48, 1) {
        return Err(Error::Domain(format!("level1: p = {p} is outside |p − 7| < 4√3")));
    }
    let rho = Family::Level1.rho(p);
    let one = BigRational::one();
    let slope = &(&poly_desc(&[1, -14, 1]) * &poly_desc(&[1, 4, 1])).scale(&ratio(2, 1));
    let constant = poly_desc(&[1, -14, -94, -14, 1]);
    let numerator = poly_in_n(&[constant, slope.clone()], p);
    let normalizer = -ratio(1, 12) * (p - &one) / (p * p * (p + &one));
    let (num, den) = D2_MOTIVE;
    SeriesSpec::new(
        family_label(Family::Level1, p),
        Motive::from_pairs(&num, &den, rho)?,
        numerator,
        linear_product(1, &[(6, 1), (6, 5)]),
        normalizer,
        0,
        Some(p.clone()),
    )
}

/// Level-2 family with denominators of signature 4.
pub fn level2_series(p: &BigRational) -> Result<SeriesSpec> {
    let rho = check_positive_convergent(Family::Level2, p)?;
    let one = BigRational::one();
    let numerator = poly_in_n(&[poly_desc(&[1, 10, 1]), poly_desc(&[2, 12, 2])], p);
    let normalizer = (p - &one) / (ratio(2, 1) * p * (p + &one));
    SeriesSpec::new(
        family_label(Family::Level2, p),
        Motive::from_pairs(&[(1, 1), (1, 2)], &[(1, 4), (3, 4)], rho)?,
        numerator,
        linear_product(1, &[(4, 1), (4, 3)]),
        normalizer,
        0,
        Some(p.clone()),
    )
}

/// d=4 family with the `[1, 1/2, 1/6, 5/6; 1/10, 3/10, 7/10, 9/10]` motive.
pub fn d4_family(p: &BigRational) -> Result<SeriesSpec> {
    let rho = check_positive_convergent(Family::D4, p)?;
    let one = BigRational::one();
    let n3 = &poly_desc(&[1, 8, 1]) * &poly_desc(&[27, -702, -1835, -2980, -1835, -702, 27]);
    let n2 = poly_desc(&[81, -1674, -27536, -70486, -104770, -70486, -27536, -1674, 81]);
    let n1 = poly_desc(&[69, -1674, -30752, -83670, -123146, -83670, -30752, -1674, 69]);
    let n0 = poly_desc(&[5, -130, -3184, -9694, -14314, -9694, -3184, -130, 5]);
    let blocks = [n0.scale(&ratio(3, 1)), n1.scale(&ratio(2, 1)), n2.scale(&ratio(4, 1)), n3.scale(&ratio(8, 1))];
    let numerator = poly_in_n(&blocks, p);
    let normalizer = -(p - &one) / (p * p * rational_pow(&(p + &one), 5)?);
    SeriesSpec::new(
        family_label(Family::D4, p),
        Motive::from_pairs(&EQ9_NUM, &EQ9_DEN, rho)?,
        numerator,
        linear_product(20, &[(10, 1), (10, 3), (10, 7), (10, 9)]),
        normalizer,
        0,
        Some(p.clone()),
    )
}

/// Upper halves (coefficients of `p^deg` down to the middle) of the
/// palindromic blocks of the d=6 numerator, with their scale factors.
const D6_N5_INNER: [i64; 6] = [27, -648, 8208, -74682, -264859, -411740];
const D6_BLOCKS: [(i64, [i64; 7]); 5] = [
    (3, [15, -310, 3720, -46330, -887599, -2811664, -4047184]),
    (2, [327, -6708, 78486, -858504, -15564079, -47782020, -68437468]),
    (4, [855, -17340, 195534, -1831956, -33025527, -98963632, -141374300]),
    (8, [1005, -20040, 215166, -1773744, -32182333, -94707848, -135214940]),
    (32, [270, -5265, 53757, -400383, -7320270, -21251920, -30355514]),
];

/// d=6 family with the `[1, 1/2, 1/4, 3/4, 1/6, 5/6; j/14]` motive. The
/// numerator is palindromic in `p`; lower halves are filled by symmetry.
pub fn d6_family(p: &BigRational) -> Result<SeriesSpec> {
    let rho = check_positive_convergent(Family::D6, p)?;
    let one = BigRational::one();
    let numerator = poly_in_n(&d6_blocks(), p);
    let normalizer = -(p - &one) / (rational_pow(p, 4)? * rational_pow(&(p + &one), 5)?);
    let den = D6_DEN.iter().map(|&(j, _)| (14, j)).collect::<Vec<_>>();
    SeriesSpec::new(
        family_label(Family::D6, p),
        Motive::from_pairs(&D6_NUM, &D6_DEN, rho)?,
        numerator,
        linear_product(56, &den),
        normalizer,
        0,
        Some(p.clone()),
    )
}

/// Coefficients of the d=6 `P(n, p)` as polynomials in `p`, ascending in `n`.
fn d6_blocks() -> Vec<IntPoly> {
    let mut blocks: Vec<IntPoly> =
        D6_BLOCKS.iter().map(|(s, upper)| poly_desc(&palindrome(upper, 12)).scale(&ratio(*s, 1))).collect();
    blocks.push((&poly_desc(&[1, 5, 1]) * &poly_desc(&palindrome(&D6_N5_INNER, 10))).scale(&ratio(128, 1)));
    blocks
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn r(n: i64) -> BigRational {
        ratio(n, 1)
    }

    #[test]
    fn level1_at_two() {
        let s = level1_series(&r(2)).unwrap();
        assert_eq!(s.rho(), &ratio(1, 3888));
        // normalizer · P(n,2) = −(1/144)(−598n − 499)
        assert_eq!(s.numerator, IntPoly::from_ints(&[-499, -598]));
        assert_eq!(s.normalizer, ratio(-1, 144));
        assert!(level1_series(&r(14)).is_err());
        assert!(level1_series(&r(0)).is_err());
        assert!(level1_series(&r(13)).is_ok());
    }

    #[test]
    fn level1_table_rates() {
        assert_eq!(level1_series(&r(3)).unwrap().rho(), &ratio(1, 243));
        assert_eq!(level1_series(&r(7)).unwrap().rho(), &ratio(27, 196));
    }

    #[test]
    fn level2_values() {
        let s = level2_series(&r(2)).unwrap();
        assert_eq!(s.rho(), &ratio(-1, 288));
        assert_eq!(s.numerator, IntPoly::from_ints(&[25, 34]));
        let s = level2_series(&r(3)).unwrap();
        assert_eq!(s.rho(), &ratio(-1, 48));
        assert_eq!(s.numerator, IntPoly::from_ints(&[40, 56]));
        assert!(level2_series(&r(21)).is_ok());
        assert!(level2_series(&r(22)).is_err());
        assert!(level2_series(&ratio(1, 22)).is_err());
        let one = level2_series(&r(1)).unwrap();
        assert!(one.partial_sum_naive(5).is_zero());
    }

    #[test]
    fn higher_family_rates() {
        assert_eq!(d4_family(&r(2)).unwrap().rho(), &ratio(1, 1350000));
        assert_eq!(d4_family(&r(3)).unwrap().rho(), &ratio(3, 50000));
        assert_eq!(d6_family(&r(2)).unwrap().rho(), &ratio(1, 355770576));
        assert!(d6_family(&r(1)).unwrap().partial_sum_naive(4).is_zero());
        assert!(d4_family(&r(28)).is_ok());
        assert!(d4_family(&r(29)).is_err());
        // |ρ(p)| = 1 at p ≈ 17.6152 for the d=6 rate
        assert!(d6_family(&r(17)).is_ok());
        assert!(d6_family(&r(18)).is_err());
        assert!(d6_family(&ratio(1, 17)).is_ok());
    }

    #[test]
    fn d6_at_two_matches_shifted_eq18() {
        // The n=0-indexed form of the d=6 log 2 series has
        // P = 81969540480n^5 + ... + 2913463287 over 217728·Π(14n+j),
        // and the family at p=2 must equal −P (the normalizer is −1/(16·243)).
        let p60 = IntPoly::from_ints(&[2913463287, 33273401586, 138594927588, 266389817304, 239897521920, 81969540480]);
        let s = d6_family(&r(2)).unwrap();
        assert_eq!(s.numerator, -&p60);
        let blocks = d6_blocks();
        for b in &blocks {
            let c = b.coeffs();
            for i in 0..c.len() {
                assert_eq!(c[i], c[c.len() - 1 - i]);
            }
        }
    }

    #[test]
    fn palindrome_fill() {
        assert_eq!(palindrome(&[1, 2, 3], 4), vec![1, 2, 3, 2, 1]);
        assert_eq!(palindrome(&[1, 2, 3], 5), vec![1, 2, 3, 3, 2, 1]);
    }
}
