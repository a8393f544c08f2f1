//! Binary-splitting evaluation of a [`SeriesSpec`].
//!
//! The spec is first compiled to integer polynomials: with `L` the lcm of
//! the motive parameter denominators,
//!
//! ```text
//! a(k) = num(ρ) · Π_l (L(k−1) + L·r_l)
//! b(k) = den(ρ) · Π_m (L(k−1) + L·q_m)
//! ```
//!
//! so that `a(k)/b(k) = ρ·Π(k−1+r_l)/Π(k−1+q_m)`, and `p(n)`, `r(n)` are
//! scaled to integer polynomials `P(n)`, `D(n)`.
//!
//! A node over `[lo, hi)` holds `A = Π a`, `B = Π b`, `D = Π D` and `T`
//! with `Σ_{n∈[lo,hi)} P(n)/D(n) · Π_{k=lo..n} a(k)/b(k) = T/(B·D)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{denom_lcm, FixedReal, IntPoly};
use crate::seriesdef::{estimate_terms, SeriesSpec};

pub const DEFAULT_LEAF_SIZE: u64 = 8;
const GUARD_DIGITS: u64 = 10;
/// Ranges at least this long are split across threads.
#[cfg(feature = "parallel")]
const PARALLEL_THRESHOLD: u64 = 512;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitNode {
    pub p: BigInt,
    pub q: BigInt,
    pub d: BigInt,
    pub t: BigInt,
}

impl SplitNode {
    fn identity() -> Self {
        SplitNode { p: BigInt::one(), q: BigInt::one(), d: BigInt::one(), t: BigInt::zero() }
    }

    /// Node for `[lo, mid)` followed by `[mid, hi)`.
    pub fn merge(&self, right: &SplitNode) -> SplitNode {
        let t = &self.t * &right.q * &right.d + &self.p * &self.d * &right.t;
        SplitNode { p: &self.p * &right.p, q: &self.q * &right.q, d: &self.d * &right.d, t }
    }

    /// `T / (Q·D)`, the exact sum represented by the node.
    pub fn value(&self) -> BigRational {
        BigRational::new(self.t.clone(), &self.q * &self.d)
    }
}

fn int_coeffs(p: &IntPoly) -> Vec<BigInt> {
    p.to_integer_coeffs().expect("integral polynomial")
}

fn eval_int(cs: &[BigInt], n: u64) -> BigInt {
    let x = BigInt::from(n);
    cs.iter().rev().fold(BigInt::zero(), |acc, c| acc * &x + c)
}

/// Integer form of a series, ready for splitting.
#[derive(Clone, Debug)]
pub struct Compiled {
    start: u64,
    a: Vec<BigInt>,
    b: Vec<BigInt>,
    p: Vec<BigInt>,
    d: Vec<BigInt>,
    /// Sum of the spec = `scale · Σ P(n)/D(n) · Π a/b`.
    scale: BigRational,
    leaf_size: u64,
}

impl Compiled {
    pub fn new(spec: &SeriesSpec) -> Self {
        let m = &spec.motive;
        let l = denom_lcm(m.num_params().iter().chain(m.den_params()));
        let lr = BigRational::from_integer(l.clone());
        let side = |params: &[BigRational], c: &BigInt| {
            params.iter().fold(IntPoly::from_bigints(&[c.clone()]), |acc, r| {
                // L(k−1) + L·r
                let shift = (&lr * r).to_integer() - &l;
                &acc * &IntPoly::from_bigints(&[shift, l.clone()])
            })
        };
        let rho = m.rho();
        let a = side(m.num_params(), rho.numer());
        let b = side(m.den_params(), rho.denom());
        let (kp, pp) = scale_to_integers(&spec.numerator);
        let (kd, dd) = scale_to_integers(&spec.denominator);
        Compiled {
            start: spec.start_index as u64,
            a: int_coeffs(&a),
            b: int_coeffs(&b),
            p: int_coeffs(&pp),
            d: int_coeffs(&dd),
            scale: &spec.normalizer * kd / kp,
            leaf_size: DEFAULT_LEAF_SIZE,
        }
    }

    pub fn with_leaf_size(mut self, leaf: u64) -> Self {
        self.leaf_size = leaf.max(1);
        self
    }

    fn leaf(&self, n: u64) -> SplitNode {
        let (a, b) = if n == 0 {
            (BigInt::one(), BigInt::one())
        } else {
            (eval_int(&self.a, n), eval_int(&self.b, n))
        };
        let d = eval_int(&self.d, n);
        let t = eval_int(&self.p, n) * &a;
        SplitNode { p: a, q: b, d, t }
    }

    /// Exact node for terms `lo..hi` (absolute indices).
    pub fn split(&self, lo: u64, hi: u64) -> Result<SplitNode> {
        if lo < self.start || lo >= hi {
            return Err(Error::InvalidSpec(format!("bad split range [{lo}, {hi}) for start {}", self.start)));
        }
        let node = self.split_unchecked(lo, hi);
        if node.q.is_zero() || node.d.is_zero() {
            return Err(Error::InvalidSpec(format!("zero denominator inside [{lo}, {hi})")));
        }
        Ok(node)
    }

    fn split_unchecked(&self, lo: u64, hi: u64) -> SplitNode {
        if hi - lo <= self.leaf_size {
            return (lo..hi).fold(SplitNode::identity(), |acc, n| acc.merge(&self.leaf(n)));
        }
        let mid = lo + (hi - lo) / 2;
        let (l, r) = self.children(lo, mid, hi);
        l.merge(&r)
    }

    #[cfg(feature = "parallel")]
    fn children(&self, lo: u64, mid: u64, hi: u64) -> (SplitNode, SplitNode) {
        if hi - lo >= PARALLEL_THRESHOLD {
            rayon::join(|| self.split_unchecked(lo, mid), || self.split_unchecked(mid, hi))
        } else {
            (self.split_unchecked(lo, mid), self.split_unchecked(mid, hi))
        }
    }

    #[cfg(not(feature = "parallel"))]
    fn children(&self, lo: u64, mid: u64, hi: u64) -> (SplitNode, SplitNode) {
        (self.split_unchecked(lo, mid), self.split_unchecked(mid, hi))
    }

    /// Exact sum of the first `count` terms.
    pub fn partial_sum(&self, count: u64) -> Result<BigRational> {
        if count == 0 {
            return Ok(BigRational::zero());
        }
        let node = self.split(self.start, self.start + count)?;
        Ok(&self.scale * node.value())
    }

    /// `(numerator, denominator)` of the sum of the first `count` terms,
    /// not reduced.
    fn partial_sum_parts(&self, count: u64) -> Result<(BigInt, BigInt)> {
        let node = self.split(self.start, self.start + count)?;
        Ok((self.scale.numer() * node.t, self.scale.denom() * node.q * node.d))
    }
}

/// `(k, k·p)` with `k > 0` the smallest integer making `k·p` integral.
fn scale_to_integers(p: &IntPoly) -> (BigRational, IntPoly) {
    let k = p.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let kr = BigRational::from_integer(k);
    let q = p.scale(&kr);
    (kr, q)
}

/// Exact node for terms `lo..hi` of `spec`.
pub fn split_range(spec: &SeriesSpec, lo: u64, hi: u64) -> Result<SplitNode> {
    Compiled::new(spec).split(lo, hi)
}

/// Exact sum of the first `count` terms by binary splitting.
pub fn partial_sum(spec: &SeriesSpec, count: u64) -> Result<BigRational> {
    Compiled::new(spec).partial_sum(count)
}

/// Decimal expansion of a series limit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DigitsResult {
    /// `[-]int.frac` with exactly `requested_digits` fractional digits.
    pub decimal_digits: String,
    pub p: Option<BigRational>,
    pub series_label: String,
    pub requested_digits: u64,
    pub terms: u64,
    pub verified_against: Option<String>,
}

impl DigitsResult {
    pub fn fraction_digits(&self) -> &str {
        self.decimal_digits.split_once('.').map_or("", |(_, f)| f)
    }

    pub fn integer_part(&self) -> &str {
        self.decimal_digits.split_once('.').map_or(&self.decimal_digits, |(i, _)| i)
    }

    /// File layout: a header, the integer part with its point, then the
    /// fraction in rows of 100 digits grouped by 10.
    pub fn to_file_format(&self) -> String {
        let p = self.p.as_ref().map_or("?".to_string(), |p| p.to_string());
        let mut out = format!("# log({p}) digits={} series={}\n", self.requested_digits, self.series_label);
        out.push_str(self.integer_part());
        out.push_str(".\n");
        let frac = self.fraction_digits().as_bytes();
        for row in frac.chunks(100) {
            let blocks: Vec<&str> = row.chunks(10).map(|b| std::str::from_utf8(b).unwrap()).collect();
            out.push_str(&blocks.join(" "));
            out.push('\n');
        }
        out
    }
}

#[derive(Clone, Copy, Debug)]
pub struct EvalOptions {
    pub leaf_size: u64,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions { leaf_size: DEFAULT_LEAF_SIZE }
    }
}

/// `log10 |term(n)|` in double precision, or `None` if the term is zero.
fn log10_term(spec: &SeriesSpec, n: u64, log10_factor: f64) -> Option<f64> {
    let nn = BigRational::from_integer(BigInt::from(n));
    let v = &spec.normalizer * spec.numerator.eval(&nn) / spec.denominator.eval(&nn);
    if v.is_zero() {
        return None;
    }
    Some(log10_rational(&v.abs()) + log10_factor)
}

fn log10_rational(x: &BigRational) -> f64 {
    crate::seriesdef::elementary_log10(x.numer()) - crate::seriesdef::elementary_log10(x.denom())
}

/// Picks a term count whose neglected tail is below `10^−(digits+guard/2)`,
/// starting from the `|ρ|^N` estimate.
pub fn checked_term_count(spec: &SeriesSpec, digits: u64) -> Result<u64> {
    let mut count = estimate_terms(spec, digits)?;
    let target = -((digits + GUARD_DIGITS / 2) as f64);
    let start = spec.start_index as u64;
    let rho_log = log10_rational(&spec.rho().abs());
    // running log10 of |ρ^n M(n)|
    let mut lf = 0.0;
    let mut k = 1;
    for _ in 0..8 {
        let first_omitted = start + count;
        while k <= first_omitted + 1 {
            let step = spec.motive.step(k)?;
            if step.is_zero() {
                return Ok(count);
            }
            lf += log10_rational(&step.abs());
            k += 1;
        }
        let lf_m1 = lf - log10_rational(&spec.motive.step(first_omitted + 1)?.abs());
        let (Some(t0), Some(t1)) = (log10_term(spec, first_omitted, lf_m1), log10_term(spec, first_omitted + 1, lf))
        else {
            return Ok(count);
        };
        let q = 10f64.powf(t1 - t0).max(10f64.powf(rho_log));
        if q < 1.0 && t0 - (1.0 - q).log10() < target {
            return Ok(count);
        }
        count += count / 8 + 1;
    }
    Err(Error::PrecisionExhausted(format!(
        "{}: tail stays above 10^{target} after {count} terms",
        spec.label
    )))
}

/// Evaluates the series limit to `digits` decimal places.
pub fn evaluate(spec: &SeriesSpec, digits: u64) -> Result<DigitsResult> {
    evaluate_with(spec, digits, EvalOptions::default())
}

pub fn evaluate_with(spec: &SeriesSpec, digits: u64, opts: EvalOptions) -> Result<DigitsResult> {
    let count = checked_term_count(spec, digits)?;
    let compiled = Compiled::new(spec).with_leaf_size(opts.leaf_size);
    let (num, den) = compiled.partial_sum_parts(count)?;
    let negative = num.is_negative() != den.is_negative() && !num.is_zero();
    let scaled = num.abs() * num_traits::pow(BigInt::from(10), (digits + GUARD_DIGITS) as usize) / den.abs();
    let q = scaled / num_traits::pow(BigInt::from(10), GUARD_DIGITS as usize);
    let text = crate::exactnum::format_scaled(&q, digits as usize, negative);
    Ok(DigitsResult {
        decimal_digits: text,
        p: spec.log_of.clone(),
        series_label: spec.label.clone(),
        requested_digits: digits,
        terms: count,
        verified_against: None,
    })
}

/// Series limit as a fixed-point value at `bits` (the last few bits are
/// unreliable).
pub fn evaluate_fixed(spec: &SeriesSpec, bits: u32) -> Result<FixedReal> {
    let digits = (bits as f64 * std::f64::consts::LOG10_2).ceil() as u64 + 1;
    let count = checked_term_count(spec, digits)?;
    let (num, den) = Compiled::new(spec).partial_sum_parts(count)?;
    Ok(FixedReal::from_rational(&BigRational::new(num, den), bits))
}

/// Number of leading fractional digits on which two expansions agree.
pub fn agreeing_digits(a: &DigitsResult, b: &DigitsResult) -> usize {
    if a.integer_part() != b.integer_part() {
        return 0;
    }
    a.fraction_digits().bytes().zip(b.fraction_digits().bytes()).take_while(|(x, y)| x == y).count()
}

/// Evaluates two series for the same constant and checks they agree on
/// `digits` places.
pub fn cross_verify(a: &SeriesSpec, b: &SeriesSpec, digits: u64) -> Result<usize> {
    if a.log_of != b.log_of {
        return Err(Error::Domain(format!("{} and {} target different constants", a.label, b.label)));
    }
    let ra = evaluate(a, digits)?;
    let rb = evaluate(b, digits)?;
    let n = agreeing_digits(&ra, &rb);
    if (n as u64) < digits {
        return Err(Error::VerificationFailed {
            position: n + 1,
            detail: format!("{} vs {}", a.label, b.label),
        });
    }
    Ok(n)
}

/// Evaluates and records the label of a second series that agrees on every
/// requested digit.
pub fn evaluate_verified(spec: &SeriesSpec, other: &SeriesSpec, digits: u64) -> Result<DigitsResult> {
    cross_verify(spec, other, digits)?;
    let mut r = evaluate(spec, digits)?;
    r.verified_against = Some(other.label.clone());
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::ratio;
    use crate::seriesdef::{catalog_get, CATALOG_LABELS};
    use num_traits::ToPrimitive;
    use proptest::prelude::*;

    const LN2: &str = "0.69314718055994530941723212145817656807550013436025";
    const LN3: &str = "1.09861228866810969139524523692252570464749055782274";
    const LN5: &str = "1.60943791243410037460075933322618763952560135426851";

    #[test]
    fn single_term_of_eq8a() {
        let s = catalog_get("log3-eq8a").unwrap();
        let node = split_range(&s, 1, 2).unwrap();
        // 74 · (1/243) · (1·½)/(⅙·⅚) / (1·1)
        let expect = ratio(74, 1) * ratio(1, 243) * ratio(18, 5);
        let c = Compiled::new(&s);
        assert_eq!(&c.scale * node.value(), expect);
        assert_eq!(expect.to_f64().unwrap().to_string()[..7], *"1.09629");
    }

    #[test]
    fn merge_matches_direct() {
        let s = catalog_get("log2-eq9").unwrap();
        let c = Compiled::new(&s);
        let l = c.split(3, 4).unwrap();
        let r = c.split(4, 5).unwrap();
        assert_eq!(l.merge(&r).value(), c.split(3, 5).unwrap().value());
    }

    #[test]
    fn eq8_hundred_terms_match_naive_sum() {
        let s = catalog_get("log2-eq8").unwrap();
        assert_eq!(partial_sum(&s, 99).unwrap(), s.partial_sum_naive(99));
    }

    #[test]
    fn fifty_digits() {
        let d = |l: &str| evaluate(&catalog_get(l).unwrap(), 50).unwrap().decimal_digits;
        assert_eq!(d("log2-eq8"), LN2);
        assert_eq!(d("log3-eq8a"), LN3);
        assert_eq!(d("log5-eq8b"), LN5);
    }

    #[test]
    fn leaf_size_does_not_change_digits() {
        let s = catalog_get("log2-eq18").unwrap();
        let a = evaluate_with(&s, 300, EvalOptions { leaf_size: 1 }).unwrap();
        let b = evaluate_with(&s, 300, EvalOptions { leaf_size: 32 }).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn cross_verification() {
        let a = catalog_get("log2-eq8").unwrap();
        let b = catalog_get("log2-eq9").unwrap();
        assert!(cross_verify(&a, &b, 200).unwrap() >= 200);
        assert_eq!(cross_verify(&a, &a, 100).unwrap(), 100);
        let c = catalog_get("log3-eq8a").unwrap();
        assert!(cross_verify(&a, &c, 10).is_err());
    }

    #[test]
    fn file_layout() {
        let r = evaluate(&catalog_get("log2-eq8").unwrap(), 120).unwrap();
        let f = r.to_file_format();
        let lines: Vec<&str> = f.lines().collect();
        assert_eq!(lines[0], "# log(2) digits=120 series=log2-eq8");
        assert_eq!(lines[1], "0.");
        assert!(lines[2].starts_with("6931471805 5994530941 "));
        assert_eq!(lines[2].len(), 109);
        assert_eq!(lines[3].len(), 21);
    }

    #[test]
    fn rejects_bad_requests() {
        let s = catalog_get("log2-eq8").unwrap();
        assert!(evaluate(&s, 0).is_err());
        assert!(split_range(&s, 0, 3).is_err());
        assert!(split_range(&s, 3, 3).is_err());
    }

    #[test]
    fn fixed_value() {
        let v = evaluate_fixed(&catalog_get("log2-eq11").unwrap(), 160).unwrap();
        assert_eq!(v.to_decimal(45), LN2[..47]);
    }

    fn merge_node(lo: u64, len: u64, c: &Compiled) -> SplitNode {
        c.split(lo, lo + len).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn merge_is_associative(idx in 0usize..8, lo in 1u64..40, a in 1u64..6, b in 1u64..6, c in 1u64..6) {
            let s = catalog_get(CATALOG_LABELS[idx]).unwrap();
            let cc = Compiled::new(&s);
            let n1 = merge_node(lo, a, &cc);
            let n2 = merge_node(lo + a, b, &cc);
            let n3 = merge_node(lo + a + b, c, &cc);
            prop_assert_eq!(n1.merge(&n2).merge(&n3), n1.merge(&n2.merge(&n3)));
        }

        #[test]
        fn split_sum_equals_naive(idx in 0usize..10, n in 1u64..120) {
            let s = catalog_get(CATALOG_LABELS[idx]).unwrap();
            prop_assert_eq!(partial_sum(&s, n).unwrap(), s.partial_sum_naive(n));
        }
    }
}
