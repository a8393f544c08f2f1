use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::lindep::lindep;
use crate::binsplit::{evaluate_fixed, Compiled};
use crate::error::{Error, Result};
use crate::exactnum::{rational_pow, FixedReal, IntPoly};
use crate::seriesdef::{Motive, SeriesSpec};

/// Bits compared when a candidate is checked against the target
/// (a little over 50 decimal digits).
const VERIFY_BITS: u32 = 176;

/// `Π_l (den_l·(n−1) + num_l)` over the numerator parameters `num_l/den_l`.
pub fn motive_denominator(motive: &Motive) -> IntPoly {
    motive.num_params().iter().fold(IntPoly::from_ints(&[1]), |acc, r| {
        let (a, b) = (r.numer().clone(), r.denom().clone());
        &acc * &IntPoly::from_bigints(&[a - &b, b])
    })
}

/// `Σ_{n=1}^{N} n^i / r(n) · ρ^n M(n)`, summed exactly and rounded to `bits`.
pub fn partial_sum_si(motive: &Motive, denom_poly: &IntPoly, i: u32, count: u64, bits: u32) -> Result<FixedReal> {
    if count == 0 {
        return Err(Error::Domain("partial sums need at least one term".into()));
    }
    let mut mono = vec![BigInt::zero(); i as usize + 1];
    mono[i as usize] = BigInt::one();
    let spec = SeriesSpec::new(
        format!("s{i}"),
        motive.clone(),
        IntPoly::from_bigints(&mono),
        denom_poly.clone(),
        BigRational::one(),
        1,
        None,
    )?;
    let exact = Compiled::new(&spec).partial_sum(count)?;
    Ok(FixedReal::from_rational(&exact, bits))
}

/// Where and how to iterate `ρ = Π p_j^{e_j}`.
#[derive(Clone, Debug)]
pub struct LatticeStrategy {
    /// `(p, e_min, e_max)` triples.
    pub primes: Vec<(u64, i32, i32)>,
    /// Keep only binary-splitting costs below this.
    pub cost_bound: Option<f64>,
    /// Keep only partial-sum lengths below this.
    pub term_bound: Option<u64>,
    /// Keep only `|ρ| < rho_bound`.
    pub rho_bound: BigRational,
    /// Working precision in decimal digits; `None` picks `256·dim` bits.
    pub working_digits: Option<u64>,
}

impl LatticeStrategy {
    /// Primes of the motive parameter denominators with a common exponent box.
    pub fn from_motive(motive: &Motive, emin: i32, emax: i32) -> Self {
        let mut primes: Vec<u64> = Vec::new();
        for r in motive.num_params().iter().chain(motive.den_params()) {
            let mut d = r.denom().to_u64().unwrap_or(1);
            let mut f = 2;
            while d > 1 {
                if d % f == 0 {
                    if !primes.contains(&f) {
                        primes.push(f);
                    }
                    d /= f;
                } else {
                    f += 1;
                }
            }
        }
        primes.sort_unstable();
        LatticeStrategy {
            primes: primes.into_iter().map(|p| (p, emin, emax)).collect(),
            cost_bound: None,
            term_bound: None,
            rho_bound: BigRational::new(1.into(), 3.into()),
            working_digits: None,
        }
    }

    fn validate(&self) -> Result<()> {
        let mut seen = Vec::new();
        for &(p, lo, hi) in &self.primes {
            if p < 2 || lo > hi || seen.contains(&p) {
                return Err(Error::Domain(format!("bad strategy triple ({p}, {lo}, {hi})")));
            }
            seen.push(p);
        }
        if !self.rho_bound.is_positive() || self.rho_bound > BigRational::one() {
            return Err(Error::Domain("ρ bound must lie in (0, 1]".into()));
        }
        Ok(())
    }

    /// Every exponent vector in the box.
    fn points(&self) -> Vec<Vec<i32>> {
        let mut out = vec![vec![]];
        for &(_, lo, hi) in &self.primes {
            out = out
                .into_iter()
                .flat_map(|v| {
                    (lo..=hi).map(move |e| {
                        let mut w = v.clone();
                        w.push(e);
                        w
                    })
                })
                .collect();
        }
        out
    }
}

/// A detected and verified relation `β·ω = Σ α_i s_i`.
#[derive(Clone, Debug)]
pub struct RelationCandidate {
    /// `(−β, α_h, …, α_0)`, scaled so the first entry is negative.
    pub coefficients: Vec<BigInt>,
    pub rho: BigRational,
    pub cost: f64,
    pub terms: u64,
    pub residual: FixedReal,
    pub series: SeriesSpec,
}

#[derive(Clone, Debug, Default)]
pub struct SearchOutcome {
    pub candidates: Vec<RelationCandidate>,
    /// Signed `ρ` values that passed the filters and were tested.
    pub examined: usize,
    /// Lattice hits that failed the post-detection check.
    pub rejected: usize,
    /// Points skipped because the target had too few bits.
    pub skipped: usize,
}

/// Bits of working precision for a lindep of `dim` values.
pub fn working_bits(strategy: &LatticeStrategy, dim: usize) -> u32 {
    match strategy.working_digits {
        Some(d) => (d as f64 / std::f64::consts::LOG10_2).ceil() as u32,
        None => 256 * dim as u32,
    }
}

struct Point {
    rho: BigRational,
    terms: u64,
    log_inv: f64,
}

fn lattice_points(motive: &Motive, strategy: &LatticeStrategy, wd_digits: f64) -> Result<Vec<Point>> {
    let d = motive.degree() as f64;
    let mut out = Vec::new();
    for exps in strategy.points() {
        let mut rho = BigRational::one();
        for (&(p, _, _), &e) in strategy.primes.iter().zip(&exps) {
            rho *= rational_pow(&BigRational::from_integer(BigInt::from(p)), e as i64)?;
        }
        if rho >= strategy.rho_bound || rho >= BigRational::one() {
            continue;
        }
        let log_inv = crate::seriesdef::elementary_log10(rho.denom()) - crate::seriesdef::elementary_log10(rho.numer());
        let log_inv = log_inv * std::f64::consts::LN_10;
        let terms = (2.5 * wd_digits * std::f64::consts::LN_10 / log_inv).ceil() as u64;
        if strategy.cost_bound.is_some_and(|c| 4.0 * d >= c * log_inv) {
            continue;
        }
        if strategy.term_bound.is_some_and(|n| terms >= n) {
            continue;
        }
        for sign in [-1, 1] {
            out.push(Point { rho: &rho * BigInt::from(sign), terms, log_inv });
        }
    }
    Ok(out)
}

fn examine(
    motive: &Motive,
    target: &FixedReal,
    h: u32,
    bits: u32,
    pt: &Point,
) -> Result<Option<(Vec<BigInt>, FixedReal, BigRational)>> {
    let m = Motive::new(motive.num_params().to_vec(), motive.den_params().to_vec(), pt.rho.clone())?;
    let den = motive_denominator(&m);
    let mut values = vec![target.with_bits(bits)];
    for i in (0..=h).rev() {
        values.push(partial_sum_si(&m, &den, i, pt.terms, bits)?);
    }
    let max_coeff_bits = (bits as u64 - 64) / values.len() as u64;
    let Some(rel) = lindep(&values, max_coeff_bits as u32)? else {
        return Ok(None);
    };
    if rel.coefficients[0].is_zero() {
        return Ok(None);
    }
    let mut v = crate::exactnum::vec_gcd_normalize(&rel.coefficients);
    if v[0].is_positive() {
        v.iter_mut().for_each(|c| *c = -c.clone());
    }
    Ok(Some((v, rel.residual, pt.rho.clone())))
}

/// Series `(1/β) Σ_{n≥1} (Σ α_i n^i)/r(n) ρ^n M(n)` for a normalized vector.
pub fn candidate_series(motive: &Motive, coefficients: &[BigInt], rho: &BigRational, label: &str) -> Result<SeriesSpec> {
    let m = Motive::new(motive.num_params().to_vec(), motive.den_params().to_vec(), rho.clone())?;
    let mut alphas: Vec<BigInt> = coefficients[1..].to_vec();
    alphas.reverse();
    let beta = -&coefficients[0];
    SeriesSpec::new(
        label,
        m.clone(),
        IntPoly::from_bigints(&alphas),
        motive_denominator(&m),
        BigRational::new(BigInt::one(), beta),
        1,
        None,
    )
}

/// Iterates the strategy's `ρ` lattice and returns relations between
/// `target` (of weight `target_weight`) and the partial sums, each checked
/// afterwards by evaluating the reconstructed series.
pub fn search(motive: &Motive, target: &FixedReal, target_weight: u32, strategy: &LatticeStrategy) -> Result<SearchOutcome> {
    strategy.validate()?;
    let d = motive.degree() as u32;
    if target_weight > d {
        return Err(Error::Domain(format!("target weight {target_weight} exceeds d = {d}")));
    }
    let h = d - target_weight;
    let dim = h as usize + 2;
    let bits = working_bits(strategy, dim);
    let wd = bits as f64 * std::f64::consts::LOG10_2;
    let points = lattice_points(motive, strategy, wd)?;
    let mut outcome = SearchOutcome { examined: points.len(), ..Default::default() };
    if target.bits() < bits {
        log::warn!("target has {} bits, search needs {bits}; skipping {} points", target.bits(), points.len());
        outcome.skipped = points.len();
        return Ok(outcome);
    }

    #[cfg(feature = "parallel")]
    let hits: Vec<_> = {
        use rayon::prelude::*;
        points.par_iter().map(|pt| examine(motive, target, h, bits, pt).map(|r| (r, pt))).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let hits: Vec<_> = points.iter().map(|pt| examine(motive, target, h, bits, pt).map(|r| (r, pt))).collect();

    let reference = target.with_bits(VERIFY_BITS);
    for hit in hits {
        let (found, pt) = hit?;
        let Some((v, residual, rho)) = found else { continue };
        let series = candidate_series(motive, &v, &rho, &format!("found-rho{rho}"))?;
        let value = evaluate_fixed(&series, VERIFY_BITS)?;
        if !(&value - &reference).below_pow2(VERIFY_BITS as i64 - 8) {
            outcome.rejected += 1;
            continue;
        }
        outcome.candidates.push(RelationCandidate {
            coefficients: v,
            rho,
            cost: 4.0 * d as f64 / pt.log_inv,
            terms: pt.terms,
            residual,
            series,
        });
    }
    outcome.candidates.sort_by(|a, b| a.cost.total_cmp(&b.cost));
    Ok(outcome)
}

fn fmt_params(v: &[BigRational]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

/// Text block in the layout of the search script's result file.
pub fn report_block(args: &str, constant: &str, motive: &Motive, c: &RelationCandidate) -> String {
    let mut s = String::new();
    let vec: Vec<String> = c.coefficients.iter().map(|x| x.to_string()).collect();
    let _ = writeln!(s, "*********************");
    let _ = writeln!(s, " args  = {args}");
    let _ = writeln!(s, " const = [\"{constant}\"]");
    let _ = writeln!(s, " hgm_1 = [{}, {}]", fmt_params(motive.num_params()), fmt_params(motive.den_params()));
    let _ = writeln!(s, " LINEAR DEPENDENCE FOUND");
    let _ = writeln!(s, " [{}]", vec.join(", "));
    let _ = writeln!(s, " rho_1 = {}", c.rho);
    let _ = writeln!(s, " BSC   = {:.8}", c.cost);
    let _ = writeln!(s, "*********************");
    s
}
