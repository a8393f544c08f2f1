//! Alternating d = 2 series from complex arguments `1 + r e^{iφ}` whose norm
//! is an integer `p`.
//!
//! For fixed `p` the pair
//!
//! ```text
//! r² cos φ + 3r cos 2φ + 2 cos 3φ = 0
//! r² + 2r cos φ + 1 − p = 0
//! ```
//!
//! has one solution with `r > 0`, `φ ∈ (0, π)`, and there the rate
//! `ρ = w⁶ / (108 (1+w)² (2+w)²)`, `w = r e^{iφ}`, is real and negative.
//! When `ρ` is rational the series is a rational identity for `log p`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{elementary, ratio, ComplexFixed, FixedReal, IntPoly};
use crate::seriesdef::catalog::{linear_product, D2_MOTIVE};
use crate::seriesdef::{Motive, SeriesSpec};

/// Default working precision for solving and rationality tests.
pub const DEFAULT_BITS: u32 = 256;
/// Rationality test: denominators below `2^64`, error below `2^−128`.
pub const RATIONAL_DEN_BITS: u32 = 64;
/// Largest integer `p` with a convergent alternating series.
pub const SCAN_LIMIT: i64 = 133;

#[derive(Clone, Debug, PartialEq)]
pub struct AlternatingSolution {
    pub p: i64,
    pub r: FixedReal,
    pub phi: FixedReal,
    pub rho: BigRational,
    /// Squarefree `m < 0` with `1 + r e^{iφ} ∈ Q(√m)`, when recognisable.
    pub m: Option<i64>,
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

impl AlternatingSolution {
    /// `log p = (1/c) Σ_{n≥0} (an+b)/((6n+1)(6n+5)) ρⁿ M(n)`.
    pub fn series_spec(&self) -> Result<SeriesSpec> {
        let motive = Motive::from_pairs(&D2_MOTIVE.0, &D2_MOTIVE.1, self.rho.clone())?;
        SeriesSpec::new(
            format!("log{}-alternating", self.p),
            motive,
            IntPoly::from_bigints(&[self.b.clone(), self.a.clone()]),
            linear_product(1, &[(6, 1), (6, 5)]),
            BigRational::new(BigInt::one(), self.c.clone()),
            0,
            Some(ratio(self.p, 1)),
        )
    }
}

struct Trig {
    c1: FixedReal,
    s1: FixedReal,
    c2: FixedReal,
    s2: FixedReal,
    c3: FixedReal,
    s3: FixedReal,
}

fn trig(phi: &FixedReal) -> Trig {
    let bits = phi.bits();
    let (s1, c1) = elementary::sin_cos(phi);
    let k = |n: i64| FixedReal::from_int(n, bits);
    let c1sq = &c1 * &c1;
    let c2 = &(&c1sq * &k(2)) - &k(1);
    let s2 = &(&s1 * &c1) * &k(2);
    let c3 = &(&(&c1sq * &c1) * &k(4)) - &(&c1 * &k(3));
    let s3 = &(&s1 * &k(3)) - &(&(&(&s1 * &s1) * &s1) * &k(4));
    Trig { c1, s1, c2, s2, c3, s3 }
}

/// `(f1, f2)` and the Jacobian `[[∂f1/∂r, ∂f1/∂φ], [∂f2/∂r, ∂f2/∂φ]]`.
fn system(p: &FixedReal, r: &FixedReal, phi: &FixedReal) -> ([FixedReal; 2], [[FixedReal; 2]; 2]) {
    let bits = r.bits();
    let k = |n: i64| FixedReal::from_int(n, bits);
    let t = trig(phi);
    let r2 = r * r;
    let f1 = &(&(&r2 * &t.c1) + &(&(r * &k(3)) * &t.c2)) + &(&t.c3 * &k(2));
    let f2 = &(&(&r2 + &(&(r * &k(2)) * &t.c1)) + &k(1)) - p;
    let d1r = &(&(r * &k(2)) * &t.c1) + &(&t.c2 * &k(3));
    let d1p = -&(&(&(&r2 * &t.s1) + &(&(r * &k(6)) * &t.s2)) + &(&t.s3 * &k(6)));
    let d2r = &(r * &k(2)) + &(&t.c1 * &k(2));
    let d2p = -&(&(r * &k(2)) * &t.s1);
    ([f1, f2], [[d1r, d1p], [d2r, d2p]])
}

fn newton_step(f: &[FixedReal; 2], j: &[[FixedReal; 2]; 2]) -> Option<(FixedReal, FixedReal)> {
    let det = &(&j[0][0] * &j[1][1]) - &(&j[0][1] * &j[1][0]);
    if det.is_zero() {
        return None;
    }
    let dx = &(&(&j[1][1] * &f[0]) - &(&j[0][1] * &f[1])) / &det;
    let dy = &(&(&j[0][0] * &f[1]) - &(&j[1][0] * &f[0])) / &det;
    Some((dx, dy))
}

/// `f1` along the curve `r(φ) = −cos φ + √(cos²φ + p − 1)` of the second
/// equation, in double precision.
fn f1_on_norm_curve(p: f64, phi: f64) -> (f64, f64) {
    let c = phi.cos();
    let r = -c + (c * c + p - 1.0).sqrt();
    (r * r * c + 3.0 * r * (2.0 * phi).cos() + 2.0 * (3.0 * phi).cos(), r)
}

/// Double-precision start: the sign change of `f1` along the norm curve in
/// `(0, π)`, refined by bisection.
fn initial_guess(p: f64) -> Result<(f64, f64)> {
    const STEPS: usize = 4096;
    let mut roots = Vec::new();
    let h = std::f64::consts::PI / STEPS as f64;
    let mut prev = f1_on_norm_curve(p, h * 0.5).0;
    for i in 1..STEPS {
        let x = h * (i as f64 + 0.5);
        let cur = f1_on_norm_curve(p, x).0;
        if prev.signum() != cur.signum() {
            let (mut lo, mut hi) = (x - h, x);
            let flo = prev;
            for _ in 0..80 {
                let mid = 0.5 * (lo + hi);
                let fm = f1_on_norm_curve(p, mid).0;
                if fm.signum() == flo.signum() {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            let phi = 0.5 * (lo + hi);
            roots.push((f1_on_norm_curve(p, phi).1, phi));
        }
        prev = cur;
    }
    match roots.as_slice() {
        [one] => Ok(*one),
        [] => Err(Error::Solver(format!("no solution with φ in (0, π) for p = {p}"))),
        many => Err(Error::Solver(format!("{} solutions for p = {p}", many.len()))),
    }
}

/// The solution `(r, φ)` with `r > 0`, `φ ∈ (0, π)` at `bits` of precision.
pub fn solve_r_phi(p: i64, bits: u32) -> Result<(FixedReal, FixedReal)> {
    if p < 2 {
        return Err(Error::Domain(format!("p = {p} must be at least 2")));
    }
    let (r0, phi0) = initial_guess(p as f64)?;
    let w = bits + 32;
    let pf = FixedReal::from_int(p, w);
    let (mut r, mut phi) = (FixedReal::from_f64(r0, w), FixedReal::from_f64(phi0, w));
    for _ in 0..64 {
        let (f, j) = system(&pf, &r, &phi);
        let (dr, dphi) = newton_step(&f, &j).ok_or_else(|| Error::Solver("singular Jacobian".into()))?;
        r = &r - &dr;
        phi = &phi - &dphi;
        if dr.below_pow2(w as i64 - 4) && dphi.below_pow2(w as i64 - 4) {
            let (f, _) = system(&pf, &r, &phi);
            if f.iter().all(|x| x.below_pow2(bits as i64 / 2)) {
                return Ok((r.with_bits(bits), phi.with_bits(bits)));
            }
        }
    }
    Err(Error::Solver(format!("Newton did not converge for p = {p}")))
}

/// `w⁶ / (108 (1+w)² (2+w)²)` for `w = r e^{iφ}` as a complex value.
pub fn rho_complex(w: &ComplexFixed) -> ComplexFixed {
    let bits = w.bits();
    let c = |n: i64| ComplexFixed::from_real(FixedReal::from_int(n, bits));
    let w2 = w * w;
    let w6 = &(&w2 * &w2) * &w2;
    let a = w + &c(1);
    let b = w + &c(2);
    let den = &(&(&a * &a) * &(&b * &b)) * &c(108);
    &w6 / &den
}

/// `(p−1)⁶ / (108 p² (p+1)²)` at complex `p`.
pub fn rho_from_p(p: &ComplexFixed) -> ComplexFixed {
    let one = ComplexFixed::one(p.bits());
    rho_complex(&(p - &one))
}

fn polar(r: &FixedReal, phi: &FixedReal) -> ComplexFixed {
    let (s, c) = elementary::sin_cos(phi);
    ComplexFixed::new(r * &c, r * &s)
}

/// Real `ρ(r, φ)`; fails if the imaginary part is not negligible.
pub fn rho_from_r_phi(r: &FixedReal, phi: &FixedReal, bits: u32) -> Result<FixedReal> {
    let w = bits + 16;
    let z = rho_complex(&polar(&r.with_bits(w), &phi.with_bits(w)));
    if !z.im.below_pow2(bits as i64 / 2) {
        return Err(Error::Solver("ρ(r, φ) is not real at this point".into()));
    }
    Ok(z.re.with_bits(bits))
}

/// Best rational approximation with denominator below `2^max_den_bits`,
/// accepted only within `2^(−2·max_den_bits)` and within `2^(32−bits)` of
/// `x`, so quadratic irrationals with a large convergent just below the
/// denominator bound are not taken for rationals.
pub fn detect_rational(x: &FixedReal, max_den_bits: u32) -> Option<BigRational> {
    if x.bits() < 3 * max_den_bits {
        return None;
    }
    let exact = x.to_rational();
    let limit = BigInt::one() << max_den_bits as usize;
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut rest = exact.clone();
    let mut best: Option<BigRational> = None;
    loop {
        let a = rest.floor().to_integer();
        let h2 = &a * &h1 + &h0;
        let k2 = &a * &k1 + &k0;
        if k2 >= limit {
            break;
        }
        best = Some(BigRational::new(h2.clone(), k2.clone()));
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = &rest - BigRational::from_integer(a);
        if frac.is_zero() {
            break;
        }
        rest = frac.recip();
    }
    let q = best?;
    let tol_bits = (2 * max_den_bits).max(x.bits().saturating_sub(32));
    let tol = BigRational::new(BigInt::one(), BigInt::one() << tol_bits as usize);
    ((&exact - &q).abs() < tol).then_some(q)
}

/// `−(1/6) Re((p−1)/(p²(p+1)) · P(n, p))` with
/// `P(n,p) = 2(p²−14p+1)(p²+4p+1) n + p⁴−14p³−94p²−14p+1`.
fn level_one_coefficient(p: &ComplexFixed, n: i64) -> FixedReal {
    let bits = p.bits();
    let c = |k: i64| ComplexFixed::from_real(FixedReal::from_int(k, bits));
    let p2 = p * p;
    let p3 = &p2 * p;
    let p4 = &p2 * &p2;
    let f1 = &(&p2 - &(p * &c(14))) + &c(1);
    let f2 = &(&p2 + &(p * &c(4))) + &c(1);
    let lin = &(&f1 * &f2) * &c(2 * n);
    let cst = &(&(&(&p4 - &(&p3 * &c(14))) - &(&p2 * &c(94))) - &(p * &c(14))) + &c(1);
    let big_p = &lin + &cst;
    let pre = &(p - &c(1)) / &(&p2 * &(p + &c(1)));
    let v = &pre * &big_p;
    -&v.re.div_int(&BigInt::from(6))
}

/// Coprime `(a, b, c)` with `c > 0` from the solution, or `None` when the
/// coefficients are not rational.
pub fn abc_from_solution(r: &FixedReal, phi: &FixedReal) -> Option<(BigInt, BigInt, BigInt)> {
    let bits = r.bits().min(phi.bits());
    let w = bits + 16;
    let p = &ComplexFixed::one(w) + &polar(&r.with_bits(w), &phi.with_bits(w));
    let v0 = level_one_coefficient(&p, 0).with_bits(bits);
    let v1 = level_one_coefficient(&p, 1).with_bits(bits);
    let b_over_c = detect_rational(&v0, RATIONAL_DEN_BITS.min(bits / 3))?;
    let a_over_c = detect_rational(&(&v1 - &v0), RATIONAL_DEN_BITS.min(bits / 3))?;
    let c = a_over_c.denom().lcm(b_over_c.denom());
    let a = (&a_over_c * BigRational::from_integer(c.clone())).to_integer();
    let b = (&b_over_c * BigRational::from_integer(c.clone())).to_integer();
    let g = a.gcd(&b).gcd(&c);
    Some((a / &g, b / &g, c / &g))
}

fn squarefree_part(mut n: BigInt) -> BigInt {
    let mut out = BigInt::one();
    let mut f = BigInt::from(2);
    while &f * &f <= n {
        let mut e = 0;
        while (&n % &f).is_zero() {
            n /= &f;
            e += 1;
        }
        if e % 2 == 1 {
            out *= &f;
        }
        f += 1;
    }
    out * n
}

/// `m` with `Im(1 + r e^{iφ})² = s²·|m|` for rational `s`, when `Re` and
/// `Im²` are rational.
fn quadratic_field(r: &FixedReal, phi: &FixedReal) -> Option<i64> {
    let bits = r.bits();
    let w = polar(r, phi);
    detect_rational(&w.re, RATIONAL_DEN_BITS.min(bits / 3))?;
    let im2 = detect_rational(&(&w.im * &w.im), RATIONAL_DEN_BITS.min(bits / 3))?;
    if !im2.is_positive() {
        return None;
    }
    let m = squarefree_part(im2.numer() * im2.denom());
    (-m).to_i64()
}

/// Solves for `p` and keeps the solution when `ρ` and `(a, b, c)` are
/// rational.
pub fn solve_alternating(p: i64, bits: u32) -> Result<Option<AlternatingSolution>> {
    let (r, phi) = solve_r_phi(p, bits)?;
    let rho_f = rho_from_r_phi(&r, &phi, bits)?;
    let Some(rho) = detect_rational(&rho_f, RATIONAL_DEN_BITS.min(bits / 3)) else {
        return Ok(None);
    };
    let Some((a, b, c)) = abc_from_solution(&r, &phi) else {
        return Ok(None);
    };
    let m = quadratic_field(&r, &phi);
    Ok(Some(AlternatingSolution { p, r, phi, rho, m, a, b, c }))
}

/// Solutions with rational `ρ` for every integer `p` in `[p_lo, p_hi]`.
/// Failures for individual `p` are logged and skipped.
pub fn scan_range(p_lo: i64, p_hi: i64, bits: u32) -> Result<Vec<AlternatingSolution>> {
    if p_lo < 2 || p_hi > SCAN_LIMIT || p_lo > p_hi {
        return Err(Error::Domain(format!("scan range [{p_lo}, {p_hi}] must lie in [2, {SCAN_LIMIT}]")));
    }
    let one = |p: i64| match solve_alternating(p, bits) {
        Ok(hit) => hit,
        Err(e) => {
            log::warn!("p = {p}: {e}");
            None
        }
    };
    #[cfg(feature = "parallel")]
    let hits: Vec<_> = {
        use rayon::prelude::*;
        (p_lo..=p_hi).into_par_iter().filter_map(one).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let hits: Vec<_> = (p_lo..=p_hi).filter_map(one).collect();
    Ok(hits)
}

/// The boundary `(r_L, φ_L, p_L)` where `ρ(r, φ) = −1`, i.e. where also
/// `r⁶ = 108 (r² + 2r cos φ + 1)(r² + 4r cos φ + 4)`.
pub fn convergence_limit(bits: u32) -> Result<(FixedReal, FixedReal, FixedReal)> {
    // ρ(p) + 1 changes sign between p = 2 and the limit; bisect on p first
    let rho_at = |p: f64| -> Result<f64> {
        let (r, phi) = initial_guess(p)?;
        let w = num_complex_f64(r, phi);
        Ok(w)
    };
    let (mut lo, mut hi) = (2.0f64, 2.0f64);
    while rho_at(hi)? > -1.0 {
        lo = hi;
        hi *= 2.0;
        if hi > 1e6 {
            return Err(Error::Solver("ρ never reaches −1".into()));
        }
    }
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if rho_at(mid)? > -1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let (r0, phi0) = initial_guess(0.5 * (lo + hi))?;
    // Newton on (f1, f3) with p eliminated
    let w = bits + 32;
    let k = |n: i64| FixedReal::from_int(n, w);
    let (mut r, mut phi) = (FixedReal::from_f64(r0, w), FixedReal::from_f64(phi0, w));
    let eval = |r: &FixedReal, phi: &FixedReal| {
        let t = trig(phi);
        let r2 = r * r;
        let f1 = &(&(&r2 * &t.c1) + &(&(r * &k(3)) * &t.c2)) + &(&t.c3 * &k(2));
        let a = &(&r2 + &(&(r * &k(2)) * &t.c1)) + &k(1);
        let b = &(&r2 + &(&(r * &k(4)) * &t.c1)) + &k(4);
        let r6 = &(&r2 * &r2) * &r2;
        let f3 = &r6 - &(&(&a * &b) * &k(108));
        let d1r = &(&(r * &k(2)) * &t.c1) + &(&t.c2 * &k(3));
        let d1p = -&(&(&(&r2 * &t.s1) + &(&(r * &k(6)) * &t.s2)) + &(&t.s3 * &k(6)));
        let da_r = &(r * &k(2)) + &(&t.c1 * &k(2));
        let db_r = &(r * &k(2)) + &(&t.c1 * &k(4));
        let da_p = -&(&(r * &k(2)) * &t.s1);
        let db_p = -&(&(r * &k(4)) * &t.s1);
        let d3r = &(&(&(&r2 * &r2) * r) * &k(6)) - &(&(&(&da_r * &b) + &(&a * &db_r)) * &k(108));
        let d3p = -&(&(&(&da_p * &b) + &(&a * &db_p)) * &k(108));
        ([f1, f3], [[d1r, d1p], [d3r, d3p]], a)
    };
    for _ in 0..64 {
        let (f, j, _) = eval(&r, &phi);
        let (dr, dphi) = newton_step(&f, &j).ok_or_else(|| Error::Solver("singular Jacobian".into()))?;
        r = &r - &dr;
        phi = &phi - &dphi;
        if dr.below_pow2(w as i64 - 8) && dphi.below_pow2(w as i64 - 8) {
            let (f, _, p) = eval(&r, &phi);
            // f3 is of size r⁶ ≈ 2^21; compare relative to that scale
            if f[0].below_pow2(bits as i64 / 2) && f[1].below_pow2(bits as i64 / 2 - 24) {
                return Ok((r.with_bits(bits), phi.with_bits(bits), p.with_bits(bits)));
            }
        }
    }
    Err(Error::Solver("limit system did not converge".into()))
}

/// `ρ(r, φ)` in double precision (real part).
fn num_complex_f64(r: f64, phi: f64) -> f64 {
    let (wr, wi) = (r * phi.cos(), r * phi.sin());
    let mul = |a: (f64, f64), b: (f64, f64)| (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0);
    let w2 = mul((wr, wi), (wr, wi));
    let w6 = mul(mul(w2, w2), w2);
    let a = (1.0 + wr, wi);
    let b = (2.0 + wr, wi);
    let den = mul(mul(a, a), mul(b, b));
    let d2 = den.0 * den.0 + den.1 * den.1;
    (w6.0 * den.0 + w6.1 * den.1) / d2 / 108.0
}
