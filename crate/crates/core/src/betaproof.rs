//! Beta-integral proofs: partial fractions over Beta-function bases, the
//! resulting `u(x)/v(x)` integrands, numeric quadrature of those integrands,
//! and the closed forms `Φ_A … Φ_D`, `Φ_L`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{elementary, ratio, ComplexFixed, FixedReal, IntPoly, RatFunc};
use crate::seriesdef::d2::D2Params;
use crate::seriesdef::Motive;

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `(A1, A2, A3)` of the d = 2 Beta split of `(an+b)/(c(6n+1)(6n+5))`.
pub fn a1a2a3(a: &BigInt, b: &BigInt, c: &BigInt) -> Result<[BigRational; 3]> {
    if c.is_zero() {
        return Err(Error::Domain("c must be nonzero".into()));
    }
    let (a, b, c) = (BigRational::from_integer(a.clone()), BigRational::from_integer(b.clone()), BigRational::from_integer(c.clone()));
    let a1 = -(&a - &b * q(2)) / (&c * q(8));
    let a2 = q(3) * (&a * q(5) - &b * q(6)) / (&c * q(16));
    let a3 = -a2.clone();
    Ok([a1, a2, a3])
}

/// `u_k(n) = (m n + a)_{k−1} / (N n + b)_k`; `None` at a pole.
pub fn beta_basis(
    n: &BigRational,
    k: usize,
    m: i64,
    a: &BigRational,
    big_n: i64,
    b: &BigRational,
) -> Option<BigRational> {
    let top = n * q(m) + a;
    let bot = n * q(big_n) + b;
    let mut num = BigRational::one();
    for j in 0..k.saturating_sub(1) {
        num *= &top + q(j as i64);
    }
    let mut den = BigRational::one();
    for j in 0..k {
        den *= &bot + q(j as i64);
    }
    (!den.is_zero()).then(|| num / den)
}

/// Coefficients `A_1..A_L` with `G(n) = Σ_k A_k u_k(n)`.
///
/// `A_ℓ` is read off at `n_ℓ = −(a+ℓ−1)/m`, where every `u_k` with `k > ℓ`
/// vanishes.
pub fn pfbeta(g: &RatFunc, l: usize, m: i64, a: &BigRational, big_n: i64, b: &BigRational) -> Result<Vec<BigRational>> {
    if l == 0 || m < 1 || big_n < 1 {
        return Err(Error::Domain("pfbeta needs L ≥ 1, m ≥ 1, N ≥ 1".into()));
    }
    let mut coeffs: Vec<BigRational> = Vec::with_capacity(l);
    for ell in 1..=l {
        let n_ell = -(a + q(ell as i64 - 1)) / q(m);
        let g_val = g.eval(&n_ell).ok_or(Error::PoleCollision { k: ell })?;
        let mut rest = g_val;
        for (k, c) in coeffs.iter().enumerate() {
            let u = beta_basis(&n_ell, k + 1, m, a, big_n, b).ok_or(Error::PoleCollision { k: ell })?;
            rest -= c * u;
        }
        let lead = beta_basis(&n_ell, ell, m, a, big_n, b).ok_or(Error::PoleCollision { k: ell })?;
        if lead.is_zero() {
            return Err(Error::PoleCollision { k: ell });
        }
        coeffs.push(rest / lead);
    }
    Ok(coeffs)
}

/// `G(n) − Σ_k A_k u_k(n)` as a reduced rational function in `n`.
pub fn pfbeta_residual(g: &RatFunc, coeffs: &[BigRational], m: i64, a: &BigRational, big_n: i64, b: &BigRational) -> RatFunc {
    let l = coeffs.len();
    let top = IntPoly::linear(q(m), a.clone());
    let bot = |j: usize| IntPoly::linear(q(big_n), b + q(j as i64));
    // common denominator (Nn+b)_L
    let common = (0..l).fold(IntPoly::constant(BigRational::one()), |acc, j| &acc * &bot(j));
    let mut sum = IntPoly::zero();
    for (idx, c) in coeffs.iter().enumerate() {
        let k = idx + 1;
        let mut t = IntPoly::constant(c.clone());
        for j in 0..k - 1 {
            t = &t * &(&top + &IntPoly::constant(q(j as i64)));
        }
        for j in k..l {
            t = &t * &bot(j);
        }
        sum = &sum + &t;
    }
    let num = &(&g.num * &common) - &(&g.den * &sum);
    if num.is_zero() {
        return RatFunc::new(IntPoly::zero(), IntPoly::constant(BigRational::one()));
    }
    RatFunc::new(num, &g.den * &common).reduced()
}

/// `N^N / (m^m ν^ν)` with `0^0 = 1`.
pub fn beta_lambda(m: u32, nu: u32) -> BigRational {
    let p = |x: u32| num_traits::pow(BigInt::from(x), x as usize);
    BigRational::new(p(m + nu), p(m) * p(nu))
}

/// A Beta-basis split of a series' rational part for the motive with
/// parameters `(m, ν)`.
#[derive(Clone, Debug, PartialEq)]
pub struct BetaDecomposition {
    pub m: u32,
    pub nu: u32,
    pub big_n: u32,
    pub lambda: BigRational,
    pub coefficients: Vec<BigRational>,
}

/// Splits `G` with `L = N`, `a = 1`, `b = 1/2` over the basis
/// `(νn+1)_{k−1} / (Nn+½)_k` and checks the residual vanishes.
pub fn decompose(g: &RatFunc, m: u32, nu: u32) -> Result<BetaDecomposition> {
    if nu == 0 {
        return Err(Error::Domain("ν must be positive".into()));
    }
    let big_n = m + nu;
    let (a, b) = (q(1), ratio(1, 2));
    let coefficients = pfbeta(g, big_n as usize, nu as i64, &a, big_n as i64, &b)?;
    let res = pfbeta_residual(g, &coefficients, nu as i64, &a, big_n as i64, &b);
    if !res.num.is_zero() {
        return Err(Error::VerificationFailed { position: 0, detail: format!("nonzero residual {res}") });
    }
    Ok(BetaDecomposition { m, nu, big_n, lambda: beta_lambda(m, nu), coefficients })
}

/// Motive parameters `[r; q]` whose Pochhammer ratio equals
/// `λ^n Γ(νn+1) Γ(mn+½) / Γ(Nn+½)`, with shared entries cancelled.
pub fn motive_from_beta(m: u32, nu: u32) -> (Vec<BigRational>, Vec<BigRational>) {
    let big_n = m + nu;
    let mut num: Vec<BigRational> = (1..=nu).map(|j| ratio(j as i64, nu as i64)).collect();
    num.extend((0..m).map(|j| ratio(2 * j as i64 + 1, 2 * m as i64)));
    let mut den: Vec<BigRational> = (0..big_n).map(|j| ratio(2 * j as i64 + 1, 2 * big_n as i64)).collect();
    let mut i = 0;
    while i < num.len() {
        if let Some(pos) = den.iter().position(|d| *d == num[i]) {
            den.remove(pos);
            num.remove(i);
        } else {
            i += 1;
        }
    }
    num.sort();
    den.sort();
    (num, den)
}

/// `λ^n (νn)! Γ(mn+½)/Γ(Nn+½)`, exact.
pub fn beta_pochhammer(m: u32, nu: u32, n: u64) -> BigRational {
    let big_n = (m + nu) as u64;
    let lam = beta_lambda(m, nu);
    let fact: BigInt = (1..=nu as u64 * n).map(BigInt::from).product();
    let half = ratio(1, 2);
    let den: BigRational = (m as u64 * n..big_n * n).map(|j| BigRational::from_integer(j.into()) + &half).product();
    num_traits::pow(lam, n as usize) * BigRational::from_integer(fact) / den
}

/// `u(x)/v(x)` with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegrandPair {
    pub u: IntPoly,
    pub v: IntPoly,
}

/// `(A_1 + A_2 x + … + A_L x^{L−1}) / (1 − ρλ x^ν (1−x)^m)` with common
/// factors cancelled, `v` primitive with positive leading coefficient
/// (unless `u` needs a further integer scale).
pub fn beta_integrand(coeffs: &[BigRational], rho: &BigRational, lambda: &BigRational, m: u32, nu: u32) -> IntegrandPair {
    let p = IntPoly::new(coeffs.to_vec());
    let one_minus_x = IntPoly::from_ints(&[1, -1]);
    let kernel = &IntPoly::x().pow(nu) * &one_minus_x.pow(m);
    let d = &IntPoly::constant(BigRational::one()) - &kernel.scale(&(rho * lambda));
    let r = RatFunc::new(p, d).reduced();
    let scale = r.num.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let s = BigRational::from_integer(scale);
    IntegrandPair { u: r.num.scale(&s), v: r.den.scale(&s) }
}

/// The d = 2 integrand for a row of the d = 2 parameter table.
pub fn build_integrand(params: &D2Params) -> Result<IntegrandPair> {
    let w = a1a2a3(&params.a.into(), &params.b.into(), &params.c.into())?;
    Ok(beta_integrand(&w, &params.rho, &ratio(27, 4), 1, 2))
}

const QUAD_GUARD: u32 = 32;
const QUAD_MAX_LEVEL: u32 = 14;

/// Tanh-sinh quadrature of `f` over `[0, 1]`. Step halving continues until
/// two levels agree to `2^−bits`.
pub fn tanh_sinh<F>(f: F, bits: u32) -> Result<(FixedReal, u32)>
where
    F: Fn(&FixedReal) -> FixedReal,
{
    let w = bits + QUAD_GUARD;
    let half_pi = elementary::pi(w).mul_pow2(-1);
    let one = FixedReal::one(w);
    // Σ over nodes t = j·h, j ≠ 0 on both sides, weights without the factor h
    let node_sum = |t: &FixedReal| -> Option<FixedReal> {
        let et = elementary::exp(t);
        let inv = &one / &et;
        let sinh = (&et - &inv).mul_pow2(-1);
        let cosh = (&et + &inv).mul_pow2(-1);
        let s = &half_pi * &sinh;
        if s.to_f64() > 0.5 * w as f64 {
            return None;
        }
        let e = elementary::exp(&s);
        let e2 = &e * &e;
        let denom = &e2 + &one;
        let lo = &one / &denom; // node near 0
        let hi = &e2 / &denom; // node near 1
        let ch = (&e + &(&one / &e)).mul_pow2(-1);
        let weight = &(&half_pi * &cosh) / &(&ch * &ch);
        if weight.below_pow2(w as i64) {
            return None;
        }
        // the map x ↦ (1+x)/2 halves the weight
        Some((&weight * &(&f(&lo) + &f(&hi))).mul_pow2(-1))
    };
    let center = &f(&one.mul_pow2(-1)).mul_pow2(-1) * &half_pi;
    let level_sum = |h: &FixedReal, odd_only: bool| -> FixedReal {
        let mut acc = FixedReal::zero(w);
        let mut j: i64 = 1;
        loop {
            if odd_only && j % 2 == 0 {
                j += 1;
                continue;
            }
            let t = h.mul_int(&BigInt::from(j));
            match node_sum(&t) {
                Some(v) => acc = &acc + &v,
                None => break,
            }
            j += 1;
        }
        acc
    };
    let mut level = 2;
    let mut h = one.mul_pow2(-(level as i64));
    let mut raw = &center + &level_sum(&h, false);
    let mut est = &raw * &h;
    loop {
        level += 1;
        h = h.mul_pow2(-1);
        raw = &raw + &level_sum(&h, true);
        let next = &raw * &h;
        if (&next - &est).below_pow2(bits as i64) {
            return Ok((next.with_bits(bits), level));
        }
        if level >= QUAD_MAX_LEVEL {
            return Err(Error::PrecisionExhausted("tanh-sinh quadrature did not converge".into()));
        }
        est = next;
    }
}

fn digits_to_bits(digits: u32) -> u32 {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32
}

/// Count of leading decimal digits (after the point) on which two values agree.
pub fn agreeing_decimals(a: &FixedReal, b: &FixedReal) -> u32 {
    let d = (a - b).abs();
    if d.is_zero() {
        return a.bits() * 3 / 10;
    }
    let l = d.to_rational();
    let lg = crate::seriesdef::elementary_log10(l.numer()) - crate::seriesdef::elementary_log10(l.denom());
    (-lg).floor().max(0.0) as u32
}

#[derive(Clone, Debug)]
pub struct IntegralReport {
    pub value: FixedReal,
    pub expected: FixedReal,
    pub agreeing_digits: u32,
    pub requested_digits: u32,
    pub levels: u32,
}

impl IntegralReport {
    pub fn passed(&self) -> bool {
        self.agreeing_digits >= self.requested_digits
    }
}

/// Evaluates `∫₀¹ u/v dx/√(1−x)` as `∫₀¹ 2u(1−t²)/v(1−t²) dt` and compares it
/// with `log p`.
pub fn integral_check(pair: &IntegrandPair, p: i64, digits: u32) -> Result<IntegralReport> {
    let bits = digits_to_bits(digits + 10);
    let v_end = [pair.v.eval(&q(0)), pair.v.eval(&q(1))];
    if v_end.iter().any(|x| x.is_zero()) {
        return Err(Error::Domain("v vanishes at an endpoint".into()));
    }
    let w = bits + QUAD_GUARD;
    let f = |t: &FixedReal| {
        let t = t.with_bits(w);
        let x = &FixedReal::one(w) - &(&t * &t);
        (&pair.u.eval_fixed(&x) / &pair.v.eval_fixed(&x)).mul_pow2(1)
    };
    let (value, levels) = if pair.u.is_zero() { (FixedReal::zero(bits), 0) } else { tanh_sinh(f, bits)? };
    let expected = if p == 1 { FixedReal::zero(bits) } else { elementary::ln(&FixedReal::from_int(p, bits)) };
    Ok(IntegralReport { agreeing_digits: agreeing_decimals(&value, &expected), value, expected, requested_digits: digits, levels })
}

/// Which logarithm `Φ_L` uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LogBranch {
    /// Principal log of the quotient.
    PrincipalQuotient,
    /// Difference of principal logs of numerator and denominator.
    SplitDifference,
}

/// `Φ_L(z) = i/√(3z²−4) · log((z²−2+i√(3z²−4)) / (z²−2−i√(3z²−4)))`.
pub fn phi_l(z: &ComplexFixed, branch: LogBranch) -> Result<ComplexFixed> {
    let bits = z.bits();
    let z2 = z * z;
    let s = (&z2.scale(&FixedReal::from_int(3, bits)) - &ComplexFixed::from_real(FixedReal::from_int(4, bits))).sqrt();
    if s.abs().below_pow2(bits as i64 / 2) {
        return Err(Error::Domain("3z² − 4 vanishes".into()));
    }
    let i = ComplexFixed::i(bits);
    let two = ComplexFixed::from_real(FixedReal::from_int(2, bits));
    let is = &i * &s;
    let num = &(&z2 - &two) + &is;
    let den = &(&z2 - &two) - &is;
    let lg = match branch {
        LogBranch::PrincipalQuotient => (&num / &den).ln(),
        LogBranch::SplitDifference => num.ln().zip(den.ln()).map(|(a, b)| &a - &b),
    }
    .ok_or(Error::Domain("log of zero".into()))?;
    Ok(&(&i / &s) * &lg)
}

#[derive(Clone, Debug)]
pub struct PhiValues {
    pub a: ComplexFixed,
    pub b: ComplexFixed,
    pub c: ComplexFixed,
    pub d: ComplexFixed,
}

impl PhiValues {
    pub fn as_array(&self) -> [&ComplexFixed; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }
}

/// `Φ_A … Φ_D` from their closed forms in `z`.
pub fn phi_closed_forms(z: &ComplexFixed, bits: u32, branch: LogBranch) -> Result<PhiValues> {
    let w = bits + 32;
    let z = z.with_bits(w);
    let c = |n: i64| ComplexFixed::from_real(FixedReal::from_int(n, w));
    let z2 = &z * &z;
    let one_m_z2 = &c(1) - &z2;
    let one_m_3z2 = &c(1) - &z2.scale(&FixedReal::from_int(3, w));
    let tiny = |x: &ComplexFixed| x.abs().below_pow2(w as i64 / 2);
    if tiny(&z) || tiny(&one_m_z2) || tiny(&one_m_3z2) {
        return Err(Error::Domain("z is at a pole of the closed forms".into()));
    }
    let t = (&c(1) / &z).atanh().ok_or(Error::Domain("atanh(1/z) undefined".into()))?;
    let l = phi_l(&z, branch)?;
    let z4 = &z2 * &z2;
    let half = |x: ComplexFixed| ComplexFixed::new(x.re.mul_pow2(-1), x.im.mul_pow2(-1));
    let three = |n: i64, x: &ComplexFixed| x.scale(&FixedReal::from_int(n, w));

    let a = &(&(&three(6, &z) * &t) + &(&(&three(3, &z2) - &c(2)) * &l)) / &one_m_3z2;
    let pref = &(&three(3, &z) * &one_m_z2) / &three(2, &one_m_3z2);
    let b = &pref * &(&t - &(&half(z.clone()) * &l));
    let poly_c1 = &(&three(9, &z4) - &three(9, &z2)) + &c(1);
    let poly_c2 = &(&three(9, &z4) - &three(15, &z2)) + &c(5);
    let cc = -&(&pref * &(&(&poly_c1 * &t) + &(&half(&z * &poly_c2) * &l)));
    let poly_d1 = &(&(&three(3, &z4) - &three(3, &z2)) + &c(2)) / &z;
    let poly_d2 = half(&z2 * &(&three(3, &z2) - &c(5)));
    let d = &(&(&poly_d1 * &t) + &(&poly_d2 * &l)) / &three(2, &(&one_m_z2 * &one_m_3z2));
    let fin = |x: ComplexFixed| x.with_bits(bits);
    Ok(PhiValues { a: fin(a), b: fin(b), c: fin(cc), d: fin(d) })
}

/// `((6b−a)Φ_B + (5a−6b)Φ_C)/(24c)` for a d=2 row, which equals `log p`.
pub fn closed_form_log(row: &D2Params, bits: u32, branch: LogBranch) -> Result<FixedReal> {
    let z = z_from_rho(&row.rho, bits + 16)?;
    let phi = phi_closed_forms(&z, bits + 16, branch)?;
    let s = &phi.b.re.mul_rational(&ratio(6 * row.b - row.a, 24 * row.c))
        + &phi.c.re.mul_rational(&ratio(5 * row.a - 6 * row.b, 24 * row.c));
    Ok(s.with_bits(bits))
}

/// `Φ_A … Φ_D` summed from their series in `ρ`.
pub fn phi_series(rho: &BigRational, bits: u32) -> Result<[FixedReal; 4]> {
    if rho.abs() >= BigRational::one() {
        return Err(Error::Divergent(rho.to_string()));
    }
    let motive = Motive::from_pairs(&[(1, 1), (1, 2)], &[(1, 6), (5, 6)], rho.clone())?;
    let w = bits + 40;
    let mut term = FixedReal::one(w);
    // n = 0 contributes to B and C only
    let mut sums = [FixedReal::zero(w), term.clone(), term.div_int(&BigInt::from(5)), FixedReal::zero(w)];
    let mut n: u64 = 0;
    loop {
        n += 1;
        term = term.mul_rational(&motive.step(n)?);
        let ni = n as i64;
        let dens = [ni, 6 * ni + 1, 6 * ni + 5, 2 * ni - 1];
        for (s, d) in sums.iter_mut().zip(dens) {
            *s = &*s + &term.div_int(&BigInt::from(d));
        }
        if term.below_pow2(w as i64 - 8) && n > 4 {
            break;
        }
        if n > 10_000_000 {
            return Err(Error::PrecisionExhausted("Φ series too slow".into()));
        }
    }
    Ok(sums.map(|s| s.with_bits(bits)))
}

/// `z` with `ρ = 4 / (27 z²(1−z²)²)`: the root above 1 of
/// `z(z²−1) = (2/3)√(1/(3ρ))` for `ρ > 0`, `i·y` with `y(1+y²) = (2/3)√(−1/(3ρ))`
/// for `ρ < 0`.
pub fn z_from_rho(rho: &BigRational, bits: u32) -> Result<ComplexFixed> {
    if rho.is_zero() {
        return Err(Error::Domain("ρ = 0 has no finite z".into()));
    }
    if rho >= &BigRational::one() {
        return Err(Error::Domain("no admissible real root for ρ ≥ 1".into()));
    }
    let w = bits + 32;
    let c = FixedReal::from_rational(&(ratio(1, 3) / rho.abs()), w)
        .sqrt()
        .expect("positive")
        .mul_rational(&ratio(2, 3));
    let positive = rho.is_positive();
    // f(y) = y³ ∓ y − c
    let sgn = if positive { -1 } else { 1 };
    let cf = c.to_f64();
    let mut y0 = cf.cbrt().max(1.0) + if positive { 0.5 } else { 0.0 };
    for _ in 0..60 {
        let f = y0 * y0 * y0 + sgn as f64 * y0 - cf;
        let fp = 3.0 * y0 * y0 + sgn as f64;
        y0 -= f / fp;
    }
    let mut y = FixedReal::from_f64(y0, w);
    let s = FixedReal::from_int(sgn, w);
    let three = FixedReal::from_int(3, w);
    for _ in 0..(w as f64).log2().ceil() as u32 + 3 {
        let y2 = &y * &y;
        let f = &(&(&y2 * &y) + &(&s * &y)) - &c;
        let fp = &(&three * &y2) + &s;
        y = &y - &(&f / &fp);
    }
    let y = y.with_bits(bits);
    Ok(if positive { ComplexFixed::from_real(y) } else { ComplexFixed::new(FixedReal::zero(bits), y) })
}

/// The rational part `P(n)/R(n)` of the d = 6 `log 2` series with the sum
/// starting at `n = 0`, and its `ρ`.
pub fn d6_log2_rational_part() -> (RatFunc, BigRational) {
    let p = IntPoly::from_ints(&[2913463287, 33273401586, 138594927588, 266389817304, 239897521920, 81969540480]);
    let r = crate::seriesdef::catalog::linear_product(217728, &[(14, 1), (14, 3), (14, 5), (14, 9), (14, 11), (14, 13)]);
    (RatFunc::new(p, r), BigRational::new(1.into(), BigInt::from(355_770_576u64)))
}
