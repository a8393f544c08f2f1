//! WZ pairs for `log p`: the two base companions, the `(s,t)` shift, exact
//! certificate checks and the series `Σ_n G_{s,t}(n, 0)`.
//!
//! ```text
//! F1(n,k) = (−1)^n (p−1)^{2n+2k+1} / ((4p)^n (p+1)^{2k+1}) · B(k+½, n+1)
//! F2(n,k) = (−1)^k (p−1)^{2n+2k+1} / ((4p)^{k+1} (p+1)^{2n−1}) · B(k+1, n+½)
//! ```
//!
//! with `B(k+½, n+1) = n!/Π_{j=0..n}(k+½+j)` and
//! `B(k+1, n+½) = k!/Π_{j=0..k}(n+½+j)`. A certificate `R` defines
//! `G_{s,t} = R·F_{s,t}` and must satisfy
//! `F_{s,t}(n+1,k) − F_{s,t}(n,k) = G_{s,t}(n,k+1) − G_{s,t}(n,k)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactnum::{ratio, BiPoly, BiRatFunc, ComplexFixed, FixedReal, GaussianRational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    One,
    Two,
}

impl Variant {
    pub fn from_index(i: u8) -> Option<Self> {
        match i {
            1 => Some(Variant::One),
            2 => Some(Variant::Two),
            _ => None,
        }
    }

    pub fn index(self) -> u8 {
        match self {
            Variant::One => 1,
            Variant::Two => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WzContext {
    pub variant: Variant,
    pub p: GaussianRational,
    pub s: u32,
    pub t: u32,
}

impl WzContext {
    pub fn new(variant: Variant, p: GaussianRational, s: u32, t: u32) -> Result<Self> {
        if s == 0 {
            return Err(Error::Domain("s must be positive".into()));
        }
        if p.is_zero() || (&p + &GaussianRational::one()).is_zero() {
            return Err(Error::Domain(format!("p = {p} makes the companion singular")));
        }
        Ok(Self { variant, p, s, t })
    }

    pub fn rational(variant: Variant, p: i64, s: u32, t: u32) -> Result<Self> {
        Self::new(variant, GaussianRational::from_int(p), s, t)
    }

    /// Whether the source series of the variant converges at `p`:
    /// `|(p−1)/(p+1)| < 1` for variant 1, `|(p−1)²/(4p)| < 1` for variant 2.
    pub fn source_converges(&self) -> bool {
        let one = GaussianRational::one();
        let pm = &self.p - &one;
        match self.variant {
            Variant::One => pm.norm() < (&self.p + &one).norm(),
            Variant::Two => {
                let num = (&pm * &pm).norm();
                let den = self.p.scale(&ratio(4, 1)).norm();
                num < den
            }
        }
    }
}

/// `Π_{j=0..m} (x + ½ + j)`.
fn half_product(x: u64, m: u64) -> BigRational {
    let base = BigRational::from_integer(BigInt::from(x)) + ratio(1, 2);
    (0..=m).map(|j| &base + BigRational::from_integer(BigInt::from(j))).product()
}

fn factorial(n: u64) -> BigRational {
    BigRational::from_integer((1..=n).map(BigInt::from).product())
}

fn gpow(z: &GaussianRational, k: i64) -> GaussianRational {
    z.powi(k).expect("nonzero base")
}

/// Exact `F^(v)(n, k)`.
pub fn base_f(ctx: &WzContext, n: u64, k: u64) -> GaussianRational {
    let one = GaussianRational::one();
    let pm = &ctx.p - &one;
    let pp = &ctx.p + &one;
    let four_p = ctx.p.scale(&ratio(4, 1));
    let (ni, ki) = (n as i64, k as i64);
    let common = gpow(&pm, 2 * ni + 2 * ki + 1);
    match ctx.variant {
        Variant::One => {
            let sign = if n % 2 == 0 { 1 } else { -1 };
            let beta = factorial(n) / half_product(k, n);
            let den = &gpow(&four_p, ni) * &gpow(&pp, 2 * ki + 1);
            (&common / &den).scale(&(beta * BigRational::from_integer(sign.into())))
        }
        Variant::Two => {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            let beta = factorial(k) / half_product(n, k);
            let den = &gpow(&four_p, ki + 1) * &gpow(&pp, 2 * ni - 1);
            (&common / &den).scale(&(beta * BigRational::from_integer(sign.into())))
        }
    }
}

/// `F_{s,t}(n, k) = F(s·n, k + t·n)`.
pub fn f_st(ctx: &WzContext, n: u64, k: u64) -> GaussianRational {
    base_f(ctx, ctx.s as u64 * n, k + ctx.t as u64 * n)
}

/// A WZ certificate with the context it belongs to.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub name: String,
    pub ctx: WzContext,
    pub ratio: BiRatFunc,
    /// `p` for which the series `Σ G(n,0)` gives `log p` (or whose doubled
    /// real part gives `log |p|²` for Gaussian `p`).
    pub describes: String,
}

impl Certificate {
    /// `G_{s,t}(n,k) = R(n,k)·F_{s,t}(n,k)`, `None` at a pole of `R`.
    pub fn g(&self, n: u64, k: u64) -> Option<GaussianRational> {
        let r = self.ratio.eval_int(n as i64, k as i64)?;
        Some(&r * &f_st(&self.ctx, n, k))
    }
}

fn quadratic(k2: i64, kn: i64, k1: i64, n2: i64, n1: i64, c: i64) -> BiPoly {
    BiPoly::from_int_terms(&[(0, 2, k2), (1, 1, kn), (0, 1, k1), (2, 0, n2), (1, 0, n1), (0, 0, c)])
}

/// `scale·(6n+2k+3)(6n+2k+5)`.
fn cert_denominator(scale: i64) -> BiPoly {
    &(&BiPoly::constant(GaussianRational::from_int(scale)) * &BiPoly::linear(6, 2, 3)) * &BiPoly::linear(6, 2, 5)
}

/// The printed certificates: two per constant, and for `p = 2 ± i` one per
/// sign.
pub fn certificates() -> Vec<Certificate> {
    let mk = |name: &str, variant, p: GaussianRational, s, t, num: BiPoly, den: BiPoly, describes: &str| Certificate {
        name: name.to_string(),
        ctx: WzContext::new(variant, p, s, t).expect("valid context"),
        ratio: BiRatFunc::new(num, den),
        describes: describes.to_string(),
    };
    let two = GaussianRational::from_int(2);
    let three = GaussianRational::from_int(3);
    let mut out = vec![
        mk("log2-v1", Variant::One, two.clone(), 2, 1, quadratic(144, 828, 558, 1196, 1596, 499), cert_denominator(32), "log 2"),
        mk("log2-v2", Variant::Two, two, 1, 2, quadratic(128, 782, 519, 1196, 1596, 499), cert_denominator(36), "log 2"),
        mk("log3-v1", Variant::One, three.clone(), 2, 1, quadratic(48, 256, 176, 352, 472, 148), cert_denominator(9), "log 3"),
        mk("log3-v2", Variant::Two, three, 1, 2, quadratic(9, 56, 37, 88, 118, 37), cert_denominator(3), "log 3"),
    ];
    for (sign, tag) in [(1i64, "+"), (-1i64, "-")] {
        let p = GaussianRational::new(ratio(2, 1), ratio(sign, 1));
        let plus_i = GaussianRational::new(BigRational::zero(), ratio(sign, 1));
        let minus_i = GaussianRational::new(BigRational::zero(), ratio(-sign, 1));
        let im1 = &BiPoly::constant(plus_i) * &(&BiPoly::linear(26, 10, 23) * &BiPoly::linear(2, 2, 1));
        let num1 = &im1 + &quadratic(110, 646, 433, 936, 1246, 389);
        out.push(mk(
            &format!("log5-v1{tag}"),
            Variant::One,
            p.clone(),
            2,
            1,
            num1,
            cert_denominator(25),
            "log 5 = 2 Re",
        ));
        let im2 = &BiPoly::constant(minus_i.scale(&ratio(2, 1)))
            * &(&BiPoly::linear(26, 8, 21) * &BiPoly::linear(2, 1, 1));
        let num2 = &im2 + &quadratic(88, 542, 359, 832, 1108, 346);
        out.push(mk(
            &format!("log5-v2{tag}"),
            Variant::Two,
            p,
            1,
            2,
            num2,
            cert_denominator(25),
            "log 5 = 2 Re",
        ));
    }
    out
}

pub fn certificate(name: &str) -> Result<Certificate> {
    certificates()
        .into_iter()
        .find(|c| c.name == name)
        .ok_or_else(|| Error::UnknownLabel(name.to_string()))
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TelescopingReport {
    pub name: String,
    pub checked: usize,
    pub failures: Vec<(u64, u64)>,
    /// Grid points where the certificate has a pole.
    pub poles: Vec<(u64, u64)>,
}

impl TelescopingReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.poles.is_empty()
    }
}

fn check_point(cert: &Certificate, table: &[Vec<GaussianRational>], n: usize, k: usize) -> std::result::Result<bool, ()> {
    let lhs = &table[n + 1][k] - &table[n][k];
    let r1 = cert.ratio.eval_int(n as i64, k as i64 + 1).ok_or(())?;
    let r0 = cert.ratio.eval_int(n as i64, k as i64).ok_or(())?;
    Ok(lhs == &(&r1 * &table[n][k + 1]) - &(&r0 * &table[n][k]))
}

/// Checks the WZ identity exactly on `0..=n_max × 0..=k_max`.
pub fn certificate_telescoping_check(cert: &Certificate, n_max: u64, k_max: u64) -> TelescopingReport {
    let (nm, km) = (n_max as usize, k_max as usize);
    let table_row = |n: usize| (0..=km + 1).map(|k| f_st(&cert.ctx, n as u64, k as u64)).collect::<Vec<_>>();
    let check_row = |n: usize, table: &[Vec<GaussianRational>]| {
        (n, (0..=km).map(|k| (k, check_point(cert, table, n, k))).collect::<Vec<_>>())
    };
    #[cfg(feature = "parallel")]
    let rows: Vec<_> = {
        use rayon::prelude::*;
        let table: Vec<_> = (0..=nm + 1).into_par_iter().map(table_row).collect();
        (0..=nm).into_par_iter().map(|n| check_row(n, &table)).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let rows: Vec<_> = {
        let table: Vec<_> = (0..=nm + 1).map(table_row).collect();
        (0..=nm).map(|n| check_row(n, &table)).collect()
    };
    let mut rep = TelescopingReport { name: cert.name.clone(), ..Default::default() };
    for (n, row) in rows {
        for (k, r) in row {
            rep.checked += 1;
            match r {
                Ok(true) => {}
                Ok(false) => rep.failures.push((n as u64, k as u64)),
                Err(()) => rep.poles.push((n as u64, k as u64)),
            }
        }
    }
    rep
}

/// Exact `Σ_{n=0}^{count−1} G_{s,t}(n, 0)`.
pub fn gst_partial_sum(cert: &Certificate, count: u64) -> Result<GaussianRational> {
    let mut acc = GaussianRational::zero();
    for n in 0..count {
        let g = cert.g(n, 0).ok_or(Error::Domain(format!("{}: pole at ({n}, 0)", cert.name)))?;
        acc = &acc + &g;
    }
    Ok(acc)
}

/// `log2 |z|` for a nonzero Gaussian rational, in double precision.
fn log2_abs(z: &GaussianRational) -> f64 {
    let nrm = z.norm();
    let l = crate::seriesdef::elementary_log10(nrm.numer()) - crate::seriesdef::elementary_log10(nrm.denom());
    0.5 * l / std::f64::consts::LOG10_2
}

/// Result of summing `G_{s,t}(n, 0)`.
#[derive(Clone, Debug)]
pub struct GstSum {
    pub value: ComplexFixed,
    pub terms: u64,
}

/// `Σ_{n=0}^{last} G_{s,t}(n, 0)` at `bits` of precision. Fails if the final
/// terms are not decreasing.
pub fn gst_series_sum(cert: &Certificate, last: u64, bits: u32) -> Result<GstSum> {
    if last >= 2 {
        let g = |n| cert.g(n, 0).ok_or(Error::Domain(format!("{}: pole at ({n}, 0)", cert.name)));
        let (a, b) = (g(last - 1)?, g(last)?);
        if !a.is_zero() && !b.is_zero() && log2_abs(&b) >= log2_abs(&a) {
            return Err(Error::Divergent(format!("{}: G(n,0) not decreasing at n = {last}", cert.name)));
        }
    }
    let acc = gst_partial_sum(cert, last + 1)?;
    Ok(GstSum { value: ComplexFixed::from_gaussian(&acc, bits), terms: last + 1 })
}

/// Like [`gst_series_sum`], choosing the number of terms: they are added
/// until they fall below `2^−(bits+16)`.
pub fn gst_series_auto(cert: &Certificate, bits: u32) -> Result<GstSum> {
    let stop = -((bits + 16) as f64);
    let mut acc = GaussianRational::zero();
    let mut prev: Option<f64> = None;
    let mut growth = 0;
    let mut n = 0u64;
    loop {
        let g = cert.g(n, 0).ok_or(Error::Domain(format!("{}: pole at ({n}, 0)", cert.name)))?;
        acc = &acc + &g;
        n += 1;
        if g.is_zero() {
            if n > 4 {
                break;
            }
            continue;
        }
        let mag = log2_abs(&g);
        if let Some(pm) = prev {
            if mag >= pm {
                growth += 1;
                if growth > 8 {
                    return Err(Error::Divergent(format!("{}: G(n,0) stops decreasing at n = {n}", cert.name)));
                }
            } else {
                growth = 0;
            }
            if mag < stop && mag < pm {
                break;
            }
        }
        prev = Some(mag);
        if n > 1_000_000 {
            return Err(Error::PrecisionExhausted(format!("{}: too many terms", cert.name)));
        }
    }
    Ok(GstSum { value: ComplexFixed::from_gaussian(&acc, bits), terms: n })
}

#[derive(Clone, Debug, PartialEq)]
pub struct LimitReport {
    pub n_probe: u64,
    /// Last column index summed.
    pub k_reached: u64,
    /// `log2` of the estimated row tail beyond `k_reached`.
    pub tail_log2: f64,
    pub decays: bool,
}

/// Checks that the row `k ↦ F_{s,t}(n_probe, k)` decays geometrically, so
/// its tail falls below `2^(−bits/4)`.
pub fn limit_conditions_check(ctx: &WzContext, n_probe: u64, bits: u32) -> LimitReport {
    let target = -(bits as f64) / 4.0;
    let mut k = 0u64;
    loop {
        let a = f_st(ctx, n_probe, k);
        if a.is_zero() {
            return LimitReport { n_probe, k_reached: k, tail_log2: f64::NEG_INFINITY, decays: true };
        }
        let b = f_st(ctx, n_probe, k + 1);
        let la = log2_abs(&a);
        let q = if b.is_zero() { 0.0 } else { (log2_abs(&b) - la).exp2() };
        if q < 1.0 {
            // geometric bound on Σ_{j>k} |F(n,j)|
            let tail = la + (q / (1.0 - q)).log2();
            if tail < target {
                return LimitReport { n_probe, k_reached: k, tail_log2: tail, decays: true };
            }
        }
        if k >= 20_000 {
            return LimitReport { n_probe, k_reached: k, tail_log2: la, decays: false };
        }
        k += if k < 64 { 1 } else { k / 4 };
    }
}

/// Real part as a fixed-point value, doubled: `2·Re(z)`.
pub fn doubled_real(z: &ComplexFixed) -> FixedReal {
    z.re.mul_pow2(1)
}

impl Certificate {
    /// The rational `q` with `log q` recovered by [`recovered_log`]: `p` for
    /// real `p`, `|p|²` otherwise.
    pub fn log_argument(&self) -> BigRational {
        if self.ctx.p.is_real() {
            self.ctx.p.re.clone()
        } else {
            self.ctx.p.norm()
        }
    }
}

/// `Σ G(n,0)` read as a real logarithm: the real part, or twice it for
/// Gaussian `p`.
pub fn recovered_log(cert: &Certificate, sum: &GstSum) -> FixedReal {
    if cert.ctx.p.is_real() {
        sum.value.re.clone()
    } else {
        doubled_real(&sum.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::elementary;

    fn ctx(v: Variant, p: i64, s: u32, t: u32) -> WzContext {
        WzContext::rational(v, p, s, t).unwrap()
    }

    #[test]
    fn single_point_values() {
        assert_eq!(base_f(&ctx(Variant::One, 3, 1, 0), 0, 0), GaussianRational::from_int(1));
        // (1/(4·2·(1/3))) · B(1, ½) = (3/8)·2
        assert_eq!(
            base_f(&ctx(Variant::Two, 2, 1, 0), 0, 0),
            GaussianRational::from_rational(ratio(3, 4))
        );
    }

    #[test]
    fn shift_arithmetic() {
        let c = ctx(Variant::One, 2, 1, 0);
        assert_eq!(f_st(&c, 3, 4), base_f(&c, 3, 4));
        let c = ctx(Variant::One, 2, 2, 1);
        assert_eq!(f_st(&c, 1, 0), base_f(&c, 2, 1));
        let c = ctx(Variant::One, 3, 2, 3);
        assert_eq!(f_st(&c, 2, 1), base_f(&c, 4, 7));
    }

    #[test]
    fn first_row_sums_to_log() {
        for v in [Variant::One, Variant::Two] {
            let c = ctx(v, 3, 1, 0);
            let got = (0..160).fold(FixedReal::zero(128), |acc, k| &acc + &FixedReal::from_rational(&base_f(&c, 0, k).re, 128));
            let ln3 = elementary::ln(&FixedReal::from_int(3, 128));
            assert!((&got - &ln3).below_pow2(100), "variant {v:?}");
        }
    }

    #[test]
    fn base_f_satisfies_its_recurrences() {
        // term ratios in k of both companions are simple rational functions
        for v in [Variant::One, Variant::Two] {
            let c = ctx(v, 3, 1, 0);
            for n in 0..4u64 {
                for k in 0..4u64 {
                    let r = &base_f(&c, n, k + 1) / &base_f(&c, n, k);
                    let x = ratio(1, 2); // (p−1)/(p+1) at p = 3
                    let (kk, nn) = (ratio(k as i64, 1), ratio(n as i64, 1));
                    let expect = match v {
                        // x² (k+½)/(k+n+3/2)
                        Variant::One => &x * &x * (&kk + ratio(1, 2)) / (&kk + &nn + ratio(3, 2)),
                        // −((p−1)²/(4p)) (k+1)/(k+n+3/2)
                        Variant::Two => -ratio(1, 3) * (&kk + ratio(1, 1)) / (&kk + &nn + ratio(3, 2)),
                    };
                    assert_eq!(r, GaussianRational::from_rational(expect));
                }
            }
        }
    }

    #[test]
    fn printed_certificates_telescope() {
        for c in certificates() {
            let rep = certificate_telescoping_check(&c, 8, 8);
            assert!(rep.passed(), "{}: {:?}", c.name, rep);
            assert_eq!(rep.checked, 81);
        }
    }

    #[test]
    fn altered_certificate_fails() {
        let mut c = certificate("log3-v1").unwrap();
        c.ratio.num = &c.ratio.num + &BiPoly::from_int_terms(&[(0, 0, 1)]);
        let rep = certificate_telescoping_check(&c, 3, 3);
        assert!(!rep.failures.is_empty());
    }

    #[test]
    fn series_sums() {
        let ln2 = elementary::ln(&FixedReal::from_int(2, 200));
        let v = gst_series_auto(&certificate("log2-v1").unwrap(), 200).unwrap();
        assert!((&v.value.re - &ln2).below_pow2(190));
        let a = gst_partial_sum(&certificate("log5-v1+").unwrap(), 10).unwrap();
        let b = gst_partial_sum(&certificate("log5-v1-").unwrap(), 10).unwrap();
        assert_eq!(a, b.conj());
    }

    #[test]
    fn limits() {
        let r = limit_conditions_check(&ctx(Variant::One, 3, 2, 1), 5, 266);
        assert!(r.decays && r.tail_log2 < -66.0);
        let r = limit_conditions_check(&ctx(Variant::One, 1, 2, 1), 5, 266);
        assert!(r.decays);
        let r = limit_conditions_check(&ctx(Variant::Two, 2, 1, 2), 3, 128);
        assert!(r.decays);
    }

    #[test]
    fn convergence_of_sources() {
        assert!(ctx(Variant::Two, 5, 1, 0).source_converges());
        assert!(!ctx(Variant::Two, 6, 1, 0).source_converges());
        assert!(ctx(Variant::One, 50, 1, 0).source_converges());
        let gi = WzContext::new(Variant::Two, GaussianRational::new(ratio(2, 1), ratio(1, 1)), 1, 2).unwrap();
        assert!(gi.source_converges());
    }
}
