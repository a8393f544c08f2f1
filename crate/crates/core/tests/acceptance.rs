//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if a criterion fails that is not listed in `KNOWN_RED`, or if a
//! known-red criterion fails for a different reason than recorded.

mod common;

use std::time::{Duration, Instant};

use common::{common_prefix, fraction_text, int, log_rational_scaled, machin_log_scaled};
use logseries::altseries;
use logseries::betaproof::{self, LogBranch};
use logseries::binsplit;
use logseries::exactnum::{elementary, ratio, BigInt, BigRational, FixedReal, IntPoly};
use logseries::relsearch::{self, LatticeStrategy};
use logseries::seriesdef::{
    binary_splitting_cost, catalog_get, d2_convert, d2_invert, level1_series, table_one_row, Family, Motive,
};
use logseries::wzcert;
use num_traits::{One, Signed};

struct Outcome {
    pass: bool,
    detail: String,
    /// Individual failed checks, for comparing against a known-red reason.
    failures: Vec<String>,
}

impl Outcome {
    fn from_failures(ok_detail: String, failures: Vec<String>) -> Self {
        let pass = failures.is_empty();
        let detail = if pass { ok_detail } else { format!("{} failed: {}", failures.len(), summarize(&failures)) };
        Outcome { pass, detail, failures }
    }
}

fn summarize(v: &[String]) -> String {
    if v.len() <= 4 {
        v.join("; ")
    } else {
        format!("{}; … {}", v[..2].join("; "), v[v.len() - 1])
    }
}

fn secs(d: Duration) -> String {
    format!("{:.2} s", d.as_secs_f64())
}

/// Printed d=2 table, transcribed independently of the crate's copy:
/// `(p, α, β, γ, a, b, c, A1, A2, A3, ρ)`.
type Row = (i64, i64, i64, i64, i64, i64, i64, (i64, i64), (i64, i64), (i64, i64), (i64, i64));
const D2_TABLE: [Row; 5] = [
    (2, 1794, -297, 2, 598, 499, 144, (25, 72), (-1, 192), (1, 192), (1, 3888)),
    (3, 88, -14, 1, 176, 148, 27, (5, 9), (-1, 18), (1, 18), (1, 243)),
    (5, -364, 62, 1, 728, 604, 75, (4, 5), (1, 25), (-1, 25), (-1, 675)),
    (7, 312, -16, 81, 468, 444, 49, (15, 14), (-243, 196), (243, 196), (27, 196)),
    (10, -126, 23, 2, 1134, 927, 80, (9, 8), (81, 320), (-81, 320), (-1, 80)),
];

fn r(t: (i64, i64)) -> BigRational {
    ratio(t.0, t.1)
}

fn bi(n: i64) -> BigInt {
    BigInt::from(n)
}

fn digits_of_log(p: &BigRational, digits: u32) -> (String, String) {
    let v = log_rational_scaled(p, digits);
    let ip = (&v / num_traits::pow(bi(10), digits as usize)).to_string();
    (ip, fraction_text(&v, digits))
}

fn fixed_close(x: &FixedReal, p: &BigRational, digits: u32) -> bool {
    let want = BigRational::new(log_rational_scaled(p, digits + 5), num_traits::pow(bi(10), digits as usize + 5));
    (&x.to_rational() - &want).abs() * num_traits::pow(bi(10), digits as usize) < BigRational::one()
}

fn c1_digits() -> Outcome {
    let mut failures = Vec::new();
    let mut times = Vec::new();
    for (p, label) in [(2u32, "log2-eq8"), (3, "log3-eq8a"), (5, "log5-eq8b")] {
        let spec = catalog_get(label).unwrap();
        let t = Instant::now();
        let got = binsplit::evaluate(&spec, 10_000).unwrap();
        let el = t.elapsed();
        times.push(format!("{label} {}", secs(el)));
        let oracle = machin_log_scaled(p, 10_000);
        let ip = (&oracle / num_traits::pow(bi(10), 10_000)).to_string();
        let n = common_prefix(got.fraction_digits(), &fraction_text(&oracle, 10_000));
        if got.integer_part() != ip || n != 10_000 {
            failures.push(format!("{label}: first mismatch at digit {}", n + 1));
        }
        if el > Duration::from_secs(30) {
            failures.push(format!("{label}: {} exceeds 30 s", secs(el)));
        }
    }
    Outcome::from_failures(format!("10000 digits of log 2, 3, 5 match the Machin oracle ({})", times.join(", ")), failures)
}

fn c2_costs() -> Outcome {
    let printed = [
        ("log2-eq8", 0.9679),
        ("log3-eq8a", 1.4564),
        ("log5-eq8b", 1.2280),
        ("log2-eq9", 1.1335),
        ("log2-eq11", 1.2292),
        ("log2-eq13", 1.3001),
        ("log3-eq15a", 1.6459),
        ("log2-eq18", 1.2189),
    ];
    let mut failures = Vec::new();
    let mut worst: f64 = 0.0;
    for (label, want) in printed {
        let got = binary_splitting_cost(&catalog_get(label).unwrap(), 128).unwrap().to_f64();
        worst = worst.max((got - want).abs());
        if (got - want).abs() >= 1e-4 {
            failures.push(format!("{label}: {got:.6} vs {want}"));
        }
    }
    Outcome::from_failures(format!("8 costs within 1e-4 of printed values (max deviation {worst:.1e})"), failures)
}

fn c3_cross() -> Outcome {
    let pairs = [
        ("log2-eq8", "log2-eq9"),
        ("log2-eq8", "log2-eq13"),
        ("log2-eq8", "log2-eq18"),
        ("log3-eq8a", "log3-eq15a"),
    ];
    let mut failures = Vec::new();
    for (a, b) in pairs {
        match binsplit::cross_verify(&catalog_get(a).unwrap(), &catalog_get(b).unwrap(), 5000) {
            Ok(n) if n >= 5000 => {}
            Ok(n) => failures.push(format!("{a}/{b}: {n} digits")),
            Err(e) => failures.push(format!("{a}/{b}: {e}")),
        }
    }
    Outcome::from_failures("4 series pairs agree on 5000 digits, including the conjectured d=4 log 2 series".into(), failures)
}

fn c4_table() -> Outcome {
    let mut failures = Vec::new();
    for row in D2_TABLE {
        let (p, al, be, ga, a, b, c, a1, a2, a3, rho) = row;
        let rho = r(rho);
        if matches!(p, 2 | 3 | 7) {
            let s = level1_series(&int(p)).unwrap();
            let scaled: Vec<BigRational> = s.numerator.coeffs().iter().map(|x| x * &s.normalizer).collect();
            let ok = s.rho() == &rho
                && scaled == vec![ratio(b, c), ratio(a, c)]
                && s.denominator == &IntPoly::from_ints(&[1, 6]) * &IntPoly::from_ints(&[5, 6])
                && s.start_index == 0;
            if !ok {
                failures.push(format!("level1_series({p}) differs from its row"));
            }
        }
        let abc = d2_convert(&bi(al), &bi(be), &bi(ga), &rho).unwrap();
        if abc != [bi(a), bi(b), bi(c)] {
            failures.push(format!("p = {p}: d2_convert gives {abc:?}"));
        }
        let back = d2_invert(&bi(a), &bi(b), &bi(c), &rho).unwrap();
        if back != [bi(al), bi(be), bi(ga)] {
            failures.push(format!("p = {p}: d2_invert gives {back:?}"));
        }
        let w = betaproof::a1a2a3(&bi(a), &bi(b), &bi(c)).unwrap();
        if w != [r(a1), r(a2), r(a3)] {
            failures.push(format!("p = {p}: A = {w:?}"));
        }
    }
    Outcome::from_failures(
        "level1 rows p = 2, 3, 7 exact; conversions and A1..A3 exact on all 5 rows".into(),
        failures,
    )
}

fn c5_pfbeta() -> Outcome {
    let mut failures = Vec::new();
    let (g, _) = betaproof::d6_log2_rational_part();
    let d = betaproof::decompose(&g, 3, 4).unwrap();
    let printed = [(3, 8), (-563, 12096), (479, 96768), (-17, 110592), (91, 995328), (-11, 995328), (1, 995328)];
    if d.coefficients != printed.map(r).to_vec() {
        failures.push(format!("coefficients {:?}", d.coefficients));
    }
    let res = betaproof::pfbeta_residual(&g, &d.coefficients, 4, &int(1), 7, &ratio(1, 2));
    if !res.num.is_zero() {
        failures.push("residual is not zero".into());
    }
    let integrands: [(i64, &[i64], &[i64]); 5] = [
        (2, &[200, -3, 3], &[576, 0, -1, 1]),
        (3, &[20, -2, 2], &[36, 0, -1, 1]),
        (5, &[16, 4], &[20, 4, 1]),
        (7, &[840, -972, 972], &[784, 0, -729, 729]),
        (10, &[45, 27], &[40, 15, 9]),
    ];
    for (p, u, v) in integrands {
        let pair = betaproof::build_integrand(&table_one_row(p).unwrap()).unwrap();
        if pair.u != IntPoly::from_ints(u) || pair.v != IntPoly::from_ints(v) {
            failures.push(format!("p = {p}: u = {}, v = {}", pair.u, pair.v));
        }
    }
    Outcome::from_failures("7 coefficients exact, zero residual, 5 integrand pairs match".into(), failures)
}

fn c6_integrals() -> Outcome {
    let mut failures = Vec::new();
    let mut notes = Vec::new();
    for p in [2i64, 3, 5, 7, 10] {
        let row = table_one_row(p).unwrap();
        let pair = betaproof::build_integrand(&row).unwrap();
        let rep = betaproof::integral_check(&pair, p, 40).unwrap();
        if !rep.passed() || !fixed_close(&rep.value, &int(p), 40) {
            failures.push(format!("integral p = {p}: {} digits", rep.agreeing_digits));
        }
        let bits = 180;
        let v = betaproof::closed_form_log(&row, bits, LogBranch::SplitDifference).unwrap();
        if !fixed_close(&v, &int(p), 40) {
            failures.push(format!("closed form p = {p}"));
        }
        if row.rho.is_negative() {
            notes.push(format!("p = {p} complex z, split log"));
        }
    }
    Outcome::from_failures(
        format!("integrals and closed forms give log p to 40 digits for p = 2, 3, 5, 7, 10 ({})", notes.join(", ")),
        failures,
    )
}

fn c7_wz() -> Outcome {
    let mut failures = Vec::new();
    let certs = wzcert::certificates();
    for cert in &certs {
        let rep = wzcert::certificate_telescoping_check(cert, 20, 20);
        if rep.checked != 441 || !rep.passed() {
            failures.push(format!("{}: {} failures, {} poles", cert.name, rep.failures.len(), rep.poles.len()));
        }
        let sum = wzcert::gst_series_auto(cert, 180).unwrap();
        let v = wzcert::recovered_log(cert, &sum);
        if !fixed_close(&v, &cert.log_argument(), 40) {
            failures.push(format!("{}: sum is not log {}", cert.name, cert.log_argument()));
        }
    }
    Outcome::from_failures(
        format!("{} certificates telescope exactly on 21x21; their series give log 2, 3, 5 to 40 digits", certs.len()),
        failures,
    )
}

fn proportional(v: &[BigInt], w: &[i64]) -> bool {
    v.len() == w.len() && {
        let k = BigRational::new(v[0].clone(), bi(w[0]));
        v.iter().zip(w).all(|(a, b)| BigRational::from_integer(a.clone()) == &k * bi(*b))
    }
}

fn c8_search() -> Outcome {
    let t = Instant::now();
    let mut failures = Vec::new();
    let motive = Motive::from_pairs(&[(1, 1), (1, 2)], &[(1, 6), (5, 6)], ratio(1, 2)).unwrap();
    let run = |p: i64, primes: &[u64], want: &[i64], rho: BigRational, failures: &mut Vec<String>| {
        let mut s = LatticeStrategy::from_motive(&motive, -8, 0);
        s.primes = primes.iter().map(|&q| (q, -8, 0)).collect();
        s.working_digits = Some(200);
        let bits = relsearch::working_bits(&s, 3) + 64;
        let target = elementary::ln(&FixedReal::from_int(p, bits));
        let out = relsearch::search(&motive, &target, 1, &s).unwrap();
        if !out.candidates.iter().any(|c| c.rho == rho && proportional(&c.coefficients, want)) {
            failures.push(format!("log {p}: {} candidates, none with ρ = {rho}", out.candidates.len()));
        }
    };
    run(2, &[2, 3], &[-2, 1794, -297], ratio(1, 3888), &mut failures);
    run(3, &[3], &[-1, 88, -14], ratio(1, 243), &mut failures);
    let el = t.elapsed();
    if el > Duration::from_secs(120) {
        failures.push(format!("took {}", secs(el)));
    }
    Outcome::from_failures("both d=2 series rediscovered at 200 digits".into(), failures)
}

fn c9_alternating() -> Outcome {
    let mut failures = Vec::new();
    // (p, r², tan²φ, ρ, a, b, c)
    let printed: [(i64, i64, (i64, i64), (i64, i64), i64, i64, i64); 4] = [
        (5, 2, (1, 1), (-1, 675), 728, 604, 75),
        (10, 6, (5, 3), (-1, 80), 1134, 927, 80),
        (21, 16, (3, 1), (-256, 3969), 8840, 6940, 441),
        (56, 50, (7, 1), (-15625, 48384), 179630, 126775, 5376),
    ];
    let hits = altseries::scan_range(2, 133, altseries::DEFAULT_BITS).unwrap();
    let ps: Vec<i64> = hits.iter().map(|h| h.p).collect();
    if ps != [5, 10, 21, 56] {
        failures.push(format!("hits at {ps:?}"));
    }
    for (p, r2, tan2, rho, a, b, c) in printed {
        let Some(h) = hits.iter().find(|h| h.p == p) else { continue };
        let bits = h.r.bits();
        let r2_got = &h.r * &h.r;
        let (s, co) = elementary::sin_cos(&h.phi);
        let tan2_got = &(&s * &s) / &(&co * &co);
        let ok_r = (&r2_got - &FixedReal::from_int(r2, bits)).below_pow2(bits as i64 - 40);
        let ok_phi = (&tan2_got - &FixedReal::from_rational(&r(tan2), bits)).below_pow2(bits as i64 - 40)
            && (0.0..std::f64::consts::FRAC_PI_2).contains(&h.phi.to_f64());
        if !ok_r || !ok_phi || h.rho != r(rho) || (h.a.clone(), h.b.clone(), h.c.clone()) != (bi(a), bi(b), bi(c)) {
            failures.push(format!("p = {p} row differs"));
        }
    }
    let (rl, phil, pl) = altseries::convergence_limit(altseries::DEFAULT_BITS).unwrap();
    let limit = [(rl.to_f64(), 11.2691), (phil.to_f64(), 1.3233), (pl.to_f64(), 133.5126)];
    if limit.iter().any(|(g, w)| (g - w).abs() >= 1e-3) {
        failures.push(format!("limit ({:.4}, {:.4}, {:.4})", limit[0].0, limit[1].0, limit[2].0));
    }
    Outcome::from_failures(
        format!("scan [2,133] gives p = 5, 10, 21, 56 with printed rows; limit ({:.4}, {:.4}, {:.4})", limit[0].0, limit[1].0, limit[2].0),
        failures,
    )
}

fn c10_families() -> Outcome {
    let ranges = [(Family::Level1, 13), (Family::Level2, 21), (Family::D4, 28), (Family::D6, 34)];
    let mut failures = Vec::new();
    let mut checked = 0;
    let mut check = |f: Family, p: BigRational, failures: &mut Vec<String>| {
        checked += 1;
        let spec = match f.build(&p) {
            Ok(s) => s,
            Err(e) => {
                failures.push(format!("{} p = {p}: {e}", f.name()));
                return;
            }
        };
        let got = binsplit::evaluate(&spec, 60).unwrap();
        let (ip, frac) = digits_of_log(&p, 60);
        if got.integer_part() != ip || common_prefix(got.fraction_digits(), &frac) < 60 {
            failures.push(format!("{} p = {p}: wrong digits", f.name()));
        }
    };
    for (f, hi) in ranges {
        for p in 2..=hi {
            check(f, int(p), &mut failures);
        }
    }
    check(Family::D6, ratio(5, 2), &mut failures);
    Outcome::from_failures(format!("{checked} family members give log p to 60 digits, d6 also at p = 5/2"), failures)
}

/// The printed d6 rate, evaluated here without the crate.
fn d6_rho(p: i64) -> BigRational {
    let (pm, pp) = (int(p - 1), int(p + 1));
    ratio(27, 823543) * num_traits::pow(pm, 14) / (num_traits::pow(int(p), 4) * num_traits::pow(pp, 6))
}

/// Criterion 10 is red only because d6 diverges for p = 18..34: the
/// printed convergence bound omits the factor 27 of the printed rate.
fn c10_known_reason(o: &Outcome) -> Result<(), String> {
    let expected: Vec<String> = (18..=34).map(|p| format!("d6 p = {p}:")).collect();
    if o.failures.len() != expected.len() {
        return Err(format!("expected {} failures, got {}", expected.len(), o.failures.len()));
    }
    for (f, e) in o.failures.iter().zip(&expected) {
        if !f.starts_with(e.as_str()) || !f.contains("not below 1") {
            return Err(format!("unexpected failure: {f}"));
        }
    }
    if (18..=34).any(|p| d6_rho(p).abs() < BigRational::one()) || d6_rho(17).abs() >= BigRational::one() {
        return Err("printed d6 rate no longer crosses 1 between 17 and 18".into());
    }
    Ok(())
}

type Check = fn(&Outcome) -> Result<(), String>;

const KNOWN_RED: [(u32, Check); 1] = [(10, c10_known_reason)];

fn main() {
    let criteria: [(u32, &str, fn() -> Outcome); 10] = [
        (1, "digit correctness", c1_digits),
        (2, "cost regression", c2_costs),
        (3, "cross-validation", c3_cross),
        (4, "d=2 table reproduction", c4_table),
        (5, "Beta partial fractions", c5_pfbeta),
        (6, "proof by integral", c6_integrals),
        (7, "WZ certificates", c7_wz),
        (8, "search rediscovery", c8_search),
        (9, "alternating series", c9_alternating),
        (10, "parametric families", c10_families),
    ];
    let mut unexpected = Vec::new();
    for (id, name, f) in criteria {
        let t = Instant::now();
        let o = f();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        let known = KNOWN_RED.iter().find(|(k, _)| *k == id);
        let mut note = String::new();
        match (o.pass, known) {
            (true, Some(_)) => unexpected.push(format!("criterion {id} is listed as known-red but passes")),
            (false, Some((_, check))) => match check(&o) {
                Ok(()) => note = " [known red: see decisions ledger]".into(),
                Err(e) => unexpected.push(format!("criterion {id}: {e}")),
            },
            (false, None) => unexpected.push(format!("criterion {id} failed")),
            (true, None) => {}
        }
        println!("{tag} {id:>2} {name}: {} ({}){note}", o.detail, secs(t.elapsed()));
    }
    if !unexpected.is_empty() {
        for u in &unexpected {
            println!("unexpected: {u}");
        }
        std::process::exit(1);
    }
}
