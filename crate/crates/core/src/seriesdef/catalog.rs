use num_rational::BigRational;
use serde::Serialize;

use super::{binary_splitting_cost, d2, Motive, SeriesSpec};
use crate::error::{Error, Result};
use crate::exactnum::{ratio, IntPoly};

pub const CATALOG_LABELS: [&str; 10] = [
    "log2-eq8",
    "log3-eq8a",
    "log5-eq8b",
    "log2-eq9",
    "log2-eq11",
    "log2-eq13",
    "log3-eq15a",
    "log2-eq18",
    "log7-tableI",
    "log10-tableI",
];

/// `scale · Π (a·n + b)`.
pub(crate) fn linear_product(scale: i64, factors: &[(i64, i64)]) -> IntPoly {
    factors
        .iter()
        .fold(IntPoly::from_ints(&[scale]), |acc, &(a, b)| &acc * &IntPoly::from_ints(&[b, a]))
}

const D2_NUM: [(i64, i64); 2] = [(1, 1), (1, 2)];
const D2_DEN: [(i64, i64); 2] = [(1, 6), (5, 6)];
const D4_NUM_A: [(i64, i64); 4] = [(1, 1), (1, 2), (1, 6), (5, 6)];
const D4_NUM_B: [(i64, i64); 4] = [(1, 1), (1, 2), (1, 4), (3, 4)];
const D4_NUM_C: [(i64, i64); 4] = [(1, 1), (1, 2), (1, 3), (2, 3)];
const D4_DEN_10: [(i64, i64); 4] = [(1, 10), (3, 10), (7, 10), (9, 10)];
const D4_DEN_12: [(i64, i64); 4] = [(1, 12), (5, 12), (7, 12), (11, 12)];
pub(crate) const D6_NUM: [(i64, i64); 6] = [(1, 1), (1, 2), (1, 4), (3, 4), (1, 6), (5, 6)];
pub(crate) const D6_DEN: [(i64, i64); 6] = [(1, 14), (3, 14), (5, 14), (9, 14), (11, 14), (13, 14)];
pub(crate) const EQ9_NUM: [(i64, i64); 4] = D4_NUM_A;
pub(crate) const EQ9_DEN: [(i64, i64); 4] = D4_DEN_10;
pub(crate) const D2_MOTIVE: ([(i64, i64); 2], [(i64, i64); 2]) = (D2_NUM, D2_DEN);

struct Raw {
    label: &'static str,
    p: i64,
    numerator: &'static [i64],
    den_scale: i64,
    den: &'static [(i64, i64)],
    normalizer: (i64, i64),
    rho: (i64, i64),
    num_params: &'static [(i64, i64)],
    den_params: &'static [(i64, i64)],
}

const RAW: [Raw; 8] = [
    Raw {
        label: "log2-eq8",
        p: 2,
        numerator: &[-297, 1794],
        den_scale: 2,
        den: &[(1, 0), (2, -1)],
        normalizer: (1, 1),
        rho: (1, 3888),
        num_params: &D2_NUM,
        den_params: &D2_DEN,
    },
    Raw {
        label: "log3-eq8a",
        p: 3,
        numerator: &[-14, 88],
        den_scale: 1,
        den: &[(1, 0), (2, -1)],
        normalizer: (1, 1),
        rho: (1, 243),
        num_params: &D2_NUM,
        den_params: &D2_DEN,
    },
    Raw {
        label: "log5-eq8b",
        p: 5,
        numerator: &[-62, 364],
        den_scale: -1,
        den: &[(1, 0), (2, -1)],
        normalizer: (1, 1),
        rho: (-1, 675),
        num_params: &D2_NUM,
        den_params: &D2_DEN,
    },
    Raw {
        label: "log2-eq9",
        p: 2,
        numerator: &[-295245, 4353342, -15397068, 13885704],
        den_scale: 2,
        den: &[(1, 0), (2, -1), (6, -1), (6, -5)],
        normalizer: (1, 1),
        rho: (1, 1350000),
        num_params: &D4_NUM_A,
        den_params: &D4_DEN_10,
    },
    Raw {
        label: "log2-eq11",
        p: 2,
        numerator: &[-81891, 1209726, -4300512, 3927264],
        den_scale: 4,
        den: &[(1, 0), (2, -1), (4, -1), (4, -3)],
        normalizer: (1, 1),
        rho: (1, 450000),
        num_params: &D4_NUM_B,
        den_params: &D4_DEN_10,
    },
    Raw {
        label: "log2-eq13",
        p: 2,
        numerator: &[-13858, 223397, -742257, 686430],
        den_scale: 3,
        den: &[(1, 0), (2, -1), (3, -1), (3, -2)],
        normalizer: (1, 1),
        rho: (1, 221184),
        num_params: &D4_NUM_C,
        den_params: &D4_DEN_12,
    },
    Raw {
        label: "log3-eq15a",
        p: 3,
        numerator: &[-3040, 44804, -158016, 141168],
        den_scale: 1,
        den: &[(1, 0), (2, -1), (6, -1), (6, -5)],
        normalizer: (1, 1),
        rho: (3, 50000),
        num_params: &D4_NUM_A,
        den_params: &D4_DEN_10,
    },
    Raw {
        label: "log2-eq18",
        p: 2,
        numerator: &[-226846575, 5510613042, -40884797604, 126495134424, -169950180480, 81969540480],
        den_scale: 1,
        den: &[(1, 0), (2, -1), (4, -1), (4, -3), (6, -1), (6, -5)],
        normalizer: (1, 4),
        rho: (1, 355770576),
        num_params: &D6_NUM,
        den_params: &D6_DEN,
    },
];

fn from_raw(r: &Raw) -> SeriesSpec {
    let motive = Motive::from_pairs(r.num_params, r.den_params, ratio(r.rho.0, r.rho.1)).expect("catalog motive");
    SeriesSpec::new(
        r.label,
        motive,
        IntPoly::from_ints(r.numerator),
        linear_product(r.den_scale, r.den),
        ratio(r.normalizer.0, r.normalizer.1),
        1,
        Some(ratio(r.p, 1)),
    )
    .expect("catalog entry")
}

/// Builds the Eq-20 form `(1/γ) Σ_{n≥1} (αn+β)/(n(2n−1)) ρ^n M(n)` of a
/// d=2 parameter row.
pub(crate) fn spec_from_d2(label: &str, row: &d2::D2Params) -> SeriesSpec {
    let motive = Motive::from_pairs(&D2_NUM, &D2_DEN, row.rho.clone()).expect("d=2 motive");
    SeriesSpec::new(
        label,
        motive,
        IntPoly::from_ints(&[row.beta, row.alpha]),
        linear_product(1, &[(1, 0), (2, -1)]),
        ratio(1, row.gamma),
        1,
        Some(ratio(row.p, 1)),
    )
    .expect("d=2 row")
}

/// Looks up a catalog series by label.
pub fn catalog_get(label: &str) -> Result<SeriesSpec> {
    if let Some(r) = RAW.iter().find(|r| r.label == label) {
        return Ok(from_raw(r));
    }
    let p = match label {
        "log7-tableI" => 7,
        "log10-tableI" => 10,
        _ => return Err(Error::UnknownLabel(label.to_string())),
    };
    Ok(spec_from_d2(label, &d2::table_one_row(p).expect("row present")))
}

/// The catalog series for `log p` with the lowest binary splitting cost.
/// Conjectured entries are skipped.
pub fn fastest_for(p: &BigRational) -> Result<SeriesSpec> {
    let mut best: Option<(BigRational, SeriesSpec)> = None;
    for l in CATALOG_LABELS.iter().filter(|l| **l != "log2-eq13") {
        let s = catalog_get(l)?;
        if s.log_of.as_ref() != Some(p) {
            continue;
        }
        let c = binary_splitting_cost(&s, 64)?.to_rational();
        if best.as_ref().map_or(true, |(bc, _)| c < *bc) {
            best = Some((c, s));
        }
    }
    best.map(|(_, s)| s).ok_or_else(|| Error::UnknownLabel(format!("no catalog series for log({p})")))
}

/// One catalog entry in export form.
#[derive(Clone, Debug, Serialize)]
pub struct CatalogEntry {
    pub label: String,
    pub log_of: Option<String>,
    pub d: usize,
    pub rho: String,
    pub cost: String,
    pub start_index: u32,
    pub normalizer: String,
    pub num_params: Vec<String>,
    pub den_params: Vec<String>,
    /// p(n) coefficients, ascending degree.
    pub numerator: Vec<String>,
    /// r(n) coefficients, ascending degree.
    pub denominator: Vec<String>,
    pub conjectured: bool,
}

fn strs(v: &[BigRational]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

/// Rounds a positive decimal string to `sig` significant digits by
/// truncation.
pub(crate) fn significant(s: &str, sig: usize) -> String {
    let mut out = String::new();
    let mut seen = 0;
    let mut started = false;
    for ch in s.chars() {
        if seen == sig {
            break;
        }
        out.push(ch);
        if ch.is_ascii_digit() {
            if ch != '0' {
                started = true;
            }
            if started {
                seen += 1;
            }
        }
    }
    out
}

pub fn catalog_entries() -> Vec<CatalogEntry> {
    CATALOG_LABELS
        .iter()
        .map(|l| {
            let s = catalog_get(l).expect("catalog label");
            let cost = binary_splitting_cost(&s, 128).expect("convergent").to_decimal(30);
            CatalogEntry {
                label: s.label.clone(),
                log_of: s.log_of.as_ref().map(|p| p.to_string()),
                d: s.degree(),
                rho: s.rho().to_string(),
                cost: significant(&cost, 20),
                start_index: s.start_index,
                normalizer: s.normalizer.to_string(),
                num_params: strs(s.motive.num_params()),
                den_params: strs(s.motive.den_params()),
                numerator: strs(s.numerator.coeffs()),
                denominator: strs(s.denominator.coeffs()),
                conjectured: s.label == "log2-eq13",
            }
        })
        .collect()
}

/// The catalog as a pretty-printed JSON array.
pub fn catalog_json() -> String {
    serde_json::to_string_pretty(&catalog_entries()).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eq8a_entry() {
        let s = catalog_get("log3-eq8a").unwrap();
        assert_eq!(s.numerator, IntPoly::from_ints(&[-14, 88]));
        assert_eq!(s.denominator, IntPoly::from_ints(&[0, -1, 2]));
        assert_eq!(s.rho(), &ratio(1, 243));
        assert_eq!(s.motive.num_params(), &[ratio(1, 1), ratio(1, 2)]);
        assert_eq!(s.motive.den_params(), &[ratio(1, 6), ratio(5, 6)]);
    }

    #[test]
    fn fastest_picks_lowest_cost() {
        assert_eq!(fastest_for(&ratio(2, 1)).unwrap().label, "log2-eq8");
        assert_eq!(fastest_for(&ratio(3, 1)).unwrap().label, "log3-eq8a");
        assert_eq!(fastest_for(&ratio(7, 1)).unwrap().label, "log7-tableI");
        assert!(fastest_for(&ratio(11, 1)).is_err());
    }

    #[test]
    fn eq13_rate() {
        let s = catalog_get("log2-eq13").unwrap();
        assert_eq!(s.rho(), &ratio(1, (1 << 13) * 27));
        assert_eq!(s.numerator, IntPoly::from_ints(&[-13858, 223397, -742257, 686430]));
    }

    #[test]
    fn table_rows() {
        let s = catalog_get("log7-tableI").unwrap();
        assert_eq!(s.numerator, IntPoly::from_ints(&[-16, 312]));
        assert_eq!(s.normalizer, ratio(1, 81));
        assert_eq!(s.rho(), &ratio(27, 196));
        assert!(matches!(catalog_get("log11"), Err(Error::UnknownLabel(_))));
    }

    #[test]
    fn every_label_resolves_and_exports() {
        for l in CATALOG_LABELS {
            catalog_get(l).unwrap();
        }
        let v: serde_json::Value = serde_json::from_str(&catalog_json()).unwrap();
        let arr = v.as_array().unwrap();
        assert_eq!(arr.len(), CATALOG_LABELS.len());
        assert_eq!(arr[0]["rho"], "1/3888");
        assert_eq!(arr[0]["cost"].as_str().unwrap().len(), 22);
        assert!(arr[0]["cost"].as_str().unwrap().starts_with("0.96786"));
    }

    #[test]
    fn significant_digits() {
        assert_eq!(significant("0.000123456", 3), "0.000123");
        assert_eq!(significant("12.3456", 4), "12.34");
    }
}
