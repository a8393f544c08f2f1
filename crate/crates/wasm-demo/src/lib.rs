//! Browser demo over the `logseries` core: digits of `log p`, parametric
//! family members, and alternating-series solutions.
//!
//! The `#[wasm_bindgen]` exports are thin wrappers; the plain functions
//! beside them hold the logic and are what the native tests call.

use logseries::altseries;
use logseries::binsplit;
use logseries::exactnum::parse_rational;
use logseries::seriesdef::{self, Family};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Digit requests above this are refused; the page runs on the main thread.
pub const MAX_DIGITS: u32 = 20_000;

fn check_digits(digits: u32) -> Result<u64, String> {
    if digits == 0 || digits > MAX_DIGITS {
        return Err(format!("digits must be between 1 and {MAX_DIGITS}"));
    }
    Ok(digits as u64)
}

/// `log p` from the cheapest catalog series, in the 100-per-line layout.
pub fn log_digits(p: &str, digits: u32) -> Result<String, String> {
    let digits = check_digits(digits)?;
    let p = parse_rational(p).ok_or_else(|| format!("`{p}` is not a rational number"))?;
    let spec = seriesdef::fastest_for(&p).map_err(|e| e.to_string())?;
    binsplit::evaluate(&spec, digits).map(|r| r.to_file_format()).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct FamilyMember {
    family: &'static str,
    p: String,
    rho: String,
    cost: Option<String>,
    digits: Option<String>,
    error: Option<String>,
}

/// Rate, cost and value of one family member as JSON. Out-of-domain `p`
/// still reports `ρ` with the domain error.
pub fn family_member(family: &str, p: &str, digits: u32) -> Result<String, String> {
    let digits = check_digits(digits)?;
    let fam = Family::parse(family).ok_or_else(|| format!("unknown family `{family}`"))?;
    let p = parse_rational(p).ok_or_else(|| format!("`{p}` is not a rational number"))?;
    let mut m = FamilyMember {
        family: fam.name(),
        p: p.to_string(),
        rho: fam.rho(&p).to_string(),
        cost: None,
        digits: None,
        error: None,
    };
    match fam.build(&p).and_then(|s| {
        let cost = seriesdef::binary_splitting_cost(&s, 64)?.to_decimal(6);
        Ok((cost, binsplit::evaluate(&s, digits)?))
    }) {
        Ok((cost, r)) => {
            m.cost = Some(cost);
            m.digits = Some(r.decimal_digits);
        }
        Err(e) => m.error = Some(e.to_string()),
    }
    Ok(serde_json::to_string(&m).expect("serializable"))
}

#[derive(Serialize)]
struct AlternatingRow {
    p: i64,
    r: String,
    phi: String,
    rho: Option<String>,
    a: Option<String>,
    b: Option<String>,
    c: Option<String>,
}

/// Solves for `(r, φ)` at integer `p` and reports `ρ` and the series
/// coefficients when `ρ` is rational, as JSON.
pub fn alternating_row(p: i64) -> Result<String, String> {
    if !(2..=altseries::SCAN_LIMIT).contains(&p) {
        return Err(format!("p must lie in [2, {}]", altseries::SCAN_LIMIT));
    }
    let bits = altseries::DEFAULT_BITS;
    let (r, phi) = altseries::solve_r_phi(p, bits).map_err(|e| e.to_string())?;
    let sol = altseries::solve_alternating(p, bits).map_err(|e| e.to_string())?;
    let row = AlternatingRow {
        p,
        r: r.to_decimal(12),
        phi: phi.to_decimal(12),
        rho: sol.as_ref().map(|s| s.rho.to_string()),
        a: sol.as_ref().map(|s| s.a.to_string()),
        b: sol.as_ref().map(|s| s.b.to_string()),
        c: sol.as_ref().map(|s| s.c.to_string()),
    };
    Ok(serde_json::to_string(&row).expect("serializable"))
}

#[wasm_bindgen]
pub fn compute_log(p: &str, digits: u32) -> Result<String, JsError> {
    log_digits(p, digits).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn family_rates(family: &str, p: &str, digits: u32) -> Result<String, JsError> {
    family_member(family, p, digits).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn alternating_solve(p: i32) -> Result<String, JsError> {
    alternating_row(p as i64).map_err(|e| JsError::new(&e))
}
