use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::lll::lll_reduce;
use crate::error::{Error, Result};
use crate::exactnum::FixedReal;

/// Log2 of the squared-norm ceiling per coordinate for an accepted vector.
pub const NORM_THRESHOLD_BITS: u32 = 205;

/// An integer relation among fixed-point values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub coefficients: Vec<BigInt>,
    /// `|Σ v_j x_j|` at the working precision.
    pub residual: FixedReal,
}

/// Looks for small integers `v` with `Σ v_j·x_j ≈ 0`.
///
/// The lattice has rows `[e_j | m_j]` where `m_j` is the mantissa of `x_j`
/// at the shared precision `B`. The first reduced row is accepted when its
/// coefficient part has squared norm below `count·2^205` and the residual is
/// below `2^(−B/2)`.
pub fn lindep(values: &[FixedReal], max_coeff_bits: u32) -> Result<Option<Relation>> {
    if values.len() < 2 {
        return Err(Error::Domain("lindep needs at least two values".into()));
    }
    let bits = values.iter().map(|v| v.bits()).min().unwrap();
    let needed = values.len() as u64 * max_coeff_bits as u64 + 64;
    if (bits as u64) < needed {
        return Err(Error::InsufficientPrecision { needed, have: bits as u64 });
    }
    let xs: Vec<FixedReal> = values.iter().map(|v| v.with_bits(bits)).collect();
    let n = xs.len();
    let basis: Vec<Vec<BigInt>> = (0..n)
        .map(|j| {
            let mut row = vec![BigInt::zero(); n + 1];
            row[j] = BigInt::one();
            row[n] = xs[j].mantissa().clone();
            row
        })
        .collect();
    let reduced = lll_reduce(&basis);
    let v: Vec<BigInt> = reduced.basis[0][..n].to_vec();
    if v.iter().all(|c| c.is_zero()) {
        return Ok(None);
    }
    let norm2: BigInt = v.iter().map(|c| c * c).sum();
    if norm2 >= BigInt::from(n) << NORM_THRESHOLD_BITS as usize {
        return Ok(None);
    }
    let residual = xs.iter().zip(&v).fold(FixedReal::zero(bits), |acc, (x, c)| &acc + &x.mul_int(c)).abs();
    if !residual.below_pow2(bits as i64 / 2) {
        return Ok(None);
    }
    Ok(Some(Relation { coefficients: v, residual }))
}
