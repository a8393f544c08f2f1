//! Exact and high-precision arithmetic.
//!
//! Integers and rationals come from `num-bigint` / `num-rational`; on top of
//! them this module adds Gaussian rationals, binary fixed-point reals, dense
//! univariate polynomials with rational coefficients and the small
//! bivariate rational functions used by WZ certificates.

mod bipoly;
mod complex;
pub mod elementary;
mod fixed;
mod gaussian;
mod poly;
mod rational;

pub use bipoly::{BiPoly, BiRatFunc};
pub use complex::ComplexFixed;
pub(crate) use fixed::format_scaled;
pub use fixed::FixedReal;
pub use gaussian::GaussianRational;
pub use num_bigint::BigInt;
pub use num_rational::BigRational;
pub use poly::{IntPoly, RatFunc};
pub use rational::{
    denom_lcm, int_gcd, parse_rational, rational_pow, ratio, vec_gcd_normalize,
};
