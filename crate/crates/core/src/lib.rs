//! Fast hypergeometric series for logarithms of small integers.

pub mod altseries;
pub mod betaproof;
pub mod binsplit;
pub mod error;
pub mod relsearch;
pub mod exactnum;
pub mod seriesdef;
pub mod wzcert;

pub use error::{Error, Result};
