//! Integer-relation search: partial sums `s_i` of a motive, LLL reduction,
//! `lindep`, and the iteration of `ρ` over a prime-exponent lattice.

mod lindep;
mod lll;
mod search;

pub use lindep::{lindep, Relation, NORM_THRESHOLD_BITS};
pub use lll::{determinant, lll_reduce, LllOutput};
pub use search::{
    candidate_series, motive_denominator, partial_sum_si, report_block, search, working_bits, LatticeStrategy,
    RelationCandidate, SearchOutcome,
};
