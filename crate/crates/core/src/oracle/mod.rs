//! Brute-force index oracles independent of the homological and algebraic
//! routes.

mod perturbed;
mod winding;

pub use perturbed::{perturbed_count, perturbed_vote, solve_pair, OracleConfig, OracleVote, PairZero};
pub use winding::{univariate_index, winding_number};
