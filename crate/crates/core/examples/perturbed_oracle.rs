// Perturbed zero count for `(z1^2 - 1/4, z2)`: each trial shifts the
// constant terms and counts simple zeros inside the bidisc.

use fredholm_toeplitz::oracle::{perturbed_vote, OracleConfig, OracleVote};
use fredholm_toeplitz::poly::{ExactComplex, ExactPoly, SymbolTuple};

pub fn run_example() -> fredholm_toeplitz::Result<OracleVote> {
    let z1 = ExactPoly::var(2, 0)?;
    let z2 = ExactPoly::var(2, 1)?;
    let quarter = ExactPoly::constant(2, ExactComplex::from_ratio(1, 4));
    let tuple = SymbolTuple::new(vec![z1.pow(2).sub(&quarter), z2])?;
    let cfg = OracleConfig { seed: 42, ..Default::default() };
    let vote = perturbed_vote(&tuple, &cfg)?;
    println!("trial counts {:?}, majority {}", vote.trial_counts, vote.count);
    Ok(vote)
}

#[allow(dead_code)]
fn main() -> fredholm_toeplitz::Result<()> {
    run_example().map(|_| ())
}
