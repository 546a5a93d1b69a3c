// Windowed Koszul homology of `(z1^2, z2^3)` at three truncation levels.

use fredholm_toeplitz::koszul::{homology_sweep, Estimate, KoszulConfig};
use fredholm_toeplitz::poly::{ExactPoly, SymbolTuple};

pub fn run_example() -> fredholm_toeplitz::Result<Estimate> {
    let z1 = ExactPoly::var(2, 0)?;
    let z2 = ExactPoly::var(2, 1)?;
    let tuple = SymbolTuple::new(vec![z1.pow(2), z2.pow(3)])?;
    let dims = homology_sweep(&tuple, 4..=6, &KoszulConfig::default())?;
    for level in &dims.levels {
        println!("K = {:2}, M = {:2}: h = {:?}", level.k, level.m, level.dims);
    }
    println!("index estimate: {:?}", dims.index_estimate);
    Ok(dims.index_estimate)
}

#[allow(dead_code)]
fn main() -> fredholm_toeplitz::Result<()> {
    run_example().map(|_| ())
}
