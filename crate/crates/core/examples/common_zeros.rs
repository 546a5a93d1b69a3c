// Common zeros of `(z1 - z2, z1 z2)` with intersection multiplicities.

use fredholm_toeplitz::algebraic::{common_zeros, AlgebraicConfig, ZeroSet};
use fredholm_toeplitz::poly::{ExactPoly, SymbolTuple};

pub fn run_example() -> fredholm_toeplitz::Result<ZeroSet> {
    let z1 = ExactPoly::var(2, 0)?;
    let z2 = ExactPoly::var(2, 1)?;
    let tuple = SymbolTuple::new(vec![z1.sub(&z2), z1.mul(&z2)])?;
    let zs = common_zeros(&tuple, &AlgebraicConfig::default())?;
    for z in &zs.zeros {
        println!("{:?}  multiplicity {}  {:?}", z.point, z.multiplicity, z.location);
    }
    println!("quotient dimension {}, inside the bidisc {}", zs.quotient_dim, zs.total_inside);
    Ok(zs)
}

#[allow(dead_code)]
fn main() -> fredholm_toeplitz::Result<()> {
    run_example().map(|_| ())
}
