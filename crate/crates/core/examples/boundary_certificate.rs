// Certified lower bound of `|f1|² + |f2|²` near the torus, and a failure
// with a witness point when the symbols share a zero there.

use fredholm_toeplitz::cert::{boundary_lower_bound, BoundaryCertificate, CertConfig};
use fredholm_toeplitz::poly::{ExactPoly, SymbolTuple};

pub fn run_example() -> fredholm_toeplitz::Result<(BoundaryCertificate, BoundaryCertificate)> {
    let z1 = ExactPoly::var(2, 0)?;
    let z2 = ExactPoly::var(2, 1)?;
    let cfg = CertConfig::default();
    let good = boundary_lower_bound(&SymbolTuple::new(vec![z1.clone(), z2])?, 0.5, &cfg)?;
    println!("(z1, z2), r = 0.5: {:?}, c = {:.4}, mesh {}", good.verdict, good.c, good.mesh);
    let bad = boundary_lower_bound(&SymbolTuple::new(vec![z1.clone(), z1])?, 0.5, &cfg)?;
    let w = bad.witness.as_ref().expect("failed certificates carry a witness");
    println!("(z1, z1), r = 0.5: {:?}, witness {:?} with value {:e}", bad.verdict, w.point, w.value);
    Ok((good, bad))
}

#[allow(dead_code)]
fn main() -> fredholm_toeplitz::Result<()> {
    run_example().map(|_| ())
}
