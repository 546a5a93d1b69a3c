// Essential-spectrum membership for `(z1, z2)` and a sampled cloud as CSV.

use fredholm_toeplitz::cert::{
    default_r_schedule, essential_spectrum_cloud, essential_spectrum_membership, Membership, SpectrumConfig,
};
use fredholm_toeplitz::poly::{ExactPoly, SymbolTuple};
use num_complex::Complex64;

pub fn run_example() -> fredholm_toeplitz::Result<Vec<Membership>> {
    let tuple = SymbolTuple::new(vec![ExactPoly::var(2, 0)?, ExactPoly::var(2, 1)?])?;
    let cfg = SpectrumConfig::default();
    let mut verdicts = Vec::new();
    for lambda in [[0.0, 0.0], [1.0, 0.0], [0.5, 0.2]] {
        let lambda: Vec<Complex64> = lambda.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        let q = essential_spectrum_membership(&tuple, &lambda, &default_r_schedule(), &cfg)?;
        println!(
            "λ = ({}, {}): {:?}{}, distance ≈ {:.2e}",
            lambda[0].re,
            lambda[1].re,
            q.verdict,
            if q.approximate { " (approximate)" } else { "" },
            q.distance_estimate
        );
        verdicts.push(q.verdict);
    }
    let cloud = essential_spectrum_cloud(&tuple, 0.9, 16, 1_000_000)?;
    let csv = cloud.to_csv();
    println!("cloud: {} points; first rows:", cloud.points.len());
    for line in csv.lines().take(3) {
        println!("  {line}");
    }
    Ok(verdicts)
}

#[allow(dead_code)]
fn main() -> fredholm_toeplitz::Result<()> {
    run_example().map(|_| ())
}
