// Product formula for tuples of one-variable symbols, including a
// trigonometric factor `e^{2iθ} + e^{-iθ}/4`.

use fredholm_toeplitz::poly::ExactComplex;
use fredholm_toeplitz::tensor::{tensor_tuple_index, TensorFactor, TensorIndexReport, TrigPoly};

pub fn run_example() -> fredholm_toeplitz::Result<TensorIndexReport> {
    let trig = TrigPoly::new([(2, ExactComplex::one()), (-1, ExactComplex::from_ratio(1, 4))]);
    let factors = TensorFactor::sequential(vec![trig, TrigPoly::monomial(3)]);
    let report = tensor_tuple_index(&factors)?;
    for (f, idx) in factors.iter().zip(&report.per_factor) {
        println!("z{}: {}  index {:?}", f.var + 1, f.symbol, idx.index);
    }
    println!("tuple index {:?}", report.tuple_index);
    Ok(report)
}

#[allow(dead_code)]
fn main() -> fredholm_toeplitz::Result<()> {
    run_example().map(|_| ())
}
