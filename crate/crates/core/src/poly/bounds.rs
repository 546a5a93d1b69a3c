use super::multi::MultiPoly;
use super::scalar::Coefficient;

/// `(Σ|c|, Σ_vars Σ e·|c|)`: bounds on `sup |p|` and on the sum of the partial
/// derivative sup-norms over the closed unit polydisc.
pub fn coefficient_bounds<C: Coefficient>(p: &MultiPoly<C>) -> (f64, f64) {
    let mut sup = 0.0;
    let mut grad = 0.0;
    for (m, c) in p.terms() {
        let a = c.abs();
        sup += a;
        grad += a * m.total_degree() as f64;
    }
    (sup, grad)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{ExactComplex, ExactPoly};

    #[test]
    fn examples() {
        let z1 = ExactPoly::var(2, 0).unwrap();
        assert_eq!(coefficient_bounds(&z1), (1.0, 1.0));
        let p = z1.pow(2).sub(&ExactPoly::constant(2, ExactComplex::from_ratio(1, 4)));
        assert_eq!(coefficient_bounds(&p), (1.25, 2.0));
        assert_eq!(coefficient_bounds(&ExactPoly::zero(2)), (0.0, 0.0));
    }
}
