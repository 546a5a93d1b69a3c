//! Argument-principle winding numbers of one-variable symbols.

use num_complex::Complex64;

use super::OracleConfig;
use crate::error::{Error, Result};
use crate::linalg::horner;
use crate::poly::ExactPoly;

fn dense_float(p: &ExactPoly) -> Result<Vec<Complex64>> {
    if p.nvars() != 1 {
        return Err(Error::UnsupportedNvars(p.nvars()));
    }
    let deg = p.degree_in(0).unwrap_or(0) as usize;
    let mut c = vec![Complex64::new(0.0, 0.0); deg + 1];
    for (m, v) in p.terms() {
        c[m.0[0] as usize] = v.to_complex();
    }
    Ok(c)
}

/// Trapezoidal mean of `z p'(z) / p(z)` over `n` points of the circle, or the
/// smallest sampled modulus when nonvanishing on the circle is not certified.
fn quadrature(c: &[Complex64], dc: &[Complex64], radius: f64, n: usize) -> std::result::Result<f64, f64> {
    // |p'| on the circle is at most Σ k |c_k| r^(k-1)
    let lip: f64 = dc.iter().enumerate().map(|(k, d)| d.norm() * radius.powi(k as i32)).sum();
    let half_gap = std::f64::consts::PI * radius / n as f64;
    let mut min = f64::INFINITY;
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..n {
        let z = Complex64::from_polar(radius, std::f64::consts::TAU * k as f64 / n as f64);
        let v = horner(c, z);
        min = min.min(v.norm());
        acc += z * horner(dc, z) / v;
    }
    if !(min - lip * half_gap > 0.0) {
        return Err(min);
    }
    Ok(acc.re / n as f64)
}

/// Winding number of `p` around the circle `|z| = radius`, by trapezoidal
/// quadrature of the logarithmic derivative. Nonvanishing on the contour is
/// certified from the samples and a Lipschitz bound. The point count is
/// doubled, up to 128 times the configured count, until that certificate holds.
pub fn winding_number(p: &ExactPoly, radius: f64, cfg: &OracleConfig) -> Result<i64> {
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::RadiusOutOfRange(radius));
    }
    if cfg.quadrature_points < 64 {
        return Err(Error::Oracle(format!(
            "need at least 64 quadrature points, got {}",
            cfg.quadrature_points
        )));
    }
    let c = dense_float(p)?;
    if c.iter().all(|x| x.norm() == 0.0) {
        return Err(Error::ContourVanishing { min: 0.0 });
    }
    let dc: Vec<Complex64> = c.iter().enumerate().skip(1).map(|(k, x)| x * k as f64).collect();
    let mut last = Err(Error::ContourVanishing { min: 0.0 });
    for n in (0..8).map(|s| cfg.quadrature_points << s) {
        match quadrature(&c, &dc, radius, n) {
            // a sampled zero will not lift with more points
            Err(min) if min == 0.0 => return Err(Error::ContourVanishing { min }),
            Err(min) => last = Err(Error::ContourVanishing { min }),
            Ok(value) => {
                if (value - value.round()).abs() <= 0.25 {
                    return Ok(value.round() as i64);
                }
                last = Err(Error::NonIntegerWinding { value });
            }
        }
    }
    last
}

/// Index of the Toeplitz operator with analytic symbol `p` on the Hardy space
/// of the disc: minus the winding number around the unit circle.
pub fn univariate_index(p: &ExactPoly) -> Result<i64> {
    match winding_number(p, 1.0, &OracleConfig::default()) {
        Ok(w) => Ok(-w),
        Err(Error::ContourVanishing { min }) => Err(Error::NotFredholm(format!(
            "symbol vanishes on the unit circle (min sampled modulus {min:e})"
        ))),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::ExactComplex;

    fn z() -> ExactPoly {
        ExactPoly::var(1, 0).unwrap()
    }

    fn k(a: i64, b: i64) -> ExactPoly {
        ExactPoly::constant(1, ExactComplex::from_ratio(a, b))
    }

    #[test]
    fn examples() {
        let cfg = OracleConfig::default();
        assert_eq!(winding_number(&z().pow(3), 1.0, &cfg).unwrap(), 3);
        assert_eq!(winding_number(&z().sub(&k(2, 1)), 1.0, &cfg).unwrap(), 0);
        assert_eq!(winding_number(&z().pow(2).sub(&k(1, 4)), 1.0, &cfg).unwrap(), 2);
        assert_eq!(univariate_index(&z()).unwrap(), -1);
        assert_eq!(univariate_index(&z().pow(2)).unwrap(), -2);
        assert_eq!(univariate_index(&z().sub(&k(1, 2)).mul(&z().sub(&k(3, 1)))).unwrap(), -1);
    }

    #[test]
    fn vanishing_on_circle() {
        assert!(matches!(univariate_index(&z().sub(&k(1, 1))), Err(Error::NotFredholm(_))));
        assert!(matches!(
            winding_number(&z().sub(&k(1, 2)), 0.5, &OracleConfig::default()),
            Err(Error::ContourVanishing { .. })
        ));
    }
}
