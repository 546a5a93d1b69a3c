//! Text forms of floating-point values used in reports.

use num_complex::Complex64;
use serde::ser::{SerializeSeq, Serializer};

/// Decimal string with 17 significant digits, enough to round-trip any `f64`.
pub fn sig17(x: f64) -> String {
    format!("{x:.16e}")
}

pub(crate) fn serialize_sig17<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&sig17(*x))
}

/// Serializes a point as `[["re", "im"], …]`.
pub(crate) fn serialize_point<S: Serializer>(z: &[Complex64], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(z.len()))?;
    for c in z {
        seq.serialize_element(&[sig17(c.re), sig17(c.im)])?;
    }
    seq.end()
}

pub(crate) fn serialize_points<S: Serializer>(pts: &[Vec<Complex64>], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(pts.len()))?;
    for p in pts {
        let row: Vec<[String; 2]> = p.iter().map(|c| [sig17(c.re), sig17(c.im)]).collect();
        seq.serialize_element(&row)?;
    }
    seq.end()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        for x in [0.1, -1.0 / 3.0, 1e-300, 12345.678] {
            let s = sig17(x);
            assert_eq!(s.parse::<f64>().unwrap(), x);
        }
        assert_eq!(sig17(0.25), "2.5000000000000000e-1");
    }
}
