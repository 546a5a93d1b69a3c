//! Trigonometric polynomials `Σ_k c_k z^k`, `k ∈ ℤ`, on the unit circle.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::poly::json::parse_number;
use crate::poly::scalar::format_rational;
use crate::poly::{ExactComplex, ExactPoly, Monomial};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrigPoly {
    coeffs: BTreeMap<i64, ExactComplex>,
}

impl TrigPoly {
    /// Sums repeated indices and drops zero coefficients.
    pub fn new(terms: impl IntoIterator<Item = (i64, ExactComplex)>) -> Self {
        let mut coeffs: BTreeMap<i64, ExactComplex> = BTreeMap::new();
        for (k, c) in terms {
            let e = coeffs.entry(k).or_insert_with(ExactComplex::zero);
            *e = &*e + &c;
        }
        coeffs.retain(|_, c| !c.is_zero());
        Self { coeffs }
    }

    pub fn monomial(k: i64) -> Self {
        Self::new([(k, ExactComplex::one())])
    }

    /// Restriction to the circle of an analytic polynomial in the variable `var`.
    pub fn from_analytic(p: &ExactPoly, var: usize) -> Result<Self> {
        if !p.depends_only_on(var) {
            return Err(Error::Unsupported(format!("symbol {p} is not a polynomial in z{} alone", var + 1)));
        }
        Ok(Self::new(p.terms().iter().map(|(m, c)| (m.0[var] as i64, c.clone()))))
    }

    pub fn coeffs(&self) -> &BTreeMap<i64, ExactComplex> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_index(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_index(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn coeff(&self, k: i64) -> Complex64 {
        self.coeffs.get(&k).map_or(Complex64::new(0.0, 0.0), |c| c.to_complex())
    }

    /// `f(z̄)`, which reverses the Fourier indices.
    pub fn reversed(&self) -> Self {
        Self::new(self.coeffs.iter().map(|(k, c)| (-k, c.clone())))
    }

    /// `z^(−min) f` as a one-variable polynomial, with the shift `min`.
    pub fn analytic_part(&self) -> Result<(ExactPoly, i64)> {
        let shift = self.min_index().ok_or(Error::ZeroPolynomial)?;
        let p = ExactPoly::from_terms(
            1,
            self.coeffs.iter().map(|(k, c)| (Monomial(vec![(k - shift) as u32]), c.clone())),
        )?;
        Ok((p, shift))
    }

    /// Parses `{"fourier": [{"k": int, "re": num, "im": num}, …]}`.
    pub fn from_value(v: &Value, path: &str) -> Result<Self> {
        let list = v
            .get("fourier")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::parse(path, "expected an object with a \"fourier\" array"))?;
        let mut terms = Vec::with_capacity(list.len());
        for (i, t) in list.iter().enumerate() {
            let p = format!("{path}.fourier[{i}]");
            let k = t
                .get("k")
                .and_then(Value::as_i64)
                .ok_or_else(|| Error::parse(&p, "missing integer \"k\""))?;
            let part = |name: &str| match t.get(name) {
                None => Ok(num_rational::BigRational::from_integer(0.into())),
                Some(x) => parse_number(x, &format!("{p}.{name}")),
            };
            terms.push((k, ExactComplex::new(part("re")?, part("im")?)));
        }
        Ok(Self::new(terms))
    }

    pub fn to_value(&self) -> Value {
        let terms: Vec<Value> = self
            .coeffs
            .iter()
            .map(|(k, c)| json!({"k": k, "re": format_rational(&c.re), "im": format_rational(&c.im)}))
            .collect();
        json!({ "fourier": terms })
    }
}

impl fmt::Display for TrigPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(k, c)| format!("({c}) z^{k}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
