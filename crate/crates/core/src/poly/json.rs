//! JSON form of polynomials and symbol tuples.
//!
//! A polynomial is `{"nvars": 2, "terms": [{"exp": [1, 0], "re": "1/2", "im": 0}]}`.
//! Coefficients may be strings (`"p/q"`, integers, decimals) or JSON numbers;
//! numbers are read through their decimal text, so `0.1` means exactly 1/10.
//! Serialization always writes canonical rational strings, which round-trips
//! exactly.

use std::collections::BTreeMap;

use num_rational::BigRational;
use serde_json::{json, Value};

use super::multi::{ExactPoly, Monomial, SymbolTuple, MAX_NVARS};
use super::scalar::{format_rational, parse_rational, ExactComplex};
use crate::error::{Error, Result};

fn field<'a>(v: &'a Value, key: &str, path: &str) -> Result<&'a Value> {
    v.get(key)
        .ok_or_else(|| Error::parse(path, format!("missing field \"{key}\"")))
}

fn as_usize(v: &Value, path: &str) -> Result<usize> {
    v.as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| Error::parse(path, "expected a non-negative integer"))
}

pub(crate) fn parse_number(v: &Value, path: &str) -> Result<BigRational> {
    let text = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        _ => return Err(Error::parse(path, "expected a number or rational string")),
    };
    parse_rational(&text).map_err(|e| match e {
        Error::Parse { message, .. } => Error::parse(path, message),
        other => other,
    })
}

/// Parses a polynomial; `default_nvars` applies when the object has no `nvars`.
pub fn poly_from_value(v: &Value, default_nvars: Option<usize>, path: &str) -> Result<ExactPoly> {
    let nvars = match v.get("nvars") {
        Some(n) => as_usize(n, &format!("{path}.nvars"))?,
        None => default_nvars.ok_or_else(|| Error::parse(path, "missing field \"nvars\""))?,
    };
    if nvars == 0 || nvars > MAX_NVARS {
        return Err(Error::parse(
            format!("{path}.nvars"),
            format!("variable count {nvars} not in 1..=3"),
        ));
    }
    let terms = field(v, "terms", path)?
        .as_array()
        .ok_or_else(|| Error::parse(format!("{path}.terms"), "expected an array"))?;
    let mut parsed = Vec::with_capacity(terms.len());
    for (i, t) in terms.iter().enumerate() {
        let tp = format!("{path}.terms[{i}]");
        let exp = field(t, "exp", &tp)?
            .as_array()
            .ok_or_else(|| Error::parse(format!("{tp}.exp"), "expected an array"))?;
        if exp.len() != nvars {
            return Err(Error::parse(
                format!("{tp}.exp"),
                format!("expected {nvars} exponents, found {}", exp.len()),
            ));
        }
        let e = exp
            .iter()
            .enumerate()
            .map(|(j, x)| {
                x.as_u64()
                    .and_then(|n| u32::try_from(n).ok())
                    .ok_or_else(|| Error::parse(format!("{tp}.exp[{j}]"), "expected a non-negative integer"))
            })
            .collect::<Result<Vec<u32>>>()?;
        let re = match t.get("re") {
            Some(x) => parse_number(x, &format!("{tp}.re"))?,
            None => BigRational::default(),
        };
        let im = match t.get("im") {
            Some(x) => parse_number(x, &format!("{tp}.im"))?,
            None => BigRational::default(),
        };
        parsed.push((Monomial(e), ExactComplex::new(re, im)));
    }
    ExactPoly::from_terms(nvars, parsed)
}

pub fn poly_to_value(p: &ExactPoly) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .iter()
        .map(|(m, c)| {
            json!({
                "exp": m.0,
                "re": format_rational(&c.re),
                "im": format_rational(&c.im),
            })
        })
        .collect();
    json!({"nvars": p.nvars(), "terms": terms})
}

/// Parses `{"nvars": n, "symbols": [...], "variable_assignment": {"0": 0, ...}}`.
pub fn tuple_from_value(v: &Value) -> Result<SymbolTuple> {
    let nvars = match v.get("nvars") {
        Some(n) => Some(as_usize(n, "nvars")?),
        None => None,
    };
    let symbols = field(v, "symbols", "")?
        .as_array()
        .ok_or_else(|| Error::parse("symbols", "expected an array"))?;
    if symbols.is_empty() {
        return Err(Error::parse("symbols", "at least one symbol is required"));
    }
    let polys = symbols
        .iter()
        .enumerate()
        .map(|(i, s)| poly_from_value(s, nvars, &format!("symbols[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    if let Some(n) = nvars {
        if let Some(i) = polys.iter().position(|p| p.nvars() != n) {
            return Err(Error::parse(
                format!("symbols[{i}].nvars"),
                format!("expected {n} variables"),
            ));
        }
    }
    let tuple = SymbolTuple::new(polys)?;
    match v.get("variable_assignment") {
        None | Some(Value::Null) => Ok(tuple),
        Some(Value::Object(map)) => {
            let mut assignment = BTreeMap::new();
            for (k, val) in map {
                let path = format!("variable_assignment.{k}");
                let s: usize = k
                    .parse()
                    .map_err(|_| Error::parse(&path, "key must be a symbol index"))?;
                assignment.insert(s, as_usize(val, &path)?);
            }
            tuple
                .with_assignment(assignment)
                .map_err(|e| Error::parse("variable_assignment", e.to_string()))
        }
        Some(_) => Err(Error::parse("variable_assignment", "expected an object")),
    }
}

pub fn tuple_to_value(t: &SymbolTuple) -> Value {
    let mut v = json!({
        "nvars": t.nvars(),
        "symbols": t.symbols().iter().map(poly_to_value).collect::<Vec<_>>(),
    });
    if let Some(a) = t.variable_assignment() {
        let map: serde_json::Map<String, Value> =
            a.iter().map(|(s, var)| (s.to_string(), json!(var))).collect();
        v["variable_assignment"] = Value::Object(map);
    }
    v
}

pub fn tuple_from_str(s: &str) -> Result<SymbolTuple> {
    tuple_from_value(&serde_json::from_str(s)?)
}

pub(crate) fn serialize_poly<S: serde::Serializer>(p: &ExactPoly, s: S) -> std::result::Result<S::Ok, S::Error> {
    serde::Serialize::serialize(&poly_to_value(p), s)
}

pub(crate) fn serialize_tuple<S: serde::Serializer>(t: &SymbolTuple, s: S) -> std::result::Result<S::Ok, S::Error> {
    serde::Serialize::serialize(&tuple_to_value(t), s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_exact() {
        let text = r#"{"nvars":2,"symbols":[
            {"terms":[{"exp":[2,0],"re":"1","im":"0"},{"exp":[0,0],"re":"-1/4","im":"1/3"}]},
            {"terms":[{"exp":[0,1],"re":0.1,"im":0}]}]}"#;
        let t = tuple_from_str(text).unwrap();
        assert_eq!(
            t.symbols()[1].coeff(&Monomial(vec![0, 1])),
            ExactComplex::from_ratio(1, 10)
        );
        let back = tuple_from_value(&tuple_to_value(&t)).unwrap();
        assert_eq!(back, t);
        assert_eq!(tuple_to_value(&back), tuple_to_value(&t));
    }

    #[test]
    fn errors_carry_paths() {
        let text = r#"{"nvars":2,"symbols":[{"terms":[{"exp":[1,0],"re":"x"}]}]}"#;
        match tuple_from_str(text) {
            Err(Error::Parse { path, .. }) => assert_eq!(path, "symbols[0].terms[0].re"),
            other => panic!("unexpected {other:?}"),
        }
        let text = r#"{"nvars":2,"symbols":[{"terms":[{"exp":[1],"re":"1"}]}]}"#;
        match tuple_from_str(text) {
            Err(Error::Parse { path, .. }) => assert_eq!(path, "symbols[0].terms[0].exp"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn assignment_is_validated() {
        let ok = r#"{"nvars":2,"symbols":[{"terms":[{"exp":[1,0],"re":1}]},{"terms":[{"exp":[0,2],"re":1}]}],
            "variable_assignment":{"0":0,"1":1}}"#;
        assert!(tuple_from_str(ok).is_ok());
        let bad = ok.replace(r#""1":1"#, r#""1":0"#);
        assert!(tuple_from_str(&bad).is_err());
    }
}
