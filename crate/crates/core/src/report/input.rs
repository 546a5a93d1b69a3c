//! Job input files: a symbol tuple or a list of tensor factors, with an
//! optional spectral parameter.

use std::path::Path;

use num_complex::Complex64;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::poly::json::{parse_number, tuple_from_value, tuple_to_value};
use crate::poly::scalar::ratio_to_f64;
use crate::poly::SymbolTuple;
use crate::tensor::{TensorFactor, TrigPoly};

#[derive(Debug, Clone, PartialEq)]
pub enum JobInput {
    Tuple(SymbolTuple),
    Tensor(Vec<TensorFactor>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParsedInput {
    pub input: JobInput,
    pub lambda: Option<Vec<Complex64>>,
    /// Canonical form (sorted terms, reduced rationals) used for hashing and echo.
    pub canonical: Value,
}

fn parse_lambda(v: &Value) -> Result<Vec<Complex64>> {
    let items = v.as_array().ok_or_else(|| Error::parse("lambda", "expected an array"))?;
    items
        .iter()
        .enumerate()
        .map(|(i, item)| {
            let path = format!("lambda[{i}]");
            let part = |name: &str| match item.get(name) {
                None => Ok(0.0),
                Some(x) => parse_number(x, &format!("{path}.{name}")).map(|q| ratio_to_f64(&q)),
            };
            if !item.is_object() {
                return Err(Error::parse(&path, "expected {\"re\": …, \"im\": …}"));
            }
            Ok(Complex64::new(part("re")?, part("im")?))
        })
        .collect()
}

fn parse_factors(v: &Value) -> Result<Vec<TensorFactor>> {
    let items = v.as_array().ok_or_else(|| Error::parse("factors", "expected an array"))?;
    items
        .iter()
        .enumerate()
        .map(|(i, item)| {
            let path = format!("factors[{i}]");
            let var = match item.get("var") {
                None => i,
                Some(x) => x
                    .as_u64()
                    .map(|x| x as usize)
                    .ok_or_else(|| Error::parse(format!("{path}.var"), "expected a variable index"))?,
            };
            Ok(TensorFactor {
                var,
                symbol: TrigPoly::from_value(item, &path)?,
            })
        })
        .collect()
}

/// Parses input JSON text; errors carry the JSON path or line and column.
pub fn parse_input(text: &str) -> Result<ParsedInput> {
    let v: Value = serde_json::from_str(text)
        .map_err(|e| Error::parse(format!("line {}, column {}", e.line(), e.column()), e.to_string()))?;
    let lambda = match v.get("lambda") {
        None | Some(Value::Null) => None,
        Some(l) => Some(parse_lambda(l)?),
    };
    let (input, mut canonical) = if let Some(f) = v.get("factors") {
        let factors = parse_factors(f)?;
        let canon: Vec<Value> = factors
            .iter()
            .map(|f| {
                let mut t = f.symbol.to_value();
                t["var"] = json!(f.var);
                t
            })
            .collect();
        (JobInput::Tensor(factors), json!({ "factors": canon }))
    } else {
        let t = tuple_from_value(&v)?;
        let canon = tuple_to_value(&t);
        (JobInput::Tuple(t), canon)
    };
    if let Some(l) = &lambda {
        canonical["lambda"] = json!(l.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>());
    }
    Ok(ParsedInput {
        input,
        lambda,
        canonical,
    })
}

pub fn read_input(path: &Path) -> Result<ParsedInput> {
    let text = std::fs::read_to_string(path)?;
    parse_input(&text).map_err(|e| match e {
        Error::Parse { path: p, message } => Error::parse(format!("{}: {p}", path.display()), message),
        other => other,
    })
}
