//! Polynomial arithmetic in exact and floating modes.

pub mod bounds;
pub mod dense;
pub mod gcd;
pub mod json;
pub mod multi;
pub mod resultant;
pub mod scalar;

pub use bounds::coefficient_bounds;
pub use gcd::{divide_bivariate, gcd_bivariate, gcd_univariate};
pub use multi::{poly_arith, poly_eval, ExactPoly, FloatPoly, Monomial, MultiPoly, PolyOp, SymbolTuple};
pub use resultant::resultant;
pub use scalar::{ArithmeticMode, Coefficient, ExactComplex};
