//! Index of polynomial pairs from their common zeros in the open bidisc.

pub mod groebner;
pub mod quotient;
mod reduce;
mod zeros;

pub use reduce::{gcd_reduce, GcdReduction};
pub use zeros::{
    algebraic_index, common_zeros, zero_dimensionality, AlgebraicConfig, Dimensionality, Location, Zero, ZeroSet,
};
