//! Index formulas for tuples of one-variable symbols.

mod index;
mod trig;

pub use index::{
    disc_tuple_index, separated_tuple_index, tensor_tuple_index, trig_toeplitz_index, DiscIndexReport, FactorIndex,
    TensorFactor, TensorIndexReport, TupleIndex,
};
pub use trig::TrigPoly;
