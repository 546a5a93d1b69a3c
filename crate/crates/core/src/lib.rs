//! Fredholmness and index of Toeplitz tuples with polynomial symbols on the
//! Hardy space of the polydisc.

pub mod algebraic;
pub mod cert;
pub mod error;
pub mod koszul;
pub mod linalg;
pub mod numfmt;
pub mod oracle;
pub mod poly;
pub mod report;
pub mod tensor;

pub use error::{Error, Result};
