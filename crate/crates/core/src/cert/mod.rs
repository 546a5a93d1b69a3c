//! Certified lower bounds for `Σ |f_i|²` on regions of the closed polydisc and
//! the essential-spectrum queries built on them.

mod bound;
pub(crate) mod search;
mod spectrum;

pub use bound::{
    univariate_symbols,
    as_condition_check, boundary_lower_bound, zero_free_on_closed_polydisc, BoundaryCertificate, CertConfig, CertVerdict,
    Witness,
};
pub use spectrum::{
    default_r_schedule, essential_spectrum_cloud, essential_spectrum_membership, Membership, SpectrumCloud,
    SpectrumConfig, SpectrumQuery,
};
