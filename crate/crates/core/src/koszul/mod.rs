//! Truncated Toeplitz matrices, Koszul complexes and their windowed homology.

pub mod complex;
pub mod homology;
pub mod lemma;
pub mod window;

pub use complex::{build_koszul, dump_matrices, stage1_sigma_min, toeplitz_matrix, KoszulConfig, KoszulTruncation};
pub use homology::{
    euler_index, homology_dims, homology_sweep, ideal_codim_window, level_dims, CodimWindow, Estimate,
    HomologyDims, LevelDims,
};
pub use lemma::range_sum_check;
pub use window::MonomialWindow;
