//! Exact symbolic verification: sparse polynomials, determinants, and the
//! weighted counting identities behind the codes.

pub mod matrix;
pub mod poly;
pub mod weights;

pub use matrix::{det_int, SymMatrix, DET_BOUND};
pub use poly::{Mono, MultiPoly, Var};
pub use weights::{
    code_stats, edge_weight, laplacian, mtt_check, tree_stats, tree_weight, tree_weight_sum,
    ucsd_product, uniform_b_closed_form, DegreeRow, DegreeStats, Weighting,
};
