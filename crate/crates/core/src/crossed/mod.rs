//! The crossed product Pol(G_q^θ) and the noncommutative torus at the numerical level:
//! shift coefficients, torus models, the block-matrix form and norm comparisons.

mod blocks;
mod torus;

pub use blocks::{
    alpha_degree, assemble_matrix_form, build_crossed_rep, cq, cq_squared_exact, decompose_by_alpha_degree,
    matrix_form_cross_check, norm_agreement_experiment, reassemble, shift_decomposition, shift_decomposition_report,
    torus_uniqueness_demo, BlockForm, ShiftDecomposition,
};
pub use torus::{build_torus_rep, TorusModel, TorusRep};
