//! Finite truncations of the concrete representation of Pol(SU_q(2)) and of the
//! restricted half-circle representation; norms, spectra and the separation experiment.

mod chebyshev;
mod eval;
mod rep;
mod separation;

pub use chebyshev::{chebyshev_approx, ChebApprox, ChebPoly, ChebTarget, ERROR_GRID};
pub use eval::{
    eval_coefficient, eval_element, eval_element_with, multiplicativity_defect, spectral_scaling_diagnostic,
    spectrum_gamma_star_gamma, Bindings, Evaluator, ScalingBranch, ScalingDirection,
};
pub use rep::{
    build_full_rep, build_grid_rep, root_of_unity, GridParams, GridPoint, GridRep, Region, RelationResidual,
    RepParams, Representation, ThetaSpec, TruncatedRep, LEVEL_TOLERANCE,
};
#[allow(unused_imports)]
pub(crate) use rep::{check_q, level_shift_alpha};
pub use separation::{
    imaginary_part_element, injectivity_diagnostic, injectivity_monomials, norm_separation_experiment, Injectivity,
    SeparationParams, SeparationTarget, INJECTIVITY_NORMALIZATION, NEGATIVE_Q_DAMPING,
};
