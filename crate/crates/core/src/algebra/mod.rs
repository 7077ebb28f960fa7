//! Exact normal-form arithmetic and Hopf structure for Pol(SU_q(2)), Pol(G_q^θ) and Pol(T_θ).

mod corep;
mod element;
mod haar;
mod homogeneous;
mod hopf;
mod product;
mod rep;
mod tensor;

pub use corep::{corep_check, tensor_corep, CorepMatrix, CorepReport};
pub use element::{Algebra, Element, Generator, Monomial};
pub use haar::{conditional_expectation, haar_state, invariance_defects, weights, HaarSolver};
pub use homogeneous::{
    invariant_part, quotient_invariance_defect, quotient_to_circle, quotient_to_circle_monomial, t_degree,
};
pub use hopf::{
    adjoint, antipode, antipode_defects, antipode_monomial, coassociativity_defect, coproduct, coproduct_monomial,
    counit, counit_defects, counit_monomial, verify_generator_axioms,
};
pub use rep::{
    character, character_exact, cor24_check, Cor24Report, DenseMatrix, ExactRep, FiniteDimRep, FloatRep, RepScalar,
};
pub use tensor::TensorElement;

/// Errors raised by the symbolic engine.
#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum AlgebraError {
    #[error("algebra mismatch: {left} vs {right}")]
    AlgebraMismatch { left: Algebra, right: Algebra },
    #[error("monomial {monomial} does not belong to {algebra}")]
    ForeignMonomial { monomial: String, algebra: Algebra },
    #[error("generator {generator} is not available in {algebra}")]
    IllegalGenerator { generator: String, algebra: Algebra },
    #[error("{0} carries no Hopf structure here")]
    NotHopf(Algebra),
    #[error("tensor legs do not match")]
    LegMismatch,
    #[error("Hopf axiom violated: {0}")]
    AxiomViolated(String),
    #[error("Haar value depends on zeta")]
    ZetaDependentHaarValue,
    #[error("invariance system is not uniquely solvable (rank {rank}, {unknowns} unknowns)")]
    HaarNotUnique { rank: usize, unknowns: usize },
    #[error("invariance system is inconsistent")]
    HaarInconsistent,
    #[error("corepresentation matrix of dimension {dim} needs dim^2 entries, got {entries}")]
    NotSquare { dim: usize, entries: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("a representation of {rep} cannot evaluate elements of {element}")]
    IncompatibleRep { rep: Algebra, element: Algebra },
    #[error("relation {relation} violated (residual {residual:e})")]
    RelationViolated { relation: String, residual: f64 },
    #[error("character value has modulus {0}, expected 1")]
    NonUnitModulus(f64),
    #[error("coefficient cannot be evaluated at the given parameters")]
    NotEvaluable,
    #[error("matrix fails the corepresentation check")]
    NotACorepresentation,
}
