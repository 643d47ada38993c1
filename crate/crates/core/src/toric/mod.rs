//! Toric steady states: disjoint-support kernel bases, binomial generators,
//! the sign and lattice conditions, and monomial parametrizations.

mod analyze;
mod binomial;
mod certificate;
mod enlarge;
mod param;

use thiserror::Error;

use crate::network::NetworkError;

pub use analyze::{toric_analyze, AnalyzeOptions, ToricAnalysis};
pub use binomial::{build_condition3, binomial_generators, check_condition3, Binomial, ConditionThreeData};
pub use certificate::{
    check_condition2, check_condition2_determinant, find_certificate, Condition1Failure,
    ToricCertificate,
};
pub use enlarge::{enlarge_system, monomials_of_degree, search_multipliers, EnlargedSystem, Multiplier, SearchHit};
pub use param::{
    build_parametrization, eval_parametrization, eval_parametrization_f64, rational_root,
    Parametrization, ParticularSolution, FLOAT_RESIDUAL_BOUND,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ToricError {
    #[error("Condition 2 fails: some basis vector has entries of both signs")]
    Condition2Failed,
    #[error("Condition 3 fails")]
    Condition3Failed,
    #[error("no full-rank submatrix for block {block:?}")]
    NoFullRankSubmatrix { block: Vec<usize> },
    #[error("float particular solution has relative residual {0:e}")]
    FloatResidual(f64),
    #[error("particular solution is not exact")]
    InexactParticularSolution,
    #[error("length mismatch: got {got}, expected {expected}")]
    LengthMismatch { got: usize, expected: usize },
    #[error("parameter {0} is not positive")]
    NonPositiveParameter(usize),
    #[error("equation {index} out of range (system has {equations})")]
    EquationOutOfRange { index: usize, equations: usize },
    #[error(transparent)]
    Network(#[from] NetworkError),
}
