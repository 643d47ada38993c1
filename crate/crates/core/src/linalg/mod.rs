//! Exact linear algebra over `Z` and `Q`.

pub mod echelon;
pub mod lattice;
pub mod lp;
pub mod matrix;

use thiserror::Error;

pub use echelon::{
    det_bareiss, integer_rows_rank, kernel_basis, positively_proportional, primitive_integer,
    rank, rref, RowEchelon,
};
pub use lattice::{
    exact_root, gcd_of, hermite_normal_form, integer_complement, integer_kernel, is_primitive,
    HermiteForm,
};
pub use lp::{lp_feasible, nonnegative_solution, point_with_signs, sign_vector, Sign};
pub use matrix::{dot, int_rat, rat, Integer, IntegerMatrix, Matrix, Rational, RationalMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
}
