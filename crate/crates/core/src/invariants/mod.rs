//! Knot groups and Alexander polynomials.

mod alexander;
mod laurent;
mod wirtinger;

pub use alexander::{alexander_matrix, alexander_polynomial, determinant, fox_derivative};
pub use laurent::LaurentPoly;
pub use wirtinger::{wirtinger, GroupPresentation, Letter};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvariantError {
    #[error("expected a knot (1 component), found {0} components")]
    NotAKnot(usize),
    /// A vanishing first minor cannot happen for a valid knot diagram.
    #[error("Alexander minor vanished; the diagram is not a valid knot diagram")]
    Degenerate,
}

pub type Result<T> = std::result::Result<T, InvariantError>;
