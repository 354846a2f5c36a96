//! Polynomials, differential forms and their graded pieces.

pub mod forms;
pub mod graded;
mod parse;
pub mod poly;
pub mod unfolded;

pub use forms::{index_tuples, IndexTuple, PForm, VectorField};
pub(crate) use forms::wedge_or_zero;
pub use graded::{graded_piece_basis, GradedSpace, GradedSubspace, Shape};
pub use poly::{default_names, rat, ratio, ExponentVector, Polynomial, Rational};
pub use unfolded::{UnfoldedForm, WedgeLayers};
