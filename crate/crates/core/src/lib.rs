//! Exact computations with codimension-one foliations given by polynomial
//! 1-forms: integrability, singular and persistent ideals, unfoldings,
//! extension spaces and hyperplane extensions on projective space.

pub mod error;
pub mod foliation;
pub mod linalg;
pub mod logfol;
pub mod polyforms;
pub mod projective;
mod system;
pub mod unfolding;

pub use error::{Error, Result};
pub use foliation::{Completeness, Foliation};
pub use logfol::LogFoliationSpec;
pub use projective::{HyperplaneExtension, ProjectiveFoliation};
pub use polyforms::{
    graded_piece_basis, rat, ratio, ExponentVector, GradedSpace, GradedSubspace, PForm, Polynomial, Rational,
    Shape, UnfoldedForm, VectorField,
};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/polynomials-and-forms.md")]
    mod polynomials_and_forms {}
    #[doc = include_str!("../../../book/src/integrability.md")]
    mod integrability {}
    #[doc = include_str!("../../../book/src/persistent.md")]
    mod persistent {}
    #[doc = include_str!("../../../book/src/unfoldings.md")]
    mod unfoldings {}
    #[doc = include_str!("../../../book/src/projective.md")]
    mod projective {}
    #[doc = include_str!("../../../book/src/logarithmic.md")]
    mod logarithmic {}
}
