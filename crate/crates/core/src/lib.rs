//! Indices of collections of sections and 1-forms at isolated singular
//! points, computed as the colength of a determinantal ideal in the local
//! ring at the origin.
//!
//! The pipeline: assemble the polynomial matrices whose columns are the
//! section (or 1-form) coefficient vectors, take their maximal minors,
//! compute a standard basis of the resulting ideal under a local monomial
//! order, and count the staircase. An independent truncated-linear-algebra
//! oracle cross-checks every colength.

pub mod index;
pub mod minors;
pub mod oracle;
pub mod polyring;
pub mod problem;
pub mod standard_basis;

pub use index::{compute_index, validate, IndexResult, IndexValue, Mode, ProblemSpec};
pub use polyring::{MonomialOrder, Polynomial, Ring};
pub use standard_basis::Budget;
