//! Relative involutive divisions on degree slices of the monomial semigroup.
//!
//! The crate covers exact term arithmetic, construction and validation of
//! divisions, exhaustive enumeration up to variable symmetry, the graphs that
//! propagate cone membership, closure operators yielding monomial ideals and
//! escaliers, and bounded brute-force oracles used to cross-check all of it.

pub mod binomial;
pub mod builder;
pub mod classical;
pub mod closures;
pub mod division;
pub mod enumerate;
pub mod error;
pub mod graphs;
pub mod json;
pub mod oracle;
pub mod term;

pub use binomial::{binomial, sigma_expected, slice_size, vandermonde_identity_check};
pub use division::{DivisionKind, RelDivision, ValidationReport, Violation, XTable};
pub use error::{Error, Result};


pub use term::{enumerate_terms, Term, TermSet, VarSet};
