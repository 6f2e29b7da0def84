//! Fine (Z x G)-graded invariants of Stanley–Reisner rings of simplicial
//! complexes carrying a free action of a cyclic group of prime order.

pub mod action;
pub mod catalog;
pub mod cohomology;
pub mod complex;
pub mod error;
pub mod io;
pub mod koszul;
pub mod linalg;
pub mod monomial;
pub mod sr;
pub mod verify;

pub use action::{validate_action, ActionReport, CyclicAction};
pub use complex::{Face, SimplicialComplex};
pub use error::{Error, Result};
pub use monomial::ExponentVector;
