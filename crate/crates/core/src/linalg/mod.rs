//! Exact scalar arithmetic and sparse elimination.

pub mod cyclotomic;
pub mod echelon;
pub mod field;
pub mod modular;
pub mod signed;
pub mod sparse;

pub use cyclotomic::Cyclotomic;
pub use echelon::{
    eigenspace_basis, eigenspace_dim, kernel_basis, rank, rank_prescreened, RowEchelon,
};
pub use field::{rat, rat_frac, Field, Rational};
pub use signed::SignedPermutation;
pub use sparse::{SparseMatrix, SparseVec};
