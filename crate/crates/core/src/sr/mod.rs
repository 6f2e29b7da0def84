//! The Stanley–Reisner ring with its degree-and-character grading.

pub mod formulas;
pub mod hilbert;
pub mod lsop;
pub mod quotient;
pub mod ring;

pub use hilbert::{FineHilbert, RationalTable};
pub use lsop::{build_generic_lsop, build_lsop, is_lsop, Lsop, LsopCertificate};
pub use quotient::{
    artinian_fine_hilbert, lefschetz_probe, pairing_report, sigma_fine, sigma_is_stable,
    LefschetzReport, PairingReport, QuotientEngine, SigmaTables,
};
pub use ring::{GradedRing, LinearForm};
