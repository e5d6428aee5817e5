//! Defect, Butson class, equivalence testing and the 3x3 submatrix scan.

mod butson;
mod defect;
mod equivalence;
mod fingerprint;
pub(crate) mod permsearch;
mod reduce;

pub use butson::{butson_class, BUTSON_TOL};
pub use defect::{defect, defect_system, DefectReport, DEFAULT_RANK_TOL, GAP_MIN};
pub use equivalence::{
    equivalent, search as equivalence_search, Distinction, EquivalenceVerdict, EquivalenceWitness, DEFAULT_NODE_BUDGET,
    WITNESS_TOL,
};
pub use fingerprint::{haagerup_fingerprint, HaagerupFingerprint};
pub use reduce::{fourier_butson_defect, h3_submatrix_scan, Triple, H3_TOL};
