//! Exact arithmetic over small finite fields (`q = p^m <= 2^16`) with three
//! layers on top:
//!
//! * point counting for hypersurfaces cut out by linear combinations of
//!   complete homogeneous symmetric polynomials ([`symhyp`]);
//! * generalized Vandermonde matrices whose determinants factor through
//!   those combinations ([`vander`]);
//! * Reed-Solomon codes on the full point set, with deep-hole
//!   classification via that factorization ([`rs`]).
//!
//! The [`verify`] module packages exhaustive and seeded-sampling experiment
//! drivers over these layers, producing machine-readable reports.
//!
//! Everything is deterministic: field construction picks a canonical
//! modulus and generator, enumeration orders are fixed (colexicographic
//! for subsets, odometer for tuples), and sampling is seeded.

pub mod error;
pub mod gf;
pub mod matrix;
pub mod poly;
pub mod rs;
pub mod symhyp;
pub mod vander;
pub mod verify;

pub(crate) mod combin;

pub use error::{Error, Result};
pub use gf::{Field, FieldDescriptor, FieldElement, MAX_ORDER};
pub use matrix::Matrix;
pub use poly::UniPoly;
pub use rs::{
    first_singular_cols, is_mds, seroussi_roth_test, DeepHoleVerdict, RsCode, SyndromeVector,
};
pub use symhyp::{
    count_points, count_points_distinct, count_points_distinct_naive, count_points_naive,
    reduction_profile, CompleteSymPoly, CountKind, CountMethod, PointCount, ReductionProfile,
    DEFAULT_BUDGET,
};
pub use vander::{companion, Companion, GenVanderInstance};
pub use verify::{
    sampled_companion_cross_check, scan_deep_holes, subset_escape_check, subset_sum_bridge,
    verify_conj_nonzeros, verify_remarks, verify_thm_even, verify_thm_main, ExperimentReport,
    ScanOptions, Verdict, Violation,
};
