//! Exact evaluation of the identities and bounds on one embedding.

pub mod analyzer;
pub mod arith;
pub mod census;
pub mod checks;
pub mod subgraphs;

use thiserror::Error;

use crate::geometry::projection::GenericityFailure;

pub use analyzer::{choose_frames, AcceptedFrame, AnalysisOptions, Analyzer};
pub use arith::{binomial, factorial, general_lower_bound, hamiltonian_residue, r_n, rectilinear_upper_bound};
pub use census::{census, CensusReport};
pub use checks::{
    applicable_checks, run_check, verify, BoundCheck, CheckId, CheckOutcome, CongruenceReport, IdentityReport,
    VerifyReport,
};
pub use subgraphs::k331_subembeddings;

/// Largest `n` for Hamiltonian sums without an explicit override.
pub const DEFAULT_N_CEILING: usize = 10;

#[derive(Debug, Error)]
pub enum TheoremError {
    #[error("no generic frame after {attempts} attempts (last failure: {last})")]
    FramesExhausted { attempts: usize, last: GenericityFailure },
    #[error("frames disagree on {subject}: {primary} vs {check}")]
    FrameDisagreement { subject: String, primary: i64, check: i64 },
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("n = {n} exceeds the ceiling {ceiling}; pass the override to run anyway")]
    TooLarge { n: usize, ceiling: usize },
}
