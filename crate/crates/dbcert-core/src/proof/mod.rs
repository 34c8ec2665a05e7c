//! Subdivision proofs and their certificates.

pub mod certificate;
pub mod coord;
pub mod coverage;
pub mod executor;
pub mod h3;
pub mod s3;
pub mod theorem;

pub use certificate::{verify_certificate, CheckNode, Method, Outcome, ProofCertificate, Region, VerifyError, VerifyReport};
pub use coord::Coord;
pub use executor::{Executor, Sequential};
pub use coverage::{classify_coverage, coverage_grid, Primitive, ReductionChain, ReductionStep, VolumeTriple};
pub use theorem::{prove_theorem, ProveMode};
