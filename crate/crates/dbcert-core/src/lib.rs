//! Certified bounds for standard double bubbles in S³ and H³, and the
//! subdivision procedures that prove positivity of the Hutchings function
//! over the volume domains that need a computer.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
// Guards are written `!(x > 0.0)` so that NaN fails them.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod asymptotics;
pub mod enclosure;
pub mod error;
pub mod geometry;
pub mod hutchings;
pub mod proof;
pub mod scalar;
pub mod sdb_h3;
pub mod sdb_s3;
pub mod solvers;

pub use enclosure::{pad_lower, pad_upper, DomainError, Enclosure, SlackConfig};
pub use error::Error;
pub use geometry::SpaceTag;
