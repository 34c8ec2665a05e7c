use core::fmt;

use crate::enclosure::{DomainError, SlackError};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Error {
    Domain(DomainError),
    Slack(SlackError),
    DegenerateConfig(&'static str),
    NoConvergence(&'static str),
    InfeasibleBand,
    RegionViolation(&'static str),
    InfeasibleTarget(&'static str),
    StepFailure { v: f64, w: f64 },
    CurvatureUnderflow { k1: f64, k2: f64 },
    DepthExceeded,
    Uncovered,
    UnknownClaim,
    UnsupportedMode(&'static str),
}

impl From<DomainError> for Error {
    fn from(e: DomainError) -> Self {
        Error::Domain(e)
    }
}

impl From<SlackError> for Error {
    fn from(e: SlackError) -> Self {
        Error::Slack(e)
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(e) => write!(f, "{e}"),
            Error::Slack(e) => write!(f, "{e}"),
            Error::DegenerateConfig(m) => write!(f, "degenerate configuration: {m}"),
            Error::NoConvergence(m) => write!(f, "solver did not converge: {m}"),
            Error::InfeasibleBand => f.write_str("band width must exceed the slack"),
            Error::RegionViolation(m) => write!(f, "volumes outside the admissible region: {m}"),
            Error::InfeasibleTarget(m) => write!(f, "infeasible target: {m}"),
            Error::StepFailure { v, w } => write!(f, "curvature step failed near (v, w) = ({v}, {w})"),
            Error::CurvatureUnderflow { k1, k2 } => {
                write!(f, "curvature parameter left (1, ∞): k1 = {k1}, k2 = {k2}")
            }
            Error::DepthExceeded => f.write_str("subdivision depth budget exhausted"),
            Error::Uncovered => f.write_str("no reduction chain covers this point"),
            Error::UnknownClaim => f.write_str("unknown claim id"),
            Error::UnsupportedMode(m) => write!(f, "unsupported mode: {m}"),
        }
    }
}
