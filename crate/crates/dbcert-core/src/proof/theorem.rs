//! Whole-theorem runs: the subdivision proofs for a space plus the
//! coverage grid, assembled into one certificate.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::certificate::{CheckNode, Method, Outcome, ProofCertificate, Region};
use super::coverage::coverage_grid;
use super::executor::Executor;
use super::h3::{claim, claim_ids, sample_band_h3, sweep_band_h3, H3Options};
use super::s3::{domain_rectangle, domain_triangle, rectangle_node, triangle_node, S3Options};
use crate::enclosure::SlackConfig;
use crate::error::Error;
use crate::geometry::SpaceTag;

pub const S3_COVERAGE_RESOLUTION: u32 = 400;
pub const H3_COVERAGE_RESOLUTION: u32 = 300;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProveMode {
    /// Every region of the theorem.
    Full,
    /// Full sweeps of `claims`, a few rows of each of `sampled`.
    Spot { claims: Vec<String>, sampled: Vec<String>, sample_rows: u64 },
    /// Only the ray claim.
    Ray,
}

pub const RAY_CLAIM: &str = "5.20";

impl ProveMode {
    /// The first and last claims in full, three rows of every other one.
    pub fn default_spot() -> Self {
        let ids: Vec<String> = claim_ids().map(String::from).collect();
        let ends = [ids[0].clone(), ids[ids.len() - 1].clone()];
        let sampled = ids.iter().filter(|i| !ends.contains(i)).cloned().collect();
        ProveMode::Spot { claims: ends.to_vec(), sampled, sample_rows: 3 }
    }
}

fn coverage_node(space: SpaceTag, resolution: u32) -> CheckNode {
    let outcome = match coverage_grid(space, resolution) {
        Ok(_) => Outcome::Proved,
        Err(e) => Outcome::Failed { location: format!("{} coverage grid: {e}", space.name()) },
    };
    CheckNode::leaf(Region::CoverageGrid { resolution }, Method::Coverage, 0, outcome)
}

fn named(name: String, mut n: CheckNode) -> CheckNode {
    n.note = Some(match n.note.take() {
        Some(old) => format!("{name}; {old}"),
        None => name,
    });
    n
}

pub fn prove_theorem<E: Executor>(
    space: SpaceTag,
    mode: &ProveMode,
    slack: SlackConfig,
    ex: &E,
) -> Result<ProofCertificate, Error> {
    slack.validate()?;
    let mut kids = Vec::new();
    let title = match space {
        SpaceTag::S3 => {
            if *mode == ProveMode::Ray {
                return Err(Error::UnsupportedMode("ray mode needs H3"));
            }
            let o = S3Options::new(slack);
            kids.push(named("rectangle".to_string(), rectangle_node(domain_rectangle(), &o, ex)));
            kids.push(named("triangle".to_string(), triangle_node(domain_triangle(), &o, ex)?));
            kids.push(coverage_node(space, S3_COVERAGE_RESOLUTION));
            "S3: volumes at least a tenth of the total"
        }
        SpaceTag::H3 => {
            let o = H3Options::new(slack);
            let (full, sampled, rows): (Vec<String>, Vec<String>, u64) = match mode {
                ProveMode::Full => (claim_ids().map(String::from).collect(), Vec::new(), 0),
                ProveMode::Ray => (alloc::vec![RAY_CLAIM.to_string()], Vec::new(), 0),
                ProveMode::Spot { claims, sampled, sample_rows } => (claims.clone(), sampled.clone(), *sample_rows),
            };
            for id in full.iter().chain(sampled.iter()) {
                claim(id).ok_or(Error::UnknownClaim)?;
            }
            for id in &full {
                let c = claim(id).ok_or(Error::UnknownClaim)?;
                kids.push(named(format!("claim {id}"), sweep_band_h3(&c, &o, ex)?.root));
            }
            for id in &sampled {
                let c = claim(id).ok_or(Error::UnknownClaim)?;
                kids.push(named(format!("claim {id}"), sample_band_h3(&c, rows, &o, ex)?.root));
            }
            kids.push(coverage_node(space, H3_COVERAGE_RESOLUTION));
            "H3: volume ratio at least 0.85"
        }
        SpaceTag::R3 => return Err(Error::UnsupportedMode("no subdivision proof for R3")),
    };
    let root = CheckNode::with_children(Region::Named { name: title.to_string() }, Method::Composite, 0, kids);
    Ok(ProofCertificate::new(space, slack, root))
}
