//! Which argument handles a given volume triple.
//!
//! Each triple is pushed through balancing, relabeling and averaging steps
//! until it lands in a region settled either by a subdivision proof or by an
//! analytic bound.

use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::geometry::SpaceTag;
use crate::hutchings::critical_ratio;

/// Below this both bubbles sit in the small-volume regime.
pub const H3_SMALL: f64 = 0.002743;
/// Top of the fully swept H³ band.
pub const H3_SWEPT: f64 = 150.0;
/// Top of the ray sweep; beyond it the asymptotic bounds take over.
pub const H3_RAY_END: f64 = 300.0;
/// Smallest fraction of |S³| in the S³ theorem.
pub const S3_MIN_FRACTION: f64 = 0.1;
/// Smallest ratio `min/max` in the H³ theorem.
pub const H3_MIN_RATIO: f64 = 0.85;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReductionStep {
    /// `(v, w) → ((v+w)/2, (v+w)/2)` when `w < v ≤ 2w`.
    SBalancing { v: f64, w: f64 },
    /// Swap the roles of `w` and `u` (S³ only).
    Permutation,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Primitive {
    /// `v > 2w` (or `v > 2u` in S³): the region of volume `v` is connected.
    HutchingsBalancing,
    /// `0.1 ≤ v̄ ≤ min(w̄, 1 − 2w̄)`: the S³ rectangle and triangle proofs.
    S3Computer,
    /// `v ≤ w ≤ 150`, `v ≥ 0.85w`, `w` at least the small-volume threshold.
    H3Computer,
    /// `150 < w ≤ 300`: the ray sweep plus `∂F/∂v > 0`.
    H3RayPlusDerivative,
    /// Both volumes below the small-volume threshold.
    H3Small,
    /// `w > 300`, `v ≥ 0.85w`.
    H3Large,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReductionChain {
    pub steps: Vec<ReductionStep>,
    pub terminal: Primitive,
}

/// A volume triple; `u` is ignored in H³. S³ volumes are fractions of |S³|.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct VolumeTriple {
    pub v: f64,
    pub w: f64,
    pub u: f64,
}

const MAX_STEPS: usize = 8;

pub fn classify_coverage(space: SpaceTag, p: VolumeTriple) -> Result<ReductionChain, Error> {
    match space {
        SpaceTag::S3 => classify_s3(p),
        SpaceTag::H3 => classify_h3(p),
        SpaceTag::R3 => Err(Error::Uncovered),
    }
}

fn classify_s3(p: VolumeTriple) -> Result<ReductionChain, Error> {
    let VolumeTriple { mut v, mut w, mut u } = p;
    // Tolerate rounding in caller-computed fractions.
    let m = S3_MIN_FRACTION - 1e-12;
    if !(v >= m && w >= m && u >= m && ((v + w + u) - 1.0).abs() < 1e-12) {
        return Err(Error::Uncovered);
    }
    let mut steps = Vec::new();
    while steps.len() <= MAX_STEPS {
        if v > 2.0 * w || v > 2.0 * u {
            return Ok(ReductionChain { steps, terminal: Primitive::HutchingsBalancing });
        }
        if v > w {
            let a = 0.5 * (v + w);
            steps.push(ReductionStep::SBalancing { v: a, w: a });
            v = a;
            w = a;
            continue;
        }
        if w > u {
            steps.push(ReductionStep::Permutation);
            core::mem::swap(&mut w, &mut u);
            continue;
        }
        // v ≤ w ≤ u, so v ≤ min(w, 1 − 2w) up to rounding.
        if v >= m {
            return Ok(ReductionChain { steps, terminal: Primitive::S3Computer });
        }
        break;
    }
    Err(Error::Uncovered)
}

fn classify_h3(p: VolumeTriple) -> Result<ReductionChain, Error> {
    let VolumeTriple { mut v, mut w, .. } = p;
    if !(v > 0.0 && w > 0.0) || v.min(w) < H3_MIN_RATIO * v.max(w) * (1.0 - 1e-12) || !v.is_finite() || !w.is_finite() {
        return Err(Error::Uncovered);
    }
    let mut steps = Vec::new();
    if v > w {
        let a = 0.5 * (v + w);
        steps.push(ReductionStep::SBalancing { v: a, w: a });
        v = a;
        w = a;
    }
    let terminal = if w < H3_SMALL {
        Primitive::H3Small
    } else if w <= H3_SWEPT {
        Primitive::H3Computer
    } else if w <= H3_RAY_END {
        Primitive::H3RayPlusDerivative
    } else if v >= critical_ratio() * w {
        Primitive::H3Large
    } else {
        return Err(Error::Uncovered);
    };
    Ok(ReductionChain { steps, terminal })
}

/// Counts per primitive over a regular grid of the theorem's hypothesis
/// region; `Err` on the first uncovered point.
///
/// S³: triples `(i, j, n − i − j)/n` scaled into `v̄, w̄, ū ≥ 0.1`.
/// H³: `w` log-spaced over `[10⁻⁴, 10⁶]`, `v/w` spaced over `[0.85, 1/0.85]`.
pub fn coverage_grid(space: SpaceTag, n: u32) -> Result<[u64; 6], Error> {
    let mut counts = [0u64; 6];
    let mut tally = |c: ReductionChain| {
        counts[c.terminal as usize] += 1;
    };
    let n = n.max(2);
    let nf = n as f64;
    match space {
        SpaceTag::S3 => {
            for i in 0..=n {
                for j in 0..=(n - i) {
                    let a = i as f64 / nf;
                    let b = j as f64 / nf;
                    let v = 0.1 + 0.7 * a;
                    let w = 0.1 + 0.7 * b;
                    tally(classify_s3(VolumeTriple { v, w, u: 1.0 - v - w })?);
                }
            }
        }
        SpaceTag::H3 => {
            for i in 0..=n {
                let w = libm::pow(10.0, -4.0 + 10.0 * i as f64 / nf);
                for j in 0..=n {
                    let r = H3_MIN_RATIO + (1.0 / H3_MIN_RATIO - H3_MIN_RATIO) * j as f64 / nf;
                    let v = (w * r).max(H3_MIN_RATIO * w).min(w / H3_MIN_RATIO);
                    tally(classify_h3(VolumeTriple { v, w, u: 0.0 })?);
                }
            }
        }
        SpaceTag::R3 => return Err(Error::Uncovered),
    }
    Ok(counts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(v: f64, w: f64, u: f64) -> VolumeTriple {
        VolumeTriple { v, w, u }
    }

    #[test]
    fn s3_examples() {
        let c = classify_coverage(SpaceTag::S3, t(0.15, 0.2, 0.65)).unwrap();
        assert!(c.steps.is_empty() && c.terminal == Primitive::S3Computer);
        let c = classify_coverage(SpaceTag::S3, t(0.25, 0.15, 0.6)).unwrap();
        assert_eq!(c.terminal, Primitive::S3Computer);
        assert!(matches!(c.steps[0], ReductionStep::SBalancing { v, w } if (v - 0.2).abs() < 1e-15 && v == w));
        let c = classify_coverage(SpaceTag::S3, t(0.7, 0.15, 0.15)).unwrap();
        assert_eq!(c.terminal, Primitive::HutchingsBalancing);
        assert!(classify_coverage(SpaceTag::S3, t(0.05, 0.45, 0.5)).is_err());
    }

    #[test]
    fn h3_regimes() {
        let k = |v, w| classify_coverage(SpaceTag::H3, t(v, w, 0.0)).unwrap().terminal;
        assert_eq!(k(0.002, 0.0021), Primitive::H3Small);
        assert_eq!(k(1.0, 1.1), Primitive::H3Computer);
        assert_eq!(k(200.0, 210.0), Primitive::H3RayPlusDerivative);
        assert_eq!(k(1e4, 1.1e4), Primitive::H3Large);
        assert!(classify_coverage(SpaceTag::H3, t(1.0, 2.0, 0.0)).is_err());
    }

    #[test]
    fn grids_are_covered() {
        let s = coverage_grid(SpaceTag::S3, 60).unwrap();
        assert!(s[Primitive::S3Computer as usize] > 0 && s[Primitive::HutchingsBalancing as usize] > 0);
        let h = coverage_grid(SpaceTag::H3, 60).unwrap();
        assert!(h[Primitive::H3Small as usize] > 0 && h[Primitive::H3Large as usize] > 0);
    }
}
