//! The banded sweep over H³ volume pairs.
//!
//! The band `w_min ≤ w ≤ w_max`, `0.85w ≤ v ≤ w` is cut into rows of height
//! `rect_h`; each row is a run of `rect_w × rect_h` boxes. A box
//! `[s − rect_w, s] × [L − rect_h, L]` passes when the single-sphere bound at
//! its lower corner beats twice the area of a certified double bubble whose
//! volumes lie just above `(s, L)`. The double bubble is tracked from box to
//! box by small curvature corrections.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::certificate::{fmt_bound, BoxCheck, CheckNode, Method, Outcome, ProofCertificate, Region};
use super::coord::{parse_micro, Coord};
use super::executor::Executor;
use crate::enclosure::{pad_upper, Enclosure, SlackConfig};
use crate::error::Error;
use crate::geometry::SpaceTag;
use crate::hutchings::g_lower_corners;
use crate::solvers::{curvature_pair_step, solve_curvatures_h3, StepperState};

/// One rectangular claim: the band, the box size and a starting curvature pair.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegionClaim {
    pub v_min: Coord,
    pub w_min: Coord,
    pub w_max: Coord,
    pub rect_h: Coord,
    pub rect_w: Coord,
    pub k1_start: f64,
    pub k2_start: f64,
    pub adj_main: f64,
    pub adj_second: f64,
    /// Only keep boxes meeting `v = 0.85w`.
    pub ray: bool,
}

/// `(id, vMin, wMin, wMax, box, k1, k2, ray)`.
type Row = (&'static str, &'static str, &'static str, &'static str, &'static str, f64, f64, bool);

const TABLE: [Row; 12] = [
    ("5.9", "0.002329", "0.00274", "0.01", "0.00001", 11.46, 10.95, false),
    ("5.10", "0.0085", "0.01", "0.1", "0.00005", 7.475, 7.15, false),
    ("5.11", "0.085", "0.1", "1", "0.0005", 3.56, 3.415, false),
    ("5.12", "0.85", "1", "15", "0.005", 1.849, 1.787, false),
    ("5.13", "12.75", "15", "25", "0.01", 1.15204, 1.1352, false),
    ("5.14", "21.25", "25", "45", "0.02", 1.1027, 1.09054, false),
    ("5.15", "38.25", "45", "65", "0.02", 1.0637, 1.05562, false),
    ("5.16", "55.25", "65", "85", "0.02", 1.04658, 1.040469, false),
    ("5.17", "72.25", "85", "110", "0.015", 1.03684, 1.031905, false),
    ("5.18", "93.5", "110", "130", "0.015", 1.02927, 1.025276, false),
    ("5.19", "110.5", "130", "150", "0.015", 1.025161, 1.021693, false),
    ("5.20", "127.5", "150", "300", "0.01", 1.022077, 1.019009, true),
];

/// Identifiers of the built-in claims, in order of increasing volume.
pub fn claim_ids() -> impl Iterator<Item = &'static str> {
    TABLE.iter().map(|t| t.0)
}

pub fn claim(id: &str) -> Option<RegionClaim> {
    let t = TABLE.iter().find(|t| t.0 == id)?;
    let c = |s: &str| Coord::Micro(parse_micro(s).expect("claim table"));
    Some(RegionClaim {
        v_min: c(t.1),
        w_min: c(t.2),
        w_max: c(t.3),
        rect_h: c(t.4),
        rect_w: c(t.4),
        k1_start: t.5,
        k2_start: t.6,
        adj_main: 0.9999,
        adj_second: 0.9995,
        ray: t.7,
    })
}

impl RegionClaim {
    pub fn validate(&self, slack: &SlackConfig) -> Result<(), Error> {
        let grid = |c: &Coord| matches!(c, Coord::Micro(_));
        if ![self.v_min, self.w_min, self.w_max, self.rect_h, self.rect_w].iter().all(grid) {
            return Err(Error::RegionViolation("claim coordinates must be multiples of 1e-6"));
        }
        if !(self.w_min < self.w_max) {
            return Err(Error::RegionViolation("w_min must be below w_max"));
        }
        if self.v_min.add(&self.rect_w) < self.w_min.scale(17, 20) {
            return Err(Error::RegionViolation("v_min is below 0.85 w_min by more than a box"));
        }
        if self.v_min.sub(&self.rect_w) > self.w_min.scale(17, 20) {
            return Err(Error::RegionViolation("first box misses 0.85 w_min"));
        }
        let d = slack.delta;
        if !(self.rect_w.approx() > 2.0 * d && self.rect_h.approx() > 2.0 * d) {
            return Err(Error::InfeasibleBand);
        }
        Ok(())
    }

    pub fn band(&self) -> Region {
        Region::Band {
            v_min: self.v_min,
            w_min: self.w_min,
            w_max: self.w_max,
            rect_w: self.rect_w,
            rect_h: self.rect_h,
            ray: self.ray,
        }
    }

    /// Number of rows needed to reach `w_max`.
    pub fn row_count(&self) -> u64 {
        let span = self.w_max.sub(&self.w_min);
        let (Coord::Micro(a), Coord::Micro(b)) = (span, self.rect_h) else {
            return 0;
        };
        ((a + b - 1) / b) as u64
    }

    fn row_w(&self, i: u64) -> (Coord, Coord) {
        let lo = self.w_min.add(&self.rect_h.scale(i as i128, 1));
        (lo, lo.add(&self.rect_h))
    }

    /// Right edge of column `j`: `v_min + j·rect_w`.
    fn col(&self, j: i64) -> Coord {
        self.v_min.add(&self.rect_w.scale(j as i128, 1))
    }

    /// First column whose right edge reaches `x`.
    fn first_col_reaching(&self, x: &Coord) -> i64 {
        let (Coord::Micro(v0), Coord::Micro(rw)) = (self.v_min, self.rect_w) else {
            return 0;
        };
        let (n, d) = match *x {
            Coord::Micro(m) => (m as i128 - v0 as i128, rw as i128),
            Coord::Frac { num, den } => (num * 1_000_000 - v0 as i128 * den, rw as i128 * den),
        };
        // ceil(n / d), at least 0
        let q = n.div_euclid(d) + if n.rem_euclid(d) == 0 { 0 } else { 1 };
        q.max(0) as i64
    }

    /// Columns `j0..=j1` of row `i`.
    fn row_cols(&self, i: u64) -> (i64, i64) {
        let (lo, hi) = self.row_w(i);
        let j0 = self.first_col_reaching(&lo.scale(17, 20));
        let top = if self.ray { hi.scale(17, 20) } else { hi };
        (j0, self.first_col_reaching(&top).max(j0))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct H3Options {
    pub slack: SlackConfig,
    /// Band width for the single-sphere inverse solves.
    pub eps: f64,
}

impl H3Options {
    pub fn new(slack: SlackConfig) -> Self {
        H3Options { slack, eps: 4.0 * slack.delta }
    }
}

fn fresh_state(c: &RegionClaim, v: f64, w: f64) -> Result<StepperState, Error> {
    let guess = crate::sdb_h3::SdbCurvaturesH3 { k1: c.k1_start, k2: c.k2_start };
    let k = solve_curvatures_h3(v, w, Some(guess))?;
    Ok(StepperState { k1: k.k1, k2: k.k2, scale1: c.adj_main, scale2: c.adj_second })
}

/// Check row `i` of a claim.
pub fn sweep_row(c: &RegionClaim, i: u64, opts: &H3Options) -> CheckNode {
    let (w_lo, w_hi) = c.row_w(i);
    let (j0, j1) = c.row_cols(i);
    let region = Region::Row { w_lo, w_hi, v_lo: c.col(j0).sub(&c.rect_w), v_hi: c.col(j1) };
    let slack = &opts.slack;
    let (rw, rh) = (c.rect_w.approx(), c.rect_h.approx());
    let wl = w_lo.volume();
    let mut boxes = Vec::with_capacity((j1 - j0 + 1) as usize);
    let mut failure = None;
    let start = c.col(j0).approx();
    let mut state = match fresh_state(c, start + 0.5 * rw, w_hi.approx() + 0.5 * rh) {
        Ok(s) => Some(s),
        Err(e) => {
            failure = Some(format!("H3 row w in [{w_lo}, {w_hi}] start: {e}"));
            None
        }
    };
    for j in j0..=j1 {
        let Some(st) = state else { break };
        let s = c.col(j);
        let step = (|| -> Result<(StepperState, f64, f64), Error> {
            let (next, b) = curvature_pair_step(st, s.approx(), w_hi.approx(), rw, rh, slack)?;
            let h = (Enclosure::point(pad_upper(&b.area, 3.0 * slack.delta)) * 2.0).hi();
            let v_lo = s.sub(&c.rect_w).volume();
            let g = g_lower_corners(SpaceTag::H3, v_lo, wl, v_lo + wl, opts.eps, slack)?;
            Ok((next, g, h))
        })();
        match step {
            Ok((next, g, h)) if g > h => {
                boxes.push(BoxCheck { s, g_min: fmt_bound(g), h_max: fmt_bound(h) });
                state = Some(next);
            }
            Ok((_, g, h)) => {
                failure = Some(format!("H3 box v in [{}, {s}], w in [{w_lo}, {w_hi}]: g {g:?} <= h {h:?}", s.sub(&c.rect_w)));
                break;
            }
            Err(e) => {
                failure = Some(format!("H3 box v in [{}, {s}], w in [{w_lo}, {w_hi}]: {e}", s.sub(&c.rect_w)));
                break;
            }
        }
    }
    let outcome = match failure {
        None => Outcome::Proved,
        Some(location) => Outcome::Failed { location },
    };
    let mut n = CheckNode::leaf(region, Method::SweepRow, 1, outcome);
    n.boxes = boxes;
    n
}

fn band_node<E: Executor>(c: &RegionClaim, rows: Vec<u64>, method: Method, opts: &H3Options, ex: &E) -> CheckNode {
    let kids = ex.map(rows, |i| sweep_row(c, i, opts));
    CheckNode::with_children(c.band(), method, 0, kids)
}

/// Sweep every row of a claim.
pub fn sweep_band_h3<E: Executor>(c: &RegionClaim, opts: &H3Options, ex: &E) -> Result<ProofCertificate, Error> {
    c.validate(&opts.slack)?;
    let rows = (0..c.row_count()).collect();
    Ok(ProofCertificate::new(SpaceTag::H3, opts.slack, band_node(c, rows, Method::Sweep, opts, ex)))
}

/// Sweep `n` evenly spread rows of a claim. The result covers only those
/// rows and is marked as a sample.
pub fn sample_band_h3<E: Executor>(c: &RegionClaim, n: u64, opts: &H3Options, ex: &E) -> Result<ProofCertificate, Error> {
    c.validate(&opts.slack)?;
    let total = c.row_count();
    let n = n.clamp(1, total.max(1));
    let rows = (0..n).map(|k| (2 * k + 1) * total / (2 * n)).collect();
    let mut node = band_node(c, rows, Method::SampleRows, opts, ex);
    node.note = Some(String::from("sampled rows only"));
    Ok(ProofCertificate::new(SpaceTag::H3, opts.slack, node))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::proof::certificate::verify_certificate;
    use crate::proof::executor::Sequential;

    #[test]
    fn table_is_consistent() {
        let s = SlackConfig::default();
        for id in claim_ids() {
            let c = claim(id).unwrap();
            c.validate(&s).unwrap();
            assert!(c.row_count() > 0);
        }
        assert_eq!(claim("5.9").unwrap().row_count(), 726);
        assert!(claim("4.1").is_none());
    }

    #[test]
    fn row_columns_cover_band() {
        let c = claim("5.12").unwrap();
        for i in [0, 7, c.row_count() - 1] {
            let (lo, hi) = c.row_w(i);
            let (j0, j1) = c.row_cols(i);
            assert!(c.col(j0).sub(&c.rect_w) <= lo.scale(17, 20));
            assert!(c.col(j0) >= lo.scale(17, 20));
            assert!(c.col(j1) >= hi);
            assert!(c.col(j1).sub(&c.rect_w) < hi);
        }
    }

    #[test]
    fn one_row_proves() {
        let c = claim("5.12").unwrap();
        let cert = sample_band_h3(&c, 1, &H3Options::new(SlackConfig::default()), &Sequential).unwrap();
        assert!(cert.is_proved(), "{:?}", cert.root.failures());
        let r = verify_certificate(&cert).unwrap();
        assert!(r.proved && r.boxes > 100);
    }
}
