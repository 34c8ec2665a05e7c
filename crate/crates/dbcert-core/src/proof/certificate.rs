//! Proof certificates and the independent checker.
//!
//! A certificate is a tree of region checks. The checker never evaluates a
//! geometric quantity: it re-reads the stored bound strings, compares them,
//! and re-derives every subdivision with exact coordinate arithmetic.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::coord::Coord;
use super::coverage::coverage_grid;
use crate::enclosure::SlackConfig;
use crate::geometry::SpaceTag;

pub const ENGINE_VERSION: &str = concat!("dbcert-core ", env!("CARGO_PKG_VERSION"));

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Region {
    Rect { v_lo: Coord, w_lo: Coord, v_hi: Coord, w_hi: Coord },
    /// Right angle at `(x1, y1)`, other vertices `(x1, y3)` and `(x3, y1)`.
    Triangle { x1: Coord, y1: Coord, x3: Coord, y3: Coord },
    /// The sweep band `w_min ≤ w ≤ w_max`, `0.85w ≤ v ≤ w` (`v = 0.85w` only when `ray`).
    Band { v_min: Coord, w_min: Coord, w_max: Coord, rect_w: Coord, rect_h: Coord, ray: bool },
    /// One sweep row: boxes of width `rect_w` tiling `[v_lo, v_hi] × [w_lo, w_hi]`.
    Row { w_lo: Coord, w_hi: Coord, v_lo: Coord, v_hi: Coord },
    Named { name: String },
    /// The regular classification grid of the given resolution.
    CoverageGrid { resolution: u32 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    DirectHit,
    Split4,
    Split3,
    SweepRow,
    Sweep,
    /// Selected rows of a sweep; says nothing about the rows left out.
    SampleRows,
    Reduction,
    Degenerate,
    Unresolved,
    /// Every grid point reaches a settled region through reduction steps.
    Coverage,
    Composite,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Outcome {
    Proved,
    Failed { location: String },
}

impl Outcome {
    pub fn is_proved(&self) -> bool {
        matches!(self, Outcome::Proved)
    }
}

/// One box `[s − rect_w, s] × [w_lo, w_hi]` of a sweep row.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoxCheck {
    pub s: Coord,
    pub g_min: String,
    pub h_max: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckNode {
    pub region: Region,
    pub method: Method,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g_min: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h_max: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<CheckNode>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub boxes: Vec<BoxCheck>,
    pub depth: u32,
    pub outcome: Outcome,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckNode {
    pub fn leaf(region: Region, method: Method, depth: u32, outcome: Outcome) -> CheckNode {
        CheckNode {
            region,
            method,
            g_min: None,
            h_max: None,
            children: Vec::new(),
            boxes: Vec::new(),
            depth,
            outcome,
            note: None,
        }
    }

    pub fn with_children(region: Region, method: Method, depth: u32, children: Vec<CheckNode>) -> CheckNode {
        let outcome = first_failure(&children);
        CheckNode { children, ..CheckNode::leaf(region, method, depth, outcome) }
    }

    /// Count of leaves and sweep boxes.
    pub fn size(&self) -> (usize, usize) {
        if self.children.is_empty() {
            return (1, self.boxes.len());
        }
        self.children.iter().fold((0, 0), |(a, b), c| {
            let (x, y) = c.size();
            (a + x, b + y)
        })
    }

    pub fn max_depth(&self) -> u32 {
        self.children.iter().map(|c| c.max_depth()).max().unwrap_or(self.depth)
    }

    /// Locations of every failed leaf.
    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_failures(&mut out);
        out
    }

    fn collect_failures(&self, out: &mut Vec<String>) {
        if self.children.is_empty() {
            if let Outcome::Failed { location } = &self.outcome {
                out.push(location.clone());
            }
        }
        for c in &self.children {
            c.collect_failures(out);
        }
    }
}

fn first_failure(children: &[CheckNode]) -> Outcome {
    for c in children {
        if let Outcome::Failed { location } = &c.outcome {
            return Outcome::Failed { location: location.clone() };
        }
    }
    Outcome::Proved
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProofCertificate {
    pub engine_version: String,
    pub space: SpaceTag,
    pub slack: SlackConfig,
    pub root: CheckNode,
}

impl ProofCertificate {
    pub fn new(space: SpaceTag, slack: SlackConfig, root: CheckNode) -> Self {
        ProofCertificate { engine_version: ENGINE_VERSION.to_string(), space, slack, root }
    }

    pub fn is_proved(&self) -> bool {
        self.root.outcome.is_proved()
    }
}

/// Shortest decimal string that parses back to the same `f64`.
pub fn fmt_bound(x: f64) -> String {
    format!("{x:?}")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyError {
    pub path: String,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct VerifyReport {
    pub proved: bool,
    pub leaves: usize,
    pub boxes: usize,
    pub failures: Vec<String>,
}

fn err<T>(path: &str, reason: impl Into<String>) -> Result<T, VerifyError> {
    Err(VerifyError { path: path.to_string(), reason: reason.into() })
}

fn parse_bound(path: &str, s: &Option<String>, what: &str) -> Result<f64, VerifyError> {
    match s.as_deref().map(str::parse::<f64>) {
        Some(Ok(x)) if !x.is_nan() => Ok(x),
        _ => err(path, format!("missing or unreadable {what}")),
    }
}

fn hit(path: &str, g: f64, h: f64) -> Result<(), VerifyError> {
    if g > h {
        Ok(())
    } else {
        err(path, format!("bound inequality fails: g_min {g:?} <= h_max {h:?}"))
    }
}

/// Re-check every leaf inequality and every subdivision of a certificate.
pub fn verify_certificate(cert: &ProofCertificate) -> Result<VerifyReport, VerifyError> {
    let mut rep = VerifyReport::default();
    cert.slack.validate().map_err(|e| VerifyError { path: "/".to_string(), reason: e.to_string() })?;
    check_node(&cert.root, "/", None, cert.space, &mut rep)?;
    rep.proved = cert.root.outcome.is_proved();
    Ok(rep)
}

fn check_children_outcome(node: &CheckNode, path: &str) -> Result<(), VerifyError> {
    let all = node.children.iter().all(|c| c.outcome.is_proved());
    if node.outcome.is_proved() && !all {
        return err(path, "node claims proved but a child failed");
    }
    if !node.outcome.is_proved() && all && !node.children.is_empty() {
        return err(path, "node claims failure but every child is proved");
    }
    Ok(())
}

fn check_node(node: &CheckNode, path: &str, band: Option<&Region>, space: SpaceTag, rep: &mut VerifyReport) -> Result<(), VerifyError> {
    let child_path = |i: usize| format!("{path}{i}/");
    match node.method {
        Method::DirectHit => {
            if !node.children.is_empty() {
                return err(path, "direct hit with children");
            }
            rep.leaves += 1;
            let g = parse_bound(path, &node.g_min, "g_min")?;
            let h = parse_bound(path, &node.h_max, "h_max")?;
            hit(path, g, h)?;
            if !node.outcome.is_proved() {
                return err(path, "direct hit marked failed");
            }
        }
        Method::Unresolved => {
            rep.leaves += 1;
            match &node.outcome {
                Outcome::Failed { location } => rep.failures.push(location.clone()),
                Outcome::Proved => return err(path, "unresolved leaf marked proved"),
            }
        }
        Method::Reduction => {
            rep.leaves += 1;
            match &node.region {
                Region::Rect { v_lo, w_hi, .. } if v_lo >= w_hi => {}
                _ => return err(path, "reduction leaf outside the region v >= w"),
            }
            if !node.outcome.is_proved() {
                return err(path, "reduction leaf marked failed");
            }
        }
        Method::Degenerate => {
            rep.leaves += 1;
            let ok = match &node.region {
                Region::Triangle { x1, x3, y1, y3 } => x1 == x3 || y1 == y3,
                Region::Rect { v_lo, w_lo, v_hi, w_hi } => v_lo == v_hi || w_lo == w_hi,
                _ => false,
            };
            if !ok {
                return err(path, "degenerate leaf has positive area");
            }
        }
        Method::Split4 => {
            let Region::Rect { v_lo, w_lo, v_hi, w_hi } = &node.region else {
                return err(path, "split4 on a non-rectangle");
            };
            let vm = v_lo.midpoint(v_hi);
            let wm = w_lo.midpoint(w_hi);
            let expect = [
                Region::Rect { v_lo: *v_lo, w_lo: *w_lo, v_hi: vm, w_hi: wm },
                Region::Rect { v_lo: vm, w_lo: *w_lo, v_hi: *v_hi, w_hi: wm },
                Region::Rect { v_lo: *v_lo, w_lo: wm, v_hi: vm, w_hi: *w_hi },
                Region::Rect { v_lo: vm, w_lo: wm, v_hi: *v_hi, w_hi: *w_hi },
            ];
            check_split(node, path, &expect, space, rep)?;
        }
        Method::Split3 => {
            let Region::Triangle { x1, y1, x3, y3 } = &node.region else {
                return err(path, "split3 on a non-triangle");
            };
            let x2 = x1.midpoint(x3);
            let y2 = y1.midpoint(y3);
            let expect = [
                Region::Rect { v_lo: *x1, w_lo: *y1, v_hi: x2, w_hi: y2 },
                Region::Triangle { x1: *x1, y1: y2, x3: x2, y3: *y3 },
                Region::Triangle { x1: x2, y1: *y1, x3: *x3, y3: y2 },
            ];
            check_split(node, path, &expect, space, rep)?;
        }
        Method::Sweep | Method::SampleRows => {
            let sample = node.method == Method::SampleRows;
            let Region::Band { w_min, w_max, rect_h, ray, .. } = &node.region else {
                return err(path, "sweep on a non-band region");
            };
            let mut next = *w_min;
            for (i, c) in node.children.iter().enumerate() {
                let p = child_path(i);
                let Region::Row { w_lo, w_hi, v_lo, v_hi } = &c.region else {
                    return err(&p, "sweep child is not a row");
                };
                if w_hi.sub(w_lo) != *rect_h || (if sample { w_lo < &next } else { *w_lo != next }) {
                    return err(&p, "rows do not tile the band in w");
                }
                if sample && !on_grid(w_lo.sub(w_min), *rect_h) {
                    return err(&p, "sampled row is off the sweep grid");
                }
                // Cover 0.85w ≤ v ≤ w (or v = 0.85w on a ray) for every w in the row.
                let need_lo = w_lo.scale(17, 20);
                let need_hi = if *ray { w_hi.scale(17, 20) } else { *w_hi };
                if *v_lo > need_lo || *v_hi < need_hi {
                    return err(&p, "row does not cover the band in v");
                }
                next = *w_hi;
                if c.method != Method::SweepRow {
                    return err(&p, "sweep child is not a sweep row");
                }
                check_node(c, &p, Some(&node.region), space, rep)?;
            }
            if !sample && next < *w_max {
                return err(path, "rows stop below w_max");
            }
            check_children_outcome(node, path)?;
        }
        Method::SweepRow => {
            let Some(Region::Band { rect_w, .. }) = band else {
                return err(path, "sweep row outside a sweep");
            };
            let Region::Row { v_lo, v_hi, .. } = &node.region else {
                return err(path, "sweep row without row region");
            };
            let mut edge = *v_lo;
            for (i, b) in node.boxes.iter().enumerate() {
                let p = format!("{path}box{i}/");
                if b.s.sub(rect_w) != edge {
                    return err(&p, "boxes are not contiguous");
                }
                edge = b.s;
                let g = parse_bound(&p, &Some(b.g_min.clone()), "g_min")?;
                let h = parse_bound(&p, &Some(b.h_max.clone()), "h_max")?;
                hit(&p, g, h)?;
                rep.boxes += 1;
            }
            rep.leaves += 1;
            match &node.outcome {
                Outcome::Proved => {
                    if edge != *v_hi {
                        return err(path, "boxes stop short of the row end");
                    }
                }
                Outcome::Failed { location } => rep.failures.push(location.clone()),
            }
        }
        Method::Coverage => {
            let Region::CoverageGrid { resolution } = node.region else {
                return err(path, "coverage leaf without a grid");
            };
            rep.leaves += 1;
            let ok = coverage_grid(space, resolution).is_ok();
            if ok != node.outcome.is_proved() {
                return err(path, "coverage outcome does not match the classifier");
            }
            if let Outcome::Failed { location } = &node.outcome {
                rep.failures.push(location.clone());
            }
        }
        Method::Composite => {
            for (i, c) in node.children.iter().enumerate() {
                check_node(c, &child_path(i), None, space, rep)?;
            }
            check_children_outcome(node, path)?;
        }
    }
    Ok(())
}

fn on_grid(x: Coord, step: Coord) -> bool {
    match (x, step) {
        (Coord::Micro(a), Coord::Micro(b)) => b > 0 && a >= 0 && a % b == 0,
        _ => false,
    }
}

fn check_split(node: &CheckNode, path: &str, expect: &[Region], space: SpaceTag, rep: &mut VerifyReport) -> Result<(), VerifyError> {
    if node.children.len() != expect.len() {
        return err(path, "wrong number of children");
    }
    for (i, (c, e)) in node.children.iter().zip(expect).enumerate() {
        let p = format!("{path}{i}/");
        if &c.region != e {
            return err(&p, "child region does not match the subdivision");
        }
        if c.depth != node.depth + 1 {
            return err(&p, "child depth is not parent depth + 1");
        }
        check_node(c, &p, None, space, rep)?;
    }
    check_children_outcome(node, path)
}
