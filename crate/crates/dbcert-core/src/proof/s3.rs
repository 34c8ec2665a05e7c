//! Branch-and-bound over the S³ computer domain.
//!
//! Regions live in exact fractions of |S³|. A region is a direct hit when a
//! certified lower bound for `2A(v/2) + A(w) + A(v + w)` over it beats a
//! certified upper bound for `2A(v, w)` at a dominating corner; otherwise it
//! is split and the pieces are checked.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::certificate::{fmt_bound, CheckNode, Method, Outcome, ProofCertificate, Region};
use super::coord::Coord;
use super::executor::Executor;
use crate::enclosure::SlackConfig;
use crate::error::Error;
use crate::geometry::{s3_total, SpaceTag};
use crate::hutchings::{g_lower_corners, h_upper_s3_corner, hutchings_point, CornerKind, VolumePair};
use crate::sdb_s3::CotPair;

pub const DEFAULT_DEPTH_BUDGET: u32 = 30;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct S3Options {
    pub depth_budget: u32,
    /// Width of the volume bands used by the inverse solvers.
    pub eps: f64,
    pub slack: SlackConfig,
    /// Siblings above this depth go through the executor.
    pub parallel_depth: u32,
}

impl S3Options {
    pub fn new(slack: SlackConfig) -> Self {
        S3Options { depth_budget: DEFAULT_DEPTH_BUDGET, eps: 4.0 * slack.delta, slack, parallel_depth: 10 }
    }
}

/// `[x1, x3] × [y1, y3]` in fractions of |S³|.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct S3Rect {
    pub x1: Coord,
    pub y1: Coord,
    pub x3: Coord,
    pub y3: Coord,
}

/// Right angle at `(x1, y1)`, hypotenuse from `(x1, y3)` to `(x3, y1)` on
/// the line `v + 2w = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct S3Triangle {
    pub x1: Coord,
    pub y1: Coord,
    pub x3: Coord,
    pub y3: Coord,
}

impl S3Rect {
    pub fn region(&self) -> Region {
        Region::Rect { v_lo: self.x1, w_lo: self.y1, v_hi: self.x3, w_hi: self.y3 }
    }
}

impl S3Triangle {
    pub fn region(&self) -> Region {
        Region::Triangle { x1: self.x1, y1: self.y1, x3: self.x3, y3: self.y3 }
    }

    pub fn on_line(&self) -> bool {
        let one = Coord::frac(1, 1);
        self.x1.add(&self.y3.scale(2, 1)) == one && self.x3.add(&self.y1.scale(2, 1)) == one
    }
}

/// The square `[1/10, 1/3]²`.
pub fn domain_rectangle() -> S3Rect {
    S3Rect { x1: Coord::frac(1, 10), y1: Coord::frac(1, 10), x3: Coord::frac(1, 3), y3: Coord::frac(1, 3) }
}

/// The triangle with vertices `(1/10, 1/3)`, `(1/3, 1/3)`, `(1/10, 9/20)`.
pub fn domain_triangle() -> S3Triangle {
    S3Triangle { x1: Coord::frac(1, 10), y1: Coord::frac(1, 3), x3: Coord::frac(1, 3), y3: Coord::frac(9, 20) }
}

/// Upper bound already computed at a corner, handed to the children.
#[derive(Clone, Copy, Debug)]
struct Hint {
    x: Coord,
    y: Coord,
    h: f64,
    pair: Option<CotPair>,
}

enum Piece {
    Rect(S3Rect),
    Tri(S3Triangle),
}

struct Engine<'a, E> {
    opts: &'a S3Options,
    ex: &'a E,
}

fn fast_f(x: &Coord, y: &Coord) -> Option<f64> {
    let t = s3_total::<f64>();
    hutchings_point(SpaceTag::S3, VolumePair { v: x.approx() * t, w: y.approx() * t }).ok()
}

fn kind_of(x: &Coord, y: &Coord) -> CornerKind {
    let third = Coord::frac(1, 3);
    let on_line = x.add(&y.scale(2, 1)) == Coord::frac(1, 1);
    match (x == y, on_line) {
        _ if *x == third && *y == third => CornerKind::Thirds,
        (true, _) => CornerKind::Diagonal,
        (false, true) => CornerKind::WEqualsU,
        (false, false) => CornerKind::Interior,
    }
}

impl<'a, E: Executor> Engine<'a, E> {
    fn corner(&self, x: Coord, y: Coord, kind: CornerKind, guess: Option<CotPair>) -> Result<Hint, Error> {
        let o = self.opts;
        let (h, pair) = h_upper_s3_corner(x.volume(), y.volume(), kind, o.eps, &o.slack, guess)?;
        Ok(Hint { x, y, h, pair })
    }

    /// Upper bound for `2A` over everything in `v ≤ w ≤ u` dominated by `(x, y)`.
    fn h_at(&self, x: Coord, y: Coord, hint: Option<Hint>) -> Result<Hint, Error> {
        let x = x.min(y);
        if let Some(hn) = hint {
            if hn.x == x && hn.y == y {
                return Ok(hn);
            }
        }
        let guess = hint.and_then(|h| h.pair);
        let kind = kind_of(&x, &y);
        let first = self.corner(x, y, kind, guess);
        if first.is_ok() || kind != CornerKind::Interior {
            return first;
        }
        // Too close to the boundary for a band: move to a dominating
        // boundary point, nearest first.
        let line_w = Coord::frac(1, 1).sub(&x).scale(1, 2);
        let to_diag = y.sub(&x);
        let to_line = line_w.sub(&y);
        let diag = || self.corner(y, y, kind_of(&y, &y), None);
        let line = || self.corner(x, line_w, kind_of(&x, &line_w), None);
        if to_diag <= to_line {
            diag().or_else(|_| line())
        } else {
            line().or_else(|_| diag())
        }
    }

    fn g(&self, x1: &Coord, y1: &Coord, sum_hi: crate::Enclosure) -> Result<f64, Error> {
        let o = self.opts;
        g_lower_corners(SpaceTag::S3, x1.volume(), y1.volume(), sum_hi, o.eps, &o.slack)
    }

    fn fail(region: Region, depth: u32, what: String) -> CheckNode {
        CheckNode::leaf(region, Method::Unresolved, depth, Outcome::Failed { location: what })
    }

    fn decide(
        &self,
        region: Region,
        depth: u32,
        bounds: Result<(f64, Hint), Error>,
        probe: [(Coord, Coord); 2],
        split: impl FnOnce(Hint) -> CheckNode,
    ) -> CheckNode {
        let place = describe(&region);
        let (g, hint) = match bounds {
            Ok(b) => b,
            Err(e) => return Self::fail(region, depth, format!("{place}: {e}")),
        };
        if g > hint.h {
            let mut n = CheckNode::leaf(region, Method::DirectHit, depth, Outcome::Proved);
            n.g_min = Some(fmt_bound(g));
            n.h_max = Some(fmt_bound(hint.h));
            return n;
        }
        if depth >= self.opts.depth_budget {
            return Self::fail(region, depth, format!("{place}: {}", Error::DepthExceeded));
        }
        for (x, y) in probe {
            if let Some(f) = fast_f(&x, &y) {
                if f <= 0.0 {
                    return Self::fail(region, depth, format!("{place}: F <= 0 near ({x}, {y})"));
                }
            }
        }
        split(hint)
    }

    fn rect(&self, r: S3Rect, depth: u32, hint: Option<Hint>) -> CheckNode {
        let region = r.region();
        if r.x1 >= r.y3 {
            let mut n = CheckNode::leaf(region, Method::Reduction, depth, Outcome::Proved);
            n.note = Some(String::from("v >= w throughout: covered by Hutchings balancing"));
            return n;
        }
        if r.x1 == r.x3 || r.y1 == r.y3 {
            return CheckNode::leaf(region, Method::Degenerate, depth, Outcome::Proved);
        }
        let bounds = (|| {
            let g = self.g(&r.x1, &r.y1, r.x3.volume() + r.y3.volume())?;
            let h = self.h_at(r.x3, r.y3, hint)?;
            Ok((g, h))
        })();
        let probe = [(r.x1, r.y1), (r.x3.min(r.y3), r.y3)];
        self.decide(region.clone(), depth, bounds, probe, |h| {
            let xm = r.x1.midpoint(&r.x3);
            let ym = r.y1.midpoint(&r.y3);
            let kids = vec![
                Piece::Rect(S3Rect { x1: r.x1, y1: r.y1, x3: xm, y3: ym }),
                Piece::Rect(S3Rect { x1: xm, y1: r.y1, x3: r.x3, y3: ym }),
                Piece::Rect(S3Rect { x1: r.x1, y1: ym, x3: xm, y3: r.y3 }),
                Piece::Rect(S3Rect { x1: xm, y1: ym, x3: r.x3, y3: r.y3 }),
            ];
            CheckNode::with_children(region, Method::Split4, depth, self.children(kids, depth, h))
        })
    }

    fn tri(&self, t: S3Triangle, depth: u32, hint: Option<Hint>) -> CheckNode {
        let region = t.region();
        if t.x1 == t.x3 || t.y1 == t.y3 {
            return CheckNode::leaf(region, Method::Degenerate, depth, Outcome::Proved);
        }
        let bounds = (|| {
            // v + w is largest at the tip (x3, y1).
            let g = self.g(&t.x1, &t.y1, t.x3.volume() + t.y1.volume())?;
            let h = self.h_at(t.x3, t.y1, hint)?;
            Ok((g, h))
        })();
        let probe = [(t.x1, t.y1), (t.x3, t.y1)];
        self.decide(region.clone(), depth, bounds, probe, |h| {
            let x2 = t.x1.midpoint(&t.x3);
            let y2 = t.y1.midpoint(&t.y3);
            let kids = vec![
                Piece::Rect(S3Rect { x1: t.x1, y1: t.y1, x3: x2, y3: y2 }),
                Piece::Tri(S3Triangle { x1: t.x1, y1: y2, x3: x2, y3: t.y3 }),
                Piece::Tri(S3Triangle { x1: x2, y1: t.y1, x3: t.x3, y3: y2 }),
            ];
            CheckNode::with_children(region, Method::Split3, depth, self.children(kids, depth, h))
        })
    }

    fn piece(&self, p: Piece, depth: u32, hint: Hint) -> CheckNode {
        match p {
            Piece::Rect(r) => self.rect(r, depth, Some(hint)),
            Piece::Tri(t) => self.tri(t, depth, Some(hint)),
        }
    }

    fn children(&self, kids: Vec<Piece>, depth: u32, hint: Hint) -> Vec<CheckNode> {
        if depth < self.opts.parallel_depth {
            self.ex.map(kids, |p| self.piece(p, depth + 1, hint))
        } else {
            kids.into_iter().map(|p| self.piece(p, depth + 1, hint)).collect()
        }
    }
}

fn describe(r: &Region) -> String {
    match r {
        Region::Rect { v_lo, w_lo, v_hi, w_hi } => format!("S3 rect v in [{v_lo}, {v_hi}], w in [{w_lo}, {w_hi}]"),
        Region::Triangle { x1, y1, x3, y3 } => format!("S3 triangle ({x1}, {y1}) ({x3}, {y1}) ({x1}, {y3})"),
        _ => String::from("S3 region"),
    }
}

pub fn rectangle_node<E: Executor>(r: S3Rect, opts: &S3Options, ex: &E) -> CheckNode {
    Engine { opts, ex }.rect(r, 0, None)
}

pub fn triangle_node<E: Executor>(t: S3Triangle, opts: &S3Options, ex: &E) -> Result<CheckNode, Error> {
    if !t.on_line() || t.x1 > t.x3 || t.y1 > t.y3 {
        return Err(Error::RegionViolation("triangle hypotenuse must lie on w = u"));
    }
    Ok(Engine { opts, ex }.tri(t, 0, None))
}

/// Check a rectangle in fractions of |S³|.
pub fn verify_rectangle_s3<E: Executor>(r: S3Rect, opts: &S3Options, ex: &E) -> ProofCertificate {
    ProofCertificate::new(SpaceTag::S3, opts.slack, rectangle_node(r, opts, ex))
}

/// Check a triangle in fractions of |S³| whose hypotenuse lies on `w = u`.
pub fn verify_triangle_s3<E: Executor>(t: S3Triangle, opts: &S3Options, ex: &E) -> Result<ProofCertificate, Error> {
    Ok(ProofCertificate::new(SpaceTag::S3, opts.slack, triangle_node(t, opts, ex)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::proof::certificate::verify_certificate;
    use crate::proof::executor::Sequential;

    fn opts() -> S3Options {
        S3Options::new(SlackConfig::default())
    }

    #[test]
    fn reduction_leaf() {
        let r = S3Rect { x1: Coord::frac(1, 4), y1: Coord::frac(1, 10), x3: Coord::frac(1, 3), y3: Coord::frac(1, 5) };
        let c = verify_rectangle_s3(r, &opts(), &Sequential);
        assert_eq!(c.root.method, Method::Reduction);
        assert!(c.is_proved());
    }

    #[test]
    fn degenerate_triangle() {
        let t = S3Triangle { x1: Coord::frac(1, 3), y1: Coord::frac(1, 3), x3: Coord::frac(1, 3), y3: Coord::frac(1, 3) };
        let c = verify_triangle_s3(t, &opts(), &Sequential).unwrap();
        assert_eq!(c.root.method, Method::Degenerate);
        assert!(verify_certificate(&c).unwrap().proved);
    }

    #[test]
    fn small_rect_proves() {
        let r = S3Rect { x1: Coord::frac(1, 5), y1: Coord::frac(1, 4), x3: Coord::frac(21, 100), y3: Coord::frac(26, 100) };
        let c = verify_rectangle_s3(r, &opts(), &Sequential);
        assert!(c.is_proved(), "{:?}", c.root.failures());
        assert!(verify_certificate(&c).unwrap().proved);
    }

    #[test]
    fn triangle_off_line_rejected() {
        let t = S3Triangle { x1: Coord::frac(1, 10), y1: Coord::frac(1, 3), x3: Coord::frac(1, 3), y3: Coord::frac(1, 2) };
        assert!(verify_triangle_s3(t, &opts(), &Sequential).is_err());
    }
}
