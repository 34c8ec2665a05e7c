//! The Hutchings function `F(v, w) = 2A(v/2) + A(w) + A(v + w) − 2A(v, w)`
//! and certified bounds for its two halves over rectangles.
//!
//! `A(x)` is the area of the geodesic sphere enclosing volume `x` and
//! `A(v, w)` the area of the standard double bubble. Volumes here are
//! absolute (not fractions of S³).

use core::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::enclosure::{pad_upper, Enclosure, SlackConfig};
use crate::error::Error;
use crate::geometry::{h3_ball_volume, h3_sphere_area, s3_ball_volume, s3_sphere_area, s3_total, SpaceTag};
use crate::sdb_h3::{self, SdbCurvaturesH3};
use crate::sdb_s3::{self, CotPair};
use crate::solvers::{
    newton2, radii_equal_volumes_s3, radii_for_sdb_s3, sphere_area_lower, solve_curvatures_h3, EqualMode,
};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct VolumePair {
    pub v: f64,
    pub w: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Rect {
    pub v_lo: f64,
    pub w_lo: f64,
    pub v_hi: f64,
    pub w_hi: f64,
}

impl Rect {
    pub fn is_valid(&self) -> bool {
        self.v_lo <= self.v_hi && self.w_lo <= self.w_hi
    }
}

pub fn critical_ratio() -> f64 {
    libm::exp(2.0) / 4.0 - 1.0
}

/// Limit of `F(ψw, w)` in H³ as `w → ∞`: `2π ln(4(ψ + 1)/e²)`.
pub fn limit_along_ray(psi: f64) -> f64 {
    2.0 * PI * (libm::log(4.0 * (psi + 1.0)) - 2.0)
}

type Kernel = fn(f64) -> f64;

/// Fast single-sphere area for volume `x`.
pub fn sphere_area_fast(space: SpaceTag, x: f64) -> Result<f64, Error> {
    if !(x > 0.0) {
        return if x == 0.0 { Ok(0.0) } else { Err(Error::InfeasibleTarget("negative volume")) };
    }
    let (vol, area, mut hi): (Kernel, Kernel, f64) = match space {
        SpaceTag::S3 => {
            if x >= 2.0 * PI * PI {
                return Err(Error::InfeasibleTarget("volume exceeds S³"));
            }
            (s3_ball_volume::<f64>, s3_sphere_area::<f64>, PI)
        }
        SpaceTag::H3 => (h3_ball_volume::<f64>, h3_sphere_area::<f64>, 1.0),
        SpaceTag::R3 => return Ok(crate::geometry::flat_sphere_area(x)),
    };
    if space == SpaceTag::H3 {
        while vol(hi) < x {
            hi *= 2.0;
        }
    }
    let mut lo = 0.0;
    for _ in 0..200 {
        let m = 0.5 * (lo + hi);
        if m <= lo || m >= hi {
            break;
        }
        if vol(m) < x {
            lo = m;
        } else {
            hi = m;
        }
    }
    Ok(area(0.5 * (lo + hi)))
}

/// Fast double-bubble area in S³ for any admissible pair.
pub fn sdb_area_fast_s3(v: f64, w: f64) -> Result<f64, Error> {
    let total = 2.0 * PI * PI;
    let u = total - v - w;
    if !(v > 0.0 && w > 0.0 && u > 0.0) {
        return Err(Error::RegionViolation("volumes must be positive and fit in S³"));
    }
    let mut t = [v, w, u];
    t.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let (a, b, c) = (t[0], t[1], t[2]);
    let tol = 1e-12 * total;
    if c - a <= tol {
        return Ok(6.0 * PI);
    }
    if c - b <= tol {
        // Two largest equal: the second outer cap is a great sphere.
        let f = |rho: f64| sdb_s3::fast_cot(CotPair { c1: cot(rho), c2: 0.0 }).map(|x| x.0);
        let rho = bisect_fast(0.0, FRAC_PI_2, a, f)?;
        return Ok(sdb_s3::fast_cot(CotPair { c1: cot(rho), c2: 0.0 })?.2);
    }
    if b - a <= tol {
        let rho = bisect_fast(0.0, FRAC_PI_2, a, |r| Ok(sdb_s3::equal_volume(r)?))?;
        let c = cot(rho);
        return Ok(sdb_s3::fast_cot(CotPair { c1: c, c2: c })?.2);
    }
    let f = |p: [f64; 2]| -> Option<[f64; 2]> {
        let r = sdb_s3::fast_cot(CotPair { c1: cot(p[0]), c2: cot(p[1]) }).ok()?;
        Some([r.0, r.1])
    };
    let feasible = |p: [f64; 2]| p[0] > 0.0 && p[0] < p[1] && p[1] < FRAC_PI_2;
    let eq = |t: f64| bisect_fast(0.0, FRAC_PI_2, t, |r| Ok(sdb_s3::equal_volume(r)?));
    let r1 = eq(a)?;
    let r2 = if b < total / 3.0 { eq(b)? } else { FRAC_PI_2 - 1e-6 };
    let start = [r1.min(r2 - 1e-8), r2];
    let p = newton2(f, feasible, start, [a, b], 1e-12 * total)
        .ok_or(Error::NoConvergence("double-bubble area in S³"))?;
    Ok(sdb_s3::fast_cot(CotPair { c1: cot(p[0]), c2: cot(p[1]) })?.2)
}

fn cot(rho: f64) -> f64 {
    if rho >= FRAC_PI_2 {
        0.0
    } else {
        libm::tan(FRAC_PI_2 - rho)
    }
}

fn bisect_fast<F: Fn(f64) -> Result<f64, Error>>(mut lo: f64, mut hi: f64, t: f64, f: F) -> Result<f64, Error> {
    for _ in 0..200 {
        let m = 0.5 * (lo + hi);
        if m <= lo || m >= hi {
            break;
        }
        if f(m)? < t {
            lo = m;
        } else {
            hi = m;
        }
    }
    Ok(0.5 * (lo + hi))
}

pub fn sdb_area_fast_h3(v: f64, w: f64) -> Result<f64, Error> {
    let c = solve_curvatures_h3(v, w, None)?;
    Ok(sdb_h3::fast(c)?.2)
}

/// Fast (non-rigorous) evaluation of `F(v, w)`.
pub fn hutchings_point(space: SpaceTag, p: VolumePair) -> Result<f64, Error> {
    let (v, w) = (p.v, p.w);
    let a = |x: f64| sphere_area_fast(space, x);
    let g = 2.0 * a(0.5 * v)? + a(w)? + a(v + w)?;
    let h = match space {
        SpaceTag::S3 => sdb_area_fast_s3(v, w)?,
        SpaceTag::H3 => sdb_area_fast_h3(v, w)?,
        SpaceTag::R3 => return Err(Error::DegenerateConfig("no double-bubble kernel for R³")),
    };
    Ok(g - 2.0 * h)
}

/// `2A(v/2) + A(w) + A(v + w)` without the double-bubble term.
pub fn g_point(space: SpaceTag, p: VolumePair) -> Result<f64, Error> {
    let a = |x: f64| sphere_area_fast(space, x);
    Ok(2.0 * a(0.5 * p.v)? + a(p.w)? + a(p.v + p.w)?)
}

/// Certified lower bound for `2A(v/2) + A(w) + A(v + w)` over the rectangle
/// whose corners are the given volume enclosures.
///
/// The first two terms are increasing on the domains used here. The last is
/// increasing in H³; in S³ it is concave in `v + w`, so its minimum over the
/// rectangle sits at one of the two extreme sums.
pub fn g_lower_corners(
    space: SpaceTag,
    v_lo: Enclosure,
    w_lo: Enclosure,
    sum_hi: Enclosure,
    eps: f64,
    slack: &SlackConfig,
) -> Result<f64, Error> {
    let a_half = sphere_area_lower(space, v_lo / 2.0, eps, slack)?;
    let a_w = sphere_area_lower(space, w_lo, eps, slack)?;
    let a_sum_lo = sphere_area_lower(space, v_lo + w_lo, eps, slack)?;
    let a_sum = if space == SpaceTag::S3 {
        a_sum_lo.min(sphere_area_lower(space, sum_hi, eps, slack)?)
    } else {
        a_sum_lo
    };
    let total = Enclosure::point(a_half) * 2.0 + Enclosure::point(a_w) + Enclosure::point(a_sum);
    Ok(total.lo())
}

pub fn g_lower_rect(space: SpaceTag, r: Rect, eps: f64, slack: &SlackConfig) -> Result<f64, Error> {
    if !r.is_valid() {
        return Err(Error::RegionViolation("rectangle corners out of order"));
    }
    let vl = Enclosure::point(r.v_lo);
    let wl = Enclosure::point(r.w_lo);
    let sh = Enclosure::point(r.v_hi) + Enclosure::point(r.w_hi);
    g_lower_corners(space, vl, wl, sh, eps, slack)
}

/// Where the upper corner of an S³ region sits relative to the boundary of
/// the increasing region.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CornerKind {
    Interior,
    /// On `v = w`.
    Diagonal,
    /// On `w = u`; bounded by moving southeast along that line.
    WEqualsU,
    /// `v = w = u`.
    Thirds,
}

/// Certified upper bound for `2A(v, w)` over every pair dominated by the
/// corner, as `2·(area + 3δ)`.
pub fn h_upper_s3_corner(
    v: Enclosure,
    w: Enclosure,
    kind: CornerKind,
    eps: f64,
    slack: &SlackConfig,
    guess: Option<CotPair>,
) -> Result<(f64, Option<CotPair>), Error> {
    let (area, pair) = match kind {
        CornerKind::Thirds => (Enclosure::pi() * 6.0, None),
        CornerKind::Diagonal => {
            let third = s3_total::<Enclosure>() / 3.0;
            let room = (third.lo() - v.hi()) * 0.5;
            let e = eps.min(room);
            let s = radii_equal_volumes_s3(v.hi(), e, EqualMode::VEqualsW, slack)?;
            (s.bounds.area, Some(s.pair))
        }
        CornerKind::WEqualsU => {
            let third = s3_total::<Enclosure>() / 3.0;
            let room = (w.lo() - third.hi()) * 0.5;
            let e = eps.min(room);
            let s = radii_equal_volumes_s3(w.lo(), e, EqualMode::WEqualsU, slack)?;
            (s.bounds.area, Some(s.pair))
        }
        CornerKind::Interior => {
            let s = radii_for_sdb_s3(v.hi(), w.hi(), eps, eps, slack, guess)?;
            (s.bounds.area, Some(s.pair))
        }
    };
    let h = Enclosure::point(pad_upper(&area, 3.0 * slack.delta)) * 2.0;
    Ok((h.hi(), pair))
}

/// Certified upper bound for `2A(v, w)` over a rectangle.
///
/// In S³ the rectangle must lie in the closed region `v ≤ w ≤ u`; its upper
/// corner is classified with a relative tolerance of 1e−14 (the proof engine
/// classifies exactly and calls [`h_upper_s3_corner`] directly).
pub fn h_upper_rect(space: SpaceTag, r: Rect, eps: f64, slack: &SlackConfig) -> Result<f64, Error> {
    if !r.is_valid() {
        return Err(Error::RegionViolation("rectangle corners out of order"));
    }
    match space {
        SpaceTag::S3 => {
            let total = 2.0 * PI * PI;
            let tol = 1e-14 * total;
            let (v, w) = (r.v_hi, r.w_hi);
            let on_diag = (v - w).abs() <= tol;
            let on_line = (v + 2.0 * w - total).abs() <= tol;
            let kind = match (on_diag, on_line) {
                (true, true) => CornerKind::Thirds,
                (true, false) => CornerKind::Diagonal,
                (false, true) => CornerKind::WEqualsU,
                (false, false) => CornerKind::Interior,
            };
            Ok(h_upper_s3_corner(Enclosure::point(v), Enclosure::point(w), kind, eps, slack, None)?.0)
        }
        SpaceTag::H3 => {
            let d = slack.delta;
            let target = (r.v_hi + 0.5 * (eps + d), r.w_hi + 0.5 * (eps + d));
            let c = solve_curvatures_h3(target.0, target.1, None)?;
            let b = sdb_h3::certify(c)?;
            if !(b.v.lo() >= r.v_hi + d && b.w.lo() >= r.w_hi + d) {
                return Err(Error::NoConvergence("curvature pair missed its band"));
            }
            let h = Enclosure::point(pad_upper(&b.area, 3.0 * d)) * 2.0;
            Ok(h.hi())
        }
        SpaceTag::R3 => Err(Error::DegenerateConfig("no double-bubble kernel for R³")),
    }
}

/// Fast H³ double bubble at the given curvatures: (v, w, area).
pub fn h3_forward(c: SdbCurvaturesH3) -> Result<(f64, f64, f64), Error> {
    sdb_h3::fast(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_and_limit() {
        let l = critical_ratio();
        assert!(l < 0.85 && l > 0.84);
        assert!(limit_along_ray(l).abs() < 1e-14);
        let expect = 2.0 * PI * (libm::log(8.0) - 2.0);
        assert!((limit_along_ray(1.0) - expect).abs() < 1e-14);
        assert!((limit_along_ray(1e-12) - 2.0 * PI * (libm::log(4.0) - 2.0)).abs() < 1e-10);
    }

    #[test]
    fn s3_permutation_identity() {
        let t = 2.0 * PI * PI;
        for &(v, w) in &[(0.15, 0.3), (0.2, 0.25), (0.12, 0.5)] {
            let u = 1.0 - v - w;
            let a = hutchings_point(SpaceTag::S3, VolumePair { v: v * t, w: w * t }).unwrap();
            let b = hutchings_point(SpaceTag::S3, VolumePair { v: v * t, w: u * t }).unwrap();
            assert!((a - b).abs() < 1e-8, "{a} {b}");
        }
    }

    #[test]
    fn h3_equal_positive() {
        for w in [0.1, 1.0, 10.0] {
            assert!(hutchings_point(SpaceTag::H3, VolumePair { v: w, w }).unwrap() > 0.0);
        }
    }

    #[test]
    fn h3_point_bounds_order() {
        let s = SlackConfig::default();
        let r = Rect { v_lo: 0.9, w_lo: 1.0, v_hi: 0.9, w_hi: 1.0 };
        let g = g_lower_rect(SpaceTag::H3, r, 4.0 * s.delta, &s).unwrap();
        let gp = g_point(SpaceTag::H3, VolumePair { v: 0.9, w: 1.0 }).unwrap();
        assert!(g <= gp && gp - g < 1e-5);
        let h = h_upper_rect(SpaceTag::H3, r, 4.0 * s.delta, &s).unwrap();
        let hp = 2.0 * sdb_area_fast_h3(0.9, 1.0).unwrap();
        assert!(h >= hp && h - hp < 1e-5);
    }
}
