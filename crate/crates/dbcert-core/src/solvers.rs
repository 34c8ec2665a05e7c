//! Inverse problems: radii and curvature pairs from volumes.
//!
//! Every solver lands its forward image inside a one-sided band and checks
//! that with enclosure arithmetic before returning. The search itself runs
//! on the fast `f64` path.

use core::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::enclosure::{pad_lower, pad_upper, Enclosure, SlackConfig};
use crate::error::Error;
use crate::geometry::{h3_ball_volume, s3_ball_volume, s3_total, SpaceTag};
use crate::sdb_h3::{self, H3Bounds, SdbCurvaturesH3};
use crate::sdb_s3::{self, equal_volume, CotPair, S3Bounds};

pub const BISECTION_STEPS: usize = 200;
pub const SECANT_RETRIES: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    /// Land in `[v − eps, v − δ]`.
    Under,
    /// Land in `[v + δ, v + eps]`.
    Over,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BandTarget {
    pub v: f64,
    pub eps: f64,
    pub side: Side,
}

impl BandTarget {
    /// The band as an f64 interval lying inside the real band.
    pub fn interval(&self, slack: &SlackConfig) -> Result<(f64, f64), Error> {
        if !(self.eps > slack.delta) {
            return Err(Error::InfeasibleBand);
        }
        let p = Enclosure::point(self.v);
        Ok(match self.side {
            Side::Under => (pad_upper(&p, -self.eps), pad_lower(&p, slack.delta)),
            Side::Over => (pad_upper(&p, slack.delta), pad_lower(&p, -self.eps)),
        })
    }

    fn center(&self, slack: &SlackConfig) -> f64 {
        let off = 0.5 * (self.eps + slack.delta);
        match self.side {
            Side::Under => self.v - off,
            Side::Over => self.v + off,
        }
    }
}

fn inside(e: &Enclosure, band: (f64, f64)) -> bool {
    e.lo() >= band.0 && e.hi() <= band.1
}

/// Bisection on an increasing map `f` over `[lo, hi]` until its certified
/// value falls in `band`. `f` returns the fast value and a certifier.
fn bisect<F>(mut lo: f64, mut hi: f64, band: (f64, f64), center: f64, f: F) -> Result<f64, Error>
where
    F: Fn(f64) -> Result<(f64, Enclosure), Error>,
{
    for _ in 0..BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        let (fast, cert) = f(mid)?;
        if inside(&cert, band) {
            return Ok(mid);
        }
        if fast < center {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi <= lo {
            break;
        }
    }
    Err(Error::NoConvergence("bisection"))
}

/// Radius of a geodesic ball whose certified volume lies in the band.
pub fn radius_from_volume(space: SpaceTag, t: BandTarget, slack: &SlackConfig) -> Result<f64, Error> {
    let band = t.interval(slack)?;
    if band.0 <= 0.0 || band.0 > band.1 {
        return Err(Error::InfeasibleTarget("band leaves the positive volumes"));
    }
    let center = t.center(slack);
    match space {
        SpaceTag::S3 => {
            if band.1 >= 2.0 * PI * PI {
                return Err(Error::InfeasibleTarget("volume exceeds S³"));
            }
            bisect(0.0, PI, band, center, |r| {
                Ok((s3_ball_volume(r), s3_ball_volume(Enclosure::point(r))))
            })
        }
        SpaceTag::H3 => {
            let mut hi = 1.0;
            while h3_ball_volume(hi) < band.1 {
                hi *= 2.0;
                if hi > 700.0 {
                    return Err(Error::InfeasibleTarget("volume too large"));
                }
            }
            bisect(0.0, hi, band, center, |r| {
                Ok((h3_ball_volume(r), h3_ball_volume(Enclosure::point(r))))
            })
        }
        SpaceTag::R3 => {
            let f = |r: f64| 4.0 / 3.0 * PI * r * r * r;
            let mut hi = 1.0;
            while f(hi) < band.1 {
                hi *= 2.0;
            }
            bisect(0.0, hi, band, center, |r| {
                let e = Enclosure::point(r);
                Ok((f(r), Enclosure::pi() * e * e.sqr() * 4.0 / 3.0))
            })
        }
    }
}

/// Certified lower bound on the area of the geodesic sphere enclosing any
/// volume in `x`, using a band of width `eps` on the side where the area is
/// smaller. The returned value already has `δ` subtracted.
pub fn sphere_area_lower(space: SpaceTag, x: Enclosure, eps: f64, slack: &SlackConfig) -> Result<f64, Error> {
    let area_at = |r: f64| -> Enclosure {
        let e = Enclosure::point(r);
        match space {
            SpaceTag::S3 => crate::geometry::s3_sphere_area(e),
            SpaceTag::H3 => crate::geometry::h3_sphere_area(e),
            SpaceTag::R3 => Enclosure::pi() * e.sqr() * 4.0,
        }
    };
    let under = |v: f64| -> Result<f64, Error> {
        let r = radius_from_volume(space, BandTarget { v, eps, side: Side::Under }, slack)?;
        Ok(pad_lower(&area_at(r), slack.delta))
    };
    if space != SpaceTag::S3 {
        return under(x.lo());
    }
    let half = s3_total::<Enclosure>() / 2.0;
    let over = |v: f64| -> Result<f64, Error> {
        let r = radius_from_volume(space, BandTarget { v, eps, side: Side::Over }, slack)?;
        Ok(pad_lower(&area_at(r), slack.delta))
    };
    if x.hi() < half.lo() {
        under(x.lo())
    } else if x.lo() > half.hi() {
        over(x.hi())
    } else {
        Ok(under(x.lo())?.min(over(x.hi())?))
    }
}

/// Damped Newton iteration for a map of two variables, with a finite
/// difference Jacobian. Returns the last iterate once the residual is below
/// `tol` in both components.
pub fn newton2<F, G>(f: F, feasible: G, x0: [f64; 2], target: [f64; 2], tol: f64) -> Option<[f64; 2]>
where
    F: Fn([f64; 2]) -> Option<[f64; 2]>,
    G: Fn([f64; 2]) -> bool,
{
    let mut x = x0;
    let mut fx = f(x)?;
    let norm = |a: [f64; 2]| libm::fabs(a[0] - target[0]).max(libm::fabs(a[1] - target[1]));
    for _ in 0..SECANT_RETRIES {
        let res = norm(fx);
        if res <= tol {
            return Some(x);
        }
        let h0 = 1e-7 * libm::fabs(x[0]).max(1e-3);
        let h1 = 1e-7 * libm::fabs(x[1]).max(1e-3);
        let probe = |d: [f64; 2]| {
            let y = [x[0] + d[0], x[1] + d[1]];
            if feasible(y) {
                f(y).map(|v| (v, 1.0))
            } else {
                let y = [x[0] - d[0], x[1] - d[1]];
                f(y).map(|v| (v, -1.0))
            }
        };
        let (f0, s0) = probe([h0, 0.0])?;
        let (f1, s1) = probe([0.0, h1])?;
        let j = [
            [s0 * (f0[0] - fx[0]) / h0, s1 * (f1[0] - fx[0]) / h1],
            [s0 * (f0[1] - fx[1]) / h0, s1 * (f1[1] - fx[1]) / h1],
        ];
        let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
        let r = [target[0] - fx[0], target[1] - fx[1]];
        let step = if det.is_finite() && libm::fabs(det) > 1e-300 {
            [(r[0] * j[1][1] - r[1] * j[0][1]) / det, (j[0][0] * r[1] - j[1][0] * r[0]) / det]
        } else {
            // Singular slopes: move each coordinate along its own diagonal entry.
            let s0 = if j[0][0] != 0.0 { r[0] / j[0][0] } else { 0.0 };
            let s1 = if j[1][1] != 0.0 { r[1] / j[1][1] } else { 0.0 };
            [s0, s1]
        };
        let mut lambda = 1.0;
        let mut accepted = false;
        for _ in 0..40 {
            let y = [x[0] + lambda * step[0], x[1] + lambda * step[1]];
            if feasible(y) {
                if let Some(fy) = f(y) {
                    if norm(fy) < res {
                        x = y;
                        fx = fy;
                        accepted = true;
                        break;
                    }
                }
            }
            lambda *= 0.5;
        }
        if !accepted {
            return if res <= tol * 1e3 { Some(x) } else { None };
        }
    }
    if norm(fx) <= tol * 1e3 {
        Some(x)
    } else {
        None
    }
}

// ---------------------------------------------------------------------------
// S³

fn cot_of(rho: f64) -> f64 {
    if rho >= FRAC_PI_2 {
        0.0
    } else {
        libm::tan(FRAC_PI_2 - rho)
    }
}

fn pair_from_radii(p: [f64; 2]) -> CotPair {
    CotPair { c1: cot_of(p[0]), c2: cot_of(p[1]) }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct S3Solve {
    pub pair: CotPair,
    pub bounds: S3Bounds,
    pub eps_v: f64,
    pub eps_w: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EqualMode {
    VEqualsW,
    WEqualsU,
}

/// Equal-radii bubble in band `[target + δ, target + eps]` (`VEqualsW`), or
/// bubble with `w = u` and `w` in `[target − eps, target − δ]` (`WEqualsU`).
pub fn radii_equal_volumes_s3(target: f64, eps: f64, mode: EqualMode, slack: &SlackConfig) -> Result<S3Solve, Error> {
    let third = s3_total::<Enclosure>() / 3.0;
    match mode {
        EqualMode::VEqualsW => {
            if !(target < third.lo()) {
                return Err(Error::InfeasibleTarget("equal volumes must stay below a third of S³"));
            }
            let t = BandTarget { v: target, eps, side: Side::Over };
            let band = t.interval(slack)?;
            if band.1 >= third.lo() {
                return Err(Error::InfeasibleTarget("band reaches a third of S³"));
            }
            let rho = bisect(0.0, FRAC_PI_2, band, t.center(slack), |r| {
                Ok((equal_volume(r)?, equal_volume(Enclosure::point(r))?))
            })?;
            let c = cot_of(rho);
            let pair = CotPair { c1: c, c2: c };
            let bounds = sdb_s3::certify_cot(pair)?;
            if !inside(&bounds.v, band) {
                return Err(Error::NoConvergence("equal-volume bubble"));
            }
            Ok(S3Solve { pair, bounds, eps_v: eps, eps_w: eps })
        }
        EqualMode::WEqualsU => {
            if !(target > third.hi()) {
                return Err(Error::InfeasibleTarget("W is too small"));
            }
            let t = BandTarget { v: target, eps, side: Side::Under };
            let band = t.interval(slack)?;
            if band.0 <= third.hi() {
                return Err(Error::InfeasibleTarget("band reaches a third of S³"));
            }
            // w decreases as the first radius grows; bisect on −w.
            let nb = (-band.1, -band.0);
            let rho = bisect(0.0, FRAC_PI_2, nb, -t.center(slack), |r| {
                let p = CotPair { c1: cot_of(r), c2: 0.0 };
                let f = sdb_s3::fast_cot(p)?;
                let c = sdb_s3::certify_cot(p)?;
                Ok((-f.1, -c.w))
            })?;
            let pair = CotPair { c1: cot_of(rho), c2: 0.0 };
            let bounds = sdb_s3::certify_cot(pair)?;
            Ok(S3Solve { pair, bounds, eps_v: 2.0 * eps, eps_w: eps })
        }
    }
}

/// Bubble whose volumes land in `[v + δ, v + εv] × [w + δ, w + εw]`, with
/// both bands shrunk as needed to keep the pair strictly inside the region
/// `v < w < u`.
pub fn radii_for_sdb_s3(
    v: f64,
    w: f64,
    eps_v: f64,
    eps_w: f64,
    slack: &SlackConfig,
    guess: Option<CotPair>,
) -> Result<S3Solve, Error> {
    let total = s3_total::<Enclosure>();
    if !(v < w) || !(v + 2.0 * w < total.lo()) || !(v > 0.0) {
        return Err(Error::RegionViolation("v and w are not in the increasing region"));
    }
    let d = slack.delta;
    let (mut ev, mut ew) = (eps_v, eps_w);
    // Halve the bands until the whole over-approximated box is admissible.
    let ok = |ev: f64, ew: f64| {
        let vv = Enclosure::point(v) + ev;
        let ww = Enclosure::point(w) + d;
        let sum = Enclosure::point(v) + ev + (Enclosure::point(w) + ew) * 2.0;
        vv.hi() < ww.lo() && sum.hi() < total.lo()
    };
    let mut n = 0;
    while !ok(ev, ew) {
        ev *= 0.5;
        ew *= 0.5;
        n += 1;
        if ev <= 2.0 * d || ew <= 2.0 * d || n > 200 {
            return Err(Error::RegionViolation("no admissible band near the region boundary"));
        }
    }
    let bv = BandTarget { v, eps: ev, side: Side::Over };
    let bw = BandTarget { v: w, eps: ew, side: Side::Over };
    let iv = bv.interval(slack)?;
    let iw = bw.interval(slack)?;
    let target = [bv.center(slack), bw.center(slack)];
    let f = |p: [f64; 2]| -> Option<[f64; 2]> {
        let r = sdb_s3::fast_cot(pair_from_radii(p)).ok()?;
        Some([r.0, r.1])
    };
    let feasible = |p: [f64; 2]| p[0] > 0.0 && p[0] < p[1] && p[1] < FRAC_PI_2;
    let start = match guess {
        Some(g) => {
            let r = g.radii();
            [r.r1, r.r2.min(FRAC_PI_2 - 1e-9)]
        }
        None => initial_guess_s3(target)?,
    };
    let start = if feasible(start) { start } else { initial_guess_s3(target)? };
    let tol = 0.05 * (ev - d).min(ew - d);
    let sol = newton2(f, feasible, start, target, tol)
        .or_else(|| newton2(f, feasible, initial_guess_s3(target).ok()?, target, tol))
        .ok_or(Error::NoConvergence("two-volume solve in S³"))?;
    let pair = pair_from_radii(sol);
    let bounds = sdb_s3::certify_cot(pair)?;
    if !(inside(&bounds.v, iv) && inside(&bounds.w, iw)) {
        return Err(Error::NoConvergence("two-volume solve in S³ missed its band"));
    }
    Ok(S3Solve { pair, bounds, eps_v: ev, eps_w: ew })
}

/// Start on the equal-radius line at the smaller volume, second radius from
/// the equal-radius relation at the larger volume (capped at π/2).
fn initial_guess_s3(target: [f64; 2]) -> Result<[f64; 2], Error> {
    let inv = |t: f64| -> f64 {
        let (mut lo, mut hi) = (0.0, FRAC_PI_2);
        for _ in 0..60 {
            let m = 0.5 * (lo + hi);
            match equal_volume(m) {
                Ok(x) if x < t => lo = m,
                _ => hi = m,
            }
        }
        0.5 * (lo + hi)
    };
    let r1 = inv(target[0]);
    let r2 = inv(target[1]).max(r1 + 1e-6).min(FRAC_PI_2 - 1e-9);
    Ok([r1.min(r2 - 1e-7), r2])
}

// ---------------------------------------------------------------------------
// H³

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StepperState {
    pub k1: f64,
    pub k2: f64,
    pub scale1: f64,
    pub scale2: f64,
}

impl StepperState {
    pub fn curvatures(&self) -> SdbCurvaturesH3 {
        SdbCurvaturesH3 { k1: self.k1, k2: self.k2 }
    }
}

fn k_of(r: f64) -> f64 {
    1.0 / libm::tanh(r)
}

fn r_of(k: f64) -> f64 {
    libm::atanh(1.0 / k)
}

fn h3_fast(p: [f64; 2]) -> Option<[f64; 2]> {
    let c = SdbCurvaturesH3 { k1: k_of(p[0]), k2: k_of(p[1]) };
    let r = sdb_h3::fast(c).ok()?;
    Some([r.0, r.1])
}

fn h3_feasible(p: [f64; 2]) -> bool {
    p[0] > 0.0 && p[1] > 0.0 && k_of(p[0]) > 1.0 && k_of(p[1]) > 1.0
}

/// Fast curvature pair with volumes `(v, w)` (raw order), from `guess` or
/// from single-ball radii.
pub fn solve_curvatures_h3(v: f64, w: f64, guess: Option<SdbCurvaturesH3>) -> Result<SdbCurvaturesH3, Error> {
    if !(v > 0.0 && w > 0.0) {
        return Err(Error::InfeasibleTarget("volumes must be positive"));
    }
    let tol = 1e-13 * v.max(w).max(1.0);
    let ball = |x: f64| {
        let (mut lo, mut hi) = (0.0, 1.0);
        while h3_ball_volume(hi) < x {
            hi *= 2.0;
        }
        for _ in 0..80 {
            let m = 0.5 * (lo + hi);
            if h3_ball_volume(m) < x {
                lo = m;
            } else {
                hi = m;
            }
        }
        0.5 * (lo + hi)
    };
    let starts = [
        guess.map(|g| [r_of(g.k1), r_of(g.k2)]),
        Some([ball(v), ball(w)]),
        Some([ball(1.2 * v), ball(1.2 * w)]),
    ];
    for s in starts.iter().flatten() {
        if let Some(p) = newton2(h3_fast, h3_feasible, *s, [v, w], tol) {
            let c = SdbCurvaturesH3 { k1: k_of(p[0]), k2: k_of(p[1]) };
            if c.is_valid() {
                return Ok(c);
            }
        }
    }
    Err(Error::NoConvergence("two-volume solve in H³"))
}

/// Move the curvature pair so its bubble lands inside the box
/// `[v_lo + δ, v_lo + 2·bw] × [w_lo + δ, w_lo + 2·bh]`, aiming for
/// `(v_lo + bw/2, w_lo + bh/2)`.
pub fn curvature_pair_step(
    state: StepperState,
    v_lo: f64,
    w_lo: f64,
    bw: f64,
    bh: f64,
    slack: &SlackConfig,
) -> Result<(StepperState, H3Bounds), Error> {
    let d = slack.delta;
    let lo_v = pad_upper(&Enclosure::point(v_lo), d);
    let lo_w = pad_upper(&Enclosure::point(w_lo), d);
    let hi_v = pad_lower(&(Enclosure::point(v_lo) + Enclosure::point(bw) * 2.0), 0.0);
    let hi_w = pad_lower(&(Enclosure::point(w_lo) + Enclosure::point(bh) * 2.0), 0.0);
    let contained = |b: &H3Bounds| b.v.lo() > lo_v && b.v.hi() < hi_v && b.w.lo() > lo_w && b.w.hi() < hi_w;
    let here = state.curvatures();
    if !here.is_valid() {
        return Err(Error::CurvatureUnderflow { k1: here.k1, k2: here.k2 });
    }
    if let Ok(b) = sdb_h3::certify(here) {
        if contained(&b) {
            return Ok((state, b));
        }
    }
    let target = [v_lo + 0.5 * bw, w_lo + 0.5 * bh];
    let tol = 0.05 * bw.min(bh);
    let start = [r_of(state.k1), r_of(state.k2)];
    let sol = newton2(h3_fast, h3_feasible, start, target, tol)
        .map(|p| SdbCurvaturesH3 { k1: k_of(p[0]), k2: k_of(p[1]) })
        .or_else(|| solve_curvatures_h3(target[0], target[1], Some(here)).ok())
        .ok_or(Error::StepFailure { v: v_lo, w: w_lo })?;
    if !sol.is_valid() {
        return Err(Error::CurvatureUnderflow { k1: sol.k1, k2: sol.k2 });
    }
    let b = sdb_h3::certify(sol)?;
    if !contained(&b) {
        return Err(Error::StepFailure { v: v_lo, w: w_lo });
    }
    Ok((StepperState { k1: sol.k1, k2: sol.k2, ..state }, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hemisphere_inverse() {
        let s = SlackConfig::default();
        let r = radius_from_volume(SpaceTag::S3, BandTarget { v: PI * PI, eps: 1e-6, side: Side::Under }, &s).unwrap();
        assert!(r <= FRAC_PI_2 && r > FRAC_PI_2 - 1e-4);
        let v = 1.9 * PI * PI;
        let r = radius_from_volume(SpaceTag::S3, BandTarget { v, eps: 1e-6, side: Side::Over }, &s).unwrap();
        let vol = s3_ball_volume(Enclosure::point(r));
        assert!(vol.lo() >= v && vol.hi() <= v + 1e-6);
    }

    #[test]
    fn infeasible_band() {
        let s = SlackConfig::default();
        let e = radius_from_volume(SpaceTag::H3, BandTarget { v: 1.0, eps: s.delta, side: Side::Under }, &s);
        assert_eq!(e, Err(Error::InfeasibleBand));
    }

    #[test]
    fn region_violation() {
        let s = SlackConfig::default();
        let t = 2.0 * PI * PI;
        assert!(matches!(
            radii_for_sdb_s3(0.3 * t, 0.2 * t, 1e-6, 1e-6, &s, None),
            Err(Error::RegionViolation(_))
        ));
    }

    #[test]
    fn two_volume_solve_lands_in_band() {
        let s = SlackConfig::default();
        let t = 2.0 * PI * PI;
        let sol = radii_for_sdb_s3(0.15 * t, 0.25 * t, 1e-6, 1e-6, &s, None).unwrap();
        assert!(sol.bounds.v.lo() > 0.15 * t && sol.bounds.v.hi() < 0.15 * t + 1e-6);
        assert!(sol.bounds.w.lo() > 0.25 * t && sol.bounds.w.hi() < 0.25 * t + 1e-6);
    }

    #[test]
    fn w_equals_u_too_small() {
        let s = SlackConfig::default();
        let t = 2.0 * PI * PI;
        assert!(matches!(
            radii_equal_volumes_s3(0.3 * t, 1e-6, EqualMode::WEqualsU, &s),
            Err(Error::InfeasibleTarget(_))
        ));
    }
}
