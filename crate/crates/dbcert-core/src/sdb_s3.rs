//! Standard double bubbles in S³.
//!
//! A bubble is described by the radii `r₁ ≤ r₂ ≤ π/2` of the outer caps of
//! its two regions; internally everything runs on `cᵢ = cot rᵢ`, which is
//! finite at the great-sphere radius. In that chart `c₁ = c₂` is the line
//! `v = w`, `c₂ = 0` is the line `w = u`, and `c₁ = c₂ = 0` is the bubble
//! with three equal volumes.

use core::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::enclosure::{DomainError, Enclosure};
use crate::error::Error;
use crate::geometry::{s3_cap_area_cot, s3_cap_volume_cot, s3_total};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SdbRadiiS3 {
    pub r1: f64,
    pub r2: f64,
}

/// The same bubble as [`SdbRadiiS3`], by cotangents of the outer radii.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CotPair {
    pub c1: f64,
    pub c2: f64,
}

impl CotPair {
    pub fn radii(&self) -> SdbRadiiS3 {
        SdbRadiiS3 { r1: FRAC_PI_2 - libm::atan(self.c1), r2: FRAC_PI_2 - libm::atan(self.c2) }
    }

    pub fn is_thirds(&self) -> bool {
        self.c1 == 0.0 && self.c2 == 0.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GeneratingAngles {
    pub theta: f64,
    pub x: f64,
    pub r3: f64,
    pub phi1: f64,
    pub psi1_hat: f64,
    pub phi2: f64,
    pub phi3: f64,
}

/// Volumes, area and the cosines of the three cap angles.
#[derive(Clone, Copy, Debug)]
pub struct S3Parts<T> {
    pub v: T,
    pub w: T,
    pub area: T,
    pub theta: T,
    pub cos_x: T,
    pub sin_x: T,
    /// `cos ψ̂₁`, `cos(π − φ₂)`, `cos φ₃`.
    pub cap_cos: [T; 3],
}

/// Evaluate a bubble in the cot chart. Requires `c₁ ≥ c₂ ≥ 0`, not both zero.
pub fn eval_cot<T: Scalar>(c1: T, c2: T, equal: bool) -> Result<S3Parts<T>, DomainError> {
    let third = T::pi() / 3.0;
    let (q, c3) = if equal {
        (T::cst(0.0), T::cst(0.0))
    } else {
        let d = c1 - c2;
        (d.checked_div(&(c1 + c2))?, d)
    };
    let b = (T::cst(3.0).sqrt()? * q).atan();
    let m = (third + b).sin();
    let den = (m.sqr() + c1.sqr()).sqrt()?;
    let cos_x = c1.checked_div(&den)?;
    let sin_x = m.checked_div(&den)?;
    let k1 = -(third + b).cos() * cos_x;
    let k2 = -(third - b).cos() * cos_x;
    let k3 = b.cos() * cos_x;
    let vc3 = if equal { T::cst(0.0) } else { s3_cap_volume_cot(c3, k3)? };
    let v = s3_cap_volume_cot(c1, k1)? + vc3;
    let w = s3_cap_volume_cot(c2, k2)? - vc3;
    let area = s3_cap_area_cot(c1, k1) + s3_cap_area_cot(c2, k2) + s3_cap_area_cot(c3, k3);
    Ok(S3Parts { v, w, area, theta: b, cos_x, sin_x, cap_cos: [k1, k2, k3] })
}

/// Certified (v, w, area) at an exact point of the cot chart.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct S3Bounds {
    pub v: Enclosure,
    pub w: Enclosure,
    pub area: Enclosure,
}

fn check_chart(p: &CotPair) -> Result<(), Error> {
    if !(p.c1 >= p.c2 && p.c2 >= 0.0 && p.c1.is_finite()) {
        return Err(Error::DegenerateConfig("cot chart requires c1 >= c2 >= 0"));
    }
    Ok(())
}

pub fn certify_cot(p: CotPair) -> Result<S3Bounds, Error> {
    check_chart(&p)?;
    if p.is_thirds() {
        let t = s3_total::<Enclosure>() / 3.0;
        return Ok(S3Bounds { v: t, w: t, area: Enclosure::pi() * 6.0 });
    }
    let e = eval_cot(Enclosure::point(p.c1), Enclosure::point(p.c2), p.c1 == p.c2)?;
    Ok(S3Bounds { v: e.v, w: e.w, area: e.area })
}

/// Fast midpoint evaluation: (v, w, area).
pub fn fast_cot(p: CotPair) -> Result<(f64, f64, f64), Error> {
    check_chart(&p)?;
    if p.is_thirds() {
        let t = 2.0 * PI * PI / 3.0;
        return Ok((t, t, 6.0 * PI));
    }
    let e = eval_cot(p.c1, p.c2, p.c1 == p.c2)?;
    Ok((e.v, e.w, e.area))
}

/// Map radii to the cot chart, reporting whether the labels were swapped.
///
/// Equal radii beyond π/2 describe the bubble with two equal regions that
/// are each larger than the third; relabeling the exterior sends it to
/// `(π − r, π/2)`, which is returned with the swap flag meaning "the two
/// equal volumes are the first two outputs".
enum Chart {
    Direct { p: CotPair, swapped: bool },
    EqualLarge { p: CotPair },
}

fn chart(rad: &SdbRadiiS3) -> Result<Chart, Error> {
    let (a, b) = (rad.r1, rad.r2);
    if !(a > 0.0 && a < PI && b > 0.0 && b < PI) {
        return Err(Error::DegenerateConfig("radii must lie in (0, π)"));
    }
    if a == b && a > FRAC_PI_2 {
        let c1 = 1.0 / libm::tan(PI - a);
        return Ok(Chart::EqualLarge { p: CotPair { c1, c2: 0.0 } });
    }
    let (lo, hi, swapped) = if a <= b { (a, b, false) } else { (b, a, true) };
    if hi > FRAC_PI_2 {
        return Err(Error::DegenerateConfig("outer radii beyond π/2 are outside the chart"));
    }
    let c = |r: f64| if r == FRAC_PI_2 { 0.0 } else { 1.0 / libm::tan(r) };
    Ok(Chart::Direct { p: CotPair { c1: c(lo), c2: c(hi) }, swapped })
}

pub fn generating_angles(rad: SdbRadiiS3) -> Result<GeneratingAngles, Error> {
    let p = match chart(&rad)? {
        Chart::Direct { p, .. } => p,
        Chart::EqualLarge { .. } => {
            return Err(Error::DegenerateConfig("equal radii beyond π/2 use the relabeled bubble"))
        }
    };
    if p.is_thirds() {
        return Err(Error::DegenerateConfig("interface circle degenerates at equal thirds"));
    }
    let e = eval_cot(p.c1, p.c2, p.c1 == p.c2)?;
    let x = libm::atan2(e.sin_x, e.cos_x);
    let r1 = FRAC_PI_2 - libm::atan(p.c1);
    let s = e.sin_x / libm::sin(r1);
    if !(s <= 1.0 + 1e-12) {
        return Err(Error::DegenerateConfig("interface circle larger than outer cap"));
    }
    let phi1 = libm::asin(s.min(1.0));
    let acos = |c: f64| libm::acos(c.clamp(-1.0, 1.0));
    Ok(GeneratingAngles {
        theta: e.theta,
        x,
        r3: FRAC_PI_2 - libm::atan(p.c1 - p.c2),
        phi1,
        psi1_hat: acos(e.cap_cos[0]),
        phi2: PI - acos(e.cap_cos[1]),
        phi3: acos(e.cap_cos[2]),
    })
}

fn bounds(rad: &SdbRadiiS3) -> Result<(S3Bounds, bool), Error> {
    match chart(rad)? {
        Chart::Direct { p, swapped } => Ok((certify_cot(p)?, swapped)),
        Chart::EqualLarge { p } => {
            let b = certify_cot(p)?;
            Ok((S3Bounds { v: b.w, w: b.w, area: b.area }, false))
        }
    }
}

pub fn sdb_volumes_s3(rad: SdbRadiiS3) -> Result<(Enclosure, Enclosure), Error> {
    let (b, swapped) = bounds(&rad)?;
    Ok(if swapped { (b.w, b.v) } else { (b.v, b.w) })
}

pub fn sdb_area_s3(rad: SdbRadiiS3) -> Result<Enclosure, Error> {
    Ok(bounds(&rad)?.0.area)
}

/// Volume of one region of the equal-volume bubble whose outer caps have radius `r`.
pub fn equal_volume<T: Scalar>(r: T) -> Result<T, DomainError> {
    let two = T::cst(2.0);
    let sq2 = two.sqrt()?;
    let d = ((r * 2.0).cos() + 7.0).sqrt()?;
    let ratio = (sq2 * r.cos()).checked_div(&d)?;
    let first = T::pi() * 0.5 * (r * 2.0 - (r * 2.0).sin()) * (ratio + 1.0);
    let second = T::pi() * ((sq2 * r.sin()).checked_div(&d)?.atan() - r * ratio);
    Ok(first + second)
}

pub fn equal_volume_s3(r: f64) -> Result<Enclosure, Error> {
    if !(r > 0.0 && r < PI) {
        return Err(Error::DegenerateConfig("radius must lie in (0, π)"));
    }
    Ok(equal_volume(Enclosure::point(r))?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * (1.0 + b.abs())
    }

    #[test]
    fn equal_radii_give_equal_volumes() {
        for r in [0.2, 0.7, 1.3, 1.55] {
            let rad = SdbRadiiS3 { r1: r, r2: r };
            let (v, w) = sdb_volumes_s3(rad).unwrap();
            assert_eq!(v, w);
            let ga = generating_angles(rad).unwrap();
            assert_eq!(ga.theta, 0.0);
            assert!(close(ga.r3, FRAC_PI_2, 1e-15));
            assert!(close(ga.psi1_hat, PI - ga.phi2, 1e-12) || close(ga.phi1, ga.phi2, 1e-12));
            assert!(close(equal_volume_s3(r).unwrap().mid(), v.mid(), 1e-12));
        }
    }

    #[test]
    fn thirds_anchor() {
        let b = certify_cot(CotPair { c1: 0.0, c2: 0.0 }).unwrap();
        assert!(b.area.contains(6.0 * PI));
        let t = 2.0 * PI * PI / 3.0;
        assert!(close(equal_volume_s3(FRAC_PI_2).unwrap().mid(), t, 1e-15));
        let near = fast_cot(CotPair { c1: 1e-9, c2: 1e-9 }).unwrap();
        assert!(close(near.2, 6.0 * PI, 1e-8));
    }

    #[test]
    fn label_swap() {
        let a = SdbRadiiS3 { r1: 0.6, r2: 1.1 };
        let b = SdbRadiiS3 { r1: 1.1, r2: 0.6 };
        let (va, wa) = sdb_volumes_s3(a).unwrap();
        let (vb, wb) = sdb_volumes_s3(b).unwrap();
        assert_eq!((va, wa), (wb, vb));
        assert_eq!(sdb_area_s3(a).unwrap(), sdb_area_s3(b).unwrap());
    }

    #[test]
    fn interface_circle_shared() {
        for &(r1, r2) in &[(0.3, 0.5), (0.8, 1.4), (1.2, 1.5), (0.4, 1.57)] {
            let g = generating_angles(SdbRadiiS3 { r1, r2 }).unwrap();
            let sx = libm::sin(g.x);
            assert!(close(libm::sin(g.phi1) * libm::sin(r1), sx, 1e-12));
            assert!(close(libm::sin(g.phi2) * libm::sin(r2), sx, 1e-12));
            assert!(close(libm::sin(g.phi3) * libm::sin(g.r3), sx, 1e-12));
        }
    }

    #[test]
    fn equal_large_radius_relabels() {
        let r = 2.0;
        let (v, w) = sdb_volumes_s3(SdbRadiiS3 { r1: r, r2: r }).unwrap();
        assert_eq!(v, w);
        assert!(v.mid() > 2.0 * PI * PI / 3.0);
        assert!(sdb_volumes_s3(SdbRadiiS3 { r1: 0.5, r2: 2.0 }).is_err());
    }
}
