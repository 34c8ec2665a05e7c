//! Spheres and spherical caps in S³, H³ and R³.
//!
//! Cap angles follow the convention `φ₀ = 0` for the empty cap and `φ₀ = π`
//! for the whole sphere. The generic kernels at the bottom of the file take
//! the cosine of the cap angle directly, which is what the double-bubble
//! modules have on hand.

use serde::{Deserialize, Serialize};

use crate::enclosure::{DomainError, Enclosure};
use crate::error::Error;
use crate::scalar::{half_plane_angle, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SpaceTag {
    S3,
    H3,
    R3,
}

impl SpaceTag {
    pub fn name(self) -> &'static str {
        match self {
            SpaceTag::S3 => "s3",
            SpaceTag::H3 => "h3",
            SpaceTag::R3 => "r3",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CapSpec {
    pub r: f64,
    pub phi0: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiskCapSpec {
    pub y: f64,
    pub theta: f64,
}

fn dom(op: &'static str) -> Error {
    Error::Domain(DomainError { op })
}

fn check_radius(space: SpaceTag, r: f64) -> Result<(), Error> {
    let ok = match space {
        SpaceTag::S3 => r > 0.0 && r <= core::f64::consts::PI,
        SpaceTag::H3 | SpaceTag::R3 => r > 0.0 && r.is_finite(),
    };
    if ok {
        Ok(())
    } else {
        Err(dom("radius"))
    }
}

/// `cos φ₀`, exact at the three angles that mark the empty cap, the
/// hemisphere and the full sphere.
pub fn cos_of_angle(phi0: f64) -> Enclosure {
    if phi0 == 0.0 {
        Enclosure::ONE
    } else if phi0 == core::f64::consts::FRAC_PI_2 {
        Enclosure::ZERO
    } else if phi0 == core::f64::consts::PI {
        -Enclosure::ONE
    } else {
        Enclosure::point(phi0).cos()
    }
}

/// Volume of S³, 2π².
pub fn s3_total<T: Scalar>() -> T {
    T::pi().sqr() * 2.0
}

pub fn sphere_area(space: SpaceTag, r: f64) -> Result<Enclosure, Error> {
    check_radius(space, r)?;
    let x = Enclosure::point(r);
    Ok(match space {
        SpaceTag::S3 => s3_sphere_area(x),
        SpaceTag::H3 => h3_sphere_area(x),
        SpaceTag::R3 => Enclosure::pi() * x.sqr() * 4.0,
    })
}

pub fn sphere_volume(space: SpaceTag, r: f64) -> Result<Enclosure, Error> {
    check_radius(space, r)?;
    let x = Enclosure::point(r);
    Ok(match space {
        SpaceTag::S3 => s3_ball_volume(x),
        SpaceTag::H3 => h3_ball_volume(x),
        SpaceTag::R3 => Enclosure::pi() * x * x.sqr() * 4.0 / 3.0,
    })
}

/// Mean curvature (sum of principal curvatures) of a geodesic sphere.
pub fn mean_curvature(space: SpaceTag, r: f64) -> Result<f64, Error> {
    match space {
        SpaceTag::S3 if r > 0.0 && r < core::f64::consts::PI => Ok(2.0 / libm::tan(r)),
        SpaceTag::H3 if r > 0.0 => Ok(2.0 / libm::tanh(r)),
        SpaceTag::R3 if r > 0.0 => Ok(2.0 / r),
        _ => Err(dom("mean curvature")),
    }
}

fn check_cap(space: SpaceTag, cap: &CapSpec) -> Result<(), Error> {
    check_radius(space, cap.r)?;
    if !(cap.phi0 >= 0.0 && cap.phi0 <= core::f64::consts::PI) {
        return Err(dom("cap angle"));
    }
    Ok(())
}

pub fn cap_area(space: SpaceTag, cap: CapSpec) -> Result<Enclosure, Error> {
    check_cap(space, &cap)?;
    let r = Enclosure::point(cap.r);
    let one_minus_c = Enclosure::ONE - cos_of_angle(cap.phi0);
    let two_pi = Enclosure::pi() * 2.0;
    Ok(match space {
        SpaceTag::S3 => two_pi * r.sin().sqr() * one_minus_c,
        SpaceTag::H3 => two_pi * r.sinh().sqr() * one_minus_c,
        SpaceTag::R3 => two_pi * r.sqr() * one_minus_c,
    })
}

/// Volume between the cap and the totally geodesic disk spanning its rim.
///
/// In S³ with `r > π/2` the value is continued from small caps, so it can
/// differ from the geometric intersection with a half-space by `±π²`; the
/// hemisphere cap is pinned to half the ball.
pub fn cap_volume(space: SpaceTag, cap: CapSpec) -> Result<Enclosure, Error> {
    check_cap(space, &cap)?;
    let r = Enclosure::point(cap.r);
    let c = cos_of_angle(cap.phi0);
    match space {
        SpaceTag::S3 => Ok(s3_cap_volume(r, c)?),
        SpaceTag::H3 => Ok(h3_cap_volume(r, c)?),
        SpaceTag::R3 => {
            let one_minus_c = Enclosure::ONE - c;
            Ok(Enclosure::pi() * r * r.sqr() * one_minus_c.sqr() * (c + 2.0) / 3.0)
        }
    }
}

pub fn cap_volume_diskform(d: DiskCapSpec) -> Result<Enclosure, Error> {
    if !(d.y >= 0.0 && d.theta >= 0.0 && d.theta < core::f64::consts::PI) {
        return Err(dom("disk cap"));
    }
    Ok(disk_cap_volume(Enclosure::point(d.y), Enclosure::point(d.theta))?)
}

/// Area of the Euclidean sphere enclosing volume `v`: `(36π)^{1/3} v^{2/3}`.
pub fn flat_sphere_area(v: f64) -> f64 {
    if v <= 0.0 {
        return 0.0;
    }
    libm::cbrt(36.0 * core::f64::consts::PI * v * v)
}

// ---------------------------------------------------------------------------
// Generic kernels.

pub fn s3_sphere_area<T: Scalar>(r: T) -> T {
    T::pi() * r.sin().sqr() * 4.0
}

pub fn s3_ball_volume<T: Scalar>(r: T) -> T {
    let t = r * 2.0;
    T::pi() * (t - t.sin())
}

pub fn h3_sphere_area<T: Scalar>(r: T) -> T {
    T::pi() * r.sinh().sqr() * 4.0
}

pub fn h3_ball_volume<T: Scalar>(r: T) -> T {
    let t = r * 2.0;
    T::pi() * (t.sinh() - t)
}

pub fn s3_cap_volume<T: Scalar>(r: T, c: T) -> Result<T, DomainError> {
    let s = r.sin();
    let co = r.cos();
    let a = half_plane_angle(c * s, co)?;
    Ok(T::pi() * (r - a - (T::cst(1.0) - c) * co * s))
}

pub fn h3_cap_volume<T: Scalar>(r: T, c: T) -> Result<T, DomainError> {
    let sh = r.sinh();
    let ch = r.cosh();
    let t = (c * r.tanh()).atanh()?;
    Ok(T::pi() * (t - r + (T::cst(1.0) - c) * sh * ch))
}

/// H³ cap volume from the radius `y` of the spanning disk and the angle `θ`
/// between cap and disk.
pub fn disk_cap_volume<T: Scalar>(y: T, theta: T) -> Result<T, DomainError> {
    let sh = y.sinh();
    let ch = y.cosh();
    let st = theta.sin();
    let ct = theta.cos();
    let one = T::cst(1.0);
    let first = (sh * st).checked_div(&(one.checked_div(&ch)? + ct))?;
    let second = (sh * st).checked_div(&(ch + ct))?.atanh()?;
    Ok(T::pi() * (first - second))
}

/// S³ cap volume with the radius given by `cot r`, for `r ≤ π/2`.
pub fn s3_cap_volume_cot<T: Scalar>(cot_r: T, c: T) -> Result<T, DomainError> {
    if cot_r.hi() < 0.0 {
        return Err(DomainError { op: "cap radius" });
    }
    let r = T::pi() * 0.5 - cot_r.atan();
    let a = half_plane_angle(c, cot_r)?;
    let cs = cot_r.checked_div(&(cot_r.sqr() + 1.0))?;
    Ok(T::pi() * (r - a - (T::cst(1.0) - c) * cs))
}

pub fn s3_cap_area_cot<T: Scalar>(cot_r: T, c: T) -> T {
    T::pi() * 2.0 * (T::cst(1.0) - c) / (cot_r.sqr() + 1.0)
}

/// `(k − 1)(k + 1)`, without cancellation near `k = 1`.
pub fn k2m1<T: Scalar>(k: T) -> T {
    (k - 1.0) * (k + 1.0)
}

/// H³ ball volume for the sphere with `coth r = k`.
pub fn h3_ball_volume_k<T: Scalar>(k: T) -> Result<T, DomainError> {
    let d = k2m1(k);
    Ok(T::pi() * ((k * 2.0).checked_div(&d)? - k.acoth()? * 2.0))
}

pub fn h3_sphere_area_k<T: Scalar>(k: T) -> Result<T, DomainError> {
    (T::pi() * 4.0).checked_div(&k2m1(k))
}

/// H³ cap volume for the sphere `coth r = k` with `cos φ₀ = σ`.
pub fn h3_cap_volume_k<T: Scalar>(k: T, sigma: T) -> Result<T, DomainError> {
    let d = k2m1(k);
    let t = sigma.checked_div(&k)?.atanh()?;
    Ok(T::pi() * (t - k.acoth()? + ((T::cst(1.0) - sigma) * k).checked_div(&d)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::{FRAC_PI_2, PI};

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * (1.0 + b.abs())
    }

    #[test]
    fn sphere_examples() {
        assert!(sphere_area(SpaceTag::S3, FRAC_PI_2).unwrap().contains(4.0 * PI));
        assert!(sphere_area(SpaceTag::S3, PI).unwrap().hi() < 1e-30);
        let k: f64 = 2.0;
        let r = 0.5 * (3.0f64).ln();
        assert!(close(1.0 / r.tanh(), k, 1e-15));
        assert!(close(sphere_area(SpaceTag::H3, r).unwrap().mid(), 4.0 * PI / 3.0, 1e-14));
        assert!(h3_sphere_area_k(Enclosure::point(2.0)).unwrap().contains(4.0 * PI / 3.0));
        assert!(sphere_volume(SpaceTag::S3, PI).unwrap().contains(2.0 * PI * PI));
        assert!(sphere_volume(SpaceTag::S3, FRAC_PI_2).unwrap().width() < 1e-13);
        assert!(close(sphere_volume(SpaceTag::S3, FRAC_PI_2).unwrap().mid(), PI * PI, 1e-15));
        let small = sphere_volume(SpaceTag::H3, 1e-3).unwrap().mid();
        assert!(close(small, 4.0 / 3.0 * PI * 1e-9, 1e-5));
        assert!(sphere_area(SpaceTag::S3, 0.0).is_err());
    }

    #[test]
    fn curvature_examples() {
        assert!(mean_curvature(SpaceTag::S3, FRAC_PI_2).unwrap().abs() < 1e-15);
        for r in [1e-3, 0.5, 3.0, 15.0] {
            assert!(mean_curvature(SpaceTag::H3, r).unwrap() > 2.0);
        }
        let h = 1e-5;
        let da = sphere_area(SpaceTag::H3, 1.0 + h).unwrap().mid() - sphere_area(SpaceTag::H3, 1.0 - h).unwrap().mid();
        let dv = sphere_volume(SpaceTag::H3, 1.0 + h).unwrap().mid() - sphere_volume(SpaceTag::H3, 1.0 - h).unwrap().mid();
        assert!(close(da / dv, mean_curvature(SpaceTag::H3, 1.0).unwrap(), 1e-6));
        assert!(mean_curvature(SpaceTag::H3, 0.0).is_err());
    }

    #[test]
    fn cap_examples() {
        for r in [0.3, 1.2, 2.5] {
            let full = cap_area(SpaceTag::S3, CapSpec { r, phi0: PI }).unwrap();
            assert!(full.contains(4.0 * PI * libm::sin(r).powi(2)) || close(full.mid(), 4.0 * PI * libm::sin(r).powi(2), 1e-15));
            let half = cap_area(SpaceTag::S3, CapSpec { r, phi0: FRAC_PI_2 }).unwrap();
            assert!(close(half.mid(), 0.5 * sphere_area(SpaceTag::S3, r).unwrap().mid(), 1e-15));
            assert_eq!(cap_area(SpaceTag::H3, CapSpec { r, phi0: 0.0 }).unwrap(), Enclosure::ZERO);
            let hv = cap_volume(SpaceTag::S3, CapSpec { r, phi0: FRAC_PI_2 }).unwrap();
            assert!(close(hv.mid(), PI * (r - r.cos() * r.sin()), 1e-14));
            let ball = sphere_volume(SpaceTag::H3, r).unwrap();
            let cv = cap_volume(SpaceTag::H3, CapSpec { r, phi0: PI }).unwrap();
            assert!(cv.lo() <= ball.hi() && ball.lo() <= cv.hi());
        }
    }

    #[test]
    fn disk_form_examples() {
        let v = disk_cap_volume(Enclosure::point(0.7), Enclosure::ZERO).unwrap();
        assert!(v.contains(0.0));
        let y = libm::acosh(2.0);
        let v = cap_volume_diskform(DiskCapSpec { y, theta: PI / 3.0 }).unwrap();
        assert!(close(v.mid(), PI * (1.5 - core::f64::consts::LN_2), 1e-14));
        let tiny = cap_volume_diskform(DiskCapSpec { y: 1e-8, theta: 1.0 }).unwrap();
        assert!(tiny.mid().abs() < 1e-20);
    }

    #[test]
    fn flat_examples() {
        assert_eq!(flat_sphere_area(0.0), 0.0);
        assert!(close(flat_sphere_area(8.0 * 0.3), 4.0 * flat_sphere_area(0.3), 1e-15));
        assert!(close(flat_sphere_area(4.0 * PI / 3.0), 4.0 * PI, 1e-15));
    }

    #[test]
    fn cot_chart_matches_radius_chart() {
        for &(r, c) in &[(0.4, 0.3), (1.1, -0.6), (1.5, 0.9), (0.9, -0.99)] {
            let a = s3_cap_volume(r, c).unwrap();
            let b = s3_cap_volume_cot(1.0 / libm::tan(r), c).unwrap();
            assert!(close(a, b, 1e-13), "{r} {c}: {a} {b}");
        }
        for &(k, s) in &[(1.3, 0.2), (4.0, -0.7), (11.0, 0.5)] {
            let r = libm::atanh(1.0 / k);
            let a = h3_cap_volume(r, s).unwrap();
            let b = h3_cap_volume_k(k, s).unwrap();
            assert!(close(a, b, 1e-12), "{k} {s}: {a} {b}");
            assert!(close(h3_ball_volume(r), h3_ball_volume_k(k).unwrap(), 1e-12));
        }
    }
}
