//! Standard double bubbles in H³, parameterized by `kᵢ = coth rᵢ` of the
//! two outer caps.
//!
//! With `k₁ ≥ k₂` the separating cap has parameter `k₁ − k₂`; zero means a
//! totally geodesic interface, values in `(0, 1)` a hypersphere, `1` a
//! horosphere. The separating cap is handled through the radius `y` of the
//! interface disk and its angle `b` to the disk, which stays regular across
//! all three cases.

use serde::{Deserialize, Serialize};

use crate::enclosure::{DomainError, Enclosure, SlackConfig};
use crate::error::Error;
use crate::geometry::{h3_cap_volume_k, k2m1};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SdbCurvaturesH3 {
    pub k1: f64,
    pub k2: f64,
}

impl SdbCurvaturesH3 {
    pub fn canonical(&self) -> (SdbCurvaturesH3, bool) {
        if self.k1 >= self.k2 {
            (*self, false)
        } else {
            (SdbCurvaturesH3 { k1: self.k2, k2: self.k1 }, true)
        }
    }

    pub fn is_valid(&self) -> bool {
        self.k1 > 1.0 && self.k2 > 1.0 && self.k1.is_finite() && self.k2.is_finite()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    Raw,
    Canonical,
}

/// Everything computed for one canonical (`k₁ ≥ k₂`) bubble.
#[derive(Clone, Copy, Debug)]
pub struct H3Parts<T> {
    pub areas: [T; 3],
    pub vols: [T; 3],
    /// Angle between the separating cap and the interface disk.
    pub theta: T,
    pub cosh_y: T,
    pub sinh_y: T,
}

pub fn eval_canonical<T: Scalar>(k1: T, k2: T, equal: bool) -> Result<H3Parts<T>, DomainError> {
    let two_pi = T::pi() * 2.0;
    let third2 = T::pi() * (2.0 / 3.0);
    let b = if equal {
        T::cst(0.0)
    } else {
        let q = (k1 - k2).checked_div(&(k1 + k2))?;
        (T::cst(3.0).sqrt()? * q).atan()
    };
    let m = (third2 - b).sin();
    let d = k2m1(k1) + (T::cst(1.0) - m) * (m + 1.0);
    // d = k₁² − m²
    let root = d.sqrt()?;
    let cosh_y = k1.checked_div(&root)?;
    let sinh_y = m.checked_div(&root)?;
    let sh2 = sinh_y.sqr();
    let s1 = (third2 - b).cos() * cosh_y;
    let s2 = (third2 + b).cos() * cosh_y;
    let s3 = b.cos() * cosh_y;

    let one = T::cst(1.0);
    let a1 = if s1.lo() >= 0.0 {
        (two_pi * sh2).checked_div(&(s1 + 1.0))?
    } else {
        (two_pi * (one - s1)).checked_div(&k2m1(k1))?
    };
    let a2 = (two_pi * (one - s2)).checked_div(&k2m1(k2))?;
    let a3 = (two_pi * sh2).checked_div(&(s3 + 1.0))?;

    let v1 = h3_cap_volume_k(k1, s1)?;
    let v2 = h3_cap_volume_k(k2, s2)?;
    let v3 = if equal {
        T::cst(0.0)
    } else {
        let sb = b.sin();
        let ct = b.cos();
        let first = (sinh_y * sb).checked_div(&(one.checked_div(&cosh_y)? + ct))?;
        let second = (sinh_y * sb).checked_div(&(cosh_y + ct))?.atanh()?;
        T::pi() * (first - second)
    };
    Ok(H3Parts { areas: [a1, a2, a3], vols: [v1, v2, v3], theta: b, cosh_y, sinh_y })
}

fn check(c: &SdbCurvaturesH3) -> Result<(), Error> {
    if !c.is_valid() {
        return Err(Error::CurvatureUnderflow { k1: c.k1, k2: c.k2 });
    }
    Ok(())
}

fn parts(c: &SdbCurvaturesH3) -> Result<(H3Parts<Enclosure>, bool), Error> {
    check(c)?;
    let (cc, swapped) = c.canonical();
    let p = eval_canonical(Enclosure::point(cc.k1), Enclosure::point(cc.k2), cc.k1 == cc.k2)?;
    Ok((p, swapped))
}

pub fn cap_areas_h3(c: SdbCurvaturesH3) -> Result<(Enclosure, Enclosure, Enclosure), Error> {
    let (p, _) = parts(&c)?;
    Ok((p.areas[0], p.areas[1], p.areas[2]))
}

pub fn cap_volumes_h3(c: SdbCurvaturesH3) -> Result<(Enclosure, Enclosure, Enclosure), Error> {
    let (p, _) = parts(&c)?;
    Ok((p.vols[0], p.vols[1], p.vols[2]))
}

pub fn sdb_volumes_h3(c: SdbCurvaturesH3, order: Order) -> Result<(Enclosure, Enclosure), Error> {
    let (p, swapped) = parts(&c)?;
    let v = p.vols[0] + p.vols[2];
    let w = p.vols[1] - p.vols[2];
    Ok(if swapped && order == Order::Raw { (w, v) } else { (v, w) })
}

pub fn sdb_area_h3(c: SdbCurvaturesH3, certify: Option<&SlackConfig>) -> Result<Enclosure, Error> {
    let (p, _) = parts(&c)?;
    let a = p.areas[0] + p.areas[1] + p.areas[2];
    Ok(match certify {
        Some(s) => Enclosure::new(a.lo(), crate::enclosure::pad_upper(&a, 3.0 * s.delta)).unwrap_or(a),
        None => a,
    })
}

/// Certified (v, w, area) in raw label order.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct H3Bounds {
    pub v: Enclosure,
    pub w: Enclosure,
    pub area: Enclosure,
}

pub fn certify(c: SdbCurvaturesH3) -> Result<H3Bounds, Error> {
    let (p, swapped) = parts(&c)?;
    let v = p.vols[0] + p.vols[2];
    let w = p.vols[1] - p.vols[2];
    let area = p.areas[0] + p.areas[1] + p.areas[2];
    Ok(if swapped { H3Bounds { v: w, w: v, area } } else { H3Bounds { v, w, area } })
}

/// Fast midpoint evaluation in raw label order: (v, w, area).
pub fn fast(c: SdbCurvaturesH3) -> Result<(f64, f64, f64), Error> {
    check(&c)?;
    let (cc, swapped) = c.canonical();
    let p = eval_canonical(cc.k1, cc.k2, cc.k1 == cc.k2)?;
    let v = p.vols[0] + p.vols[2];
    let w = p.vols[1] - p.vols[2];
    let a = p.areas[0] + p.areas[1] + p.areas[2];
    Ok(if swapped { (w, v, a) } else { (v, w, a) })
}

/// Radius of the interface disk and the angle of the separating cap.
pub fn interface(c: SdbCurvaturesH3) -> Result<(f64, f64), Error> {
    check(&c)?;
    let (cc, _) = c.canonical();
    let p = eval_canonical(cc.k1, cc.k2, cc.k1 == cc.k2)?;
    Ok((libm::acosh(p.cosh_y), p.theta))
}
