//! Numerical checks of the analytic estimates that bound the computer
//! domain: the small-volume constants, single-sphere asymptotics in H³,
//! the interface limits of large double bubbles, the ray limit and the
//! monotonicity statements, and the chain of elementary inequalities
//! behind them.
//!
//! Each check samples its stated range and reports the slack of the
//! inequality at every sample. A report passes iff every margin is
//! strictly positive.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::enclosure::{Enclosure, SlackConfig};
use crate::geometry::{disk_cap_volume, h3_ball_volume, h3_ball_volume_k, mean_curvature, SpaceTag};
use crate::hutchings::{critical_ratio, hutchings_point, sphere_area_fast, VolumePair};
use crate::sdb_h3::{self, SdbCurvaturesH3};
use crate::solvers::{radius_from_volume, solve_curvatures_h3, BandTarget, Side};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LemmaCheckReport {
    pub lemma_id: String,
    pub sample_points: Vec<Vec<f64>>,
    pub margins: Vec<f64>,
    pub pass: bool,
}

impl LemmaCheckReport {
    fn new(id: &str, samples: Vec<(Vec<f64>, f64)>) -> Self {
        let (sample_points, margins): (Vec<_>, Vec<_>) = samples.into_iter().unzip();
        let pass = !margins.is_empty() && margins.iter().all(|m| *m > 0.0);
        LemmaCheckReport { lemma_id: id.to_string(), sample_points, margins, pass }
    }

    pub fn min_margin(&self) -> f64 {
        self.margins.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

/// `n ≥ 2` points from `lo` to `hi`, geometrically spaced.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let n = n.max(2);
    let (a, b) = (libm::log(lo), libm::log(hi));
    (0..n)
        .map(|i| match i {
            0 => lo,
            _ if i == n - 1 => hi,
            _ => libm::exp(a + (b - a) * i as f64 / (n - 1) as f64),
        })
        .collect()
}

/// `n ≥ 2` points from `lo` to `hi`, evenly spaced.
pub fn lin_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let n = n.max(2);
    (0..n).map(|i| if i == n - 1 { hi } else { lo + (hi - lo) * i as f64 / (n - 1) as f64 }).collect()
}

// ---------------------------------------------------------------------------
// Strong Euclidean ratio and small volumes.

pub const STRONG_RATIO: f64 = 2.02676;

/// `2^{1/3}(1−w)^{2/3} + w^{2/3} + 1` as an enclosure.
pub fn hmrr_lhs(w: f64) -> Enclosure {
    let w = Enclosure::point(w);
    let t = |x: Enclosure| x.cbrt().sqr();
    Enclosure::point(2.0).cbrt() * t(Enclosure::ONE - w) + t(w) + 1.0
}

/// `2.02676 · 3 · 2^{−4/3}` as an enclosure.
pub fn hmrr_rhs() -> Enclosure {
    let c = Enclosure::ratio(202_676.0, 100_000.0);
    let two_43 = Enclosure::point(2.0) * Enclosure::point(2.0).cbrt();
    c * 3.0 / two_43
}

/// The Euclidean estimate on `w ∈ [1/2, 1/1.84]`: the left side beats the
/// right side on the grid, the left side is concave there, and the two
/// endpoint values clear their stated decimals.
pub fn check_hmrr_strong(grid: &[f64]) -> LemmaCheckReport {
    let rhs = hmrr_rhs();
    let mut s: Vec<(Vec<f64>, f64)> = grid.iter().map(|&w| (vec![w], hmrr_lhs(w).lo() - rhs.hi())).collect();
    for win in grid.windows(3) {
        let (a, b, c) = (win[0], win[1], win[2]);
        // Second divided difference, non-uniform spacing.
        let fa = hmrr_lhs(a).mid();
        let fb = hmrr_lhs(b).mid();
        let fc = hmrr_lhs(c).mid();
        let d2 = ((fc - fb) / (c - b) - (fb - fa) / (b - a)) / (c - a);
        s.push((vec![a, b, c], -d2));
    }
    let end = Enclosure::ONE / 1.84;
    s.push((vec![0.5], hmrr_lhs(0.5).lo() - 2.4236));
    s.push((vec![end.lo()], hmrr_lhs(end.lo()).lo().min(hmrr_lhs(end.hi()).lo()) - 2.412965));
    s.push((vec![], 2.412966 - rhs.hi()));
    LemmaCheckReport::new("strong_euclidean_ratio", s)
}

/// Volume bound for a double bubble fitting in a ball of radius `r`:
/// `(2π/3 + π√3/2)(2r/(2+√3))³`.
pub fn small_bubble_volume(r: f64) -> Enclosure {
    let s3 = Enclosure::point(3.0).sqrt().unwrap_or(Enclosure::ENTIRE);
    let c = Enclosure::pi() * (2.0 / 3.0) + Enclosure::pi() * s3 / 2.0;
    let k = Enclosure::point(2.0 * r) / (s3 + 2.0);
    c * k * k.sqr()
}

pub fn check_small_volume_constants() -> LemmaCheckReport {
    let r = 0.1547;
    let re = Enclosure::point(r);
    let lam = re.sinh() / re;
    let cap = Enclosure::ratio(1_003_994.0, 1_000_000.0);
    let ratio = Enclosure::ratio(202_676.0, 100_000.0);
    let pow = |x: Enclosure, p: f64| (x.ln().unwrap_or(Enclosure::ENTIRE) * p).exp();
    let mut s = vec![
        (vec![r], small_bubble_volume(r).lo() - 0.002743),
        (vec![r], cap.lo() - lam.hi()),
        (vec![], (ratio * pow(cap, -10.0 / 3.0)).lo() - 2.0),
    ];
    // S³: ball radius for the smaller threshold, distortion sin r / r.
    // Rounded up: the distortion only gets worse with the radius.
    let rs = small_radius(0.002738) * (1.0 + 1e-12);
    let re = Enclosure::point(rs);
    let lam_s = re.sin() / re;
    s.push((vec![rs], small_bubble_volume(rs).lo() - 0.002738));
    s.push((vec![rs], (ratio * pow(lam_s, 10.0 / 3.0)).lo() - 2.0));
    // The distortion tends to 1 as the ball shrinks.
    for &t in &[1e-2, 1e-4, 1e-6] {
        let e = Enclosure::point(t);
        s.push((vec![t], t * t / 5.0 - ((e.sinh() / e).hi() - 1.0).abs()));
    }
    LemmaCheckReport::new("small_volume_constants", s)
}

/// Smallest ball radius whose double-bubble volume bound reaches `v`.
pub fn small_radius(v: f64) -> f64 {
    let s3 = libm::sqrt(3.0);
    let c = 2.0 * PI / 3.0 + PI * s3 / 2.0;
    libm::cbrt(v / c) * (2.0 + s3) / 2.0
}

// ---------------------------------------------------------------------------
// Single spheres in H³.

/// Radius of the H³ ball of volume `v`, fast path.
pub fn h3_radius(v: f64) -> f64 {
    let (mut lo, mut hi) = (0.0, 1.0);
    while h3_ball_volume(hi) < v {
        hi *= 2.0;
    }
    for _ in 0..200 {
        let m = 0.5 * (lo + hi);
        if m <= lo || m >= hi {
            break;
        }
        if h3_ball_volume(m) < v {
            lo = m;
        } else {
            hi = m;
        }
    }
    0.5 * (lo + hi)
}

/// `r(v) − ½ ln(2v/π)`.
pub fn radius_gap(v: f64) -> f64 {
    h3_radius(v) - 0.5 * libm::log(2.0 * v / PI)
}

/// For `v > 150λ`: `0 < r(v) − ½ ln(2v/π) < 0.06`, with `r` bracketed by
/// certified inverse solves on either side of `v`.
pub fn check_radius_asymptote(vs: &[f64]) -> LemmaCheckReport {
    let slack = SlackConfig::default();
    let mut s = Vec::new();
    for &v in vs {
        let eps = (1e-9 * v).max(4.0 * slack.delta);
        let r_lo = radius_from_volume(SpaceTag::H3, BandTarget { v, eps, side: Side::Under }, &slack);
        let r_hi = radius_from_volume(SpaceTag::H3, BandTarget { v, eps, side: Side::Over }, &slack);
        let half_log = (Enclosure::point(2.0 * v) / Enclosure::pi()).ln().map(|l| l * 0.5);
        match (r_lo, r_hi, half_log) {
            (Ok(a), Ok(b), Ok(h)) => {
                s.push((vec![v], a - h.hi()));
                s.push((vec![v], 0.06 - (b - h.lo())));
            }
            _ => s.push((vec![v], f64::NAN)),
        }
    }
    LemmaCheckReport::new("radius_asymptote", s)
}

/// Exact mean curvature of the H³ sphere of volume `v`, written through
/// the volume: `2 + 2π/(v + 2πr + (π/2)e^{−2r} − π/2)`.
pub fn curvature_from_volume(v: f64, r: f64) -> f64 {
    2.0 + 2.0 * PI / (v + 2.0 * PI * r + 0.5 * PI * libm::exp(-2.0 * r) - 0.5 * PI)
}

/// `A′(x) = 2 coth r(x)`.
pub fn aprime(x: f64) -> f64 {
    mean_curvature(SpaceTag::H3, h3_radius(x)).unwrap_or(f64::NAN)
}

pub fn aprime_upper(x: f64) -> f64 {
    2.0 + 2.0 * PI / (x + PI * libm::log(x) - 3.0)
}

pub fn aprime_lower(x: f64) -> f64 {
    2.0 + 2.0 * PI / (x + PI * libm::log(x) - 1.041)
}

pub fn aprime_lower_shifted(x: f64) -> f64 {
    2.0 + 2.0 * PI / (x + PI * libm::log(x) + 2.0)
}

/// Upper bound on `A′` wherever its denominator is positive, lower bound
/// for `x > 150λ`, shifted lower bound for `x > 300λ`, and the curvature
/// identity itself.
pub fn check_aprime_bounds(xs: &[f64]) -> LemmaCheckReport {
    let lam = critical_ratio();
    let mut s = Vec::new();
    for &x in xs {
        let r = h3_radius(x);
        let a = mean_curvature(SpaceTag::H3, r).unwrap_or(f64::NAN);
        s.push((vec![x], 1e-9 - (a - curvature_from_volume(x, r)).abs()));
        if x + PI * libm::log(x) - 3.0 > 0.0 {
            s.push((vec![x], aprime_upper(x) - a));
        }
        if x > 150.0 * lam {
            s.push((vec![x], a - aprime_lower(x)));
        }
        if x > 300.0 * lam {
            s.push((vec![x], aprime(x + 3.0) - aprime_lower_shifted(x)));
        }
    }
    LemmaCheckReport::new("sphere_curvature_bounds", s)
}

// ---------------------------------------------------------------------------
// Large double bubbles in H³.

/// Volume completing the outer cap of the bubble of volume `v` (resp. `w`)
/// to a full ball, in raw label order.
pub fn completion_volumes(c: SdbCurvaturesH3) -> Option<(f64, f64)> {
    let (cc, swapped) = c.canonical();
    let p = sdb_h3::eval_canonical(cc.k1, cc.k2, cc.k1 == cc.k2).ok()?;
    let b1 = h3_ball_volume_k(cc.k1).ok()?;
    let b2 = h3_ball_volume_k(cc.k2).ok()?;
    let (a, b) = (b1 - p.vols[0], b2 - p.vols[1]);
    Some(if swapped { (b, a) } else { (a, b) })
}

/// Upper bound for the completion volumes once the separating angle is
/// below 1/20: `vol(cosh⁻¹2, π/3 + 1/20) + vol(cosh⁻¹2, 1/20)`.
pub fn completion_bound() -> Enclosure {
    let y = Enclosure::point(2.0).acosh().unwrap_or(Enclosure::ENTIRE);
    let t = Enclosure::ratio(1.0, 20.0);
    let a = disk_cap_volume(y, Enclosure::pi() / 3.0 + t);
    let b = disk_cap_volume(y, t);
    match (a, b) {
        (Ok(a), Ok(b)) => a + b,
        _ => Enclosure::ENTIRE,
    }
}

/// For bubbles with both volumes above `300λ`: interface radius below
/// `cosh⁻¹2`, separating angle below 1/20, completion volumes below 3.
pub fn check_interface_limits(ks: &[SdbCurvaturesH3]) -> LemmaCheckReport {
    let floor = 300.0 * critical_ratio();
    let mut s = vec![(vec![], 3.0 - completion_bound().hi())];
    for c in ks {
        let pt = vec![c.k1, c.k2];
        let Ok((v, w, _)) = sdb_h3::fast(*c) else {
            s.push((pt, f64::NAN));
            continue;
        };
        if !(v > floor && w > floor) {
            continue;
        }
        let (y, theta) = sdb_h3::interface(*c).unwrap_or((f64::NAN, f64::NAN));
        s.push((pt.clone(), 2.0 - libm::cosh(y)));
        s.push((pt.clone(), 0.05 - theta));
        let (v1, w1) = completion_volumes(*c).unwrap_or((f64::NAN, f64::NAN));
        s.push((pt.clone(), 3.0 - v1));
        s.push((pt, 3.0 - w1));
    }
    LemmaCheckReport::new("interface_limits", s)
}

/// Equal-volume H³ double bubble with both volumes `w`.
pub fn equal_bubble_h3(w: f64) -> Option<SdbCurvaturesH3> {
    let (mut lo, mut hi) = (1.0, 2.0);
    let vol = |k: f64| sdb_h3::fast(SdbCurvaturesH3 { k1: k, k2: k }).map(|r| r.0).unwrap_or(f64::INFINITY);
    while vol(hi) > w {
        hi *= 2.0;
        if hi > 1e12 {
            return None;
        }
    }
    for _ in 0..200 {
        let m = 0.5 * (lo + hi);
        if m <= lo || m >= hi {
            break;
        }
        if vol(m) > w {
            lo = m;
        } else {
            hi = m;
        }
    }
    let k = 0.5 * (lo + hi);
    Some(SdbCurvaturesH3 { k1: k, k2: k })
}

pub const V_INF: f64 = PI * (1.5 - core::f64::consts::LN_2);
pub const A_INF: f64 = 3.0 * PI;
pub const C_INF: f64 = 2.0 * PI;

/// `A(v) ≈ 2v + 2π ln v − 2π(1 + ln(π/2))`.
pub fn sphere_area_asymptote(v: f64) -> f64 {
    2.0 * v + 2.0 * PI * libm::log(v) - 2.0 * PI * (1.0 + libm::log(PI / 2.0))
}

/// `|A(v, w) − (A(v + v∞) + A(w + v∞) − 2a∞ + c∞)|` for `v = w`.
pub fn limiting_area_gap(w: f64) -> f64 {
    let Some(c) = equal_bubble_h3(w) else { return f64::NAN };
    let Ok((_, _, a)) = sdb_h3::fast(c) else { return f64::NAN };
    let s = sphere_area_fast(SpaceTag::H3, w + V_INF).unwrap_or(f64::NAN);
    (a - (2.0 * s - 2.0 * A_INF + C_INF)).abs()
}

pub fn sphere_asymptote_gap(v: f64) -> f64 {
    (sphere_area_fast(SpaceTag::H3, v).unwrap_or(f64::NAN) - sphere_area_asymptote(v)).abs()
}

/// Both discrepancies shrink along the increasing schedule `ws` while
/// they are above the f64 cancellation floor, and are small beyond 10³.
pub fn check_limiting_area(ws: &[f64]) -> LemmaCheckReport {
    let mut s = Vec::new();
    let gaps: Vec<f64> = ws.iter().map(|&w| limiting_area_gap(w)).collect();
    let sph: Vec<f64> = ws.iter().map(|&w| sphere_asymptote_gap(w)).collect();
    for i in 1..ws.len() {
        if gaps[i - 1] > 1e-4 {
            s.push((vec![ws[i - 1], ws[i]], gaps[i - 1] - gaps[i]));
        }
        s.push((vec![ws[i - 1], ws[i]], sph[i - 1] - sph[i]));
    }
    for (i, &w) in ws.iter().enumerate() {
        // The sphere discrepancy is about 4π times the radius gap.
        s.push((vec![w], 25.0 * libm::log(w) / w - sph[i]));
        if w >= 1e3 {
            s.push((vec![w], 0.1 - gaps[i]));
        }
        if w >= 1e4 {
            s.push((vec![w], 1e-3 - gaps[i]));
        }
    }
    LemmaCheckReport::new("limiting_area", s)
}

// ---------------------------------------------------------------------------
// The ray limit and monotonicity.

/// `F(ψw, w)` in H³, fast path.
pub fn ray_value(psi: f64, w: f64) -> f64 {
    hutchings_point(SpaceTag::H3, VolumePair { v: psi * w, w }).unwrap_or(f64::NAN)
}

/// Central difference with one Richardson step; the step grows until the
/// extrapolated value agrees with the finer estimate to three significant
/// digits.
pub fn richardson_derivative<F: Fn(f64) -> f64>(f: F, x: f64, h0: f64) -> Option<f64> {
    let mut h = h0;
    for _ in 0..10 {
        let d1 = (f(x + h) - f(x - h)) / (2.0 * h);
        let d2 = (f(x + 0.5 * h) - f(x - 0.5 * h)) / h;
        let r = (4.0 * d2 - d1) / 3.0;
        if r.is_finite() && (r - d2).abs() <= 1e-3 * r.abs() {
            return Some(r);
        }
        h *= 4.0;
    }
    None
}

pub fn fd_step(w: f64) -> f64 {
    1e-4f64.max(1e-6 * w)
}

/// `d/dw F(λw, w)`.
pub fn ray_slope(w: f64) -> Option<f64> {
    let lam = critical_ratio();
    richardson_derivative(|t| ray_value(lam, t), w, fd_step(w))
}

/// `∂F/∂v` at `(v, w)`.
pub fn v_slope(v: f64, w: f64) -> Option<f64> {
    let f = |t: f64| hutchings_point(SpaceTag::H3, VolumePair { v: t, w }).unwrap_or(f64::NAN);
    richardson_derivative(f, v, fd_step(w))
}

/// `F` decreases along `v = λw` for `w ≥ 300`, and `∂F/∂v > 0` at
/// `v ∈ {λw, 0.9w, w}` for `w ≥ 150`.
pub fn check_ray_monotonicity(ws: &[f64]) -> LemmaCheckReport {
    let lam = critical_ratio();
    let mut s = Vec::new();
    for &w in ws {
        if w >= 300.0 {
            s.push((vec![lam * w, w], ray_slope(w).map_or(f64::NAN, |d| -d)));
        }
        if w >= 150.0 {
            for psi in [lam, 0.9, 1.0] {
                let v = psi * w;
                s.push((vec![v, w], v_slope(v, w).unwrap_or(f64::NAN)));
            }
        }
    }
    LemmaCheckReport::new("ray_monotonicity", s)
}

/// The ray values themselves: positive and decreasing towards the limit 0.
pub fn check_ray_limit(ws: &[f64]) -> LemmaCheckReport {
    let lam = critical_ratio();
    let vals: Vec<f64> = ws.iter().map(|&w| ray_value(lam, w)).collect();
    let mut s: Vec<(Vec<f64>, f64)> = ws.iter().zip(&vals).map(|(&w, &f)| (vec![lam * w, w], f)).collect();
    for i in 1..ws.len() {
        s.push((vec![ws[i - 1], ws[i]], vals[i - 1] - vals[i]));
    }
    s.push((vec![lam], 1e-14 - crate::hutchings::limit_along_ray(lam).abs()));
    LemmaCheckReport::new("ray_limit", s)
}

// ---------------------------------------------------------------------------
// Elementary inequalities.

fn ln(x: f64) -> f64 {
    libm::log(x)
}

/// `1/(x + π ln x + a) − (1/x − (π ln x + a)/x²)`, for `π ln x + a > 0`.
pub fn fraction_margin(x: f64, a: f64) -> f64 {
    let l = PI * ln(x) + a;
    // Same quantity without the cancellation: l²/(x²(x + l)).
    l * l / (x * x * (x + l))
}

/// Scaled version with `x = μw`; the constant enters as `+a/μ`.
pub fn fraction_scaled_margin(mu: f64, w: f64, a: f64) -> f64 {
    mu * fraction_margin(mu * w, a)
}

/// `(1/x − (π ln x − 3)/(1.1x²)) − 1/(x + π ln x − 3)` for `x > 150λ`.
pub fn fraction_large_margin(x: f64) -> f64 {
    let l = PI * ln(x) - 3.0;
    // l/(x(x+l)) − l/(1.1x²) = l(1.1x − x − l)/(1.1x²(x + l))
    l * (0.1 * x - l) / (1.1 * x * x * (x + l))
}

/// Comparison of the `ln w` coefficients for `w ≥ 300` (right minus left).
pub fn log_coefficient_margin(w: f64) -> f64 {
    let l = critical_ratio();
    let lw = ln(w);
    let h = l / 2.0;
    let lhs = 2.0 * (PI * lw / l + PI * ln(l) / l - 2.0 / l + PI * lw - 2.0);
    let rhs = 2.0 * PI * lw / (1.1 * h) + 2.0 * PI * ln(h) / (1.1 * h) - 6.0 / (1.1 * h) + PI * lw / 1.1 - 3.0 / 1.1
        + PI * lw / (1.1 * (l + 1.0))
        + PI * ln(l + 1.0) / (1.1 * (l + 1.0))
        - 3.0 / (1.1 * (l + 1.0));
    rhs - lhs
}

/// Lower curvature sum minus upper curvature sum along `v = λw` (the
/// common `4 + 4λ` dropped).
pub fn critical_line_margin(w: f64) -> f64 {
    let l = critical_ratio();
    let lhs = 2.0 * l / (l * w + PI * ln(l * w) + 2.0) + 2.0 / (w + PI * ln(w) + 2.0);
    let rhs = l / (l * w / 2.0 + PI * ln(l * w / 2.0) - 3.0)
        + 1.0 / (w + PI * ln(w) - 3.0)
        + (l + 1.0) / ((l + 1.0) * w + PI * ln((l + 1.0) * w) - 3.0);
    2.0 * PI * (lhs - rhs)
}

/// `1/(v/2 + π ln(v/2) − 1.041) + 1/(v + w + π ln(v+w) − 1.041) − 2/(v + π ln v − 3)`.
pub fn v_derivative_margin(v: f64, w: f64) -> f64 {
    1.0 / (v / 2.0 + PI * ln(v / 2.0) - 1.041) + 1.0 / (v + w + PI * ln(v + w) - 1.041)
        - 2.0 / (v + PI * ln(v) - 3.0)
}

/// Where the curvature comparison along `v = λw` starts to hold. Between
/// 300 and here it fails by up to 3·10⁻⁴; the ray monotonicity check
/// covers that stretch directly.
pub const CRITICAL_LINE_ONSET: f64 = 643.0;

/// One report per inequality, each over its own range of the sample `ws`.
pub fn check_algebraic_chain(ws: &[f64]) -> Vec<LemmaCheckReport> {
    let lam = critical_ratio();
    let mut frac = Vec::new();
    let mut scaled = Vec::new();
    let mut large = Vec::new();
    let mut large_scaled = Vec::new();
    let mut coeff = Vec::new();
    let mut line = Vec::new();
    let mut vder = Vec::new();
    let mut line_tail = Vec::new();
    for &w in ws {
        for a in [0.0, 2.0, -1.041, -3.0] {
            if PI * ln(w) + a > 0.0 {
                frac.push((vec![w, a], fraction_margin(w, a)));
            }
        }
        for mu in [lam, 1.0] {
            if PI * ln(mu * w) + 2.0 > 0.0 {
                scaled.push((vec![mu, w, 2.0], fraction_scaled_margin(mu, w, 2.0)));
            }
        }
        if w > 150.0 * lam {
            large.push((vec![w], fraction_large_margin(w)));
        }
        for mu in [lam / 2.0, 1.0, lam + 1.0] {
            if mu * w > 150.0 * lam {
                large_scaled.push((vec![mu, w], mu * fraction_large_margin(mu * w)));
            }
        }
        if w >= 300.0 {
            coeff.push((vec![w], log_coefficient_margin(w)));
            line.push((vec![w], critical_line_margin(w)));
        }
        if w >= CRITICAL_LINE_ONSET {
            line_tail.push((vec![w], critical_line_margin(w)));
        }
        if w >= 150.0 {
            for psi in [lam, 1.0, 2.0] {
                vder.push((vec![psi * w, w], v_derivative_margin(psi * w, w)));
            }
        }
    }
    vec![
        LemmaCheckReport::new("fraction_expansion", frac),
        LemmaCheckReport::new("fraction_expansion_scaled", scaled),
        LemmaCheckReport::new("fraction_expansion_large", large),
        LemmaCheckReport::new("fraction_expansion_large_scaled", large_scaled),
        LemmaCheckReport::new("log_coefficients", coeff),
        LemmaCheckReport::new("critical_line_curvatures", line),
        LemmaCheckReport::new("critical_line_curvatures_tail", line_tail),
        LemmaCheckReport::new("v_derivative_fractions", vder),
    ]
}

// ---------------------------------------------------------------------------

/// Sample configurations for the interface checks: equal and unequal
/// bubbles with volumes from just above `300λ` to 10⁵.
pub fn default_large_bubbles() -> Vec<SdbCurvaturesH3> {
    let floor = 300.0 * critical_ratio();
    let mut out = Vec::new();
    for w in log_grid(floor * 1.001, 1e5, 25) {
        for psi in [1.0, 0.9, 1.0 / 0.9] {
            let v = (psi * w).max(floor * 1.001);
            if let Ok(c) = solve_curvatures_h3(v, w, None) {
                out.push(c);
            }
        }
    }
    out
}

/// Every check at its default sampling.
pub fn run_all() -> Vec<LemmaCheckReport> {
    let lam = critical_ratio();
    let mut out = vec![
        check_hmrr_strong(&lin_grid(0.5, 1.0 / 1.84, 60)),
        check_small_volume_constants(),
        check_radius_asymptote(&log_grid(150.0 * lam + 1e-9, 1e6, 60)),
        check_aprime_bounds(&log_grid(10.0, 1e6, 60)),
        check_interface_limits(&default_large_bubbles()),
        check_limiting_area(&log_grid(1e2, 1e6, 50)),
        check_ray_limit(&[1e3, 1e4, 1e5]),
        check_ray_monotonicity(&log_grid(150.0, 1e4, 50)),
    ];
    out.extend(check_algebraic_chain(&log_grid(10.0, 1e6, 80)));
    out
}
