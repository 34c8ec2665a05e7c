//! Certified real intervals.
//!
//! Every operation rounds outward so that the exact real result of applying
//! the operation to any points of the inputs lies inside the output. Basic
//! arithmetic widens each endpoint by one ulp; transcendental functions come
//! from `libm` and are widened by [`LIBM_ULPS`] ulps, which dominates the
//! documented error of those routines.

use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// Outward padding applied to every `libm` result, in ulps.
pub const LIBM_ULPS: u32 = 4;

/// 2⁻²⁴, the default global slack.
pub const DEFAULT_DELTA: f64 = 1.0 / 16_777_216.0;

/// Precision of the only backend currently compiled in.
pub const NATIVE_PRECISION_BITS: u32 = 53;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DomainError {
    pub op: &'static str,
}

impl fmt::Display for DomainError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "argument outside the domain of {}", self.op)
    }
}

/// Extra slack layered on top of enclosure arithmetic, plus the working precision.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SlackConfig {
    pub delta: f64,
    pub precision_bits: u32,
}

impl Default for SlackConfig {
    fn default() -> Self {
        SlackConfig { delta: DEFAULT_DELTA, precision_bits: NATIVE_PRECISION_BITS }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SlackError {
    NonPositiveDelta,
    PrecisionTooLow,
    PrecisionUnsupported,
}

impl fmt::Display for SlackError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SlackError::NonPositiveDelta => f.write_str("delta must be positive and finite"),
            SlackError::PrecisionTooLow => f.write_str("precision_bits must be at least 53"),
            SlackError::PrecisionUnsupported => {
                f.write_str("only 53-bit (binary64) enclosures are available in this build")
            }
        }
    }
}

impl SlackConfig {
    pub fn new(delta: f64, precision_bits: u32) -> Result<Self, SlackError> {
        let c = SlackConfig { delta, precision_bits };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<(), SlackError> {
        if !(self.delta > 0.0 && self.delta.is_finite()) {
            return Err(SlackError::NonPositiveDelta);
        }
        if self.precision_bits < NATIVE_PRECISION_BITS {
            return Err(SlackError::PrecisionTooLow);
        }
        if self.precision_bits > NATIVE_PRECISION_BITS {
            return Err(SlackError::PrecisionUnsupported);
        }
        Ok(())
    }
}

/// A closed interval `[lo, hi]` known to contain some real quantity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Enclosure {
    lo: f64,
    hi: f64,
}

pub type EResult = Result<Enclosure, DomainError>;

#[inline]
fn dn(x: f64) -> f64 {
    x.next_down()
}

#[inline]
fn up(x: f64) -> f64 {
    x.next_up()
}

#[inline]
fn dn_n(mut x: f64, n: u32) -> f64 {
    for _ in 0..n {
        x = x.next_down();
    }
    x
}

#[inline]
fn up_n(mut x: f64, n: u32) -> f64 {
    for _ in 0..n {
        x = x.next_up();
    }
    x
}

/// Enclosure of an increasing `libm` function evaluated at the endpoints.
#[inline]
fn incr(lo: f64, hi: f64, f: fn(f64) -> f64) -> Enclosure {
    Enclosure { lo: dn_n(f(lo), LIBM_ULPS), hi: up_n(f(hi), LIBM_ULPS) }
}

impl Enclosure {
    pub const ENTIRE: Enclosure = Enclosure { lo: f64::NEG_INFINITY, hi: f64::INFINITY };
    pub const ZERO: Enclosure = Enclosure { lo: 0.0, hi: 0.0 };
    pub const ONE: Enclosure = Enclosure { lo: 1.0, hi: 1.0 };

    /// Interval from explicit endpoints; `None` when `lo > hi` or either is NaN.
    pub fn new(lo: f64, hi: f64) -> Option<Self> {
        if lo <= hi {
            Some(Enclosure { lo, hi })
        } else {
            None
        }
    }

    pub const fn point(x: f64) -> Self {
        Enclosure { lo: x, hi: x }
    }

    /// Enclosure of the rational `num / den`.
    pub fn ratio(num: f64, den: f64) -> Self {
        Enclosure::point(num) / Enclosure::point(den)
    }

    pub fn pi() -> Self {
        // f64 π is below the true value by less than one ulp.
        Enclosure { lo: core::f64::consts::PI, hi: up(core::f64::consts::PI) }
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn mid(&self) -> f64 {
        if self.lo == self.hi {
            self.lo
        } else {
            0.5 * self.lo + 0.5 * self.hi
        }
    }

    pub fn width(&self) -> f64 {
        up(self.hi - self.lo)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.lo <= 0.0 && 0.0 <= self.hi
    }

    pub fn is_finite(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    pub fn hull(&self, o: &Enclosure) -> Enclosure {
        Enclosure { lo: self.lo.min(o.lo), hi: self.hi.max(o.hi) }
    }

    /// Widen both endpoints by an absolute amount.
    pub fn inflate(&self, r: f64) -> Enclosure {
        Enclosure { lo: add_dn(self.lo, -r), hi: add_up(self.hi, r) }
    }

    pub fn abs(&self) -> Enclosure {
        if self.lo >= 0.0 {
            *self
        } else if self.hi <= 0.0 {
            -*self
        } else {
            Enclosure { lo: 0.0, hi: self.hi.max(-self.lo) }
        }
    }

    pub fn sqr(&self) -> Enclosure {
        let a = self.abs();
        Enclosure { lo: dn(a.lo * a.lo).max(0.0), hi: up(a.hi * a.hi) }
    }

    pub fn recip(&self) -> EResult {
        Enclosure::ONE.checked_div(self)
    }

    pub fn checked_div(&self, d: &Enclosure) -> EResult {
        if d.contains_zero() {
            return Err(DomainError { op: "division" });
        }
        Ok(*self / *d)
    }

    pub fn scale(&self, k: f64) -> Enclosure {
        *self * Enclosure::point(k)
    }

    pub fn sqrt(&self) -> EResult {
        if !(self.lo >= 0.0) {
            return Err(DomainError { op: "sqrt" });
        }
        // IEEE sqrt is correctly rounded.
        Ok(Enclosure { lo: dn(libm::sqrt(self.lo)).max(0.0), hi: up(libm::sqrt(self.hi)) })
    }

    pub fn cbrt(&self) -> Enclosure {
        incr(self.lo, self.hi, libm::cbrt)
    }

    pub fn exp(&self) -> Enclosure {
        let mut e = incr(self.lo, self.hi, libm::exp);
        e.lo = e.lo.max(0.0);
        e
    }

    pub fn ln(&self) -> EResult {
        if !(self.lo > 0.0) {
            return Err(DomainError { op: "ln" });
        }
        Ok(incr(self.lo, self.hi, libm::log))
    }

    pub fn sin(&self) -> Enclosure {
        periodic(self, libm::sin, core::f64::consts::FRAC_PI_2)
    }

    pub fn cos(&self) -> Enclosure {
        periodic(self, libm::cos, 0.0)
    }

    pub fn tan(&self) -> EResult {
        // Poles at π/2 + kπ; reject any interval that might straddle one.
        let k_lo = pole_index(self.lo);
        let k_hi = pole_index(self.hi);
        if k_lo != k_hi || near_pole(self.lo) || near_pole(self.hi) {
            return Err(DomainError { op: "tan" });
        }
        Ok(incr(self.lo, self.hi, libm::tan))
    }

    /// Cotangent on an interval inside a single period `(kπ, (k+1)π)`.
    pub fn cot(&self) -> EResult {
        let c = self.cos();
        let s = self.sin();
        c.checked_div(&s).map_err(|_| DomainError { op: "cot" })
    }

    pub fn sinh(&self) -> Enclosure {
        incr(self.lo, self.hi, libm::sinh)
    }

    pub fn cosh(&self) -> Enclosure {
        let a = self.abs();
        let mut e = incr(a.lo, a.hi, libm::cosh);
        e.lo = e.lo.max(1.0);
        e
    }

    pub fn tanh(&self) -> Enclosure {
        let mut e = incr(self.lo, self.hi, libm::tanh);
        e.lo = e.lo.max(-1.0);
        e.hi = e.hi.min(1.0);
        e
    }

    pub fn asin(&self) -> EResult {
        if !(self.lo >= -1.0 && self.hi <= 1.0) {
            return Err(DomainError { op: "arcsin" });
        }
        Ok(incr(self.lo, self.hi, libm::asin))
    }

    pub fn atan(&self) -> Enclosure {
        incr(self.lo, self.hi, libm::atan)
    }

    /// Continuous inverse cotangent with values in `(0, π)`.
    pub fn acot(&self) -> Enclosure {
        if self.lo > 0.0 {
            // atan(1/x) avoids the cancellation in π/2 − atan x for large x.
            if let Ok(r) = self.recip() {
                return r.atan();
            }
        }
        let h = Enclosure::pi().scale(0.5);
        h - self.atan()
    }

    pub fn atanh(&self) -> EResult {
        if !(self.lo > -1.0 && self.hi < 1.0) {
            return Err(DomainError { op: "artanh" });
        }
        Ok(incr(self.lo, self.hi, libm::atanh))
    }

    /// Inverse hyperbolic cotangent, defined for `|x| > 1`.
    pub fn acoth(&self) -> EResult {
        if !(self.lo > 1.0 || self.hi < -1.0) {
            return Err(DomainError { op: "arccoth" });
        }
        // arccoth x = ½ ln((x + 1)/(x − 1)), decreasing on each branch.
        let f = |x: f64| 0.5 * libm::log1p(2.0 / (x - 1.0));
        let lo = f(self.hi);
        let hi = f(self.lo);
        // The composed rounding error stays below a few ulps; pad a little more.
        Ok(Enclosure { lo: dn_n(lo, LIBM_ULPS + 4), hi: up_n(hi, LIBM_ULPS + 4) })
    }

    pub fn asinh(&self) -> Enclosure {
        incr(self.lo, self.hi, libm::asinh)
    }

    pub fn acosh(&self) -> EResult {
        if !(self.lo >= 1.0) {
            return Err(DomainError { op: "arccosh" });
        }
        let mut e = incr(self.lo, self.hi, libm::acosh);
        e.lo = e.lo.max(0.0);
        Ok(e)
    }

    pub fn max(&self, o: &Enclosure) -> Enclosure {
        Enclosure { lo: self.lo.max(o.lo), hi: self.hi.max(o.hi) }
    }

    pub fn min(&self, o: &Enclosure) -> Enclosure {
        Enclosure { lo: self.lo.min(o.lo), hi: self.hi.min(o.hi) }
    }
}

fn pole_index(x: f64) -> i64 {
    libm::floor((x - core::f64::consts::FRAC_PI_2) / core::f64::consts::PI) as i64
}

fn near_pole(x: f64) -> bool {
    let t = (x - core::f64::consts::FRAC_PI_2) / core::f64::consts::PI;
    let r = t - libm::round(t);
    libm::fabs(r) < 1e-12 * (1.0 + libm::fabs(t))
}

/// Enclosure of a 2π-periodic function with maxima at `peak + 2kπ` and minima
/// at `peak + π + 2kπ`.
fn periodic(x: &Enclosure, f: fn(f64) -> f64, peak: f64) -> Enclosure {
    let tau = 2.0 * core::f64::consts::PI;
    if !(x.hi - x.lo < tau) || !x.is_finite() {
        return Enclosure { lo: -1.0, hi: 1.0 };
    }
    let a = f(x.lo);
    let b = f(x.hi);
    let mut lo = dn_n(a.min(b), LIBM_ULPS);
    let mut hi = up_n(a.max(b), LIBM_ULPS);
    // Extrema near the interval boundary are included conservatively.
    let slack = 1e-12 * (1.0 + libm::fabs(x.lo).max(libm::fabs(x.hi)));
    if hits(x.lo - slack, x.hi + slack, peak, tau) {
        hi = 1.0;
    }
    if hits(x.lo - slack, x.hi + slack, peak + core::f64::consts::PI, tau) {
        lo = -1.0;
    }
    Enclosure { lo: lo.max(-1.0), hi: hi.min(1.0) }
}

fn hits(lo: f64, hi: f64, phase: f64, period: f64) -> bool {
    let k = libm::ceil((lo - phase) / period);
    phase + k * period <= hi
}

impl fmt::Display for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e}, {:e}]", self.lo, self.hi)
    }
}

/// Rounded sum and its exact error term (Knuth's two-sum).
#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn add_dn(a: f64, b: f64) -> f64 {
    let (s, e) = two_sum(a, b);
    if e >= 0.0 { s } else { dn(s) }
}

#[inline]
fn add_up(a: f64, b: f64) -> f64 {
    let (s, e) = two_sum(a, b);
    if e <= 0.0 { s } else { up(s) }
}

impl Neg for Enclosure {
    type Output = Enclosure;
    fn neg(self) -> Enclosure {
        Enclosure { lo: -self.hi, hi: -self.lo }
    }
}

impl Add for Enclosure {
    type Output = Enclosure;
    fn add(self, o: Enclosure) -> Enclosure {
        Enclosure { lo: add_dn(self.lo, o.lo), hi: add_up(self.hi, o.hi) }
    }
}

impl Sub for Enclosure {
    type Output = Enclosure;
    fn sub(self, o: Enclosure) -> Enclosure {
        Enclosure { lo: add_dn(self.lo, -o.hi), hi: add_up(self.hi, -o.lo) }
    }
}

impl Mul for Enclosure {
    type Output = Enclosure;
    fn mul(self, o: Enclosure) -> Enclosure {
        if (self.lo == 0.0 && self.hi == 0.0) || (o.lo == 0.0 && o.hi == 0.0) {
            return Enclosure::ZERO;
        }
        let p = [self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi];
        let mut lo = p[0];
        let mut hi = p[0];
        for &v in &p[1..] {
            lo = lo.min(v);
            hi = hi.max(v);
        }
        Enclosure { lo: dn(lo), hi: up(hi) }
    }
}

/// Division by an interval containing zero yields [`Enclosure::ENTIRE`];
/// use [`Enclosure::checked_div`] where that must be an error.
impl Div for Enclosure {
    type Output = Enclosure;
    fn div(self, o: Enclosure) -> Enclosure {
        if o.contains_zero() {
            return Enclosure::ENTIRE;
        }
        if self.lo == 0.0 && self.hi == 0.0 {
            return Enclosure::ZERO;
        }
        let p = [self.lo / o.lo, self.lo / o.hi, self.hi / o.lo, self.hi / o.hi];
        let mut lo = p[0];
        let mut hi = p[0];
        for &v in &p[1..] {
            lo = lo.min(v);
            hi = hi.max(v);
        }
        Enclosure { lo: dn(lo), hi: up(hi) }
    }
}

impl Add<f64> for Enclosure {
    type Output = Enclosure;
    fn add(self, o: f64) -> Enclosure {
        self + Enclosure::point(o)
    }
}

impl Sub<f64> for Enclosure {
    type Output = Enclosure;
    fn sub(self, o: f64) -> Enclosure {
        self - Enclosure::point(o)
    }
}

impl Mul<f64> for Enclosure {
    type Output = Enclosure;
    fn mul(self, o: f64) -> Enclosure {
        self * Enclosure::point(o)
    }
}

impl Div<f64> for Enclosure {
    type Output = Enclosure;
    fn div(self, o: f64) -> Enclosure {
        self / Enclosure::point(o)
    }
}

/// Certified lower bound `x.lo − delta`.
pub fn pad_lower(x: &Enclosure, delta: f64) -> f64 {
    add_dn(x.lo, -delta)
}

/// Certified upper bound `x.hi + delta`.
pub fn pad_upper(x: &Enclosure, delta: f64) -> f64 {
    add_up(x.hi, delta)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sin_of_half_pi_contains_one() {
        let h = core::f64::consts::FRAC_PI_2;
        let s = Enclosure::point(h).sin();
        assert!(s.contains(1.0));
        assert!(s.hi() - s.lo() <= 2.0 * f64::EPSILON);
    }

    #[test]
    fn sqrt_of_four_contains_two() {
        assert!(Enclosure::point(4.0).sqrt().unwrap().contains(2.0));
    }

    #[test]
    fn sinh_at_zero_is_tight() {
        let s = Enclosure::point(0.0).sinh();
        assert!(s.contains(0.0));
        assert!(s.hi() - s.lo() < 1e-300);
    }

    #[test]
    fn pad_examples() {
        let three = Enclosure::point(3.0);
        assert_eq!(pad_lower(&three, DEFAULT_DELTA), 3.0 - DEFAULT_DELTA);
        assert_eq!(pad_upper(&three, 0.0), 3.0);
        let x = Enclosure::new(1.0, 2.0).unwrap();
        assert!(pad_upper(&x, 3.0 * DEFAULT_DELTA) >= 2.0 + 3.0 * DEFAULT_DELTA);
        assert!(pad_upper(&x, 3.0 * DEFAULT_DELTA) - (2.0 + 3.0 * DEFAULT_DELTA) < 1e-15);
    }

    #[test]
    fn domain_errors() {
        assert!(Enclosure::new(-1.0, 1.0).unwrap().acoth().is_err());
        assert!(Enclosure::new(-0.5, 4.0).unwrap().sqrt().is_err());
        assert!(Enclosure::new(0.5, 1.0).unwrap().atanh().is_err());
        assert!(Enclosure::new(1.0, 2.0).unwrap().tan().is_err());
        assert!(Enclosure::new(-0.1, 0.1).unwrap().recip().is_err());
        assert!(Enclosure::point(0.0).ln().is_err());
    }

    #[test]
    fn periodic_extrema() {
        let x = Enclosure::new(1.0, 2.0).unwrap();
        assert_eq!(x.sin().hi(), 1.0);
        let y = Enclosure::new(3.0, 3.5).unwrap();
        assert_eq!(y.cos().lo(), -1.0);
        let z = Enclosure::new(0.0, 7.0).unwrap();
        assert_eq!(z.sin(), Enclosure::new(-1.0, 1.0).unwrap());
    }

    #[test]
    fn slack_validation() {
        assert!(SlackConfig::default().validate().is_ok());
        assert_eq!(SlackConfig::new(0.0, 53), Err(SlackError::NonPositiveDelta));
        assert_eq!(SlackConfig::new(1e-3, 40), Err(SlackError::PrecisionTooLow));
        assert_eq!(SlackConfig::new(1e-3, 113), Err(SlackError::PrecisionUnsupported));
    }

    #[test]
    fn acot_is_continuous_through_zero() {
        let a = Enclosure::new(-1e-9, 1e-9).unwrap().acot();
        assert!(a.contains(core::f64::consts::FRAC_PI_2));
        assert!(a.width() < 1e-8);
    }
}
