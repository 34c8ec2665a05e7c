//! One set of formulas, two number types.
//!
//! Geometry kernels are written once against [`Scalar`]. Instantiated at
//! `f64` they form the fast, non-rigorous path used by solvers and plots;
//! instantiated at [`Enclosure`] they give certified bounds.

use core::ops::{Add, Div, Mul, Neg, Sub};

use crate::enclosure::{DomainError, Enclosure};

pub trait Scalar:
    Copy
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Add<f64, Output = Self>
    + Sub<f64, Output = Self>
    + Mul<f64, Output = Self>
    + Div<f64, Output = Self>
{
    fn cst(x: f64) -> Self;
    /// Exact rational `n / d` (as well as the type can hold it).
    fn ratio(n: f64, d: f64) -> Self;
    fn pi() -> Self;
    fn lo(&self) -> f64;
    fn hi(&self) -> f64;
    fn sqr(&self) -> Self;
    fn sqrt(&self) -> Result<Self, DomainError>;
    fn checked_div(&self, d: &Self) -> Result<Self, DomainError>;
    fn sin(&self) -> Self;
    fn cos(&self) -> Self;
    fn atan(&self) -> Self;
    fn sinh(&self) -> Self;
    fn cosh(&self) -> Self;
    fn tanh(&self) -> Self;
    fn atanh(&self) -> Result<Self, DomainError>;
    fn acoth(&self) -> Result<Self, DomainError>;
    fn asin(&self) -> Result<Self, DomainError>;
    fn ln(&self) -> Result<Self, DomainError>;
    fn exp(&self) -> Self;
    fn cbrt(&self) -> Self;

    fn mid(&self) -> f64 {
        0.5 * self.lo() + 0.5 * self.hi()
    }

    /// Strictly positive on the whole range.
    fn pos(&self) -> bool {
        self.lo() > 0.0
    }

    fn neg_definite(&self) -> bool {
        self.hi() < 0.0
    }
}

fn chk(x: f64, op: &'static str) -> Result<f64, DomainError> {
    if x.is_nan() {
        Err(DomainError { op })
    } else {
        Ok(x)
    }
}

impl Scalar for f64 {
    fn cst(x: f64) -> Self {
        x
    }
    fn ratio(n: f64, d: f64) -> Self {
        n / d
    }
    fn pi() -> Self {
        core::f64::consts::PI
    }
    fn lo(&self) -> f64 {
        *self
    }
    fn hi(&self) -> f64 {
        *self
    }
    fn sqr(&self) -> Self {
        self * self
    }
    fn sqrt(&self) -> Result<Self, DomainError> {
        if *self < 0.0 {
            return Err(DomainError { op: "sqrt" });
        }
        Ok(libm::sqrt(*self))
    }
    fn checked_div(&self, d: &Self) -> Result<Self, DomainError> {
        if *d == 0.0 {
            return Err(DomainError { op: "division" });
        }
        Ok(self / d)
    }
    fn sin(&self) -> Self {
        libm::sin(*self)
    }
    fn cos(&self) -> Self {
        libm::cos(*self)
    }
    fn atan(&self) -> Self {
        libm::atan(*self)
    }
    fn sinh(&self) -> Self {
        libm::sinh(*self)
    }
    fn cosh(&self) -> Self {
        libm::cosh(*self)
    }
    fn tanh(&self) -> Self {
        libm::tanh(*self)
    }
    fn atanh(&self) -> Result<Self, DomainError> {
        if !(*self > -1.0 && *self < 1.0) {
            return Err(DomainError { op: "artanh" });
        }
        Ok(libm::atanh(*self))
    }
    fn acoth(&self) -> Result<Self, DomainError> {
        if !(*self > 1.0 || *self < -1.0) {
            return Err(DomainError { op: "arccoth" });
        }
        Ok(0.5 * libm::log1p(2.0 / (self - 1.0)))
    }
    fn asin(&self) -> Result<Self, DomainError> {
        chk(libm::asin(*self), "arcsin")
    }
    fn ln(&self) -> Result<Self, DomainError> {
        if !(*self > 0.0) {
            return Err(DomainError { op: "ln" });
        }
        Ok(libm::log(*self))
    }
    fn exp(&self) -> Self {
        libm::exp(*self)
    }
    fn cbrt(&self) -> Self {
        libm::cbrt(*self)
    }
}

impl Scalar for Enclosure {
    fn cst(x: f64) -> Self {
        Enclosure::point(x)
    }
    fn ratio(n: f64, d: f64) -> Self {
        Enclosure::ratio(n, d)
    }
    fn pi() -> Self {
        Enclosure::pi()
    }
    fn lo(&self) -> f64 {
        Enclosure::lo(self)
    }
    fn hi(&self) -> f64 {
        Enclosure::hi(self)
    }
    fn sqr(&self) -> Self {
        Enclosure::sqr(self)
    }
    fn sqrt(&self) -> Result<Self, DomainError> {
        Enclosure::sqrt(self)
    }
    fn checked_div(&self, d: &Self) -> Result<Self, DomainError> {
        Enclosure::checked_div(self, d)
    }
    fn sin(&self) -> Self {
        Enclosure::sin(self)
    }
    fn cos(&self) -> Self {
        Enclosure::cos(self)
    }
    fn atan(&self) -> Self {
        Enclosure::atan(self)
    }
    fn sinh(&self) -> Self {
        Enclosure::sinh(self)
    }
    fn cosh(&self) -> Self {
        Enclosure::cosh(self)
    }
    fn tanh(&self) -> Self {
        Enclosure::tanh(self)
    }
    fn atanh(&self) -> Result<Self, DomainError> {
        Enclosure::atanh(self)
    }
    fn acoth(&self) -> Result<Self, DomainError> {
        Enclosure::acoth(self)
    }
    fn asin(&self) -> Result<Self, DomainError> {
        Enclosure::asin(self)
    }
    fn ln(&self) -> Result<Self, DomainError> {
        Enclosure::ln(self)
    }
    fn exp(&self) -> Self {
        Enclosure::exp(self)
    }
    fn cbrt(&self) -> Self {
        Enclosure::cbrt(self)
    }
}

/// Angle of the point `(x, y)` for `y ≠ 0` or `x > 0`, continuous away from
/// the negative real axis. An exact zero `y` with negative `x` maps to 0.
pub fn half_plane_angle<T: Scalar>(y: T, x: T) -> Result<T, DomainError> {
    let half_pi = T::pi() * 0.5;
    if y.pos() {
        Ok(half_pi - (x / y).atan())
    } else if y.neg_definite() {
        Ok(-half_pi - (x / y).atan())
    } else if x.pos() {
        Ok((y / x).atan())
    } else if y.lo() == 0.0 && y.hi() == 0.0 {
        Ok(T::cst(0.0))
    } else {
        Err(DomainError { op: "angle" })
    }
}
