//! Exact region coordinates.
//!
//! S³ regions use fractions of |S³|; H³ regions use absolute volumes in
//! integer multiples of 10⁻⁶. Both convert to enclosures of the absolute
//! volume, and both serialize as strings (`"7/30"`, `"0.002329"`).

use alloc::format;
use alloc::string::{String, ToString};
use core::cmp::Ordering;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::enclosure::Enclosure;
use crate::geometry::s3_total;

pub const MICRO: i64 = 1_000_000;

fn gcd(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Coord {
    /// `num / den` of |S³|, in lowest terms with `den > 0`.
    Frac { num: i128, den: i128 },
    /// `n · 10⁻⁶` in absolute volume.
    Micro(i64),
}

impl Coord {
    pub fn frac(num: i128, den: i128) -> Coord {
        assert!(den != 0);
        let g = gcd(num, den).max(1);
        let s = if den < 0 { -1 } else { 1 };
        Coord::Frac { num: s * num / g, den: s * den / g }
    }

    pub fn micro(n: i64) -> Coord {
        Coord::Micro(n)
    }

    /// Enclosure of the absolute volume.
    pub fn volume(&self) -> Enclosure {
        match *self {
            Coord::Frac { num, den } => s3_total::<Enclosure>() * Enclosure::ratio(num as f64, den as f64),
            Coord::Micro(n) => Enclosure::ratio(n as f64, MICRO as f64),
        }
    }

    pub fn approx(&self) -> f64 {
        match *self {
            Coord::Frac { num, den } => num as f64 / den as f64,
            Coord::Micro(n) => n as f64 / MICRO as f64,
        }
    }

    fn as_frac(&self) -> (i128, i128) {
        match *self {
            Coord::Frac { num, den } => (num, den),
            Coord::Micro(n) => (n as i128, MICRO as i128),
        }
    }

    pub fn add(&self, o: &Coord) -> Coord {
        match (*self, *o) {
            (Coord::Micro(a), Coord::Micro(b)) => Coord::Micro(a + b),
            _ => {
                let (a, b) = self.as_frac();
                let (c, d) = o.as_frac();
                Coord::frac(a * d + c * b, b * d)
            }
        }
    }

    pub fn sub(&self, o: &Coord) -> Coord {
        self.add(&o.scale(-1, 1))
    }

    /// `self · p / q`; Micro coordinates must stay on the grid.
    pub fn scale(&self, p: i128, q: i128) -> Coord {
        match *self {
            Coord::Micro(n) if (n as i128 * p) % q == 0 => Coord::Micro((n as i128 * p / q) as i64),
            _ => {
                let (a, b) = self.as_frac();
                Coord::frac(a * p, b * q)
            }
        }
    }

    pub fn midpoint(&self, o: &Coord) -> Coord {
        match (*self, *o) {
            (Coord::Micro(a), Coord::Micro(b)) if (a + b) % 2 == 0 => Coord::Micro((a + b) / 2),
            _ => self.add(o).scale(1, 2),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.as_frac().0 == 0
    }
}

impl PartialOrd for Coord {
    fn partial_cmp(&self, o: &Coord) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Coord {
    fn cmp(&self, o: &Coord) -> Ordering {
        let (a, b) = self.as_frac();
        let (c, d) = o.as_frac();
        (a * d).cmp(&(c * b))
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Coord::Frac { num, den } => write!(f, "{num}/{den}"),
            Coord::Micro(n) => {
                let sign = if n < 0 { "-" } else { "" };
                let a = n.unsigned_abs();
                let m = MICRO as u64;
                let frac = a % m;
                if frac == 0 {
                    write!(f, "{sign}{}", a / m)
                } else {
                    let s = format!("{frac:06}");
                    write!(f, "{sign}{}.{}", a / m, s.trim_end_matches('0'))
                }
            }
        }
    }
}

impl From<Coord> for String {
    fn from(c: Coord) -> String {
        c.to_string()
    }
}

impl TryFrom<String> for Coord {
    type Error = String;
    fn try_from(s: String) -> Result<Coord, String> {
        parse_coord(&s).ok_or_else(|| format!("bad coordinate {s:?}"))
    }
}

pub fn parse_coord(s: &str) -> Option<Coord> {
    if let Some((a, b)) = s.split_once('/') {
        let num: i128 = a.trim().parse().ok()?;
        let den: i128 = b.trim().parse().ok()?;
        if den == 0 {
            return None;
        }
        return Some(Coord::frac(num, den));
    }
    parse_micro(s).map(Coord::Micro)
}

/// Parse a decimal with at most six fractional digits into 10⁻⁶ units.
pub fn parse_micro(s: &str) -> Option<i64> {
    let s = s.trim();
    let (neg, body) = match s.strip_prefix('-') {
        Some(r) => (true, r),
        None => (false, s),
    };
    let (int, frac) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if frac.len() > 6 || (int.is_empty() && frac.is_empty()) {
        return None;
    }
    if !int.chars().all(|c| c.is_ascii_digit()) || !frac.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let i: i64 = if int.is_empty() { 0 } else { int.parse().ok()? };
    let mut f: i64 = if frac.is_empty() { 0 } else { frac.parse().ok()? };
    for _ in frac.len()..6 {
        f *= 10;
    }
    let v = i.checked_mul(MICRO)?.checked_add(f)?;
    Some(if neg { -v } else { v })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        for s in ["7/30", "-1/3", "0.002329", "150", "0.5", "12.75"] {
            let c = parse_coord(s).unwrap();
            assert_eq!(c.to_string(), s);
        }
        assert_eq!(parse_coord("2/6").unwrap(), Coord::frac(1, 3));
        assert!(parse_coord("0.0000001").is_none());
    }

    #[test]
    fn exact_midpoints() {
        let a = Coord::frac(1, 10);
        let b = Coord::frac(1, 3);
        assert_eq!(a.midpoint(&b), Coord::frac(13, 60));
        assert_eq!(Coord::Micro(3).midpoint(&Coord::Micro(4)), Coord::frac(7, 2_000_000));
        assert!(Coord::frac(1, 3) > Coord::frac(3, 10));
        assert!(Coord::frac(1, 3).volume().contains(2.0 * core::f64::consts::PI * core::f64::consts::PI / 3.0));
    }
}
