use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::rat::Rat;

/// A planar point with exact coordinates, ordered lexicographically by `(x, y)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Point {
    pub x: Rat,
    pub y: Rat,
}

impl Point {
    pub fn new(x: Rat, y: Rat) -> Self {
        Point { x, y }
    }

    pub fn int(x: i64, y: i64) -> Self {
        Point { x: Rat::from_int(x), y: Rat::from_int(y) }
    }

    pub fn origin() -> Self {
        Point::default()
    }

    pub fn is_origin(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    /// `self.x * other.y - self.y * other.x`.
    pub fn cross(&self, other: &Point) -> Rat {
        &self.x * &other.y - &self.y * &other.x
    }

    pub fn dot(&self, other: &Point) -> Rat {
        &self.x * &other.x + &self.y * &other.y
    }

    pub fn scale(&self, k: &Rat) -> Point {
        Point { x: &self.x * k, y: &self.y * k }
    }

    pub fn midpoint(&self, other: &Point) -> Point {
        let half = Rat::new(1, 2);
        (self + other).scale(&half)
    }

    /// Integer coordinates, if both are integers in `i64` range.
    pub fn to_i64(&self) -> Option<(i64, i64)> {
        Some((self.x.to_i64()?, self.y.to_i64()?))
    }

    pub fn is_integral(&self) -> bool {
        self.x.is_integer() && self.y.is_integer()
    }

    /// Counterclockwise rotation by a quarter turn.
    pub fn perp(&self) -> Point {
        Point { x: -&self.y, y: self.x.clone() }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add<&Point> for &Point {
    type Output = Point;
    fn add(self, rhs: &Point) -> Point {
        Point { x: &self.x + &rhs.x, y: &self.y + &rhs.y }
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, rhs: Point) -> Point {
        &self + &rhs
    }
}

impl Sub<&Point> for &Point {
    type Output = Point;
    fn sub(self, rhs: &Point) -> Point {
        Point { x: &self.x - &rhs.x, y: &self.y - &rhs.y }
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, rhs: Point) -> Point {
        &self - &rhs
    }
}

impl Neg for &Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point { x: -&self.x, y: -&self.y }
    }
}

/// Sign of a turn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Orientation {
    Clockwise,
    Collinear,
    CounterClockwise,
}

impl Orientation {
    pub fn sign(self) -> i32 {
        match self {
            Orientation::Clockwise => -1,
            Orientation::Collinear => 0,
            Orientation::CounterClockwise => 1,
        }
    }

    fn from_sign(s: i32) -> Self {
        match s {
            s if s < 0 => Orientation::Clockwise,
            0 => Orientation::Collinear,
            _ => Orientation::CounterClockwise,
        }
    }
}

/// Twice the signed area of `pqr`.
pub fn area2(p: &Point, q: &Point, r: &Point) -> Rat {
    (q - p).cross(&(r - p))
}

/// Sign of `(q - p) x (r - p)`.
pub fn orientation(p: &Point, q: &Point, r: &Point) -> Orientation {
    Orientation::from_sign(area2(p, q, r).signum())
}

/// `p` lies on the closed segment `[a, b]`.
pub fn on_segment(p: &Point, a: &Point, b: &Point) -> bool {
    if !area2(a, b, p).is_zero() {
        return false;
    }
    let ap = p - a;
    let ab = b - a;
    let t = ap.dot(&ab);
    !t.is_negative() && t <= ab.dot(&ab)
}

/// `p` lies on `[a, b]` and differs from both endpoints.
pub fn in_open_segment(p: &Point, a: &Point, b: &Point) -> bool {
    p != a && p != b && on_segment(p, a, b)
}

/// Open segments `(a, b)` and `(c, d)` cross at a single point interior to both.
pub fn segments_cross(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    let o1 = area2(a, b, c).signum();
    let o2 = area2(a, b, d).signum();
    let o3 = area2(c, d, a).signum();
    let o4 = area2(c, d, b).signum();
    o1 * o2 < 0 && o3 * o4 < 0
}

/// Closed segments `[a, b]` and `[c, d]` share a point other than a common endpoint.
pub fn segments_conflict(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    if segments_cross(a, b, c, d) {
        return true;
    }
    // Touching or overlapping cases: some endpoint lies in the other's relative interior,
    // or the segments are identical.
    in_open_segment(c, a, b)
        || in_open_segment(d, a, b)
        || in_open_segment(a, c, d)
        || in_open_segment(b, c, d)
        || ((a == c && b == d) || (a == d && b == c))
}
