//! Planar primitives: points, cone functionals and the four homothet kinds.
//!
//! All predicates run in `f64` with an absolute tolerance of [`EPS`]. The
//! [`crate::exact`] module mirrors the triangle and square predicates over
//! exact rationals for small-instance certification.

mod homothet;
mod position;

pub use homothet::{
    intersects, interiors_overlap, smallest_homothet, square_offset_interval, Disk, Homothet,
    Square, Triangle,
};
pub use position::{check_general_position, GeneralPositionReport, Rule, Violation};

use serde::{Deserialize, Serialize};

/// Absolute tolerance used by every floating-point predicate.
pub const EPS: f64 = 1e-9;

pub(crate) const SQRT3: f64 = 1.732_050_807_568_877_2;

/// A point of the input set. Its identity is its position in the slice it
/// is stored in.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn dist(&self, other: &Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    /// The three cone functionals `(u, v, w)`.
    pub fn cone(&self) -> [f64; 3] {
        cone_coords(*self)
    }
}

/// Cone functionals of `p`. Their level sets are the lines at 0°, 120° and
/// 60°; `u + v + w = 0` identically.
///
/// `w` is computed as `-(u + v)` so the sum is exactly zero in floating point.
pub fn cone_coords(p: Point) -> [f64; 3] {
    let u = p.y;
    let v = (-SQRT3 * p.x - p.y) / 2.0;
    let w = -(u + v);
    [u, v, w]
}

/// Inverse of [`cone_coords`] restricted to the `u + v + w = 0` plane.
pub(crate) fn from_cone(f: [f64; 3]) -> Point {
    Point::new((f[2] - f[1]) / SQRT3, f[0])
}

/// The homothet kinds. `TriDown` and `TriUp` are the two orientations of the
/// equilateral triangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Kind {
    Disk,
    TriDown,
    TriUp,
    Square,
}

/// Shape families, used for general-position checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    Disk,
    Triangle,
    Square,
}

impl Kind {
    pub fn family(self) -> Family {
        match self {
            Kind::Disk => Family::Disk,
            Kind::TriDown | Kind::TriUp => Family::Triangle,
            Kind::Square => Family::Square,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Orientation {
    Down,
    Up,
}

impl Orientation {
    /// `+1` for downward triangles (`f_k <= b_k`), `-1` for upward ones.
    pub fn sign(self) -> f64 {
        match self {
            Orientation::Down => 1.0,
            Orientation::Up => -1.0,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Orientation::Down => Orientation::Up,
            Orientation::Up => Orientation::Down,
        }
    }

    pub fn kind(self) -> Kind {
        match self {
            Orientation::Down => Kind::TriDown,
            Orientation::Up => Kind::TriUp,
        }
    }
}

/// The graph families: one per homothet kind, plus the union of the two
/// triangle orientations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Shape {
    Disk,
    TriDown,
    TriUp,
    Theta6,
    Square,
}

impl Shape {
    pub const ALL: [Shape; 5] =
        [Shape::Disk, Shape::TriDown, Shape::TriUp, Shape::Theta6, Shape::Square];

    pub fn family(self) -> Family {
        match self {
            Shape::Disk => Family::Disk,
            Shape::TriDown | Shape::TriUp | Shape::Theta6 => Family::Triangle,
            Shape::Square => Family::Square,
        }
    }

    /// Homothet kinds whose copies may represent an edge.
    pub fn kinds(self) -> &'static [Kind] {
        match self {
            Shape::Disk => &[Kind::Disk],
            Shape::TriDown => &[Kind::TriDown],
            Shape::TriUp => &[Kind::TriUp],
            Shape::Theta6 => &[Kind::TriDown, Kind::TriUp],
            Shape::Square => &[Kind::Square],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Shape::Disk => "disk",
            Shape::TriDown => "tri-down",
            Shape::TriUp => "tri-up",
            Shape::Theta6 => "theta6",
            Shape::Square => "square",
        }
    }

    pub fn parse(s: &str) -> Option<Shape> {
        Shape::ALL.into_iter().find(|k| k.name() == s)
    }
}

impl From<Kind> for Shape {
    fn from(k: Kind) -> Shape {
        match k {
            Kind::Disk => Shape::Disk,
            Kind::TriDown => Shape::TriDown,
            Kind::TriUp => Shape::TriUp,
            Kind::Square => Shape::Square,
        }
    }
}

/// Closed or open membership.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Closed,
    Open,
}
