use serde::{Deserialize, Serialize};

use super::{cone_coords, from_cone, Kind, Mode, Orientation, Point, EPS};
use crate::error::{Error, Result};

/// Closed disk.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Disk {
    pub cx: f64,
    pub cy: f64,
    pub r: f64,
}

/// Equilateral triangle with a horizontal side, in cone-functional form:
/// `{ z : s * f_k(z) <= bounds[k] }` with `s = orient.sign()`.
///
/// Side `k` lies on the level set of `f_k`; corner `k` is the vertex
/// opposite it. The scale `bounds.iter().sum()` is the triangle's height.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Triangle {
    pub orient: Orientation,
    pub bounds: [f64; 3],
}

/// Axis-aligned square `[x0, x0 + s] x [y0, y0 + s]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Square {
    pub x0: f64,
    pub y0: f64,
    pub s: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Homothet {
    Disk(Disk),
    Triangle(Triangle),
    Square(Square),
}

impl Disk {
    pub fn contains(&self, p: Point, mode: Mode) -> bool {
        let d = (p.x - self.cx).hypot(p.y - self.cy);
        match mode {
            Mode::Closed => d <= self.r + EPS,
            Mode::Open => d < self.r - EPS,
        }
    }
}

impl Triangle {
    pub fn new(orient: Orientation, bounds: [f64; 3]) -> Self {
        Self { orient, bounds }
    }

    /// Smallest triangle of the given orientation containing `p` and `q`.
    pub fn spanning(p: Point, q: Point, orient: Orientation) -> Self {
        let s = orient.sign();
        let (fp, fq) = (cone_coords(p), cone_coords(q));
        let mut bounds = [0.0; 3];
        for k in 0..3 {
            bounds[k] = (s * fp[k]).max(s * fq[k]);
        }
        Self { orient, bounds }
    }

    pub fn scale(&self) -> f64 {
        self.bounds.iter().sum()
    }

    pub fn kind(&self) -> Kind {
        self.orient.kind()
    }

    /// Distances (in scale units) of `p` from the three sides; positive
    /// inside. They sum to the scale.
    pub fn depth(&self, p: Point) -> [f64; 3] {
        let s = self.orient.sign();
        let f = cone_coords(p);
        [
            self.bounds[0] - s * f[0],
            self.bounds[1] - s * f[1],
            self.bounds[2] - s * f[2],
        ]
    }

    pub fn contains(&self, p: Point, mode: Mode) -> bool {
        let d = self.depth(p);
        match mode {
            Mode::Closed => d.iter().all(|&x| x >= -EPS),
            Mode::Open => d.iter().all(|&x| x > EPS),
        }
    }

    /// Corner `k`, the vertex opposite side `k`.
    pub fn corner(&self, k: usize) -> Point {
        let s = self.orient.sign();
        let mut f = [0.0; 3];
        let mut rest = 0.0;
        for j in 0..3 {
            if j != k {
                f[j] = s * self.bounds[j];
                rest += f[j];
            }
        }
        f[k] = -rest;
        from_cone(f)
    }

    pub fn corners(&self) -> [Point; 3] {
        [self.corner(0), self.corner(1), self.corner(2)]
    }

    /// True if `other` lies inside `self` (closed, with tolerance).
    pub fn covers(&self, other: &Triangle) -> bool {
        other.corners().iter().all(|&c| self.contains(c, Mode::Closed))
    }
}

impl Square {
    pub fn contains(&self, p: Point, mode: Mode) -> bool {
        let inside = |v: f64, lo: f64| match mode {
            Mode::Closed => v >= lo - EPS && v <= lo + self.s + EPS,
            Mode::Open => v > lo + EPS && v < lo + self.s - EPS,
        };
        inside(p.x, self.x0) && inside(p.y, self.y0)
    }

    pub fn covers(&self, other: &Square) -> bool {
        other.x0 >= self.x0 - EPS
            && other.y0 >= self.y0 - EPS
            && other.x0 + other.s <= self.x0 + self.s + EPS
            && other.y0 + other.s <= self.y0 + self.s + EPS
    }
}

impl Homothet {
    pub fn kind(&self) -> Kind {
        match self {
            Homothet::Disk(_) => Kind::Disk,
            Homothet::Triangle(t) => t.kind(),
            Homothet::Square(_) => Kind::Square,
        }
    }

    /// Scale surrogate: radius, height or side. Strictly increasing in area
    /// within a kind.
    pub fn scale(&self) -> f64 {
        match self {
            Homothet::Disk(d) => d.r,
            Homothet::Triangle(t) => t.scale(),
            Homothet::Square(s) => s.s,
        }
    }

    pub fn contains(&self, p: Point, mode: Mode) -> bool {
        match self {
            Homothet::Disk(d) => d.contains(p, mode),
            Homothet::Triangle(t) => t.contains(p, mode),
            Homothet::Square(s) => s.contains(p, mode),
        }
    }

    /// True if `p` lies on the boundary: in the closed shape but not the open one.
    pub fn on_boundary(&self, p: Point) -> bool {
        self.contains(p, Mode::Closed) && !self.contains(p, Mode::Open)
    }

    /// True if `inner` lies inside `self`. Defined for same-family pairs;
    /// a triangle container accepts triangles of either orientation.
    pub fn covers(&self, inner: &Homothet) -> bool {
        match (self, inner) {
            (Homothet::Square(a), Homothet::Square(b)) => a.covers(b),
            (Homothet::Triangle(a), Homothet::Triangle(b)) => a.covers(b),
            (Homothet::Disk(a), Homothet::Disk(b)) => {
                (a.cx - b.cx).hypot(a.cy - b.cy) + b.r <= a.r + EPS
            }
            _ => false,
        }
    }
}

impl From<Triangle> for Homothet {
    fn from(t: Triangle) -> Homothet {
        Homothet::Triangle(t)
    }
}

impl From<Square> for Homothet {
    fn from(s: Square) -> Homothet {
        Homothet::Square(s)
    }
}

/// Smallest homothet of `kind` with `p` and `q` on its boundary.
///
/// Squares form a one-parameter family; the returned square sits at the
/// midpoint of its feasible slide interval.
pub fn smallest_homothet(p: Point, q: Point, kind: Kind) -> Result<Homothet> {
    if p == q {
        return Err(Error::DegeneratePair(p.x, p.y));
    }
    Ok(match kind {
        Kind::Disk => Homothet::Disk(Disk {
            cx: (p.x + q.x) / 2.0,
            cy: (p.y + q.y) / 2.0,
            r: p.dist(&q) / 2.0,
        }),
        Kind::TriDown => Homothet::Triangle(Triangle::spanning(p, q, Orientation::Down)),
        Kind::TriUp => Homothet::Triangle(Triangle::spanning(p, q, Orientation::Up)),
        Kind::Square => {
            let (axis, fixed, lo, hi, s) = square_offset_interval(p, q);
            let free = (lo + hi) / 2.0;
            Homothet::Square(if axis == 0 {
                Square { x0: fixed, y0: free, s }
            } else {
                Square { x0: free, y0: fixed, s }
            })
        }
    })
}

/// The smallest-square family through `p` and `q`.
///
/// Returns `(axis, fixed, lo, hi, side)`: `axis == 0` when the x-extent
/// dominates, in which case `x0 = fixed` and `y0` ranges over `[lo, hi]`;
/// otherwise the roles of x and y swap.
pub fn square_offset_interval(p: Point, q: Point) -> (usize, f64, f64, f64, f64) {
    let (dx, dy) = ((p.x - q.x).abs(), (p.y - q.y).abs());
    let s = dx.max(dy);
    if dx >= dy {
        (0, p.x.min(q.x), p.y.max(q.y) - s, p.y.min(q.y), s)
    } else {
        (1, p.y.min(q.y), p.x.max(q.x) - s, p.x.min(q.x), s)
    }
}

fn kind_mismatch(a: &Homothet, b: &Homothet) -> Error {
    Error::UnsupportedComparison(a.kind(), b.kind())
}

/// Closed-set intersection of two homothets of one family.
pub fn intersects(a: &Homothet, b: &Homothet) -> Result<bool> {
    match (a, b) {
        (Homothet::Disk(d1), Homothet::Disk(d2)) => {
            Ok((d1.cx - d2.cx).hypot(d1.cy - d2.cy) <= d1.r + d2.r + EPS)
        }
        (Homothet::Square(s1), Homothet::Square(s2)) => {
            let ov = |a0: f64, b0: f64| a0.max(b0) <= (a0 + s1.s).min(b0 + s2.s) + EPS;
            Ok(ov(s1.x0, s2.x0) && ov(s1.y0, s2.y0))
        }
        (Homothet::Triangle(t1), Homothet::Triangle(t2)) => {
            Ok(triangle_gap(t1, t2).iter().all(|&g| g >= -EPS))
        }
        _ => Err(kind_mismatch(a, b)),
    }
}

/// True if the interiors of `a` and `b` share a point.
pub fn interiors_overlap(a: &Homothet, b: &Homothet) -> Result<bool> {
    match (a, b) {
        (Homothet::Disk(d1), Homothet::Disk(d2)) => {
            Ok((d1.cx - d2.cx).hypot(d1.cy - d2.cy) < d1.r + d2.r - EPS)
        }
        (Homothet::Square(s1), Homothet::Square(s2)) => {
            let ov = |a0: f64, b0: f64| (a0 + s1.s).min(b0 + s2.s) - a0.max(b0) > EPS;
            Ok(ov(s1.x0, s2.x0) && ov(s1.y0, s2.y0))
        }
        (Homothet::Triangle(t1), Homothet::Triangle(t2)) => {
            Ok(triangle_gap(t1, t2).iter().all(|&g| g > EPS))
        }
        _ => Err(kind_mismatch(a, b)),
    }
}

/// Slack values whose non-negativity is equivalent to the two triangles
/// sharing a point.
///
/// Same orientation: the intersection is again a triangle of that
/// orientation with bounds `min(b1, b2)`, nonempty iff their sum is `>= 0`.
/// Opposite orientations reduce to a box in `(u, v)` cut by a strip in
/// `u + v`.
fn triangle_gap(t1: &Triangle, t2: &Triangle) -> Vec<f64> {
    if t1.orient == t2.orient {
        let m: f64 = (0..3).map(|k| t1.bounds[k].min(t2.bounds[k])).sum();
        vec![m]
    } else {
        let (down, up) = if t1.orient == Orientation::Down { (t1, t2) } else { (t2, t1) };
        let mut g: Vec<f64> = (0..3).map(|k| down.bounds[k] + up.bounds[k]).collect();
        g.push(down.scale());
        g.push(up.scale());
        g
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const S3: f64 = 1.732_050_807_568_877_2;

    fn tri(p: (f64, f64), q: (f64, f64), kind: Kind) -> Homothet {
        smallest_homothet(Point::new(p.0, p.1), Point::new(q.0, q.1), kind).unwrap()
    }

    #[test]
    fn disk_from_diameter() {
        let h = tri((0.0, 0.0), (2.0, 0.0), Kind::Disk);
        assert_eq!(h, Homothet::Disk(Disk { cx: 1.0, cy: 0.0, r: 1.0 }));
    }

    #[test]
    fn tri_down_horizontal_pair() {
        let Homothet::Triangle(t) = tri((0.0, 0.0), (1.0, 0.0), Kind::TriDown) else {
            panic!()
        };
        assert_eq!(t.bounds[0], 0.0);
        assert_eq!(t.bounds[1], 0.0);
        assert!((t.bounds[2] - S3 / 2.0).abs() < 1e-12);
        let sigma = t.scale();
        // height sigma, side 2 sigma / sqrt 3, area sigma^2 / sqrt 3
        assert!((2.0 * sigma / S3 - 1.0).abs() < 1e-12);
        assert!((sigma * sigma / S3 - S3 / 4.0).abs() < 1e-12);
    }

    #[test]
    fn square_canonical_offset() {
        let h = tri((0.0, 0.0), (3.0, 1.0), Kind::Square);
        assert_eq!(h, Homothet::Square(Square { x0: 0.0, y0: -1.0, s: 3.0 }));
        let (axis, fixed, lo, hi, s) =
            square_offset_interval(Point::new(0.0, 0.0), Point::new(3.0, 1.0));
        assert_eq!((axis, fixed, lo, hi, s), (0, 0.0, -2.0, 0.0, 3.0));
    }

    #[test]
    fn degenerate_pair_is_an_error() {
        let p = Point::new(1.0, 1.0);
        assert!(matches!(smallest_homothet(p, p, Kind::Disk), Err(Error::DegeneratePair(..))));
    }

    #[test]
    fn containment_examples() {
        let d = Homothet::Disk(Disk { cx: 1.0, cy: 0.0, r: 1.0 });
        assert!(d.contains(Point::new(1.0, 0.5), Mode::Open));
        let t = Homothet::Triangle(Triangle::new(Orientation::Down, [0.0, 0.0, S3 / 2.0]));
        assert!(t.contains(Point::new(0.5, 0.0), Mode::Closed));
        assert!(!t.contains(Point::new(0.5, 0.0), Mode::Open));
        let s = Homothet::Square(Square { x0: 0.0, y0: 0.0, s: 1.0 });
        assert!(!s.contains(Point::new(2.0, 2.0), Mode::Closed));
    }

    #[test]
    fn intersection_examples() {
        let a = tri((0.0, 0.0), (1.0, 0.0), Kind::TriDown);
        let b = tri((3.0, 0.0), (4.0, 0.0), Kind::TriDown);
        let c = tri((1.0, 0.0), (2.0, 0.0), Kind::TriDown);
        assert!(!intersects(&a, &b).unwrap());
        assert!(intersects(&a, &c).unwrap());
        assert!(!interiors_overlap(&a, &c).unwrap());
        let d1 = Homothet::Disk(Disk { cx: 0.5, cy: 0.0, r: 0.5 });
        let d2 = Homothet::Disk(Disk { cx: 2.0, cy: 0.0, r: 1.0 });
        assert!(intersects(&d1, &d2).unwrap());
        assert!(!interiors_overlap(&d1, &d2).unwrap());
    }

    #[test]
    fn mixed_family_is_rejected() {
        let a = tri((0.0, 0.0), (1.0, 0.0), Kind::TriDown);
        let d = Homothet::Disk(Disk { cx: 0.0, cy: 0.0, r: 1.0 });
        assert!(matches!(intersects(&a, &d), Err(Error::UnsupportedComparison(..))));
    }

    #[test]
    fn corners_lie_on_two_sides() {
        let t = Triangle::new(Orientation::Up, [0.3, 0.5, 0.9]);
        for k in 0..3 {
            let d = t.depth(t.corner(k));
            for j in 0..3 {
                if j == k {
                    assert!((d[j] - t.scale()).abs() < 1e-12);
                } else {
                    assert!(d[j].abs() < 1e-12);
                }
            }
        }
    }
}
