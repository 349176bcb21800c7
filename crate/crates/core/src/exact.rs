//! Exact predicates over `Q(√3)`.
//!
//! Coordinates are rationals; cone functionals are `a + b√3` with rational
//! `a`, `b`, so every comparison the float predicates make can be decided
//! without rounding. Used by the verifier and the general-position checker
//! when exact mode is requested.

use std::cmp::Ordering;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::geom::{
    Family, GeneralPositionReport, Homothet, Kind, Mode, Orientation, Point, Rule, Violation,
};

pub type Rat = BigRational;

/// `a + b√3`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Q3 {
    pub a: Rat,
    pub b: Rat,
}

impl Q3 {
    pub fn zero() -> Self {
        Self { a: Rat::zero(), b: Rat::zero() }
    }

    pub fn rat(a: Rat) -> Self {
        Self { a, b: Rat::zero() }
    }

    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&Rat::zero());
        let sb = self.b.cmp(&Rat::zero());
        if sa == Ordering::Equal {
            return sb;
        }
        if sb == Ordering::Equal || sa == sb {
            return sa;
        }
        // opposite signs: the larger of a² and 3b² wins
        let three = Rat::from_integer(BigInt::from(3));
        if &self.a * &self.a > three * &self.b * &self.b {
            sa
        } else {
            sb
        }
    }

    pub fn max(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }

    pub fn min(self, other: Self) -> Self {
        if self <= other {
            self
        } else {
            other
        }
    }

    /// Nearest `f64`, for diagnostics only.
    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.a.to_f64().unwrap_or(f64::NAN) + self.b.to_f64().unwrap_or(f64::NAN) * 3f64.sqrt()
    }
}

impl PartialOrd for Q3 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Q3 {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.clone() - other.clone()).signum()
    }
}

impl Add for Q3 {
    type Output = Q3;
    fn add(self, o: Q3) -> Q3 {
        Q3 { a: self.a + o.a, b: self.b + o.b }
    }
}

impl Sub for Q3 {
    type Output = Q3;
    fn sub(self, o: Q3) -> Q3 {
        Q3 { a: self.a - o.a, b: self.b - o.b }
    }
}

impl Neg for Q3 {
    type Output = Q3;
    fn neg(self) -> Q3 {
        Q3 { a: -self.a, b: -self.b }
    }
}

impl Mul for Q3 {
    type Output = Q3;
    fn mul(self, o: Q3) -> Q3 {
        let three = Rat::from_integer(BigInt::from(3));
        Q3 {
            a: &self.a * &o.a + three * &self.b * &o.b,
            b: &self.a * &o.b + &self.b * &o.a,
        }
    }
}

/// A point with rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XPoint {
    pub x: Rat,
    pub y: Rat,
}

impl XPoint {
    /// The exact value of the two doubles.
    pub fn from_f64(p: Point) -> Self {
        Self { x: rat_of(p.x), y: rat_of(p.y) }
    }

    pub fn cone(&self) -> [Q3; 3] {
        let half = Rat::new(BigInt::one(), BigInt::from(2));
        let u = Q3::rat(self.y.clone());
        let v = Q3 { a: -&self.y * &half, b: -&self.x * &half };
        let w = Q3 { a: -&self.y * &half, b: &self.x * &half };
        [u, v, w]
    }
}

pub fn rat_of(x: f64) -> Rat {
    Rat::from_float(x).expect("finite coordinate")
}

/// Parses a decimal literal such as `-0.125`, `3`, `1.5e-3` into its exact
/// rational value.
pub fn parse_decimal(s: &str) -> Option<Rat> {
    let s = s.trim();
    let (mant, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (neg, mant) = match mant.as_bytes().first()? {
        b'-' => (true, &mant[1..]),
        b'+' => (false, &mant[1..]),
        _ => (false, mant),
    };
    let (int, frac) = match mant.find('.') {
        Some(i) => (&mant[..i], &mant[i + 1..]),
        None => (mant, ""),
    };
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.bytes().chain(frac.bytes()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("0{int}{frac}").parse().ok()?;
    let scale = exp - frac.len() as i32;
    let ten = BigInt::from(10);
    let mut r = if scale >= 0 {
        Rat::from_integer(digits * num_traits::pow(ten, scale as usize))
    } else {
        Rat::new(digits, num_traits::pow(ten, (-scale) as usize))
    };
    if neg {
        r = -r;
    }
    Some(r)
}

/// Exact counterpart of [`Homothet`]. Disks keep their squared radius.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum XShape {
    Disk { cx: Rat, cy: Rat, r2: Rat },
    Tri { orient: Orientation, bounds: [Q3; 3] },
    Square { x0: Rat, y0: Rat, s: Rat },
}

fn sq(x: &Rat) -> Rat {
    x * x
}

impl XShape {
    pub fn smallest(p: &XPoint, q: &XPoint, kind: Kind) -> Self {
        match kind {
            Kind::Disk => {
                let two = Rat::from_integer(BigInt::from(2));
                let four = Rat::from_integer(BigInt::from(4));
                XShape::Disk {
                    cx: (&p.x + &q.x) / &two,
                    cy: (&p.y + &q.y) / &two,
                    r2: (sq(&(&p.x - &q.x)) + sq(&(&p.y - &q.y))) / four,
                }
            }
            Kind::TriDown | Kind::TriUp => {
                let orient =
                    if kind == Kind::TriDown { Orientation::Down } else { Orientation::Up };
                XShape::Tri { orient, bounds: tri_bounds(p, q, orient) }
            }
            Kind::Square => {
                let (lo, _) = square_interval(p, q);
                XShape::square_at(p, q, lo)
            }
        }
    }

    /// The smallest square through `p` and `q` with free offset `off`.
    fn square_at(p: &XPoint, q: &XPoint, off: Rat) -> Self {
        let dx = (&p.x - &q.x).abs();
        let dy = (&p.y - &q.y).abs();
        if dx >= dy {
            XShape::Square { x0: p.x.clone().min(q.x.clone()), y0: off, s: dx }
        } else {
            XShape::Square { x0: off, y0: p.y.clone().min(q.y.clone()), s: dy }
        }
    }

    /// Exact representative of a recorded pair: every parameter the pair
    /// determines is recomputed from the exact points; only a square's free
    /// offset is taken from `h`, clamped into its exact feasible interval.
    pub fn for_pair(h: &Homothet, p: &XPoint, q: &XPoint) -> Self {
        match h {
            Homothet::Disk(_) => XShape::smallest(p, q, Kind::Disk),
            Homothet::Triangle(t) => XShape::Tri { orient: t.orient, bounds: tri_bounds(p, q, t.orient) },
            Homothet::Square(s) => {
                let (lo, hi) = square_interval(p, q);
                let dominant_x = (&p.x - &q.x).abs() >= (&p.y - &q.y).abs();
                let off = rat_of(if dominant_x { s.y0 } else { s.x0 });
                let off = off.max(lo.clone()).min(hi.max(lo));
                XShape::square_at(p, q, off)
            }
        }
    }

    /// Exact version of a float homothet, taken at face value.
    pub fn from_homothet(h: &Homothet) -> Self {
        match h {
            Homothet::Disk(d) => XShape::Disk { cx: rat_of(d.cx), cy: rat_of(d.cy), r2: sq(&rat_of(d.r)) },
            Homothet::Triangle(t) => XShape::Tri {
                orient: t.orient,
                bounds: [0, 1, 2].map(|k| q3_of(t.bounds[k])),
            },
            Homothet::Square(s) => XShape::Square { x0: rat_of(s.x0), y0: rat_of(s.y0), s: rat_of(s.s) },
        }
    }

    pub fn contains(&self, p: &XPoint, mode: Mode) -> bool {
        let ok = |o: Ordering| match mode {
            Mode::Closed => o != Ordering::Greater,
            Mode::Open => o == Ordering::Less,
        };
        match self {
            XShape::Disk { cx, cy, r2 } => ok((sq(&(&p.x - cx)) + sq(&(&p.y - cy))).cmp(r2)),
            XShape::Tri { orient, bounds } => {
                let f = p.cone();
                (0..3).all(|k| ok(signed(*orient, f[k].clone()).cmp(&bounds[k])))
            }
            XShape::Square { x0, y0, s } => {
                let inside = |v: &Rat, lo: &Rat| {
                    let hi = lo + s;
                    match mode {
                        Mode::Closed => v >= lo && *v <= hi,
                        Mode::Open => v > lo && *v < hi,
                    }
                };
                inside(&p.x, x0) && inside(&p.y, y0)
            }
        }
    }

    pub fn on_boundary(&self, p: &XPoint) -> bool {
        self.contains(p, Mode::Closed) && !self.contains(p, Mode::Open)
    }

    /// `Some(true)` when the closed shapes meet; `None` for mixed families.
    pub fn intersects(&self, o: &XShape) -> Option<bool> {
        self.meet(o, false)
    }

    pub fn interiors_overlap(&self, o: &XShape) -> Option<bool> {
        self.meet(o, true)
    }

    /// True if `inner` lies inside `self` (closed).
    pub fn covers(&self, inner: &XShape) -> bool {
        match (self, inner) {
            (XShape::Square { x0, y0, s }, XShape::Square { x0: a, y0: b, s: t }) => {
                a >= x0 && b >= y0 && (a + t) <= (x0 + s) && (b + t) <= (y0 + s)
            }
            (XShape::Tri { orient, bounds }, XShape::Tri { .. }) => inner
                .tri_corners()
                .iter()
                .all(|c| (0..3).all(|k| signed(*orient, c[k].clone()) <= bounds[k])),
            _ => false,
        }
    }

    /// Cone coordinates of the three corners of a triangle.
    fn tri_corners(&self) -> Vec<[Q3; 3]> {
        let XShape::Tri { orient, bounds } = self else { return vec![] };
        (0..3)
            .map(|k| {
                let mut f = [Q3::zero(), Q3::zero(), Q3::zero()];
                let mut rest = Q3::zero();
                for j in 0..3 {
                    if j != k {
                        f[j] = signed(*orient, bounds[j].clone());
                        rest = rest + f[j].clone();
                    }
                }
                f[k] = -rest;
                f
            })
            .collect()
    }

    fn meet(&self, o: &XShape, strict: bool) -> Option<bool> {
        let pass = |x: Ordering| if strict { x == Ordering::Greater } else { x != Ordering::Less };
        match (self, o) {
            (XShape::Disk { cx, cy, r2 }, XShape::Disk { cx: ox, cy: oy, r2: or2 }) => {
                // |c1 - c2| vs r1 + r2, squared twice
                let d2 = sq(&(cx - ox)) + sq(&(cy - oy));
                let lhs = d2 - r2 - or2;
                let four = Rat::from_integer(BigInt::from(4));
                let rhs = four * r2 * or2;
                let gap = if lhs.is_negative() {
                    Ordering::Greater
                } else {
                    rhs.cmp(&sq(&lhs))
                };
                Some(pass(gap))
            }
            (XShape::Square { x0, y0, s }, XShape::Square { x0: a, y0: b, s: t }) => {
                let ov = |p: &Rat, q: &Rat| {
                    let lo = p.clone().max(q.clone());
                    let hi = (p + s).min(q + t);
                    pass(hi.cmp(&lo))
                };
                Some(ov(x0, a) && ov(y0, b))
            }
            (XShape::Tri { orient: o1, bounds: b1 }, XShape::Tri { orient: o2, bounds: b2 }) => {
                let gaps: Vec<Q3> = if o1 == o2 {
                    vec![(0..3).fold(Q3::zero(), |acc, k| acc + b1[k].clone().min(b2[k].clone()))]
                } else {
                    let mut g: Vec<Q3> = (0..3).map(|k| b1[k].clone() + b2[k].clone()).collect();
                    g.push(b1.iter().cloned().fold(Q3::zero(), Add::add));
                    g.push(b2.iter().cloned().fold(Q3::zero(), Add::add));
                    g
                };
                Some(gaps.iter().all(|g| pass(g.signum())))
            }
            _ => None,
        }
    }
}

fn q3_of(x: f64) -> Q3 {
    Q3::rat(rat_of(x))
}

fn signed(o: Orientation, f: Q3) -> Q3 {
    match o {
        Orientation::Down => f,
        Orientation::Up => -f,
    }
}

fn tri_bounds(p: &XPoint, q: &XPoint, o: Orientation) -> [Q3; 3] {
    let (fp, fq) = (p.cone(), q.cone());
    [0, 1, 2].map(|k| signed(o, fp[k].clone()).max(signed(o, fq[k].clone())))
}

/// Feasible free-offset interval `[lo, hi]` of the smallest squares through
/// `p` and `q`.
fn square_interval(p: &XPoint, q: &XPoint) -> (Rat, Rat) {
    let dx = (&p.x - &q.x).abs();
    let dy = (&p.y - &q.y).abs();
    let (a, b, s) = if dx >= dy { (&p.y, &q.y, dx) } else { (&p.x, &q.x, dy) };
    (a.clone().max(b.clone()) - s, a.clone().min(b.clone()))
}

/// Exact general-position check; only true degeneracies are reported.
pub fn check_general_position_exact(points: &[XPoint], family: Family) -> GeneralPositionReport {
    let n = points.len();
    let cones: Vec<[Q3; 3]> = points.iter().map(XPoint::cone).collect();
    let mut violations = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let (p, q) = (&points[i], &points[j]);
            let aligned = match family {
                Family::Triangle => (0..3).any(|k| cones[i][k] == cones[j][k]),
                Family::Square => p.x == q.x || p.y == q.y,
                Family::Disk => p == q,
            };
            if aligned {
                let rule =
                    if family == Family::Triangle { Rule::ConeAligned } else { Rule::SharedCoordinate };
                violations.push(Violation { indices: vec![i, j], rule });
                continue;
            }
            let kind = match family {
                Family::Disk => Kind::Disk,
                Family::Square => Kind::Square,
                Family::Triangle => continue,
            };
            let mut h = XShape::smallest(p, q, kind);
            if kind == Kind::Square {
                // canonical placement: midpoint of the feasible interval
                let (lo, hi) = square_interval(p, q);
                let mid = (lo + hi) / Rat::from_integer(BigInt::from(2));
                h = XShape::square_at(p, q, mid);
            }
            let on: Vec<usize> =
                (0..n).filter(|&r| r != i && r != j && h.on_boundary(&points[r])).collect();
            if on.len() >= 2 {
                let mut indices = vec![i, j];
                indices.extend(on);
                let rule = if kind == Kind::Disk { Rule::CoCircular } else { Rule::CoSquare };
                violations.push(Violation { indices, rule });
            }
        }
    }
    GeneralPositionReport { family, violations }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xp(x: &str, y: &str) -> XPoint {
        XPoint { x: parse_decimal(x).unwrap(), y: parse_decimal(y).unwrap() }
    }

    #[test]
    fn decimal_parsing() {
        assert_eq!(parse_decimal("-0.125"), Some(Rat::new((-1).into(), 8.into())));
        assert_eq!(parse_decimal("1.5e-3"), Some(Rat::new(3.into(), 2000.into())));
        assert_eq!(parse_decimal("12"), Some(Rat::from_integer(12.into())));
        assert_eq!(parse_decimal("1e2"), Some(Rat::from_integer(100.into())));
        assert_eq!(parse_decimal("."), None);
        assert_eq!(parse_decimal("1.2.3"), None);
    }

    #[test]
    fn sign_of_mixed_surds() {
        let r = |n: i64, d: i64| Rat::new(n.into(), d.into());
        // 2 - √3 > 0, 1 - √3 < 0, 7 - 4√3 > 0 (tiny)
        assert_eq!(Q3 { a: r(2, 1), b: r(-1, 1) }.signum(), Ordering::Greater);
        assert_eq!(Q3 { a: r(1, 1), b: r(-1, 1) }.signum(), Ordering::Less);
        assert_eq!(Q3 { a: r(7, 1), b: r(-4, 1) }.signum(), Ordering::Greater);
        assert_eq!(Q3 { a: r(-7, 1), b: r(4, 1) }.signum(), Ordering::Less);
    }

    #[test]
    fn cone_sum_is_exactly_zero() {
        let p = xp("0.3", "-1.7");
        let [u, v, w] = p.cone();
        assert_eq!((u + v + w).signum(), Ordering::Equal);
    }

    #[test]
    fn touching_triangles_meet_but_do_not_overlap() {
        let a = XShape::smallest(&xp("0", "0"), &xp("1", "0"), Kind::TriDown);
        let b = XShape::smallest(&xp("1", "0"), &xp("2", "0"), Kind::TriDown);
        let c = XShape::smallest(&xp("3", "0"), &xp("4", "0"), Kind::TriDown);
        assert_eq!(a.intersects(&b), Some(true));
        assert_eq!(a.interiors_overlap(&b), Some(false));
        assert_eq!(a.intersects(&c), Some(false));
    }

    #[test]
    fn touching_disks() {
        let a = XShape::smallest(&xp("0", "0"), &xp("1", "0"), Kind::Disk);
        let b = XShape::smallest(&xp("1", "0"), &xp("3", "0"), Kind::Disk);
        assert_eq!(a.intersects(&b), Some(true));
        assert_eq!(a.interiors_overlap(&b), Some(false));
    }

    #[test]
    fn exact_endpoints_lie_on_boundaries() {
        let p = xp("0.1", "0.7");
        let q = xp("0.35", "0.2");
        for kind in [Kind::Disk, Kind::TriDown, Kind::TriUp, Kind::Square] {
            let h = XShape::smallest(&p, &q, kind);
            assert!(h.on_boundary(&p) && h.on_boundary(&q), "{kind:?}");
        }
    }
}
