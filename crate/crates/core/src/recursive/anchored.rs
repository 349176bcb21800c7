//! Corner-anchored shrinking and growing of triangles and squares.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::{Homothet, Mode, Point, Square, Triangle};

/// A region that can be scaled about one of its corners.
pub(crate) trait Region: Copy + Into<Homothet> {
    /// Number of anchor corners.
    const CORNERS: usize;
    /// Scale of the smallest anchored copy at `corner` that contains `p`.
    fn anchored_scale(&self, corner: usize, p: Point) -> f64;
    /// Scale of the region itself.
    fn full(&self) -> f64;
    /// The copy of scale `tau` sharing `corner` with `self`.
    fn anchored(&self, corner: usize, tau: f64) -> Self;
}

impl Region for Triangle {
    const CORNERS: usize = 3;

    fn anchored_scale(&self, k: usize, p: Point) -> f64 {
        self.scale() - self.depth(p)[k]
    }

    fn full(&self) -> f64 {
        self.scale()
    }

    fn anchored(&self, k: usize, tau: f64) -> Self {
        let mut b = self.bounds;
        b[k] -= self.scale() - tau;
        Triangle::new(self.orient, b)
    }
}

/// Square corners: 0 top-left, 1 top-right, 2 bottom-left, 3 bottom-right.
impl Region for Square {
    const CORNERS: usize = 4;

    fn anchored_scale(&self, q: usize, p: Point) -> f64 {
        let (ax, ay, sx, sy) = square_anchor(self, q);
        (sx * (p.x - ax)).max(sy * (p.y - ay))
    }

    fn full(&self) -> f64 {
        self.s
    }

    fn anchored(&self, q: usize, tau: f64) -> Self {
        let (ax, ay, sx, sy) = square_anchor(self, q);
        let x0 = if sx > 0.0 { ax } else { ax - tau };
        let y0 = if sy > 0.0 { ay } else { ay - tau };
        Square { x0, y0, s: tau }
    }
}

/// Anchor point and inward directions of square corner `q`.
pub(crate) fn square_anchor(sq: &Square, q: usize) -> (f64, f64, f64, f64) {
    let left = q.is_multiple_of(2);
    let top = q < 2;
    let ax = if left { sq.x0 } else { sq.x0 + sq.s };
    let ay = if top { sq.y0 + sq.s } else { sq.y0 };
    (ax, ay, if left { 1.0 } else { -1.0 }, if top { -1.0 } else { 1.0 })
}

/// `idx` sorted by anchored scale at `corner`, ties broken by index.
pub(crate) fn by_scale<R: Region>(
    reg: &R,
    corner: usize,
    pts: &[Point],
    idx: &[usize],
) -> Vec<(f64, usize)> {
    let mut v: Vec<(f64, usize)> =
        idx.iter().map(|&i| (reg.anchored_scale(corner, pts[i]), i)).collect();
    v.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    v
}

/// Smallest anchored copy inside `reg` holding all of `members` but the
/// `x` farthest ones. Returns the copy, the kept and the excluded points.
pub(crate) fn shrink<R: Region>(
    reg: &R,
    corner: usize,
    pts: &[Point],
    members: &[usize],
    x: usize,
) -> (R, Vec<usize>, Vec<usize>) {
    let order = by_scale(reg, corner, pts, members);
    let keep = order.len().saturating_sub(x);
    let tau = if keep == 0 { 0.0 } else { order[keep - 1].0.max(0.0) };
    let kept = order[..keep].iter().map(|e| e.1).collect();
    let excluded = order[keep..].iter().map(|e| e.1).collect();
    (reg.anchored(corner, tau), kept, excluded)
}

/// Smallest anchored copy containing `base` (a copy at the same corner)
/// and the `g` nearest of `outside`. `None` if there are fewer than `g`.
pub(crate) fn grow<R: Region>(
    reg: &R,
    corner: usize,
    base_scale: f64,
    pts: &[Point],
    outside: &[usize],
    g: usize,
) -> Option<(R, Vec<usize>, f64)> {
    let order = by_scale(reg, corner, pts, outside);
    if order.len() < g {
        return None;
    }
    let last = if g == 0 { base_scale } else { order[g - 1].0 };
    let tau = base_scale.max(last);
    Some((reg.anchored(corner, tau), order[..g].iter().map(|e| e.1).collect(), last))
}

/// Whether an anchored copy drops or adds points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum AnchorMode {
    ShrinkExclude(usize),
    GrowInclude(usize),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnchoredShape {
    pub corner: usize,
    pub mode: AnchorMode,
    pub shape: Homothet,
    /// Indices of the points of the input inside the shape.
    pub members: Vec<usize>,
}

/// Anchored copy of `container` at `corner`.
///
/// Shrinking keeps all container points but the `x` farthest from the
/// corner; a shrink that removes every point yields a zero-scale shape.
/// Growing adds the `x` nearest points outside the container. Triangles
/// have corners `0..3` (the vertex opposite side `k`), squares `0..4`
/// (top-left, top-right, bottom-left, bottom-right).
pub fn anchored_homothet(
    points: &[Point],
    container: &Homothet,
    corner: usize,
    mode: AnchorMode,
) -> Result<AnchoredShape> {
    match container {
        Homothet::Triangle(t) => anchored_in(points, t, corner, mode),
        Homothet::Square(s) => anchored_in(points, s, corner, mode),
        Homothet::Disk(_) => Err(Error::Unsupported("anchored disks".into())),
    }
}

fn anchored_in<R: Region>(
    points: &[Point],
    reg: &R,
    corner: usize,
    mode: AnchorMode,
) -> Result<AnchoredShape> {
    if corner >= R::CORNERS {
        return Err(Error::Unsupported(format!("corner {corner}")));
    }
    let h: Homothet = (*reg).into();
    let (inside, outside): (Vec<usize>, Vec<usize>) =
        (0..points.len()).partition(|&i| h.contains(points[i], Mode::Closed));
    let (shape, members) = match mode {
        AnchorMode::ShrinkExclude(x) => {
            let (s, kept, _) = shrink(reg, corner, points, &inside, x);
            (s, kept)
        }
        AnchorMode::GrowInclude(x) => {
            let (s, picked, _) = grow(reg, corner, reg.full(), points, &outside, x).ok_or(
                Error::GrowInfeasible { needed: x, available: outside.len() },
            )?;
            let mut m = inside;
            m.extend(picked);
            m.sort_unstable();
            (s, m)
        }
    };
    Ok(AnchoredShape { corner, mode, shape: shape.into(), members })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup() -> (Vec<Point>, Homothet) {
        let p = vec![Point::new(1.0, 3.0), Point::new(3.0, 1.0), Point::new(3.5, 0.5)];
        (p, Homothet::Square(Square { x0: 0.0, y0: 0.0, s: 4.0 }))
    }

    #[test]
    fn square_shrink_examples() {
        let (p, c) = setup();
        let a = anchored_homothet(&p, &c, 0, AnchorMode::ShrinkExclude(1)).unwrap();
        assert_eq!(a.shape, Homothet::Square(Square { x0: 0.0, y0: 1.0, s: 3.0 }));
        assert_eq!(a.members, vec![0, 1]);
        let a = anchored_homothet(&p, &c, 0, AnchorMode::ShrinkExclude(0)).unwrap();
        assert_eq!(a.shape.scale(), 3.5);
        let a = anchored_homothet(&p, &c, 0, AnchorMode::ShrinkExclude(3)).unwrap();
        assert_eq!(a.shape.scale(), 0.0);
        assert!(a.members.is_empty());
    }

    #[test]
    fn square_grow() {
        let p = vec![Point::new(1.0, 1.0), Point::new(3.0, 2.5), Point::new(5.0, 5.0)];
        let c = Homothet::Square(Square { x0: 0.0, y0: 0.0, s: 2.0 });
        // bottom-left anchor: the point at (3, 2.5) has scale 3
        let a = anchored_homothet(&p, &c, 2, AnchorMode::GrowInclude(1)).unwrap();
        assert_eq!(a.shape, Homothet::Square(Square { x0: 0.0, y0: 0.0, s: 3.0 }));
        assert_eq!(a.members, vec![0, 1]);
        let e = anchored_homothet(&p, &c, 2, AnchorMode::GrowInclude(3));
        assert!(matches!(e, Err(Error::GrowInfeasible { needed: 3, available: 2 })));
    }

    #[test]
    fn triangle_anchored_copy_shares_the_corner() {
        let t = Triangle::new(crate::geom::Orientation::Up, [1.0, 0.5, 0.5]);
        for k in 0..3 {
            let a = t.anchored(k, 0.7);
            assert!((a.scale() - 0.7).abs() < 1e-12);
            let (c, d) = (t.corner(k), a.corner(k));
            assert!((c.x - d.x).abs() < 1e-12 && (c.y - d.y).abs() < 1e-12);
        }
    }
}
