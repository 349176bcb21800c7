//! SVG rendering of a point set and a matching.
//!
//! The y axis points up: every y coordinate is negated on output.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::geom::{Homothet, Point};
use crate::matching::StrongMatching;

fn extent(points: &[Point], m: Option<&StrongMatching>) -> (f64, f64, f64, f64) {
    let mut b = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    let mut add = |x: f64, y: f64| {
        b = (b.0.min(x), b.1.min(y), b.2.max(x), b.3.max(y));
    };
    for p in points {
        add(p.x, p.y);
    }
    for pair in m.map(|m| m.pairs.as_slice()).unwrap_or(&[]) {
        match pair.rep {
            Homothet::Disk(d) => {
                add(d.cx - d.r, d.cy - d.r);
                add(d.cx + d.r, d.cy + d.r);
            }
            Homothet::Triangle(t) => t.corners().iter().for_each(|c| add(c.x, c.y)),
            Homothet::Square(s) => {
                add(s.x0, s.y0);
                add(s.x0 + s.s, s.y0 + s.s);
            }
        }
    }
    if b.0 > b.2 {
        return (0.0, 0.0, 1.0, 1.0);
    }
    b
}

/// Points as dots, pairs as segments, representatives as outlines.
pub fn render(points: &[Point], m: Option<&StrongMatching>) -> Result<String> {
    if let Some(m) = m {
        if let Some(p) = m.pairs.iter().find(|p| p.i.max(p.j) >= points.len()) {
            return Err(Error::Mismatch(format!(
                "pair ({}, {}) but only {} points",
                p.i,
                p.j,
                points.len()
            )));
        }
    }
    let (x0, y0, x1, y1) = extent(points, m);
    let span = (x1 - x0).max(y1 - y0).max(1e-9);
    let pad = 0.05 * span;
    let (w, h) = (x1 - x0 + 2.0 * pad, y1 - y0 + 2.0 * pad);
    let dot = 0.006 * span;
    let stroke = 0.002 * span;

    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}" width="800" height="{}">"#,
        x0 - pad,
        -(y1 + pad),
        w,
        h,
        (800.0 * h / w).round()
    )
    .unwrap();
    writeln!(s, r#"<g fill="none" stroke="steelblue" stroke-width="{stroke}">"#).unwrap();
    if let Some(m) = m {
        for pair in &m.pairs {
            match pair.rep {
                Homothet::Disk(d) => {
                    writeln!(s, r#"<circle cx="{}" cy="{}" r="{}"/>"#, d.cx, -d.cy, d.r).unwrap()
                }
                Homothet::Triangle(t) => {
                    let pts: Vec<String> =
                        t.corners().iter().map(|c| format!("{},{}", c.x, -c.y)).collect();
                    writeln!(s, r#"<polygon points="{}"/>"#, pts.join(" ")).unwrap()
                }
                Homothet::Square(q) => writeln!(
                    s,
                    r#"<rect x="{}" y="{}" width="{}" height="{}"/>"#,
                    q.x0,
                    -(q.y0 + q.s),
                    q.s,
                    q.s
                )
                .unwrap(),
            }
        }
        for pair in &m.pairs {
            let (a, b) = (points[pair.i], points[pair.j]);
            writeln!(
                s,
                r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="firebrick"/>"#,
                a.x, -a.y, b.x, -b.y
            )
            .unwrap();
        }
    }
    writeln!(s, "</g>").unwrap();
    writeln!(s, r#"<g fill="black">"#).unwrap();
    for p in points {
        writeln!(s, r#"<circle cx="{}" cy="{}" r="{dot}"/>"#, p.x, -p.y).unwrap();
    }
    writeln!(s, "</g>\n</svg>").unwrap();
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{smallest_homothet, Kind, Shape};
    use crate::matching::{Disjointness, Pair};

    fn one_pair(kind: Kind) -> (Vec<Point>, StrongMatching) {
        let pts = vec![Point::new(0.0, 0.0), Point::new(2.0, 1.0), Point::new(5.0, 5.0)];
        let rep = smallest_homothet(pts[0], pts[1], kind).unwrap();
        let m = StrongMatching { shape: Shape::from(kind), mode: Disjointness::Strict, pairs: vec![Pair { i: 0, j: 1, rep }] };
        (pts, m)
    }

    #[test]
    fn disk_pair_draws_one_outline() {
        let (pts, m) = one_pair(Kind::Disk);
        let s = render(&pts, Some(&m)).unwrap();
        // one outline circle plus one dot per point
        assert_eq!(s.matches("<circle").count(), 1 + pts.len());
        assert_eq!(s.matches("<line").count(), 1);
    }

    #[test]
    fn empty_matching_draws_points_only() {
        let (pts, mut m) = one_pair(Kind::Disk);
        m.pairs.clear();
        let s = render(&pts, Some(&m)).unwrap();
        assert_eq!(s.matches("<circle").count(), pts.len());
        assert!(!s.contains("<line") && !s.contains("<rect") && !s.contains("<polygon"));
    }

    #[test]
    fn square_is_a_square_rect() {
        let (pts, m) = one_pair(Kind::Square);
        let s = render(&pts, Some(&m)).unwrap();
        let rect = s.lines().find(|l| l.starts_with("<rect")).unwrap();
        let attr = |k: &str| rect.split(&format!(" {k}=\"")).nth(1).unwrap().split('"').next().unwrap().to_string();
        assert_eq!(attr("width"), attr("height"));
    }

    #[test]
    fn mismatch_is_an_error() {
        let (pts, m) = one_pair(Kind::TriDown);
        assert!(render(&pts[..1], Some(&m)).is_err());
        assert!(render(&pts, Some(&m)).unwrap().contains("<polygon"));
    }
}
