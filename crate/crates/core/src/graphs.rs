//! Brute-force constructions of the shape-Delaunay graphs.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::geom::{
    cone_coords, smallest_homothet, square_offset_interval, Homothet, Kind, Mode, Orientation,
    Point, Shape, Square, Triangle, EPS,
};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Edge {
    pub i: usize,
    pub j: usize,
    pub weight: f64,
    pub rep: Homothet,
}

/// Edges sorted by `(i, j)` with `i < j`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShapeGraph {
    pub shape: Shape,
    pub points: Vec<Point>,
    pub edges: Vec<Edge>,
}

impl ShapeGraph {
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        let key = (i.min(j), i.max(j));
        self.edges.binary_search_by(|e| (e.i, e.j).cmp(&key)).is_ok()
    }

    pub fn edge_set(&self) -> Vec<(usize, usize)> {
        self.edges.iter().map(|e| (e.i, e.j)).collect()
    }
}

pub fn build(points: &[Point], shape: Shape) -> ShapeGraph {
    match shape {
        Shape::Disk => build_gabriel(points),
        Shape::TriDown => build_tri_down(points),
        Shape::TriUp => build_tri_up(points),
        Shape::Theta6 => build_theta_six(points),
        Shape::Square => build_linf_delaunay(points),
    }
}

/// Pairs whose diametral disk has no other point in its interior.
pub fn build_gabriel(points: &[Point]) -> ShapeGraph {
    let n = points.len();
    let edges = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            (i + 1..n).filter_map(move |j| {
                let h = smallest_homothet(points[i], points[j], Kind::Disk).ok()?;
                let blocked = (0..n)
                    .any(|r| r != i && r != j && h.contains(points[r], Mode::Open));
                (!blocked).then(|| Edge { i, j, weight: h.scale(), rep: h })
            })
        })
        .collect();
    ShapeGraph { shape: Shape::Disk, points: points.to_vec(), edges }
}

pub fn build_tri_down(points: &[Point]) -> ShapeGraph {
    cone_graph(points, Orientation::Down)
}

pub fn build_tri_up(points: &[Point]) -> ShapeGraph {
    cone_graph(points, Orientation::Up)
}

/// Cone rule: every point is joined to the nearest point in each of its
/// three cones, nearness measured by the height of the spanning triangle.
fn cone_graph(points: &[Point], orient: Orientation) -> ShapeGraph {
    let s = orient.sign();
    let f: Vec<[f64; 3]> = points.iter().map(|&p| cone_coords(p)).collect();
    let mut edges = BTreeMap::new();
    for (i, fi) in f.iter().enumerate() {
        let mut best: [Option<(f64, usize)>; 3] = [None; 3];
        for (j, fj) in f.iter().enumerate() {
            if i == j {
                continue;
            }
            let d = [0, 1, 2].map(|k| s * (fj[k] - fi[k]));
            let Some(k) = (0..3).find(|&k| d[k] > 0.0 && (0..3).all(|l| l == k || d[l] <= 0.0))
            else {
                continue;
            };
            if best[k].is_none_or(|(b, bj)| (d[k], j) < (b, bj)) {
                best[k] = Some((d[k], j));
            }
        }
        for (_, j) in best.into_iter().flatten() {
            let key = (i.min(j), i.max(j));
            edges.entry(key).or_insert_with(|| {
                let t = Triangle::spanning(points[i], points[j], orient);
                Edge { i: key.0, j: key.1, weight: t.scale(), rep: Homothet::Triangle(t) }
            });
        }
    }
    ShapeGraph { shape: orient.kind().into(), points: points.to_vec(), edges: edges.into_values().collect() }
}

/// Union of the two triangle graphs. Both orientations give the same
/// height for a pair, so an edge present in both keeps its downward
/// representative.
pub fn build_theta_six(points: &[Point]) -> ShapeGraph {
    let mut edges: BTreeMap<(usize, usize), Edge> =
        build_tri_up(points).edges.into_iter().map(|e| ((e.i, e.j), e)).collect();
    for e in build_tri_down(points).edges {
        edges.insert((e.i, e.j), e);
    }
    ShapeGraph { shape: Shape::Theta6, points: points.to_vec(), edges: edges.into_values().collect() }
}

/// Pairs with an empty smallest square somewhere along its slide interval.
pub fn build_linf_delaunay(points: &[Point]) -> ShapeGraph {
    let n = points.len();
    let edges = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            (i + 1..n).filter_map(move |j| {
                let sq = empty_square(points, i, j)?;
                Some(Edge { i, j, weight: sq.s, rep: Homothet::Square(sq) })
            })
        })
        .collect();
    ShapeGraph { shape: Shape::Square, points: points.to_vec(), edges }
}

/// The empty smallest square through points `i` and `j` with the lowest
/// free offset, if any placement is empty.
pub fn empty_square(points: &[Point], i: usize, j: usize) -> Option<Square> {
    let (p, q) = (points[i], points[j]);
    if p == q {
        return None;
    }
    let (axis, fixed, lo, hi, s) = square_offset_interval(p, q);
    let split = |r: Point| if axis == 0 { (r.x, r.y) } else { (r.y, r.x) };
    // open offset intervals that would put a point strictly inside
    let blocks: Vec<(f64, f64)> = (0..points.len())
        .filter(|&r| r != i && r != j)
        .filter_map(|r| {
            let (a, c) = split(points[r]);
            (a > fixed + EPS && a < fixed + s - EPS).then_some((c - s, c))
        })
        .collect();
    let free = |t: f64| blocks.iter().all(|&(a, b)| !(t > a + EPS && t < b - EPS));
    let mut cands: Vec<f64> = std::iter::once(lo)
        .chain(blocks.iter().map(|b| b.1).filter(|&c| c >= lo && c <= hi))
        .collect();
    cands.sort_by(f64::total_cmp);
    let t = cands.into_iter().find(|&t| free(t))?;
    Some(if axis == 0 {
        Square { x0: fixed, y0: t, s }
    } else {
        Square { x0: t, y0: fixed, s }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[(f64, f64)]) -> Vec<Point> {
        v.iter().map(|&(x, y)| Point::new(x, y)).collect()
    }

    #[test]
    fn gabriel_examples() {
        let g = build_gabriel(&pts(&[(0.0, 0.0), (2.0, 0.0)]));
        assert_eq!(g.edge_set(), vec![(0, 1)]);
        assert_eq!(g.edges[0].weight, 1.0);
        let g = build_gabriel(&pts(&[(0.0, 0.0), (2.0, 0.0), (1.0, 0.5)]));
        assert_eq!(g.edge_set(), vec![(0, 2), (1, 2)]);
        let g = build_gabriel(&pts(&[(0.0, 0.0), (1.0, 0.0), (3.0, 0.0)]));
        assert_eq!(g.edge_set(), vec![(0, 1), (1, 2)]);
        assert!(build_gabriel(&pts(&[(0.0, 0.0)])).edges.is_empty());
    }

    #[test]
    fn linf_blocker_examples() {
        let g = build_linf_delaunay(&pts(&[(0.0, 0.0), (3.0, 1.0), (1.5, 0.5)]));
        assert!(!g.has_edge(0, 1));
        let g = build_linf_delaunay(&pts(&[(0.0, 0.0), (3.0, 1.0), (10.0, 10.0)]));
        let e = g.edges.iter().find(|e| (e.i, e.j) == (0, 1)).unwrap();
        assert_eq!(e.rep, Homothet::Square(Square { x0: 0.0, y0: -2.0, s: 3.0 }));
        let p = pts(&[(0.0, 0.0), (3.0, 1.0), (1.5, -1.9)]);
        let sq = empty_square(&p, 0, 1).unwrap();
        assert!((sq.y0 + 1.9).abs() < 1e-12);
    }

    #[test]
    fn two_points_one_triangle_edge() {
        let p = pts(&[(0.0, 0.0), (1.0, 0.3)]);
        assert_eq!(build_tri_down(&p).edge_set(), vec![(0, 1)]);
        assert_eq!(build_tri_up(&p).edge_set(), vec![(0, 1)]);
        assert_eq!(build_theta_six(&p).edge_set(), vec![(0, 1)]);
    }

    #[test]
    fn sloped_line_is_a_path() {
        let p: Vec<Point> = (0..6).map(|k| Point::new(k as f64, 0.1 * k as f64)).collect();
        let g = build_tri_down(&p);
        assert_eq!(g.edge_set(), vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)]);
    }
}
