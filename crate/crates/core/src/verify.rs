//! Independent certification of strong matchings, the guaranteed sizes,
//! and an exhaustive maximum-strong-matching oracle for tiny inputs.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{XPoint, XShape};
use crate::geom::{
    interiors_overlap, intersects, smallest_homothet, square_offset_interval, Homothet, Mode, Point, Shape, Square, EPS,
};
use crate::matching::{Disjointness, Engine, Pair, StrongMatching};

/// Largest input the oracle accepts by default.
pub const ORACLE_CAP: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    /// Index out of range, self-pair, or a vertex used twice.
    VertexDisjoint,
    /// Representative of a kind the matching's shape does not allow.
    Kind,
    /// A matched point is not on its representative's boundary.
    EndpointsOnBoundary,
    /// Another input point lies in a representative's interior.
    EmptyInterior,
    /// Two representatives overlap under the requested mode.
    Disjoint,
    /// A representative leaves the container.
    Containment,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub check: Check,
    pub indices: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub pass: bool,
    pub failures: Vec<Failure>,
    /// Pairs of representatives that touch without overlapping.
    pub boundary_contacts: usize,
}

impl Certificate {
    fn from_failures(failures: Vec<Failure>, boundary_contacts: usize) -> Self {
        Self { pass: failures.is_empty(), failures, boundary_contacts }
    }
}

fn vertex_failures(n: usize, m: &StrongMatching) -> Vec<Failure> {
    let mut used = vec![false; n];
    let mut out = Vec::new();
    for p in &m.pairs {
        if p.i >= n || p.j >= n || p.i == p.j || used[p.i] || used[p.j] {
            out.push(Failure { check: Check::VertexDisjoint, indices: vec![p.i, p.j] });
            continue;
        }
        used[p.i] = true;
        used[p.j] = true;
        if !m.shape.kinds().contains(&p.rep.kind()) {
            out.push(Failure { check: Check::Kind, indices: vec![p.i, p.j] });
        }
    }
    out
}

/// Checks a matching in floating point.
pub fn verify_strong(
    points: &[Point],
    m: &StrongMatching,
    mode: Disjointness,
    container: Option<&Homothet>,
) -> Certificate {
    let mut failures = vertex_failures(points.len(), m);
    if !failures.is_empty() {
        return Certificate::from_failures(failures, 0);
    }
    for p in &m.pairs {
        if !p.rep.on_boundary(points[p.i]) || !p.rep.on_boundary(points[p.j]) {
            failures.push(Failure { check: Check::EndpointsOnBoundary, indices: vec![p.i, p.j] });
        }
        let inside: Vec<usize> = (0..points.len())
            .filter(|&r| r != p.i && r != p.j && p.rep.contains(points[r], Mode::Open))
            .collect();
        if !inside.is_empty() {
            let mut idx = vec![p.i, p.j];
            idx.extend(inside);
            failures.push(Failure { check: Check::EmptyInterior, indices: idx });
        }
        if let Some(c) = container {
            if !c.covers(&p.rep) {
                failures.push(Failure { check: Check::Containment, indices: vec![p.i, p.j] });
            }
        }
    }
    let mut contacts = 0;
    for (a, pa) in m.pairs.iter().enumerate() {
        for pb in &m.pairs[a + 1..] {
            let meet = intersects(&pa.rep, &pb.rep).unwrap_or(true);
            let overlap = interiors_overlap(&pa.rep, &pb.rep).unwrap_or(true);
            if meet && !overlap {
                contacts += 1;
            }
            let bad = match mode {
                Disjointness::Strict => meet,
                Disjointness::Interior => overlap,
            };
            if bad {
                failures
                    .push(Failure { check: Check::Disjoint, indices: vec![pa.i, pa.j, pb.i, pb.j] });
            }
        }
    }
    Certificate::from_failures(failures, contacts)
}

/// Checks a matching with exact arithmetic. Each representative is rebuilt
/// from its exact endpoints; see [`XShape::for_pair`].
pub fn verify_strong_exact(
    points: &[XPoint],
    m: &StrongMatching,
    mode: Disjointness,
    container: Option<&Homothet>,
) -> Certificate {
    let mut failures = vertex_failures(points.len(), m);
    if !failures.is_empty() {
        return Certificate::from_failures(failures, 0);
    }
    let shapes: Vec<XShape> =
        m.pairs.iter().map(|p| XShape::for_pair(&p.rep, &points[p.i], &points[p.j])).collect();
    let cont = container.map(XShape::from_homothet);
    for (p, h) in m.pairs.iter().zip(&shapes) {
        if !h.on_boundary(&points[p.i]) || !h.on_boundary(&points[p.j]) {
            failures.push(Failure { check: Check::EndpointsOnBoundary, indices: vec![p.i, p.j] });
        }
        let inside: Vec<usize> = (0..points.len())
            .filter(|&r| r != p.i && r != p.j && h.contains(&points[r], Mode::Open))
            .collect();
        if !inside.is_empty() {
            let mut idx = vec![p.i, p.j];
            idx.extend(inside);
            failures.push(Failure { check: Check::EmptyInterior, indices: idx });
        }
        if let Some(c) = &cont {
            if !c.covers(h) {
                failures.push(Failure { check: Check::Containment, indices: vec![p.i, p.j] });
            }
        }
    }
    let mut contacts = 0;
    for a in 0..shapes.len() {
        for b in a + 1..shapes.len() {
            let meet = shapes[a].intersects(&shapes[b]).unwrap_or(true);
            let overlap = shapes[a].interiors_overlap(&shapes[b]).unwrap_or(true);
            if meet && !overlap {
                contacts += 1;
            }
            let bad = match mode {
                Disjointness::Strict => meet,
                Disjointness::Interior => overlap,
            };
            if bad {
                let (pa, pb) = (&m.pairs[a], &m.pairs[b]);
                failures
                    .push(Failure { check: Check::Disjoint, indices: vec![pa.i, pa.j, pb.i, pb.j] });
            }
        }
    }
    Certificate::from_failures(failures, contacts)
}

fn ceil_div(a: usize, b: usize) -> usize {
    a.div_ceil(b)
}

/// Guaranteed matching size for `n` points.
///
/// Greedy: `⌈(n-1)/17⌉` for disks, `⌈(n-1)/9⌉` for triangles (theta-six
/// runs greedy on downward triangles), and only the trivial bound for
/// squares. Recursive: `⌈(n-1)/4⌉` for theta-six and squares.
pub fn check_bound(n: usize, shape: Shape, engine: Engine) -> Result<usize> {
    let m = n.saturating_sub(1);
    Ok(match (engine, shape) {
        (Engine::Greedy, Shape::Disk) => ceil_div(m, 17),
        (Engine::Greedy, Shape::TriDown | Shape::TriUp | Shape::Theta6) => ceil_div(m, 9),
        (Engine::Greedy, Shape::Square) => m.min(1),
        (Engine::Recursive, Shape::Disk) => {
            return Err(Error::Unsupported("recursive engine with disks".into()))
        }
        (Engine::Recursive, _) => ceil_div(m, 4),
    })
}

/// Maximum size of a strong matching of `points` for `shape`, with a
/// witness, by exhaustive search. Strict disjointness.
pub fn oracle_max_strong(points: &[Point], shape: Shape) -> Result<(usize, StrongMatching)> {
    oracle_max_strong_capped(points, shape, ORACLE_CAP)
}

pub fn oracle_max_strong_capped(
    points: &[Point],
    shape: Shape,
    cap: usize,
) -> Result<(usize, StrongMatching)> {
    let n = points.len();
    if n > cap {
        return Err(Error::OracleCap { n, cap });
    }
    let pairs = if shape == Shape::Square {
        square_oracle(points)
    } else {
        fixed_oracle(points, shape)
    };
    let m = StrongMatching { shape, pairs, mode: Disjointness::Strict };
    Ok((m.len(), m))
}

/// Disks and triangles: each pair has at most one candidate per kind.
fn fixed_oracle(points: &[Point], shape: Shape) -> Vec<Pair> {
    let n = points.len();
    let mut cand: Vec<Vec<Vec<Homothet>>> = vec![vec![Vec::new(); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            for &k in shape.kinds() {
                let Ok(h) = smallest_homothet(points[i], points[j], k) else { continue };
                let empty =
                    (0..n).all(|r| r == i || r == j || !h.contains(points[r], Mode::Open));
                if empty {
                    cand[i][j].push(h);
                }
            }
        }
    }
    struct Search<'a> {
        n: usize,
        cand: &'a [Vec<Vec<Homothet>>],
        used: Vec<bool>,
        cur: Vec<Pair>,
        best: Vec<Pair>,
    }
    impl Search<'_> {
        fn go(&mut self, v: usize) {
            let free = (v..self.n).filter(|&x| !self.used[x]).count();
            if self.cur.len() + free / 2 <= self.best.len() {
                return;
            }
            let Some(v) = (v..self.n).find(|&x| !self.used[x]) else {
                self.best = self.cur.clone();
                return;
            };
            self.used[v] = true;
            for w in v + 1..self.n {
                if self.used[w] {
                    continue;
                }
                for h in &self.cand[v][w] {
                    if self.cur.iter().any(|p| intersects(&p.rep, h).unwrap_or(true)) {
                        continue;
                    }
                    self.used[w] = true;
                    self.cur.push(Pair { i: v, j: w, rep: *h });
                    self.go(v + 1);
                    self.cur.pop();
                    self.used[w] = false;
                }
            }
            self.go(v + 1);
            self.used[v] = false;
        }
    }
    let mut s = Search { n, cand: &cand, used: vec![false; n], cur: Vec::new(), best: Vec::new() };
    s.go(0);
    s.best
}

/// A smallest-square family through one pair: `axis` as in
/// [`square_offset_interval`], and the closed offset ranges that keep the
/// square empty.
#[derive(Debug, Clone)]
struct SquareFamily {
    i: usize,
    j: usize,
    axis: usize,
    fixed: f64,
    s: f64,
    comps: Vec<(f64, f64)>,
}

impl SquareFamily {
    fn new(points: &[Point], i: usize, j: usize) -> Option<Self> {
        let (p, q) = (points[i], points[j]);
        if p == q {
            return None;
        }
        let (axis, fixed, lo, hi, s) = square_offset_interval(p, q);
        let mut blocks: Vec<(f64, f64)> = (0..points.len())
            .filter(|&r| r != i && r != j)
            .filter_map(|r| {
                let (a, c) = if axis == 0 {
                    (points[r].x, points[r].y)
                } else {
                    (points[r].y, points[r].x)
                };
                // widened by EPS / 2 so a placement at a block end keeps the
                // blocker on the boundary after rounding
                (a > fixed + EPS && a < fixed + s - EPS).then_some((c - s + EPS / 2.0, c - EPS / 2.0))
            })
            .collect();
        blocks.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut comps = Vec::new();
        let mut start = lo;
        for (a, b) in blocks {
            if b <= start || a >= hi {
                continue;
            }
            if a >= start {
                comps.push((start, a));
            }
            start = start.max(b);
        }
        if start <= hi {
            comps.push((start, hi));
        }
        (!comps.is_empty()).then_some(Self { i, j, axis, fixed, s, comps })
    }

    /// Lower-left corner as (constant, variable) per axis: `None` marks the
    /// free coordinate.
    fn origin(&self) -> [Option<f64>; 2] {
        if self.axis == 0 {
            [Some(self.fixed), None]
        } else {
            [None, Some(self.fixed)]
        }
    }

    fn square(&self, t: f64) -> Square {
        if self.axis == 0 {
            Square { x0: self.fixed, y0: t, s: self.s }
        } else {
            Square { x0: t, y0: self.fixed, s: self.s }
        }
    }
}

/// Difference constraints `x_a - x_b <= c` over the free offsets of up to
/// four squares plus a zero node (index 0).
#[derive(Clone)]
struct Dbm {
    d: Vec<Vec<f64>>,
}

impl Dbm {
    fn new(vars: usize) -> Self {
        let k = vars + 1;
        let mut d = vec![vec![f64::INFINITY; k]; k];
        for (a, row) in d.iter_mut().enumerate() {
            row[a] = 0.0;
        }
        Self { d }
    }

    /// Adds `x_a - x_b <= c` and closes; false if the system becomes
    /// infeasible.
    fn add(&mut self, a: usize, b: usize, c: f64) -> bool {
        if c >= self.d[b][a] {
            return true;
        }
        let k = self.d.len();
        self.d[b][a] = c;
        for x in 0..k {
            for y in 0..k {
                let via = self.d[x][b] + c + self.d[a][y];
                if via < self.d[x][y] {
                    self.d[x][y] = via;
                }
            }
        }
        (0..k).all(|x| self.d[x][x] >= -EPS)
    }
}

fn square_oracle(points: &[Point]) -> Vec<Pair> {
    let n = points.len();
    let mut fam: Vec<Vec<Option<SquareFamily>>> = vec![vec![None; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            fam[i][j] = SquareFamily::new(points, i, j);
        }
    }
    struct Search<'a> {
        n: usize,
        fam: &'a [Vec<Option<SquareFamily>>],
        used: Vec<bool>,
        cur: Vec<&'a SquareFamily>,
        best: Vec<Pair>,
        best_len: usize,
    }
    impl<'a> Search<'a> {
        fn go(&mut self, v: usize, dbm: &Dbm) {
            let free = (v..self.n).filter(|&x| !self.used[x]).count();
            if self.cur.len() + free / 2 <= self.best_len {
                return;
            }
            let Some(v) = (v..self.n).find(|&x| !self.used[x]) else {
                self.record(dbm);
                return;
            };
            self.used[v] = true;
            for w in v + 1..self.n {
                if self.used[w] {
                    continue;
                }
                let Some(f) = self.fam[v][w].as_ref() else { continue };
                let var = self.cur.len() + 1;
                for &(lo, hi) in &f.comps {
                    let mut d = dbm.clone();
                    // x_var <= hi, x_var >= lo
                    if !(d.add(var, 0, hi) && d.add(0, var, -lo)) {
                        continue;
                    }
                    self.used[w] = true;
                    self.separate(f, 0, d, v);
                    self.used[w] = false;
                }
            }
            self.go(v + 1, dbm);
            self.used[v] = false;
        }

        /// Chooses a separating direction between `f` and each chosen
        /// square in turn, then continues the matching search.
        fn separate(&mut self, f: &'a SquareFamily, k: usize, d: Dbm, v: usize) {
            if k == self.cur.len() {
                self.cur.push(f);
                self.go(v + 1, &d);
                self.cur.pop();
                return;
            }
            let g = self.cur[k];
            let (nf, ng) = (self.cur.len() + 1, k + 1);
            let (of, og) = (f.origin(), g.origin());
            for axis in 0..2 {
                for (lo_sq, hi_sq) in [((of, nf, f.s), (og, ng, g.s)), ((og, ng, g.s), (of, nf, f.s))] {
                    // lo_sq entirely before hi_sq along `axis`, by at least 2 EPS
                    let ((oa, va, sa), (ob, vb, _)) = (lo_sq, hi_sq);
                    let c = -sa - 2.0 * EPS;
                    // (a + xa) - (b + xb) <= c with constants folded in
                    let mut dd = d.clone();
                    let ok = match (oa[axis], ob[axis]) {
                        (Some(a), Some(b)) => a - b <= c,
                        (Some(a), None) => dd.add(0, vb, c - a),
                        (None, Some(b)) => dd.add(va, 0, c + b),
                        (None, None) => dd.add(va, vb, c),
                    };
                    if ok {
                        self.separate(f, k + 1, dd, v);
                    }
                }
            }
        }

        fn record(&mut self, dbm: &Dbm) {
            if self.cur.len() <= self.best_len {
                return;
            }
            // shortest distances from the zero node give a feasible point
            self.best = self
                .cur
                .iter()
                .enumerate()
                .map(|(k, f)| {
                    let t = dbm.d[0][k + 1];
                    Pair { i: f.i, j: f.j, rep: Homothet::Square(f.square(t)) }
                })
                .collect();
            self.best_len = self.cur.len();
        }
    }
    let mut s =
        Search { n, fam: &fam, used: vec![false; n], cur: Vec::new(), best: Vec::new(), best_len: 0 };
    s.go(0, &Dbm::new(n / 2));
    s.best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{Disk, Kind};
    use crate::greedy::strong_match_greedy;

    fn pts(v: &[(f64, f64)]) -> Vec<Point> {
        v.iter().map(|&(x, y)| Point::new(x, y)).collect()
    }

    #[test]
    fn greedy_on_collinear_disks_passes() {
        let p = pts(&[(0.0, 0.0), (1.0, 0.0), (3.0, 0.0)]);
        let m = strong_match_greedy(&p, Kind::Disk).unwrap();
        assert!(verify_strong(&p, &m, Disjointness::Strict, None).pass);
    }

    #[test]
    fn touching_disks_fail_strict_only() {
        let p = pts(&[(0.0, 0.0), (1.0, 0.0), (1.0, 0.0), (3.0, 0.0)]);
        // two disks touching at (1, 0); the points 1 and 2 are distinct indices
        let m = StrongMatching {
            shape: Shape::Disk,
            pairs: vec![
                Pair { i: 0, j: 1, rep: Homothet::Disk(Disk { cx: 0.5, cy: 0.0, r: 0.5 }) },
                Pair { i: 2, j: 3, rep: Homothet::Disk(Disk { cx: 2.0, cy: 0.0, r: 1.0 }) },
            ],
            mode: Disjointness::Strict,
        };
        let strict = verify_strong(&p, &m, Disjointness::Strict, None);
        assert!(!strict.pass);
        assert!(strict.failures.iter().all(|f| f.check == Check::Disjoint));
        let interior = verify_strong(&p, &m, Disjointness::Interior, None);
        assert!(interior.pass);
        assert_eq!(interior.boundary_contacts, 1);
    }

    #[test]
    fn planted_blocker_fails_emptiness() {
        let p = pts(&[(0.0, 0.0), (2.0, 0.0), (1.0, 0.2)]);
        let m = StrongMatching {
            shape: Shape::Disk,
            pairs: vec![Pair { i: 0, j: 1, rep: Homothet::Disk(Disk { cx: 1.0, cy: 0.0, r: 1.0 }) }],
            mode: Disjointness::Strict,
        };
        let c = verify_strong(&p, &m, Disjointness::Strict, None);
        assert_eq!(c.failures[0].check, Check::EmptyInterior);
    }

    #[test]
    fn bounds() {
        assert_eq!(check_bound(18, Shape::Disk, Engine::Greedy).unwrap(), 1);
        assert_eq!(check_bound(18, Shape::TriDown, Engine::Greedy).unwrap(), 2);
        assert_eq!(check_bound(18, Shape::Square, Engine::Recursive).unwrap(), 5);
        for s in Shape::ALL {
            assert_eq!(check_bound(1, s, Engine::Greedy).unwrap(), 0);
            assert_eq!(check_bound(0, s, Engine::Greedy).unwrap(), 0);
        }
        assert!(check_bound(5, Shape::Disk, Engine::Recursive).is_err());
    }

    #[test]
    fn oracle_examples() {
        let p = pts(&[(0.0, 0.0), (1.0, 0.0), (10.0, 0.0), (11.0, 0.0)]);
        assert_eq!(oracle_max_strong(&p, Shape::Disk).unwrap().0, 2);
        let p = pts(&[(0.0, 0.0), (1.0, 0.0), (3.0, 0.0)]);
        assert_eq!(oracle_max_strong(&p, Shape::Disk).unwrap().0, 1);
        let p = pts(&[(0.0, 0.0), (0.5, 0.7)]);
        for s in Shape::ALL {
            assert_eq!(oracle_max_strong(&p, s).unwrap().0, 1);
        }
        let many: Vec<Point> = (0..9).map(|k| Point::new(k as f64, 0.0)).collect();
        assert!(matches!(oracle_max_strong(&many, Shape::Disk), Err(Error::OracleCap { .. })));
    }

    #[test]
    fn square_oracle_slides_to_separate() {
        // two stacked pairs; their canonical squares overlap but sliding
        // them apart vertically works
        let p = pts(&[(0.0, 0.0), (2.0, 0.5), (0.3, 1.0), (2.3, 1.7)]);
        let (k, w) = oracle_max_strong(&p, Shape::Square).unwrap();
        assert_eq!(k, 2);
        assert!(verify_strong(&p, &w, Disjointness::Strict, None).pass);
    }
}
