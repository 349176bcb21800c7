//! Divide-and-conquer strong matchings of size `⌈(n-1)/4⌉`: theta-six
//! inside a triangle, and squares inside a square.
//!
//! The container is cut into four half-scale copies. When the guarantees
//! of the four parts already add up, the parts are solved independently.
//! Otherwise the parts are shrunk about their outer corners, and one
//! neighbour of the largest shrunk part is grown to collect the missing
//! pair. Every node checks that its sub-regions are interior-disjoint,
//! lie in the node's region, and guarantee enough pairs, and returns
//! [`Error::Invariant`] if not.

mod anchored;
mod square;
mod triangle;

use std::collections::BTreeMap;
use std::marker::PhantomData;

pub use anchored::{anchored_homothet, AnchorMode, AnchoredShape};
pub use square::SQUARE_BRANCHES;
pub use triangle::TRIANGLE_BRANCHES;

use anchored::{shrink, Region};

use crate::error::{Error, Result};
use crate::geom::{
    cone_coords, interiors_overlap, Homothet, Mode, Orientation, Point, Shape, Square, Triangle,
};
use crate::matching::{Disjointness, Pair, StrongMatching};

/// How often each case of the recursion ran.
pub type Trace = BTreeMap<&'static str, usize>;

/// Guaranteed size for `n` points.
pub fn bound(n: usize) -> usize {
    n.saturating_sub(1).div_ceil(4)
}

/// Upward (or downward) triangle containing `points` with a 5% margin.
pub fn triangle_container(points: &[Point], orient: Orientation) -> Triangle {
    let s = orient.sign();
    let mut b = [f64::NEG_INFINITY; 3];
    for p in points {
        let f = cone_coords(*p);
        for k in 0..3 {
            b[k] = b[k].max(s * f[k]);
        }
    }
    if points.is_empty() {
        b = [0.0; 3];
    }
    let pad = (0.05 * b.iter().sum::<f64>()).max(1e-3);
    Triangle::new(orient, b.map(|v| v + pad))
}

/// Axis-parallel square containing `points` with a 5% margin.
pub fn square_container(points: &[Point]) -> Square {
    if points.is_empty() {
        return Square { x0: 0.0, y0: 0.0, s: 1.0 };
    }
    let (mut lx, mut ly, mut hx, mut hy) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for p in points {
        lx = lx.min(p.x);
        ly = ly.min(p.y);
        hx = hx.max(p.x);
        hy = hy.max(p.y);
    }
    let side = (hx - lx).max(hy - ly);
    let s = (side * 1.1).max(1e-3);
    Square { x0: (lx + hx - s) / 2.0, y0: (ly + hy - s) / 2.0, s }
}

pub fn strong_match_theta_recursive(points: &[Point], container: &Triangle) -> Result<StrongMatching> {
    Ok(strong_match_theta_recursive_with_trace(points, container)?.0)
}

pub fn strong_match_theta_recursive_with_trace(
    points: &[Point],
    container: &Triangle,
) -> Result<(StrongMatching, Trace)> {
    run(points, *container, Shape::Theta6)
}

pub fn strong_match_square_recursive(points: &[Point], container: &Square) -> Result<StrongMatching> {
    Ok(strong_match_square_recursive_with_trace(points, container)?.0)
}

pub fn strong_match_square_recursive_with_trace(
    points: &[Point],
    container: &Square,
) -> Result<(StrongMatching, Trace)> {
    run(points, *container, Shape::Square)
}

/// One matched pair for `2..=5` points: shrink the container about its
/// first corner until two points remain and match them inside.
pub fn base_case_pair(points: &[Point], container: &Homothet) -> Result<StrongMatching> {
    let n = points.len();
    if !(2..=5).contains(&n) {
        return Err(Error::TooFewPoints(n));
    }
    inside_check(points, container)?;
    let all: Vec<usize> = (0..n).collect();
    let (shape, pair) = match container {
        Homothet::Triangle(t) => (Shape::Theta6, base_pair(points, t, &all)),
        Homothet::Square(s) => (Shape::Square, base_pair(points, s, &all)),
        Homothet::Disk(_) => return Err(Error::Unsupported("disk container".into())),
    };
    Ok(StrongMatching { shape, pairs: vec![pair], mode: Disjointness::Interior })
}

fn inside_check(points: &[Point], container: &Homothet) -> Result<()> {
    match points.iter().position(|&p| !container.contains(p, Mode::Closed)) {
        Some(i) => Err(Error::OutsideContainer(i)),
        None => Ok(()),
    }
}

fn run<R: Splitter>(points: &[Point], container: R, shape: Shape) -> Result<(StrongMatching, Trace)> {
    inside_check(points, &container.into())?;
    let mut sv = Solver { pts: points, out: Vec::new(), trace: Trace::new(), _region: PhantomData };
    sv.solve(container, (0..points.len()).collect())?;
    let m = StrongMatching { shape, pairs: sv.out, mode: Disjointness::Interior };
    Ok((m, sv.trace))
}

fn base_pair<R: Splitter>(pts: &[Point], reg: &R, members: &[usize]) -> Pair {
    let (sub, kept, _) = shrink(reg, 0, pts, members, members.len() - 2);
    let (i, j) = (kept[0].min(kept[1]), kept[0].max(kept[1]));
    Pair { i, j, rep: sub.pair_in(pts[i], pts[j]) }
}

/// A sub-region and the points assigned to it.
pub(crate) struct Child<R> {
    pub region: R,
    pub members: Vec<usize>,
}

pub(crate) trait Splitter: Region {
    /// Smallest homothet through `p` and `q` lying in `self`.
    fn pair_in(&self, p: Point, q: Point) -> Homothet;

    /// Sub-regions for `4m + 2` members, `m >= 1`.
    fn split(sv: &mut Solver<'_, Self>, reg: &Self, members: &[usize]) -> Result<Vec<Child<Self>>>;
}

pub(crate) struct Solver<'a, R> {
    pub pts: &'a [Point],
    out: Vec<Pair>,
    trace: Trace,
    _region: PhantomData<R>,
}

impl<R: Splitter> Solver<'_, R> {
    pub fn hit(&mut self, label: &'static str) {
        *self.trace.entry(label).or_default() += 1;
    }

    fn solve(&mut self, reg: R, members: Vec<usize>) -> Result<()> {
        let n = members.len();
        let start = self.out.len();
        match n {
            0 | 1 => {}
            2..=5 => {
                self.hit("base");
                let pair = base_pair(self.pts, &reg, &members);
                self.out.push(pair);
            }
            _ if n % 4 != 2 => {
                // one point fewer keeps the same guarantee
                self.hit("drop");
                let (sub, kept, _) = shrink(&reg, 0, self.pts, &members, 1);
                let kids = vec![Child { region: sub, members: kept }];
                self.check(&reg, &members, &kids, bound(n), "drop")?;
                for c in kids {
                    self.solve(c.region, c.members)?;
                }
            }
            _ => {
                for c in R::split(self, &reg, &members)? {
                    self.solve(c.region, c.members)?;
                }
            }
        }
        let got = self.out.len() - start;
        if got < bound(n) {
            return Err(Error::Invariant(format!("{got} pairs for {n} points")));
        }
        Ok(())
    }

    /// Soundness of one recursion step.
    pub fn check(
        &self,
        parent: &R,
        members: &[usize],
        kids: &[Child<R>],
        need: usize,
        label: &str,
    ) -> Result<()> {
        let fail = |what: String| Err(Error::Invariant(format!("{label}: {what}")));
        let outer: Homothet = (*parent).into();
        let regions: Vec<Homothet> = kids.iter().map(|c| c.region.into()).collect();
        let mut owner = BTreeMap::new();
        for (a, (c, h)) in kids.iter().zip(&regions).enumerate() {
            if !outer.covers(h) {
                return fail(format!("child {a} leaves its parent"));
            }
            for &i in &c.members {
                if owner.insert(i, a).is_some() {
                    return fail(format!("point {i} in two children"));
                }
                if !h.contains(self.pts[i], Mode::Closed) {
                    return fail(format!("point {i} outside child {a}"));
                }
            }
            for h2 in &regions[a + 1..] {
                if interiors_overlap(h, h2)? {
                    return fail("overlapping children".into());
                }
            }
        }
        for &i in members {
            for (a, h) in regions.iter().enumerate() {
                if h.contains(self.pts[i], Mode::Open) && owner.get(&i) != Some(&a) {
                    return fail(format!("point {i} inside child {a} but not assigned to it"));
                }
            }
        }
        let sum: usize = kids.iter().map(|c| bound(c.members.len())).sum();
        if sum < need {
            return fail(format!("children guarantee {sum} < {need}"));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{check_general_position, Family};
    use crate::verify::verify_strong;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn sample(seed: u64, n: usize, fam: Family) -> Vec<Point> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        loop {
            let pts: Vec<Point> = (0..n)
                .map(|_| Point::new(rng.gen_range(0.0..100.0), rng.gen_range(0.0..100.0)))
                .collect();
            if check_general_position(&pts, fam).ok() {
                return pts;
            }
        }
    }

    #[test]
    fn random_sets_meet_the_bound() {
        let mut seen = Trace::new();
        for seed in 0..300u64 {
            let n = 2 + (seed as usize * 7) % 60;
            let pts = sample(seed, n, Family::Triangle);
            for orient in [Orientation::Up, Orientation::Down] {
                let c = triangle_container(&pts, orient);
                let (m, tr) = strong_match_theta_recursive_with_trace(&pts, &c).unwrap();
                assert!(m.len() >= bound(n), "seed {seed}");
                let cert = verify_strong(&pts, &m, Disjointness::Interior, Some(&c.into()));
                assert!(cert.pass, "seed {seed} {:?}", cert.failures);
                for (k, v) in tr {
                    *seen.entry(k).or_default() += v;
                }
            }
            let pts = sample(seed, n, Family::Square);
            let c = square_container(&pts);
            let (m, tr) = strong_match_square_recursive_with_trace(&pts, &c).unwrap();
            assert!(m.len() >= bound(n), "seed {seed}");
            let cert = verify_strong(&pts, &m, Disjointness::Interior, Some(&c.into()));
            assert!(cert.pass, "seed {seed} {:?}", cert.failures);
            for (k, v) in tr {
                *seen.entry(k).or_default() += v;
            }
        }
        assert!(seen.len() > 20, "{seen:?}");
    }
}
