//! Square splitting step. Quadrants are numbered 0 top-left, 1 top-right,
//! 2 bottom-left, 3 bottom-right, so `q ^ 1` is the horizontal neighbour,
//! `q ^ 2` the vertical one and `q ^ 3` the opposite quadrant.

use super::anchored::{grow, shrink, square_anchor, Region};
use super::{bound, Child, Solver, Splitter};
use crate::error::{Error, Result};
use crate::geom::{Homothet, Point, Square, EPS};

/// Every case of the splitting step that must be exercised. `c` is the
/// quadrant with residue 3 in case 1; in case 2 the two quadrants with
/// residue 1 are either adjacent or opposite. `l` is the largest shrunk
/// quadrant.
pub const SQUARE_BRANCHES: [&str; 14] = [
    "c1/l-is-c/grow-h",
    "c1/l-is-c/grow-v",
    "c1/l-adj-c/grow-opp-c",
    "c1/l-adj-c/grow-c",
    "c1/l-opp-c/grow-v",
    "c1/l-opp-c/grow-h",
    "c2-adj/l-one/grow-one",
    "c2-adj/l-one/grow-zero",
    "c2-adj/l-zero/grow-one",
    "c2-adj/l-zero/grow-zero",
    "c2-opp/l-one/grow-h",
    "c2-opp/l-one/grow-v",
    "c2-opp/l-zero/grow-h",
    "c2-opp/l-zero/grow-v",
];

impl Splitter for Square {
    fn pair_in(&self, p: Point, q: Point) -> Homothet {
        let (dx, dy) = ((p.x - q.x).abs(), (p.y - q.y).abs());
        let s = dx.max(dy);
        // slide along the short axis: midpoint of the placements that keep
        // both points on the boundary and the square inside `self`
        let place = |a: f64, b: f64, lo: f64| {
            let from = (a.max(b) - s).max(lo);
            let to = a.min(b).min(lo + self.s - s);
            // the two ends can cross by rounding when the points sit on the region's sides
            debug_assert!(from <= to + EPS);
            (from + to) / 2.0
        };
        Homothet::Square(if dx >= dy {
            Square { x0: p.x.min(q.x), y0: place(p.y, q.y, self.y0), s }
        } else {
            Square { x0: place(p.x, q.x, self.x0), y0: p.y.min(q.y), s }
        })
    }

    fn split(sv: &mut Solver<'_, Self>, reg: &Self, members: &[usize]) -> Result<Vec<Child<Self>>> {
        let pts = sv.pts;
        let n = members.len();
        let m = (n - 2) / 4;
        let half = reg.s / 2.0;
        let (mx, my) = (reg.x0 + half, reg.y0 + half);

        let mut groups: [Vec<usize>; 4] = Default::default();
        for &i in members {
            let p = pts[i];
            let q = if p.y > my { 0 } else { 2 } + if p.x <= mx { 0 } else { 1 };
            groups[q].push(i);
        }
        let a: usize = groups.iter().map(|g| bound(g.len())).sum();
        if a > m {
            sv.hit("quadrants");
            let kids: Vec<Child<Self>> = (0..4)
                .map(|q| Child { region: reg.anchored(q, half), members: groups[q].clone() })
                .collect();
            sv.check(reg, members, &kids, m + 1, "quadrants")?;
            return Ok(kids);
        }

        let r: [usize; 4] = [0, 1, 2, 3].map(|q| groups[q].len() % 4);
        let count = |v: usize| r.iter().filter(|&&x| x == v).count();
        let case1 = count(3) == 1 && count(1) == 3;
        if !case1 && !(count(0) == 2 && count(1) == 2) {
            return Err(Error::Invariant(format!("residues {r:?} with A = m")));
        }
        let x = r.map(|v| (v + 2) % 4);
        let g = r.map(|v| (6 - v) % 4);
        let shrunk: Vec<(Square, Vec<usize>, Vec<usize>)> =
            (0..4).map(|q| shrink(reg, q, pts, &groups[q], x[q])).collect();
        let side: Vec<f64> = shrunk.iter().map(|s| s.0.s).collect();
        let lead = (0..4).fold(0, |b, q| if side[q] > side[b] { q } else { b });
        let (h, v) = (lead ^ 1, lead ^ 2);

        // (first neighbour, label, second neighbour, label)
        let (n1, lab1, n2, lab2) = if case1 {
            let c = r.iter().position(|&x| x == 3).unwrap();
            if lead == c {
                (h, "c1/l-is-c/grow-h", v, "c1/l-is-c/grow-v")
            } else if lead == c ^ 3 {
                (v, "c1/l-opp-c/grow-v", h, "c1/l-opp-c/grow-h")
            } else {
                (c ^ 3, "c1/l-adj-c/grow-opp-c", c, "c1/l-adj-c/grow-c")
            }
        } else {
            let ones: Vec<usize> = (0..4).filter(|&q| r[q] == 1).collect();
            let adjacent = ones[0] ^ ones[1] != 3;
            match (adjacent, r[lead] == 1) {
                (true, true) | (true, false) => {
                    let (one, zero) = if r[h] == 1 { (h, v) } else { (v, h) };
                    if r[lead] == 1 {
                        (one, "c2-adj/l-one/grow-one", zero, "c2-adj/l-one/grow-zero")
                    } else {
                        (one, "c2-adj/l-zero/grow-one", zero, "c2-adj/l-zero/grow-zero")
                    }
                }
                (false, true) => (h, "c2-opp/l-one/grow-h", v, "c2-opp/l-one/grow-v"),
                (false, false) => (h, "c2-opp/l-zero/grow-h", v, "c2-opp/l-zero/grow-v"),
            }
        };

        // excluded points of the lead quadrant beyond its inner side facing `nb`
        let (ax, ay, sx, sy) = square_anchor(reg, lead);
        let al = side[lead];
        let beyond = |nb: usize| {
            shrunk[lead]
                .2
                .iter()
                .filter(|&&i| {
                    let p = pts[i];
                    if nb == h {
                        sx * (p.x - ax) > al
                    } else {
                        sy * (p.y - ay) > al
                    }
                })
                .count()
        };
        let (nb, label) = if beyond(n1) >= g[n1] { (n1, lab1) } else { (n2, lab2) };
        let outside: Vec<usize> =
            members.iter().copied().filter(|i| !groups[nb].contains(i)).collect();
        let (region, picked, last) = grow(reg, nb, half, pts, &outside, g[nb])
            .ok_or(Error::GrowInfeasible { needed: g[nb], available: outside.len() })?;
        if last >= reg.s - al - EPS {
            return Err(Error::Invariant(format!("{label}: grown square reaches the lead square")));
        }
        sv.hit(label);
        let mut kids: Vec<Child<Self>> = (0..4)
            .filter(|&q| q != nb)
            .map(|q| Child { region: shrunk[q].0, members: shrunk[q].1.clone() })
            .collect();
        let mut mem = groups[nb].clone();
        mem.extend(picked);
        kids.push(Child { region, members: mem });
        sv.check(reg, members, &kids, m + 1, label)?;
        Ok(kids)
    }
}
