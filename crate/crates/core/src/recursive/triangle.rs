//! Theta-six splitting step.
//!
//! Depths are taken relative to the region: `d_k(p)` is the distance of
//! `p` from side `k` in scale units, so `d_k >= 0` inside and the three
//! depths sum to the scale `σ`. Corner part `k` is `{d_k >= σ/2}`; the
//! remaining central part is the inverted triangle `{d_k <= σ/2}`.

use super::anchored::{by_scale, grow, shrink, Region};
use super::{bound, Child, Solver, Splitter};
use crate::error::{Error, Result};
use crate::geom::{Homothet, Point, Triangle, EPS};

/// Every case of the splitting step that must be exercised. Case 1 has one
/// residue 3 (in the centre or in a corner), case 2 two residues 0 (the
/// centre holding residue 0 or 1). `l` is the largest shrunk corner.
pub const TRIANGLE_BRANCHES: [&str; 24] = [
    "c1-center3/all-zero",
    "c1-center3/grow-next",
    "c1-center3/grow-prev",
    "c1-center3/fallback",
    "c1-corner3/l-is-c/grow-next",
    "c1-corner3/l-is-c/grow-prev",
    "c1-corner3/l-is-c/fallback",
    "c1-corner3/l-not-c/grow-third",
    "c1-corner3/l-not-c/grow-c",
    "c1-corner3/l-not-c/fallback",
    "c2-center0/all-zero",
    "c2-center0/l-zero/grow-next",
    "c2-center0/l-zero/grow-prev",
    "c2-center0/l-zero/fallback",
    "c2-center0/l-one/grow-one",
    "c2-center0/l-one/grow-zero",
    "c2-center0/l-one/fallback",
    "c2-center1/all-zero",
    "c2-center1/l-one/grow-next",
    "c2-center1/l-one/grow-prev",
    "c2-center1/l-one/fallback",
    "c2-center1/l-zero/grow-zero",
    "c2-center1/l-zero/grow-one",
    "c2-center1/l-zero/fallback",
];

/// `{d_k <= e_k}` as a triangle of the opposite orientation.
fn inverted(reg: &Triangle, e: [f64; 3]) -> Triangle {
    Triangle::new(reg.orient.flip(), [0, 1, 2].map(|k| e[k] - reg.bounds[k]))
}

/// Picks the label for an outcome: `next`/`prev` name the corners after
/// `l` cyclically.
struct Plan {
    all_zero: &'static str,
    options: Vec<(usize, &'static str)>,
    fallback: &'static str,
}

impl Splitter for Triangle {
    fn pair_in(&self, p: Point, q: Point) -> Homothet {
        Homothet::Triangle(Triangle::spanning(p, q, self.orient))
    }

    fn split(sv: &mut Solver<'_, Self>, reg: &Self, members: &[usize]) -> Result<Vec<Child<Self>>> {
        let pts = sv.pts;
        let n = members.len();
        let m = (n - 2) / 4;
        let sigma = reg.scale();
        let half = sigma / 2.0;
        let depth = |i: usize| reg.depth(pts[i]);

        let mut groups: [Vec<usize>; 4] = Default::default();
        for &i in members {
            let d = depth(i);
            groups[(0..3).find(|&k| d[k] >= half).unwrap_or(3)].push(i);
        }
        let centre = inverted(reg, [half; 3]);
        let a: usize = groups.iter().map(|g| bound(g.len())).sum();
        if a > m {
            sv.hit("quadrants");
            let mut kids: Vec<Child<Self>> = (0..3)
                .map(|k| Child { region: reg.anchored(k, half), members: groups[k].clone() })
                .collect();
            kids.push(Child { region: centre, members: groups[3].clone() });
            sv.check(reg, members, &kids, m + 1, "quadrants")?;
            return Ok(kids);
        }

        let r: [usize; 4] = [0, 1, 2, 3].map(|k| groups[k].len() % 4);
        let rc = &r[..3];
        let count = |v: usize| rc.iter().filter(|&&x| x == v).count();
        enum Case {
            Center3,
            Corner3(usize),
            Center0,
            Center1,
        }
        let case = match r[3] {
            3 if count(1) == 3 => Case::Center3,
            1 if count(3) == 1 && count(1) == 2 => Case::Corner3(rc.iter().position(|&x| x == 3).unwrap()),
            0 if count(0) == 1 && count(1) == 2 => Case::Center0,
            1 if count(0) == 2 && count(1) == 1 => Case::Center1,
            _ => return Err(Error::Invariant(format!("residues {r:?} with A = m"))),
        };
        let x = [0, 1, 2].map(|k| (r[k] + 2) % 4);
        let g = [0, 1, 2].map(|k| (6 - r[k]) % 4);

        let shrunk: Vec<(Triangle, Vec<usize>, Vec<usize>)> =
            (0..3).map(|k| shrink(reg, k, pts, &groups[k], x[k])).collect();
        let t: Vec<f64> = shrunk.iter().map(|s| s.0.scale()).collect();
        let lead = (0..3).fold(0, |b, k| if t[k] > t[b] { k } else { b });
        let (next, prev) = ((lead + 1) % 3, (lead + 2) % 3);
        let tl = t[lead];

        let plan = match case {
            Case::Center3 => Plan {
                all_zero: "c1-center3/all-zero",
                options: vec![(next, "c1-center3/grow-next"), (prev, "c1-center3/grow-prev")],
                fallback: "c1-center3/fallback",
            },
            Case::Corner3(c) if c == lead => Plan {
                all_zero: "",
                options: vec![
                    (next, "c1-corner3/l-is-c/grow-next"),
                    (prev, "c1-corner3/l-is-c/grow-prev"),
                ],
                fallback: "c1-corner3/l-is-c/fallback",
            },
            Case::Corner3(c) => Plan {
                all_zero: "",
                options: vec![
                    (3 - c - lead, "c1-corner3/l-not-c/grow-third"),
                    (c, "c1-corner3/l-not-c/grow-c"),
                ],
                fallback: "c1-corner3/l-not-c/fallback",
            },
            Case::Center0 if r[lead] == 0 => Plan {
                all_zero: "c2-center0/all-zero",
                options: vec![
                    (next, "c2-center0/l-zero/grow-next"),
                    (prev, "c2-center0/l-zero/grow-prev"),
                ],
                fallback: "c2-center0/l-zero/fallback",
            },
            Case::Center0 => {
                let one = if r[next] == 1 { next } else { prev };
                Plan {
                    all_zero: "c2-center0/all-zero",
                    options: vec![
                        (one, "c2-center0/l-one/grow-one"),
                        (3 - one - lead, "c2-center0/l-one/grow-zero"),
                    ],
                    fallback: "c2-center0/l-one/fallback",
                }
            }
            Case::Center1 if r[lead] == 1 => Plan {
                all_zero: "c2-center1/all-zero",
                options: vec![
                    (next, "c2-center1/l-one/grow-next"),
                    (prev, "c2-center1/l-one/grow-prev"),
                ],
                fallback: "c2-center1/l-one/fallback",
            },
            Case::Center1 => {
                let zero = if r[next] == 0 { next } else { prev };
                Plan {
                    all_zero: "c2-center1/all-zero",
                    options: vec![
                        (zero, "c2-center1/l-zero/grow-zero"),
                        (3 - zero - lead, "c2-center1/l-zero/grow-one"),
                    ],
                    fallback: "c2-center1/l-zero/fallback",
                }
            }
        };

        let outside = |j: usize| -> Vec<usize> {
            members.iter().copied().filter(|i| !groups[j].contains(i)).collect()
        };
        // the central part without its `g` points deepest towards corner j
        let centre_without = |j: usize, g: usize| -> Child<Self> {
            let mut order = by_scale(reg, j, pts, &groups[3]);
            let kept: Vec<usize> = order.drain(g.min(order.len())..).map(|e| e.1).collect();
            let mut e = [half; 3];
            e[j] = kept.first().map_or(0.0, |&i| depth(i)[j]);
            Child { region: inverted(reg, e), members: kept }
        };
        let grown = |j: usize, g: usize| -> Option<(Child<Self>, f64)> {
            let (region, picked, last) = grow(reg, j, half, pts, &outside(j), g)?;
            let mut mem = groups[j].clone();
            mem.extend(picked);
            Some((Child { region, members: mem }, last))
        };

        let all_zero = !plan.all_zero.is_empty() && (0..3).all(|k| groups[k].len() < 4);
        let (label, kids) = if all_zero {
            let j = (0..3).find(|&k| r[k] == 1).expect("a corner with residue 1");
            let (big, _) = grown(j, 1).ok_or(Error::GrowInfeasible { needed: 1, available: 0 })?;
            (plan.all_zero, vec![big, centre_without(j, 1)])
        } else {
            let mut chosen = None;
            for &(j, label) in &plan.options {
                if let Some((big, last)) = grown(j, g[j]) {
                    // the grown part must stay clear of every shrunk corner
                    if last < sigma - tl - EPS {
                        chosen = Some((j, big, label));
                        break;
                    }
                }
            }
            match chosen {
                Some((j, big, label)) => {
                    let other = 3 - j - lead;
                    let kids = vec![
                        Child { region: shrunk[lead].0, members: shrunk[lead].1.clone() },
                        Child { region: shrunk[other].0, members: shrunk[other].1.clone() },
                        big,
                        centre_without(j, g[j]),
                    ];
                    (label, kids)
                }
                None => {
                    let mut e = [tl; 3];
                    e[lead] = sigma - tl;
                    let aux = inverted(reg, e);
                    let kept = &shrunk[lead].1;
                    let aux_members: Vec<usize> = members
                        .iter()
                        .copied()
                        .filter(|&i| {
                            let d = depth(i);
                            (0..3).all(|k| k == lead || !groups[k].contains(&i))
                                && !kept.contains(&i)
                                && (0..3).all(|k| d[k] <= e[k])
                        })
                        .collect();
                    let mut kids: Vec<Child<Self>> = (0..3)
                        .filter(|&k| k != lead)
                        .map(|k| Child { region: reg.anchored(k, half), members: groups[k].clone() })
                        .collect();
                    kids.push(Child { region: shrunk[lead].0, members: kept.clone() });
                    kids.push(Child { region: aux, members: aux_members });
                    (plan.fallback, kids)
                }
            }
        };
        sv.hit(label);
        sv.check(reg, members, &kids, m + 1, label)?;
        Ok(kids)
    }
}
