//! Minimum spanning trees of the complete scale-weighted graph, and the
//! influence quantities defined on them.

use std::cmp::Ordering;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::{intersects, smallest_homothet, Homothet, Kind, Point};

/// Total order on edges: weight first, then the sorted endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EdgeKey {
    pub weight: f64,
    pub i: usize,
    pub j: usize,
}

impl EdgeKey {
    pub fn new(weight: f64, a: usize, b: usize) -> Self {
        Self { weight, i: a.min(b), j: a.max(b) }
    }
}

impl Eq for EdgeKey {}

impl PartialOrd for EdgeKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for EdgeKey {
    fn cmp(&self, o: &Self) -> Ordering {
        self.weight
            .total_cmp(&o.weight)
            .then(self.i.cmp(&o.i))
            .then(self.j.cmp(&o.j))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TreeEdge {
    pub key: EdgeKey,
    pub rep: Homothet,
}

impl TreeEdge {
    pub fn ends(&self) -> (usize, usize) {
        (self.key.i, self.key.j)
    }
}

/// Edges are stored in increasing key order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpanningTree {
    pub kind: Kind,
    pub n: usize,
    pub edges: Vec<TreeEdge>,
}

/// Prim's algorithm on the complete graph, `O(n^2)`. Coincident points are
/// rejected.
pub fn mst(points: &[Point], kind: Kind) -> Result<SpanningTree> {
    let n = points.len();
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    if n > 1 {
        let mut in_tree = vec![false; n];
        let mut best: Vec<Option<(EdgeKey, Homothet)>> = vec![None; n];
        let mut cur = 0;
        in_tree[0] = true;
        for _ in 1..n {
            for v in 0..n {
                if in_tree[v] {
                    continue;
                }
                let h = smallest_homothet(points[cur], points[v], kind)
                    .map_err(|_| Error::DegeneratePair(points[v].x, points[v].y))?;
                let key = EdgeKey::new(h.scale(), cur, v);
                if best[v].as_ref().is_none_or(|(b, _)| key < *b) {
                    best[v] = Some((key, h));
                }
            }
            let next = (0..n)
                .filter(|&v| !in_tree[v])
                .min_by(|&a, &b| best[a].as_ref().unwrap().0.cmp(&best[b].as_ref().unwrap().0))
                .expect("a vertex outside the tree");
            let (key, rep) = best[next].take().unwrap();
            edges.push(TreeEdge { key, rep });
            in_tree[next] = true;
            cur = next;
        }
    }
    edges.sort_by_key(|e| e.key);
    Ok(SpanningTree { kind, n, edges })
}

impl SpanningTree {
    pub fn position(&self, a: usize, b: usize) -> Result<usize> {
        let (i, j) = (a.min(b), a.max(b));
        self.edges
            .iter()
            .position(|e| e.ends() == (i, j))
            .ok_or(Error::NotInTree(a, b))
    }

    /// Indices (into `edges`) of `Inf(e)`: the edges at or above `e` in the
    /// key order whose representatives meet that of `e`. Includes `e`.
    pub fn influence_set(&self, a: usize, b: usize) -> Result<Vec<usize>> {
        let pos = self.position(a, b)?;
        Ok(self.influence_of(pos))
    }

    pub(crate) fn influence_of(&self, pos: usize) -> Vec<usize> {
        let rep = &self.edges[pos].rep;
        (pos..self.edges.len())
            .filter(|&k| intersects(&self.edges[k].rep, rep).unwrap_or(false))
            .collect()
    }

    /// `Inf(T)` together with the first edge (in key order) attaining it.
    pub fn influence_number(&self) -> Result<(usize, (usize, usize))> {
        let mut best: Option<(usize, usize)> = None;
        for k in 0..self.edges.len() {
            let c = self.influence_of(k).len();
            if best.is_none_or(|(b, _)| c > b) {
                best = Some((c, k));
            }
        }
        let (c, k) = best.ok_or(Error::EmptyTree)?;
        Ok((c, self.edges[k].ends()))
    }

    /// `dg(u) + dg(v) - 1` with degrees counted among edges at or above `e`.
    pub fn edge_degree(&self, a: usize, b: usize) -> Result<usize> {
        let pos = self.position(a, b)?;
        Ok(self.degree_at(pos))
    }

    fn degree_at(&self, pos: usize) -> usize {
        let (u, v) = self.edges[pos].ends();
        let deg = |x: usize| {
            self.edges[pos..]
                .iter()
                .filter(|e| e.key.i == x || e.key.j == x)
                .count()
        };
        deg(u) + deg(v) - 1
    }

    /// Edges whose key is not larger than that of any adjacent tree edge.
    pub fn minimal_edges(&self) -> Vec<(usize, usize)> {
        let mut low: Vec<Option<EdgeKey>> = vec![None; self.n];
        for e in &self.edges {
            for x in [e.key.i, e.key.j] {
                if low[x].is_none_or(|k| e.key < k) {
                    low[x] = Some(e.key);
                }
            }
        }
        self.edges
            .iter()
            .filter(|e| low[e.key.i] == Some(e.key) && low[e.key.j] == Some(e.key))
            .map(TreeEdge::ends)
            .collect()
    }

    /// Largest edge degree among minimal edges; 0 for an empty tree.
    pub fn max_minimal_edge_degree(&self) -> usize {
        self.minimal_edges()
            .into_iter()
            .map(|(a, b)| self.edge_degree(a, b).unwrap_or(0))
            .max()
            .unwrap_or(0)
    }

    pub fn diagnostics(&self) -> Diagnostics {
        let inf = self.influence_number().map(|r| r.0).unwrap_or(0);
        let deg = self.max_minimal_edge_degree();
        Diagnostics { influence_number: inf, max_minimal_degree: deg, conjecture_gap: inf > deg }
    }
}

/// Influence number against the largest minimal-edge degree. The
/// conjectured relation between the two is only recorded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Diagnostics {
    pub influence_number: usize,
    pub max_minimal_degree: usize,
    /// `influence_number > max_minimal_degree`.
    pub conjecture_gap: bool,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn collinear() -> Vec<Point> {
        vec![Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(3.0, 0.0)]
    }

    #[test]
    fn collinear_disk_tree() {
        let t = mst(&collinear(), Kind::Disk).unwrap();
        let ends: Vec<_> = t.edges.iter().map(|e| (e.ends(), e.key.weight)).collect();
        assert_eq!(ends, vec![((0, 1), 0.5), ((1, 2), 1.0)]);
        assert_eq!(t.influence_set(0, 1).unwrap(), vec![0, 1]);
        assert_eq!(t.influence_set(1, 2).unwrap(), vec![1]);
        assert_eq!(t.influence_number().unwrap(), (2, (0, 1)));
        assert_eq!(t.edge_degree(0, 1).unwrap(), 2);
        assert!(matches!(t.influence_set(0, 2), Err(Error::NotInTree(0, 2))));
    }

    #[test]
    fn trivial_trees() {
        let t = mst(&[Point::new(0.0, 0.0)], Kind::Disk).unwrap();
        assert!(t.edges.is_empty());
        assert!(matches!(t.influence_number(), Err(Error::EmptyTree)));
        let t = mst(&[Point::new(0.0, 0.0), Point::new(1.0, 2.0)], Kind::Square).unwrap();
        assert_eq!(t.influence_number().unwrap().0, 1);
    }

    #[test]
    fn star_with_equal_weights() {
        let p = [Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(-1.0, 0.0)];
        let t = mst(&p, Kind::Disk).unwrap();
        assert_eq!(t.minimal_edges(), vec![(0, 1)]);
    }

    #[test]
    fn increasing_path_has_one_minimal_edge() {
        let p: Vec<Point> =
            [0.0, 1.0, 3.0, 6.0, 10.0].iter().map(|&x| Point::new(x, 0.0)).collect();
        let t = mst(&p, Kind::Disk).unwrap();
        assert_eq!(t.minimal_edges(), vec![(0, 1)]);
    }
}
