//! Greedy strong matching: repeatedly keep the smallest surviving tree edge
//! and discard every tree edge whose representative meets it.

use crate::error::Result;
use crate::geom::{Kind, Point};
use crate::matching::{Disjointness, Pair, StrongMatching};
use crate::spanning::{mst, SpanningTree};

pub fn strong_match_greedy(points: &[Point], kind: Kind) -> Result<StrongMatching> {
    Ok(greedy_on_tree(&mst(points, kind)?))
}

pub fn greedy_on_tree(tree: &SpanningTree) -> StrongMatching {
    let mut alive = vec![true; tree.edges.len()];
    let mut pairs = Vec::new();
    // edges are key-sorted, so the first survivor is the smallest
    for k in 0..tree.edges.len() {
        if !alive[k] {
            continue;
        }
        let e = &tree.edges[k];
        pairs.push(Pair { i: e.key.i, j: e.key.j, rep: e.rep });
        for m in tree.influence_of(k) {
            alive[m] = false;
        }
    }
    StrongMatching { shape: tree.kind.into(), pairs, mode: Disjointness::Strict }
}
