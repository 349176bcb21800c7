use serde::{Deserialize, Serialize};

use crate::geom::{Homothet, Shape};

/// How strongly the representatives of a matching are separated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Disjointness {
    /// No two representatives share a point.
    Strict,
    /// Representatives may touch along their boundaries.
    Interior,
}

impl Disjointness {
    pub fn name(self) -> &'static str {
        match self {
            Disjointness::Strict => "strict",
            Disjointness::Interior => "interior",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "strict" => Some(Disjointness::Strict),
            "interior" => Some(Disjointness::Interior),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Pair {
    pub i: usize,
    pub j: usize,
    pub rep: Homothet,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StrongMatching {
    pub shape: Shape,
    pub pairs: Vec<Pair>,
    pub mode: Disjointness,
}

impl StrongMatching {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// Matching algorithm.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Engine {
    Greedy,
    Recursive,
}

impl Engine {
    pub fn name(self) -> &'static str {
        match self {
            Engine::Greedy => "greedy",
            Engine::Recursive => "recursive",
        }
    }
}
