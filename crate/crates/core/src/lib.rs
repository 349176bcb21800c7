//! Shape-Delaunay graphs and strong matchings of planar point sets.
//!
//! A matching of a point set is *strong* for a convex shape when every
//! matched pair can be represented by a homothet of the shape that has the
//! pair on its boundary, no other point inside, and no point in common with
//! the homothets of the other pairs.

pub mod cli;
pub mod error;
pub mod exact;
pub mod geom;
pub mod graphs;
pub mod greedy;
pub mod io;
pub mod matching;
pub mod recursive;
pub mod spanning;
pub mod svg;
pub mod verify;

pub use error::{Error, Result};
