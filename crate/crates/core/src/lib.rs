//! Combinatorial maps as pairs of corner rotations.

pub mod cli;
pub mod draw;
pub mod error;
pub mod knot;
pub mod map;
pub mod perm;

pub use error::{Error, Result};
pub use knot::{Color, Knot, KnotAnalysis};
pub use map::{CombMap, Degeneracy, EdgeKind, MapCensus, MapEdge};
pub use perm::{Corner, OrbitSet, Perm};
