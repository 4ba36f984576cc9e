use thiserror::Error;

use crate::perm::Corner;

/// Everything that can go wrong while building or analysing a map.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("not a bijection: label {0} appears more than once")]
    NotBijection(Corner),

    #[error("label {label} exceeds degree {degree}")]
    LabelRange { label: Corner, degree: usize },

    #[error("vertex rotation has odd degree {0}; a normalized map needs an even number of corners")]
    OddDegree(usize),

    #[error("map is not graphical: edge rotation orbit {} has length {}", fmt_orbit(.orbit), .orbit.len())]
    NotGraphical { orbit: Vec<Corner> },

    #[error("map is not normalized")]
    NotNormalized,

    #[error("orientation has {got} bits but the knot has {expected} orbits")]
    OrientLen { expected: usize, got: usize },

    #[error("knot does not belong to the map (corner {0})")]
    KnotMismatch(Corner),

    #[error("P·π₂ does not preserve the knot coloring at corner {0}")]
    Factorization(Corner),

    #[error("no such vertex: {index} (drawing has {count})")]
    NoSuchVertex { index: usize, count: usize },

    #[error("invalid layout: {0}")]
    InvalidLayout(String),
}

pub type Result<T> = std::result::Result<T, Error>;

fn fmt_orbit(orbit: &[Corner]) -> String {
    let labels: Vec<String> = orbit.iter().map(|c| c.to_string()).collect();
    format!("({})", labels.join(" "))
}
