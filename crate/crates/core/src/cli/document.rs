//! The line-oriented map file format.
//!
//! ```text
//! # comment lines start with '#'
//! name <string>            (optional)
//! degree <integer>         (optional)
//! P <cycles|id>
//! Q <cycles|id|normalized>
//! ```
//!
//! Labels printed with an overbar in the literature (0̄, 1̄, 2̄, …) are written
//! as 10, 11, 12, … here.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::map::CombMap;
use crate::perm::Perm;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FaceSpec {
    /// `Q = P·π` with `π = (1 2)(3 4)…`.
    Normalized,
    Explicit(Perm),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapDocument {
    pub name: Option<String>,
    pub declared_degree: Option<usize>,
    pub p: Perm,
    pub q: FaceSpec,
    pub map: CombMap,
}

impl MapDocument {
    pub fn from_map(name: Option<String>, map: CombMap, normalized_shorthand: bool) -> MapDocument {
        let q = if normalized_shorthand && map.is_normalized() {
            FaceSpec::Normalized
        } else {
            FaceSpec::Explicit(map.q().clone())
        };
        MapDocument {
            name,
            declared_degree: Some(map.degree()),
            p: map.p().clone(),
            q,
            map,
        }
    }

    pub fn parse(text: &str) -> Result<MapDocument> {
        let mut name = None;
        let mut degree = None;
        let mut p_text: Option<(usize, &str)> = None;
        let mut q_text: Option<(usize, &str)> = None;

        for (index, raw) in text.lines().enumerate() {
            let line_no = index + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (keyword, rest) = match line.split_once(char::is_whitespace) {
                Some((k, r)) => (k, r.trim()),
                None => (line, ""),
            };
            let duplicate = || Error::Parse(format!("line {line_no}: duplicate '{keyword}'"));
            if rest.is_empty() {
                return Err(Error::Parse(format!("line {line_no}: '{keyword}' needs a value")));
            }
            match keyword {
                "name" => {
                    if name.replace(rest.to_string()).is_some() {
                        return Err(duplicate());
                    }
                }
                "degree" => {
                    let value = rest
                        .parse::<usize>()
                        .map_err(|_| Error::Parse(format!("line {line_no}: bad degree '{rest}'")))?;
                    if degree.replace(value).is_some() {
                        return Err(duplicate());
                    }
                }
                "P" => {
                    if p_text.replace((line_no, rest)).is_some() {
                        return Err(duplicate());
                    }
                }
                "Q" => {
                    if q_text.replace((line_no, rest)).is_some() {
                        return Err(duplicate());
                    }
                }
                other => return Err(Error::Parse(format!("line {line_no}: unknown keyword '{other}'"))),
            }
        }

        let (p_line, p_text) = p_text.ok_or_else(|| Error::Parse("missing 'P' line".into()))?;
        let (q_line, q_text) = q_text.ok_or_else(|| Error::Parse("missing 'Q' line".into()))?;
        let normalized = q_text == "normalized";

        // without a declared degree, the largest label in either rotation wins
        let resolved = match degree {
            Some(d) => d,
            None => {
                let p_max = parse_at(p_line, p_text, None)?.degree();
                let q_max = if normalized {
                    0
                } else {
                    parse_at(q_line, q_text, None)?.degree()
                };
                p_max.max(q_max)
            }
        };
        let p = parse_at(p_line, p_text, Some(resolved))?;
        let (q, map) = if normalized {
            let map = CombMap::from_vertex_rotation(p.clone())?;
            (FaceSpec::Normalized, map)
        } else {
            let q = parse_at(q_line, q_text, Some(resolved))?;
            let map = CombMap::new(p.clone(), q.clone())?;
            (FaceSpec::Explicit(q), map)
        };
        Ok(MapDocument {
            name,
            declared_degree: degree,
            p,
            q,
            map,
        })
    }

    /// Canonical text: optional name, degree, then both rotations.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(name) = &self.name {
            let _ = writeln!(out, "name {name}");
        }
        let _ = writeln!(out, "degree {}", self.map.degree());
        let _ = writeln!(out, "P {}", self.p);
        match &self.q {
            FaceSpec::Normalized => out.push_str("Q normalized\n"),
            FaceSpec::Explicit(q) => {
                let _ = writeln!(out, "Q {q}");
            }
        }
        out
    }

    pub fn q_text(&self) -> String {
        match &self.q {
            FaceSpec::Normalized => "normalized".to_string(),
            FaceSpec::Explicit(q) => q.to_string(),
        }
    }
}

fn parse_at(line_no: usize, text: &str, degree: Option<usize>) -> Result<Perm> {
    Perm::parse_cycles(text, degree).map_err(|e| match e {
        Error::Parse(msg) => Error::Parse(format!("line {line_no}: {msg}")),
        other => other,
    })
}
