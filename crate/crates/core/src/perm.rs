//! Permutations of corner labels `1..=m`.
//!
//! Corners are acted on from the right and products read left to right:
//! `x^(p·q) = (x^p)^q`. Every rotation of a map (vertex, face, edge, knot)
//! is a [`Perm`] under this single convention.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// A corner label. Labels start at 1.
pub type Corner = usize;

/// A bijection of `{1..m}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Perm {
    // images[x - 1] = x^p
    images: Vec<Corner>,
}

/// Canonical orbit decomposition of a permutation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitSet {
    /// Each orbit starts at its smallest label; orbits are sorted by that label.
    pub orbits: Vec<Vec<Corner>>,
    /// Orbit lengths, sorted descending.
    pub passport: Vec<usize>,
}

impl Perm {
    pub fn identity(m: usize) -> Perm {
        Perm {
            images: (1..=m).collect(),
        }
    }

    /// The standard fixed-point-free involution `(1 2)(3 4)…(m−1 m)`.
    pub fn standard_involution(m: usize) -> Result<Perm> {
        if !m.is_multiple_of(2) {
            return Err(Error::OddDegree(m));
        }
        let images = (1..=m).map(|x| if x % 2 == 1 { x + 1 } else { x - 1 }).collect();
        Ok(Perm { images })
    }

    /// Builds a permutation from its image table, `images[x - 1] = x^p`.
    pub fn from_images(images: Vec<Corner>) -> Result<Perm> {
        let m = images.len();
        let mut seen = vec![false; m];
        for &y in &images {
            if y == 0 || y > m {
                return Err(Error::LabelRange { label: y, degree: m });
            }
            if std::mem::replace(&mut seen[y - 1], true) {
                return Err(Error::NotBijection(y));
            }
        }
        Ok(Perm { images })
    }

    /// Builds a permutation of degree `m` from disjoint cycles.
    pub fn from_cycles(m: usize, cycles: &[Vec<Corner>]) -> Result<Perm> {
        let mut images: Vec<Corner> = (1..=m).collect();
        let mut seen = vec![false; m];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                if x == 0 || x > m {
                    return Err(Error::LabelRange { label: x, degree: m });
                }
                if std::mem::replace(&mut seen[x - 1], true) {
                    return Err(Error::NotBijection(x));
                }
                images[x - 1] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Perm { images })
    }

    /// Takes `first` on corners where `select` is true and `second` elsewhere.
    ///
    /// The caller is responsible for the result being a bijection; this is
    /// checked and reported as [`Error::NotBijection`].
    pub fn piecewise(select: &[bool], first: &Perm, second: &Perm) -> Result<Perm> {
        check_degrees(first, second)?;
        if select.len() != first.degree() {
            return Err(Error::DegreeMismatch {
                left: select.len(),
                right: first.degree(),
            });
        }
        let images = (1..=first.degree())
            .map(|x| {
                if select[x - 1] {
                    first.apply(x)
                } else {
                    second.apply(x)
                }
            })
            .collect();
        Perm::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// `x^p`. Panics if `x` is not in `1..=m`.
    pub fn apply(&self, x: Corner) -> Corner {
        self.images[x - 1]
    }

    pub fn images(&self) -> &[Corner] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &y)| y == i + 1)
    }

    /// Left-to-right product `self·other`.
    pub fn compose(&self, other: &Perm) -> Result<Perm> {
        check_degrees(self, other)?;
        Ok(Perm {
            images: self.images.iter().map(|&y| other.apply(y)).collect(),
        })
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0; self.degree()];
        for (i, &y) in self.images.iter().enumerate() {
            images[y - 1] = i + 1;
        }
        Perm { images }
    }

    /// `t⁻¹·self·t`: the cycles of `self` with every label `x` replaced by `x^t`.
    pub fn conjugate_by(&self, t: &Perm) -> Result<Perm> {
        check_degrees(self, t)?;
        let mut images = vec![0; self.degree()];
        for x in 1..=self.degree() {
            images[t.apply(x) - 1] = t.apply(self.apply(x));
        }
        Ok(Perm { images })
    }

    /// Orbits, each starting at its smallest label, sorted by that label.
    pub fn orbits(&self) -> Vec<Vec<Corner>> {
        let m = self.degree();
        let mut seen = vec![false; m];
        let mut orbits = Vec::new();
        for start in 1..=m {
            if seen[start - 1] {
                continue;
            }
            let mut orbit = Vec::new();
            let mut x = start;
            while !seen[x - 1] {
                seen[x - 1] = true;
                orbit.push(x);
                x = self.apply(x);
            }
            orbits.push(orbit);
        }
        orbits
    }

    /// Number of orbits, fixed points included.
    pub fn orbit_count(&self) -> usize {
        let m = self.degree();
        let mut seen = vec![false; m];
        let mut count = 0;
        for start in 1..=m {
            if seen[start - 1] {
                continue;
            }
            count += 1;
            let mut x = start;
            while !seen[x - 1] {
                seen[x - 1] = true;
                x = self.apply(x);
            }
        }
        count
    }

    pub fn passport(&self) -> Vec<usize> {
        let mut lengths: Vec<usize> = self.orbits().iter().map(Vec::len).collect();
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        lengths
    }

    pub fn orbits_and_passport(&self) -> OrbitSet {
        let orbits = self.orbits();
        let mut passport: Vec<usize> = orbits.iter().map(Vec::len).collect();
        passport.sort_unstable_by(|a, b| b.cmp(a));
        OrbitSet { orbits, passport }
    }

    /// True iff every orbit has length exactly two.
    pub fn is_fpf_involution(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &y)| y != i + 1 && self.apply(y) == i + 1)
    }

    /// The orbit through `x`, starting at `x`.
    pub fn orbit_of(&self, x: Corner) -> Vec<Corner> {
        let mut orbit = vec![x];
        let mut y = self.apply(x);
        while y != x {
            orbit.push(y);
            y = self.apply(y);
        }
        orbit
    }

    /// Uniformly random permutation from a seeded back-to-front Fisher–Yates shuffle.
    pub fn random(m: usize, seed: u64) -> Perm {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut images: Vec<Corner> = (1..=m).collect();
        for i in (1..m).rev() {
            let j = rng.random_range(0..=i);
            images.swap(i, j);
        }
        Perm { images }
    }

    /// Parses cycle notation such as `(1 8 7 5 3)(2 6 4)` or `id`.
    ///
    /// Without a declared degree the degree is the largest label mentioned.
    pub fn parse_cycles(text: &str, declared_degree: Option<usize>) -> Result<Perm> {
        let cycles = parse_cycle_list(text)?;
        let max_label = cycles.iter().flatten().copied().max().unwrap_or(0);
        let degree = match declared_degree {
            Some(d) if max_label > d => {
                return Err(Error::LabelRange {
                    label: max_label,
                    degree: d,
                })
            }
            Some(d) => d,
            None => max_label,
        };
        Perm::from_cycles(degree, &cycles)
    }

    /// Canonical cycle text: fixed points omitted, identity written `id`.
    pub fn format_cycles(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for orbit in self.orbits().into_iter().filter(|o| o.len() > 1) {
            any = true;
            f.write_str("(")?;
            for (i, x) in orbit.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str(")")?;
        }
        if !any {
            f.write_str("id")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm[{}]{}", self.degree(), self)
    }
}

impl FromStr for Perm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Perm> {
        Perm::parse_cycles(s, None)
    }
}

/// Left-to-right product. Panics on a degree mismatch; use [`Perm::compose`]
/// when the degrees are not already known to agree.
impl Mul for &Perm {
    type Output = Perm;

    fn mul(self, rhs: &Perm) -> Perm {
        self.compose(rhs).expect("permutation degrees must agree")
    }
}

fn check_degrees(a: &Perm, b: &Perm) -> Result<()> {
    if a.degree() == b.degree() {
        Ok(())
    } else {
        Err(Error::DegreeMismatch {
            left: a.degree(),
            right: b.degree(),
        })
    }
}

fn parse_cycle_list(text: &str) -> Result<Vec<Vec<Corner>>> {
    let trimmed = text.trim();
    if trimmed == "id" {
        return Ok(Vec::new());
    }
    if trimmed.is_empty() {
        return Err(Error::Parse("empty permutation text".into()));
    }
    let bytes = trimmed.as_bytes();
    let mut pos = 0;
    let mut cycles = Vec::new();
    while pos < bytes.len() {
        match bytes[pos] {
            b' ' | b'\t' => pos += 1,
            b'(' => {
                let (cycle, next) = parse_cycle(bytes, pos + 1)?;
                cycles.push(cycle);
                pos = next;
            }
            other => {
                return Err(Error::Parse(format!(
                    "unexpected '{}' at offset {pos}",
                    other as char
                )))
            }
        }
    }
    Ok(cycles)
}

// Parses the body of one cycle starting just after '('; returns the labels and
// the offset after ')'.
fn parse_cycle(bytes: &[u8], mut pos: usize) -> Result<(Vec<Corner>, usize)> {
    let mut labels = Vec::new();
    skip_spaces(bytes, &mut pos);
    loop {
        let start = pos;
        while pos < bytes.len() && bytes[pos].is_ascii_digit() {
            pos += 1;
        }
        if start == pos {
            return Err(Error::Parse(format!("expected a label at offset {start}")));
        }
        let digits = std::str::from_utf8(&bytes[start..pos]).expect("ascii digits");
        let label: Corner = digits
            .parse()
            .map_err(|_| Error::Parse(format!("label {digits} is too large")))?;
        if label == 0 {
            return Err(Error::Parse("labels start at 1".into()));
        }
        labels.push(label);

        let sep_start = pos;
        skip_spaces(bytes, &mut pos);
        let mut commas = 0;
        if pos < bytes.len() && bytes[pos] == b',' {
            commas += 1;
            pos += 1;
            skip_spaces(bytes, &mut pos);
        }
        match bytes.get(pos) {
            Some(b')') if commas == 0 => return Ok((labels, pos + 1)),
            Some(b')') => return Err(Error::Parse(format!("trailing comma at offset {pos}"))),
            Some(_) if pos == sep_start => {
                return Err(Error::Parse(format!("expected a separator at offset {pos}")))
            }
            Some(_) => {}
            None => return Err(Error::Parse("unterminated cycle".into())),
        }
    }
}

fn skip_spaces(bytes: &[u8], pos: &mut usize) {
    while *pos < bytes.len() && (bytes[*pos] == b' ' || bytes[*pos] == b'\t') {
        *pos += 1;
    }
}
