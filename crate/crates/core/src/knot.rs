//! Zig-zag knots and the decompositions they induce on a graphical map.
//!
//! A knot `μ` alternates the two edge rotations: it is `π` on one half of
//! the corners (`C1`) and `ρ` on the other (`C2`). Fixing a knot splits `π`
//! into cut edges `π₁` and cycle edges `π₂`, factors `P = γ₁·γ₂·π₂` with
//! `γ₁`, `γ₂` acting inside `C1`, `C2`, and defines the knotting
//! `α = μ⁻¹·P`, its symmetric form `A = α·π₁`, the involution `δ = π^γ₁` and
//! the edge structuring knot `ε = {C1: π; C2: δ}`.

use crate::error::{Error, Result};
use crate::map::CombMap;
use crate::perm::{Corner, Perm};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Color {
    C1,
    C2,
}

/// A knot together with its corner coloring.
///
/// Two knots with the same `μ` may differ in coloring (a flipped 2-orbit
/// keeps `μ` but swaps colors), so the coloring is part of the value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Knot {
    mu: Perm,
    in_c1: Vec<bool>,
    // one C1 corner per orbit; the walk starts there and applies π first
    orbit_starts: Vec<Corner>,
}

impl Knot {
    /// The canonical knot: each orbit starts at the smallest uncovered corner,
    /// which goes to `C1`, and the walk applies `π` first.
    pub fn zigzag(map: &CombMap) -> Result<Knot> {
        map.require_graphical()?;
        let m = map.degree();
        let (pi, rho) = (map.pi(), map.rho());
        let mut images = vec![0; m];
        let mut in_c1 = vec![false; m];
        let mut covered = vec![false; m];
        let mut orbit_starts = Vec::new();
        for start in 1..=m {
            if covered[start - 1] {
                continue;
            }
            orbit_starts.push(start);
            let mut x = start;
            loop {
                let y = pi.apply(x);
                let z = rho.apply(y);
                in_c1[x - 1] = true;
                covered[x - 1] = true;
                covered[y - 1] = true;
                images[x - 1] = y;
                images[y - 1] = z;
                x = z;
                if x == start {
                    break;
                }
            }
        }
        Ok(Knot {
            mu: Perm::from_images(images)?,
            in_c1,
            orbit_starts,
        })
    }

    /// Reverses the orbits whose bit is set. A reversed orbit is walked from
    /// its former second corner, so `μ` is inverted on it and its colors swap.
    pub fn reorient(&self, flips: &[bool]) -> Result<Knot> {
        if flips.len() != self.orbit_starts.len() {
            return Err(Error::OrientLen {
                expected: self.orbit_starts.len(),
                got: flips.len(),
            });
        }
        let mut images = self.mu.images().to_vec();
        let mut in_c1 = self.in_c1.clone();
        let mut orbit_starts = self.orbit_starts.clone();
        let flipped = self.orbits().into_iter().zip(flips).zip(orbit_starts.iter_mut());
        for ((orbit, _), start) in flipped.filter(|((_, &flip), _)| flip) {
            // orbits alternate colors, so every orbit has length >= 2
            let n = orbit.len();
            for (k, &x) in orbit.iter().enumerate() {
                images[x - 1] = orbit[(k + n - 1) % n];
                in_c1[x - 1] = !in_c1[x - 1];
            }
            *start = orbit[1];
        }
        Ok(Knot {
            mu: Perm::from_images(images)?,
            in_c1,
            orbit_starts,
        })
    }

    pub fn mu(&self) -> &Perm {
        &self.mu
    }

    pub fn degree(&self) -> usize {
        self.mu.degree()
    }

    pub fn color(&self, x: Corner) -> Color {
        if self.in_c1[x - 1] {
            Color::C1
        } else {
            Color::C2
        }
    }

    /// Membership in `C1`, indexed by `corner - 1`.
    pub fn c1_mask(&self) -> &[bool] {
        &self.in_c1
    }

    pub fn c1(&self) -> Vec<Corner> {
        (1..=self.degree()).filter(|&x| self.in_c1[x - 1]).collect()
    }

    pub fn c2(&self) -> Vec<Corner> {
        (1..=self.degree()).filter(|&x| !self.in_c1[x - 1]).collect()
    }

    pub fn orbit_starts(&self) -> &[Corner] {
        &self.orbit_starts
    }

    /// Orbits of `μ` in walk order, each starting at its recorded start.
    pub fn orbits(&self) -> Vec<Vec<Corner>> {
        self.orbit_starts.iter().map(|&s| self.mu.orbit_of(s)).collect()
    }

    pub fn orbit_count(&self) -> usize {
        self.orbit_starts.len()
    }

    /// Ensures `μ` is `π` on `C1` and `ρ` on `C2`.
    pub fn check_belongs_to(&self, map: &CombMap) -> Result<()> {
        if self.degree() != map.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: map.degree(),
            });
        }
        for x in 1..=self.degree() {
            let expected = match self.color(x) {
                Color::C1 => map.pi().apply(x),
                Color::C2 => map.rho().apply(x),
            };
            if self.mu.apply(x) != expected {
                return Err(Error::KnotMismatch(x));
            }
        }
        Ok(())
    }

    /// Renames corner `x` to `x^t` throughout.
    pub fn relabel(&self, t: &Perm) -> Result<Knot> {
        let mu = self.mu.conjugate_by(t)?;
        let mut in_c1 = vec![false; self.degree()];
        for x in 1..=self.degree() {
            in_c1[t.apply(x) - 1] = self.in_c1[x - 1];
        }
        Ok(Knot {
            mu,
            in_c1,
            orbit_starts: self.orbit_starts.iter().map(|&s| t.apply(s)).collect(),
        })
    }
}

/// Splits `π` into cut edges `π₁` and cycle edges `π₂`.
///
/// An edge `⟨a, b, c, d⟩` is a cut edge when `a` and `b` share a color and a
/// cycle edge when `a` and `d` do; exactly one of the two always holds.
pub fn classify_edges(map: &CombMap, knot: &Knot) -> Result<(Perm, Perm)> {
    knot.check_belongs_to(map)?;
    let m = map.degree();
    let mut cut: Vec<Corner> = (1..=m).collect();
    let mut cycle = cut.clone();
    for edge in map.edges()? {
        let target = if knot.color(edge.a) == knot.color(edge.b) {
            &mut cut
        } else {
            &mut cycle
        };
        target[edge.a - 1] = edge.c;
        target[edge.c - 1] = edge.a;
    }
    Ok((Perm::from_images(cut)?, Perm::from_images(cycle)?))
}

/// `γ₁`, `γ₂`: the restrictions of `P·π₂` to `C1` and `C2`.
///
/// Fails with [`Error::Factorization`] naming the first corner whose color
/// `P·π₂` does not preserve.
pub fn gammas(map: &CombMap, knot: &Knot) -> Result<(Perm, Perm)> {
    let (_, cycle) = classify_edges(map, knot)?;
    let kept = map.p().compose(&cycle)?;
    if let Some(x) = (1..=map.degree()).find(|&x| knot.color(kept.apply(x)) != knot.color(x)) {
        return Err(Error::Factorization(x));
    }
    let id = Perm::identity(map.degree());
    let gamma1 = Perm::piecewise(knot.c1_mask(), &kept, &id)?;
    let gamma2 = Perm::piecewise(knot.c1_mask(), &id, &kept)?;
    Ok((gamma1, gamma2))
}

/// Knotting `α = μ⁻¹·P`, so that `P = μ·α`.
pub fn knotting(map: &CombMap, knot: &Knot) -> Result<Perm> {
    knot.check_belongs_to(map)?;
    knot.mu().inverse().compose(map.p())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeStructure {
    /// `δ = π^γ₁ = γ₁⁻¹·π·γ₁`
    pub delta: Perm,
    /// `ε = {C1: π; C2: δ}`
    pub epsilon: Perm,
    pub epsilon_squared: Perm,
    /// `A = α·π₁`
    pub symmetric_form: Perm,
    pub passport_match: bool,
    pub exact_match: bool,
}

pub fn edge_structuring(map: &CombMap, knot: &Knot) -> Result<EdgeStructure> {
    let (cut, _) = classify_edges(map, knot)?;
    let (gamma1, _) = gammas(map, knot)?;
    let alpha = knotting(map, knot)?;
    let delta = map.pi().conjugate_by(&gamma1)?;
    let epsilon = Perm::piecewise(knot.c1_mask(), map.pi(), &delta)?;
    let epsilon_squared = epsilon.compose(&epsilon)?;
    let symmetric_form = alpha.compose(&cut)?;
    Ok(EdgeStructure {
        passport_match: epsilon_squared.passport() == symmetric_form.passport(),
        exact_match: epsilon_squared == symmetric_form,
        delta,
        epsilon,
        epsilon_squared,
        symmetric_form,
    })
}

/// One evaluated identity. Exploratory checks are reported but do not
/// count towards [`IdentityReport::all_pass`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub passed: bool,
    pub witness: Option<Corner>,
    pub exploratory: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IdentityReport {
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.passed || c.exploratory)
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityCheck> {
        self.checks.iter().filter(|c| !c.passed && !c.exploratory)
    }

    fn push(&mut self, name: &'static str, witness: Option<Corner>) {
        self.push_with(name, witness, false);
    }

    fn push_with(&mut self, name: &'static str, witness: Option<Corner>, exploratory: bool) {
        self.checks.push(IdentityCheck {
            name,
            passed: witness.is_none(),
            witness,
            exploratory,
        });
    }
}

fn first_disagreement(
    corners: impl IntoIterator<Item = Corner>,
    left: &Perm,
    right: &Perm,
) -> Option<Corner> {
    corners.into_iter().find(|&x| left.apply(x) != right.apply(x))
}

/// Evaluates the identities tying `μ` to the factorization of `P`.
pub fn knot_identities(map: &CombMap, knot: &Knot) -> Result<IdentityReport> {
    let (cut, cycle) = classify_edges(map, knot)?;
    let (gamma1, gamma2) = gammas(map, knot)?;
    let m = map.degree();
    let all = || 1..=m;
    let mut report = IdentityReport::default();

    let product = &(&gamma1 * &gamma2) * &cycle;
    report.push("P = γ₁·γ₂·π₂", first_disagreement(all(), map.p(), &product));

    let formula = &(&gamma2 * map.pi()) * &gamma1.inverse();
    report.push("μ = γ₂·π·γ₁⁻¹", first_disagreement(all(), knot.mu(), &formula));

    let swap = map.p().compose(&cut)?;
    report.push(
        "P·π₁ changes color",
        all().find(|&x| knot.color(swap.apply(x)) == knot.color(x)),
    );
    let keep = map.p().compose(&cycle)?;
    report.push(
        "P·π₂ keeps color",
        all().find(|&x| knot.color(keep.apply(x)) != knot.color(x)),
    );

    report.push(
        "μ = γ₂·π·γ₁⁻¹ on C2",
        first_disagreement(knot.c2(), knot.mu(), &formula),
    );
    let mirrored = &(&gamma1 * map.rho()) * &gamma2.inverse();
    report.push_with(
        "μ = γ₁·ρ·γ₂⁻¹ on C1",
        first_disagreement(knot.c1(), knot.mu(), &mirrored),
        true,
    );
    Ok(report)
}

/// Everything derived from a map and one of its knots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnotAnalysis {
    pub pi1: Perm,
    pub pi2: Perm,
    pub gamma1: Perm,
    pub gamma2: Perm,
    pub alpha: Perm,
    pub structure: EdgeStructure,
    /// `None` when the map is not normalized.
    pub partially_normalized: Option<bool>,
    pub report: IdentityReport,
}

pub fn analyze(map: &CombMap, knot: &Knot) -> Result<KnotAnalysis> {
    let (pi1, pi2) = classify_edges(map, knot)?;
    let (gamma1, gamma2) = gammas(map, knot)?;
    let alpha = knotting(map, knot)?;
    let structure = edge_structuring(map, knot)?;
    let mut report = knot_identities(map, knot)?;

    let self_conj = alpha.conjugate_by(map.pi())?;
    report.push(
        "α^π = α",
        first_disagreement(1..=map.degree(), &alpha, &self_conj),
    );
    report.push(
        "δ is a fixed-point-free involution",
        (1..=map.degree()).find(|&x| {
            let y = structure.delta.apply(x);
            y == x || structure.delta.apply(y) != x
        }),
    );
    report.push(
        "passport(ε²) = passport(A)",
        (!structure.passport_match).then_some(0),
    );
    report.push_with(
        "ε² = A",
        first_disagreement(
            1..=map.degree(),
            &structure.epsilon_squared,
            &structure.symmetric_form,
        ),
        true,
    );

    let partially_normalized = match is_partially_normalized(map, knot) {
        Ok(flag) => Some(flag),
        Err(Error::NotNormalized) => None,
        Err(e) => return Err(e),
    };
    Ok(KnotAnalysis {
        pi1,
        pi2,
        gamma1,
        gamma2,
        alpha,
        structure,
        partially_normalized,
        report,
    })
}

/// True iff `C1` is exactly the odd corners or exactly the even corners of a
/// normalized map, i.e. every edge enters the knot through the same end.
pub fn is_partially_normalized(map: &CombMap, knot: &Knot) -> Result<bool> {
    if !map.is_normalized() {
        return Err(Error::NotNormalized);
    }
    if knot.degree() != map.degree() {
        return Err(Error::DegreeMismatch {
            left: knot.degree(),
            right: map.degree(),
        });
    }
    let odd_in_c1 = |x: Corner| (x % 2 == 1) == knot.c1_mask()[x - 1];
    let all_odd = (1..=map.degree()).all(odd_in_c1);
    let all_even = (1..=map.degree()).all(|x| !odd_in_c1(x));
    Ok(all_odd || all_even)
}

/// Relabels corners along the knot so that `π` is standard and `C1` is the
/// odd corners.
///
/// Orbits are walked in knot order; each `C1` corner met gets the next odd
/// label and its `π`-partner the following even label.
pub fn normalize_knot(map: &CombMap, knot: &Knot) -> Result<(CombMap, Knot, Perm)> {
    map.require_graphical()?;
    knot.check_belongs_to(map)?;
    let mut labels = vec![0; map.degree()];
    let mut next = 1;
    for orbit in knot.orbits() {
        for x in orbit {
            if knot.color(x) == Color::C1 {
                labels[x - 1] = next;
                labels[map.pi().apply(x) - 1] = next + 1;
                next += 2;
            }
        }
    }
    let t = Perm::from_images(labels)?;
    Ok((map.relabel(&t)?, knot.relabel(&t)?, t))
}

/// The partial map `(P, μ)` and how its edge rotation `P·μ⁻¹` compares with
/// the face rotation `Q` of the original map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FacesReport {
    pub partial: CombMap,
    pub hyperedges: Vec<Vec<Corner>>,
    /// Whether `P·μ⁻¹ = Q` holds literally.
    pub edge_rotation_is_q: bool,
    pub passport_matches_q: bool,
}

pub fn faces_partial_map(map: &CombMap, knot: &Knot) -> Result<FacesReport> {
    knot.check_belongs_to(map)?;
    let partial = CombMap::new(map.p().clone(), knot.mu().clone())?;
    Ok(FacesReport {
        hyperedges: partial.hyperedges(),
        edge_rotation_is_q: partial.rho() == map.q(),
        passport_matches_q: partial.rho().passport() == map.q().passport(),
        partial,
    })
}
