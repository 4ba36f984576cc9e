//! Randomized invariant runner behind `rotamap check`.

use std::collections::HashSet;
use std::fmt::Write as _;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cli::document::MapDocument;
use crate::knot::{self, Color, Knot};
use crate::map::CombMap;
use crate::perm::Perm;

/// Knots with at most this many orbits get all `2^k` orientations enumerated.
pub const EXHAUSTIVE_ORBIT_LIMIT: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub trial: usize,
    pub invariant: String,
    pub map: CombMap,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub trials: usize,
    pub checks: usize,
    pub failures: usize,
    pub first_failure: Option<Failure>,
}

impl CheckReport {
    pub fn render(&self) -> String {
        let mut out = String::new();
        if let Some(f) = &self.first_failure {
            let _ = writeln!(out, "first failure: trial {} violates {}", f.trial, f.invariant);
            let doc = MapDocument::from_map(Some(format!("failing-trial-{}", f.trial)), f.map.clone(), true);
            out.push_str(&doc.to_text());
        }
        let _ = writeln!(out, "checks={}", self.checks);
        let _ = writeln!(out, "trials={} failures={}", self.trials, self.failures);
        out
    }
}

/// Runs `trials` random maps with `1..=max_k` edges through every invariant.
///
/// Trial seeds and reorientations are drawn from one generator seeded with
/// `seed`, so the report is a function of the arguments.
pub fn run_check(trials: usize, max_k: usize, seed: u64) -> CheckReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = CheckReport {
        trials,
        checks: 0,
        failures: 0,
        first_failure: None,
    };
    for trial in 0..trials {
        let k = rng.random_range(1..=max_k.max(1));
        let map = CombMap::random(k, rng.next_u64());
        let mut checker = Checker::default();
        check_map(&mut checker, &map, &mut rng);
        report.checks += checker.checks;
        if let Some(invariant) = checker.failed {
            report.failures += 1;
            report.first_failure.get_or_insert(Failure {
                trial,
                invariant,
                map,
            });
        }
    }
    report
}

#[derive(Default)]
struct Checker {
    checks: usize,
    failed: Option<String>,
}

impl Checker {
    fn ensure(&mut self, ok: bool, name: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok && self.failed.is_none() {
            self.failed = Some(name());
        }
    }
}

fn check_map(c: &mut Checker, map: &CombMap, rng: &mut ChaCha8Rng) {
    let m = map.degree();
    let id = Perm::identity(m);
    let (p, q, pi, rho) = (map.p(), map.q(), map.pi(), map.rho());

    // permutations
    for (name, r) in [("P", p), ("Q", q), ("π", pi), ("ρ", rho)] {
        c.ensure(Perm::from_images(r.images().to_vec()).is_ok(), || {
            format!("{name} is a bijection")
        });
    }
    c.ensure(&(p * q) * rho == p * &(q * rho), || "associativity".into());
    c.ensure((p * &p.inverse()).is_identity(), || "inverse".into());
    c.ensure(
        p.conjugate_by(q).map(|s| s.passport()) == Ok(p.passport()),
        || "conjugation preserves passport".into(),
    );
    let mut labels: Vec<usize> = p.orbits().into_iter().flatten().collect();
    labels.sort_unstable();
    c.ensure(labels == (1..=m).collect::<Vec<_>>(), || {
        "orbits partition corners".into()
    });
    c.ensure(
        Perm::parse_cycles(&p.to_string(), Some(m)).as_ref() == Ok(p),
        || "cycle text round trip".into(),
    );

    // map algebra
    c.ensure((&(&q.inverse() * p) * &pi.inverse()) == id, || {
        "constellation identity".into()
    });
    c.ensure(*rho == &(q * pi) * &q.inverse(), || "ρ = Q·π·Q⁻¹".into());
    c.ensure(pi.passport() == rho.passport(), || {
        "passport(π) = passport(ρ)".into()
    });
    c.ensure(pi.is_fpf_involution() == rho.is_fpf_involution(), || {
        "graphical symmetry".into()
    });
    c.ensure(m.is_multiple_of(2), || "even corner count".into());

    let Ok(edges) = map.edges() else {
        c.ensure(false, || "random map is graphical".into());
        return;
    };
    let mut ac: Vec<usize> = edges.iter().flat_map(|e| [e.a, e.c]).collect();
    let mut bd: Vec<usize> = edges.iter().flat_map(|e| [e.b, e.d]).collect();
    ac.sort_unstable();
    bd.sort_unstable();
    c.ensure(ac == (1..=m).collect::<Vec<_>>(), || {
        "edges cover corners via a, c".into()
    });
    c.ensure(bd == (1..=m).collect::<Vec<_>>(), || {
        "edges cover corners via b, d".into()
    });
    for e in &edges {
        c.ensure(
            pi.apply(e.c) == e.a && pi.apply(e.a) == e.c && rho.apply(e.d) == e.b && rho.apply(e.b) == e.d,
            || format!("edge equalities at ⟨{},{},{},{}⟩", e.a, e.b, e.c, e.d),
        );
    }

    let census = map.census();
    c.ensure(
        census.chi == 2 * census.components as i64 - 2 * census.genus,
        || "chi = 2c − 2g".into(),
    );
    c.ensure(
        census.genus >= 0
            && census
                .per_component
                .iter()
                .all(|pc| pc.genus >= 0 && pc.chi == 2 - 2 * pc.genus),
        || "non-negative integer genus".into(),
    );

    let dual = map.dual();
    let dual_census = dual.census();
    c.ensure(dual.dual() == *map, || "dual is an involution".into());
    c.ensure(
        (
            dual_census.vertices,
            dual_census.faces,
            dual_census.edges,
            dual_census.genus,
            dual_census.components,
        ) == (
            census.faces,
            census.vertices,
            census.edges,
            census.genus,
            census.components,
        ),
        || "dual swaps V and F".into(),
    );

    let shuffle = Perm::random(m, rng.next_u64());
    if let Ok(scrambled) = map.relabel(&shuffle) {
        match scrambled.normalize() {
            Ok((norm, _)) => c.ensure(
                norm.is_normalized()
                    && norm.p().passport() == p.passport()
                    && norm.q().passport() == q.passport()
                    && norm.rho().passport() == rho.passport()
                    && counts(&norm) == counts(&scrambled),
                || "normalize preserves passports and census".into(),
            ),
            Err(_) => c.ensure(false, || "normalize of a graphical map".into()),
        }
    }

    // knots
    let Ok(canonical) = Knot::zigzag(map) else {
        c.ensure(false, || "zig-zag knot exists".into());
        return;
    };
    let flips: Vec<bool> = (0..canonical.orbit_count()).map(|_| rng.random()).collect();
    let reoriented = canonical.reorient(&flips);
    c.ensure(reoriented.is_ok(), || "reorientation".into());
    for knot in std::iter::once(&canonical).chain(reoriented.as_ref().ok()) {
        check_knot(c, map, knot);
    }

    if canonical.orbit_count() <= EXHAUSTIVE_ORBIT_LIMIT {
        let k = canonical.orbit_count();
        let mut seen = HashSet::new();
        for bits in 0u32..(1 << k) {
            let flips: Vec<bool> = (0..k).map(|i| bits >> i & 1 == 1).collect();
            if let Ok(knot) = canonical.reorient(&flips) {
                c.checks += 1;
                if knot.check_belongs_to(map).is_err() && c.failed.is_none() {
                    c.failed = Some("reoriented knot belongs to map".into());
                }
                seen.insert((knot.mu().images().to_vec(), knot.c1_mask().to_vec()));
            }
        }
        c.ensure(seen.len() == 1 << k, || "2^k distinct colored knots".into());
    }
}

/// Label-free census: V, E, F, components, genus and sorted per-component sizes.
fn counts(map: &CombMap) -> (usize, usize, usize, usize, i64, Vec<(usize, i64)>) {
    let c = map.census();
    let mut parts: Vec<(usize, i64)> = c
        .per_component
        .iter()
        .map(|pc| (pc.corners.len(), pc.genus))
        .collect();
    parts.sort_unstable();
    (c.vertices, c.edges, c.faces, c.components, c.genus, parts)
}

fn check_knot(c: &mut Checker, map: &CombMap, knot: &Knot) {
    let m = map.degree();
    c.ensure(knot.check_belongs_to(map).is_ok(), || "piecewise knot law".into());
    c.ensure(knot.c1().len() * 2 == m, || "|C1| = m/2".into());
    c.ensure(
        knot.c1()
            .iter()
            .all(|&x| knot.color(map.pi().apply(x)) == Color::C2)
            && knot
                .c2()
                .iter()
                .all(|&x| knot.color(map.rho().apply(x)) == Color::C1),
        || "π(C1) = C2 and ρ(C2) = C1".into(),
    );
    c.ensure(
        knot.mu()
            .orbits()
            .iter()
            .all(|o| o.len() % 2 == 0 && o.windows(2).all(|w| knot.color(w[0]) != knot.color(w[1]))),
        || "knot orbits alternate colors".into(),
    );
    if let Ok(edges) = map.edges() {
        c.ensure(
            edges.iter().all(|e| {
                let cut = knot.color(e.a) == knot.color(e.b);
                let cycle = knot.color(e.a) == knot.color(e.d);
                cut != cycle
            }),
            || "exclusive cut/cycle classification".into(),
        );
    }

    match knot::analyze(map, knot) {
        Ok(analysis) => {
            for check in analysis.report.checks.iter().filter(|ch| !ch.exploratory) {
                c.ensure(check.passed, || check.name.to_string());
            }
            c.ensure(
                (&(&analysis.gamma1 * &analysis.gamma2) * &analysis.pi2) == *map.p(),
                || "P = γ₁·γ₂·π₂".into(),
            );
            match knot::normalize_knot(map, knot) {
                Ok((norm, norm_knot, _)) => {
                    let odds: Vec<usize> = (1..=m).step_by(2).collect();
                    let transported = knot::analyze(&norm, &norm_knot);
                    c.ensure(
                        knot::is_partially_normalized(&norm, &norm_knot) == Ok(true)
                            && norm_knot.c1() == odds
                            && counts(&norm) == counts(map),
                        || "normalize_knot yields C1 = odd corners".into(),
                    );
                    c.ensure(
                        transported.is_ok_and(|t| {
                            norm_knot.mu().passport() == knot.mu().passport()
                                && t.alpha.passport() == analysis.alpha.passport()
                                && t.structure.epsilon.passport() == analysis.structure.epsilon.passport()
                        }),
                        || "normalize_knot preserves passports of μ, α, ε".into(),
                    );
                }
                Err(e) => c.ensure(false, || format!("normalize_knot: {e}")),
            }
        }
        Err(e) => c.ensure(false, || format!("knot analysis: {e}")),
    }
}
