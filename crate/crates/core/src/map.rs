//! Combinatorial maps as pairs of corner rotations.
//!
//! A map is a vertex rotation `P` and a face rotation `Q` on the same corner
//! set. The two edge rotations follow from them: the inner edge rotation
//! `π = Q⁻¹·P` and the edge rotation `ρ = P·Q⁻¹`. A map is graphical when `ρ`
//! is a fixed-point-free involution; otherwise it is a partial map whose
//! longer `ρ`-orbits are hyperedges.

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::{Corner, Perm};

#[derive(Clone, PartialEq, Eq)]
pub struct CombMap {
    vertex: Perm,
    face: Perm,
    pi: Perm,
    rho: Perm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EdgeKind {
    Link,
    Loop,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Degeneracy {
    Regular,
    IsolatedEdge,
    IsolatedLoop,
    HangingEdge,
    HangingLoop,
}

/// One edge as the quartet `⟨a, b, c, d⟩`.
///
/// `(a c)` is an orbit of `π` and `(b d)` an orbit of `ρ`, with
/// `b = a^(P⁻¹)` and `d = c^(P⁻¹)`. `vertex1` and `vertex2` index
/// [`CombMap::vertices`] and hold `{a, b}` and `{c, d}` respectively.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MapEdge {
    pub a: Corner,
    pub b: Corner,
    pub c: Corner,
    pub d: Corner,
    pub vertex1: usize,
    pub vertex2: usize,
    pub kind: EdgeKind,
    pub degeneracy: Degeneracy,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentCensus {
    pub corners: Vec<Corner>,
    pub chi: i64,
    pub genus: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MapCensus {
    pub corners: usize,
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub components: usize,
    pub chi: i64,
    pub genus: i64,
    pub per_component: Vec<ComponentCensus>,
}

impl CombMap {
    pub fn new(vertex: Perm, face: Perm) -> Result<CombMap> {
        let face_inv = face.inverse();
        let pi = face_inv.compose(&vertex)?;
        let rho = vertex.compose(&face_inv)?;
        Ok(CombMap {
            vertex,
            face,
            pi,
            rho,
        })
    }

    /// The normalized map determined by its vertex rotation alone:
    /// `π = (1 2)(3 4)…` and `Q = P·π`.
    pub fn from_vertex_rotation(vertex: Perm) -> Result<CombMap> {
        let pi = Perm::standard_involution(vertex.degree())?;
        let face = vertex.compose(&pi)?;
        CombMap::new(vertex, face)
    }

    /// `from_vertex_rotation` of a seeded random permutation of `2k` corners.
    pub fn random(edges: usize, seed: u64) -> CombMap {
        CombMap::from_vertex_rotation(Perm::random(2 * edges, seed))
            .expect("even degree is always normalizable")
    }

    pub fn degree(&self) -> usize {
        self.vertex.degree()
    }

    /// Vertex rotation `P`.
    pub fn p(&self) -> &Perm {
        &self.vertex
    }

    /// Face rotation `Q`.
    pub fn q(&self) -> &Perm {
        &self.face
    }

    /// Inner edge rotation `π = Q⁻¹·P`.
    pub fn pi(&self) -> &Perm {
        &self.pi
    }

    /// Edge rotation `ρ = P·Q⁻¹`.
    pub fn rho(&self) -> &Perm {
        &self.rho
    }

    pub fn is_graphical(&self) -> bool {
        self.rho.is_fpf_involution()
    }

    /// Fails with the first offending `ρ`-orbit when the map is partial.
    pub fn require_graphical(&self) -> Result<()> {
        match self.rho.orbits().into_iter().find(|o| o.len() != 2) {
            Some(orbit) => Err(Error::NotGraphical { orbit }),
            None => Ok(()),
        }
    }

    pub fn is_normalized(&self) -> bool {
        Perm::standard_involution(self.degree()).is_ok_and(|std| std == self.pi)
    }

    /// Relabels corners so that `π` becomes `(1 2)(3 4)…`.
    ///
    /// The `j`-th `π`-orbit `{u, v}` (by smallest member, `u < v`) is sent to
    /// `{2j−1, 2j}`. The relabeling `t` is returned alongside the new map,
    /// whose rotations are the old ones conjugated by `t`.
    pub fn normalize(&self) -> Result<(CombMap, Perm)> {
        self.require_graphical()?;
        let mut images = vec![0; self.degree()];
        for (j, orbit) in self.pi.orbits().iter().enumerate() {
            images[orbit[0] - 1] = 2 * j + 1;
            images[orbit[1] - 1] = 2 * j + 2;
        }
        let t = Perm::from_images(images)?;
        let map = self.relabel(&t)?;
        Ok((map, t))
    }

    /// Conjugates both rotations by `t`, i.e. renames corner `x` to `x^t`.
    pub fn relabel(&self, t: &Perm) -> Result<CombMap> {
        CombMap::new(self.vertex.conjugate_by(t)?, self.face.conjugate_by(t)?)
    }

    /// Vertex orbits in canonical order.
    pub fn vertices(&self) -> Vec<Vec<Corner>> {
        self.vertex.orbits()
    }

    /// Index into [`CombMap::vertices`] of the vertex holding each corner,
    /// indexed by `corner - 1`.
    pub fn vertex_of_corner(&self) -> Vec<usize> {
        let mut owner = vec![0; self.degree()];
        for (i, orbit) in self.vertices().iter().enumerate() {
            for &x in orbit {
                owner[x - 1] = i;
            }
        }
        owner
    }

    /// One quartet per `π`-orbit, sorted by its smaller corner `a`.
    pub fn edges(&self) -> Result<Vec<MapEdge>> {
        self.require_graphical()?;
        let p_inv = self.vertex.inverse();
        let owner = self.vertex_of_corner();
        let mut edges = Vec::with_capacity(self.degree() / 2);
        for orbit in self.pi.orbits() {
            let a = orbit[0];
            let c = self.pi.apply(a);
            let b = p_inv.apply(a);
            let d = p_inv.apply(c);
            let vertex1 = owner[a - 1];
            let vertex2 = owner[c - 1];
            let kind = if vertex1 == vertex2 {
                EdgeKind::Loop
            } else {
                EdgeKind::Link
            };
            edges.push(MapEdge {
                a,
                b,
                c,
                d,
                vertex1,
                vertex2,
                kind,
                degeneracy: degeneracy(kind, a, b, c, d),
            });
        }
        Ok(edges)
    }

    /// Orbits of `ρ`. For graphical maps these all have length two.
    pub fn hyperedges(&self) -> Vec<Vec<Corner>> {
        self.rho.orbits()
    }

    /// Connected components: orbits of the group generated by `P` and `ρ`,
    /// each sorted, ordered by smallest corner.
    pub fn components(&self) -> Vec<Vec<Corner>> {
        self.component_ids().1
    }

    // (component index per corner, component corner lists)
    fn component_ids(&self) -> (Vec<usize>, Vec<Vec<Corner>>) {
        let m = self.degree();
        let p_inv = self.vertex.inverse();
        let rho_inv = self.rho.inverse();
        let mut comp = vec![usize::MAX; m];
        let mut components = Vec::new();
        let mut queue = VecDeque::new();
        for start in 1..=m {
            if comp[start - 1] != usize::MAX {
                continue;
            }
            let id = components.len();
            let mut members = Vec::new();
            comp[start - 1] = id;
            queue.push_back(start);
            while let Some(x) = queue.pop_front() {
                members.push(x);
                for y in [
                    self.vertex.apply(x),
                    p_inv.apply(x),
                    self.rho.apply(x),
                    rho_inv.apply(x),
                ] {
                    if comp[y - 1] == usize::MAX {
                        comp[y - 1] = id;
                        queue.push_back(y);
                    }
                }
            }
            members.sort_unstable();
            components.push(members);
        }
        (comp, components)
    }

    /// Orbit counts and Euler characteristic `V + E + F − m`, in total and
    /// per connected component, with `E` counted as orbits of `ρ`.
    pub fn census(&self) -> MapCensus {
        let (comp, components) = self.component_ids();
        let n = components.len();
        // chi contributions: +1 per orbit of P, ρ, Q; −1 per corner
        let mut chi = vec![0i64; n];
        for rotation in [&self.vertex, &self.rho, &self.face] {
            for orbit in rotation.orbits() {
                chi[comp[orbit[0] - 1]] += 1;
            }
        }
        let per_component: Vec<ComponentCensus> = components
            .into_iter()
            .zip(chi)
            .map(|(corners, part)| {
                let chi = part - corners.len() as i64;
                ComponentCensus {
                    genus: (2 - chi) / 2,
                    chi,
                    corners,
                }
            })
            .collect();
        let vertices = self.vertex.orbit_count();
        let edges = self.rho.orbit_count();
        let faces = self.face.orbit_count();
        let chi_total = (vertices + edges + faces) as i64 - self.degree() as i64;
        MapCensus {
            corners: self.degree(),
            vertices,
            edges,
            faces,
            components: n,
            chi: chi_total,
            genus: per_component.iter().map(|c| c.genus).sum(),
            per_component,
        }
    }

    /// Exchanges the vertex and face rotations.
    pub fn dual(&self) -> CombMap {
        CombMap::new(self.face.clone(), self.vertex.clone()).expect("degrees already agree")
    }
}

impl std::fmt::Debug for CombMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CombMap[{}] P={} Q={}", self.degree(), self.vertex, self.face)
    }
}

fn degeneracy(kind: EdgeKind, a: Corner, b: Corner, c: Corner, d: Corner) -> Degeneracy {
    let mut corners = [a, b, c, d];
    corners.sort_unstable();
    let distinct = 1 + corners.windows(2).filter(|w| w[0] != w[1]).count();
    match (distinct, kind) {
        (4, _) => Degeneracy::Regular,
        (3, EdgeKind::Link) => Degeneracy::HangingEdge,
        (3, EdgeKind::Loop) => Degeneracy::HangingLoop,
        (_, EdgeKind::Link) => Degeneracy::IsolatedEdge,
        (_, EdgeKind::Loop) => Degeneracy::IsolatedLoop,
    }
}
