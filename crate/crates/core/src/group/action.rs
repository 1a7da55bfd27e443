use std::fmt;

use indexmap::IndexMap;
use thiserror::Error;

use super::FiniteGroup;
use crate::quiver::FiniteQuiver;

/// `element -> (id -> image id)`, the serializable form of one table.
pub type PermutationMaps = IndexMap<String, IndexMap<String, String>>;

/// Right action of a finite group on a quiver, stored as full permutation
/// tables: `vperm[g][v]` is `v·g` and `eperm[g][e]` is `e·g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverAction {
    group: FiniteGroup,
    vperm: Vec<Vec<usize>>,
    eperm: Vec<Vec<usize>>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ActionError {
    #[error("unknown group element `{0}`")]
    UnknownElement(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("no image given for `{id}` under element `{element}`")]
    Missing { element: String, id: String },
}

impl QuiverAction {
    /// Wraps raw permutation tables. Nothing is checked here; run
    /// [`validate_action`] before relying on the action.
    pub fn from_tables(group: FiniteGroup, vperm: Vec<Vec<usize>>, eperm: Vec<Vec<usize>>) -> Self {
        QuiverAction {
            group,
            vperm,
            eperm,
        }
    }

    /// Every group element acts as the identity.
    pub fn trivial(q: &FiniteQuiver, group: FiniteGroup) -> Self {
        let n = group.order();
        QuiverAction {
            vperm: vec![(0..q.vertex_count()).collect(); n],
            eperm: vec![(0..q.edge_count()).collect(); n],
            group,
        }
    }

    /// Builds the tables from id maps `element -> (id -> image id)`. Every
    /// element must map every vertex and edge.
    pub fn from_maps(
        q: &FiniteQuiver,
        group: FiniteGroup,
        vperm: &PermutationMaps,
        eperm: &PermutationMaps,
    ) -> Result<Self, ActionError> {
        for key in vperm.keys().chain(eperm.keys()) {
            if group.index_of(key).is_none() {
                return Err(ActionError::UnknownElement(key.clone()));
            }
        }
        let mut vtables = Vec::with_capacity(group.order());
        let mut etables = Vec::with_capacity(group.order());
        for g in group.elements() {
            let missing = |id: &str| ActionError::Missing {
                element: g.clone(),
                id: id.to_string(),
            };
            let vm = vperm.get(g);
            let mut vt = Vec::with_capacity(q.vertex_count());
            for v in q.vertices() {
                let image = vm.and_then(|m| m.get(v)).ok_or_else(|| missing(v))?;
                vt.push(
                    q.vertex_index(image)
                        .ok_or_else(|| ActionError::UnknownVertex(image.clone()))?,
                );
            }
            if let Some(m) = vm {
                if let Some(k) = m.keys().find(|k| q.vertex_index(k).is_none()) {
                    return Err(ActionError::UnknownVertex(k.clone()));
                }
            }
            let em = eperm.get(g);
            let mut et = Vec::with_capacity(q.edge_count());
            for e in q.edges() {
                let image = em
                    .and_then(|m| m.get(e.id()))
                    .ok_or_else(|| missing(e.id()))?;
                et.push(
                    q.edge_index(image)
                        .ok_or_else(|| ActionError::UnknownEdge(image.clone()))?,
                );
            }
            if let Some(m) = em {
                if let Some(k) = m.keys().find(|k| q.edge_index(k).is_none()) {
                    return Err(ActionError::UnknownEdge(k.clone()));
                }
            }
            vtables.push(vt);
            etables.push(et);
        }
        Ok(QuiverAction::from_tables(group, vtables, etables))
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    /// `v·g`
    pub fn act_vertex(&self, v: usize, g: usize) -> usize {
        self.vperm[g][v]
    }

    /// `e·g`
    pub fn act_edge(&self, e: usize, g: usize) -> usize {
        self.eperm[g][e]
    }

    pub fn vertex_table(&self) -> &[Vec<usize>] {
        &self.vperm
    }

    pub fn edge_table(&self) -> &[Vec<usize>] {
        &self.eperm
    }

    /// Id-map form, suitable for serialization.
    pub fn to_maps(&self, q: &FiniteQuiver) -> (PermutationMaps, PermutationMaps) {
        let mut vmaps = IndexMap::new();
        let mut emaps = IndexMap::new();
        for (g, name) in self.group.elements().iter().enumerate() {
            vmaps.insert(
                name.clone(),
                (0..q.vertex_count())
                    .map(|v| {
                        (
                            q.vertex_id(v).to_string(),
                            q.vertex_id(self.vperm[g][v]).to_string(),
                        )
                    })
                    .collect(),
            );
            emaps.insert(
                name.clone(),
                (0..q.edge_count())
                    .map(|e| {
                        (
                            q.edge(e).id().to_string(),
                            q.edge(self.eperm[g][e]).id().to_string(),
                        )
                    })
                    .collect(),
            );
        }
        (vmaps, emaps)
    }
}

/// One failed law in [`validate_action`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ActionViolation {
    Shape(String),
    NotPermutation {
        element: String,
        what: &'static str,
    },
    Homomorphism {
        g: String,
        h: String,
        id: String,
    },
    Automorphism {
        element: String,
        edge: String,
        end: &'static str,
    },
    WeightEquivariance {
        element: String,
        edge: String,
    },
}

impl fmt::Display for ActionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ActionViolation::Shape(msg) => write!(f, "shape: {msg}"),
            ActionViolation::NotPermutation { element, what } => {
                write!(f, "not a permutation: element `{element}` on {what}")
            }
            ActionViolation::Homomorphism { g, h, id } => {
                write!(f, "homomorphism law: `{id}`·({g}·{h}) != (`{id}`·{g})·{h}")
            }
            ActionViolation::Automorphism { element, edge, end } => write!(
                f,
                "automorphism law: element `{element}` does not commute with {end} at edge `{edge}`"
            ),
            ActionViolation::WeightEquivariance { element, edge } => write!(
                f,
                "weight equivariance: element `{element}` moves edge `{edge}` to an edge of different weight"
            ),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ActionReport {
    pub violations: Vec<ActionViolation>,
}

impl ActionReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    /// First violation, plus how many more there are.
    pub fn summary(&self) -> String {
        match self.violations.as_slice() {
            [] => "ok".into(),
            [only] => only.to_string(),
            [first, rest @ ..] => format!("{first} (and {} more)", rest.len()),
        }
    }
}

impl fmt::Display for ActionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "ok");
        }
        let lines: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", lines.join("\n"))
    }
}

fn is_permutation(p: &[usize], n: usize) -> bool {
    if p.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &x in p {
        if x >= n || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

/// Checks that `a` is a homomorphism from its group into the weight-preserving
/// automorphisms of `q`, in right-action notation `x·(gh) = (x·g)·h`.
pub fn validate_action(q: &FiniteQuiver, a: &QuiverAction) -> ActionReport {
    let group = &a.group;
    let n = group.order();
    let mut violations = Vec::new();
    if a.vperm.len() != n || a.eperm.len() != n {
        violations.push(ActionViolation::Shape(format!(
            "expected one vertex and one edge permutation per element ({n})"
        )));
        return ActionReport { violations };
    }
    for g in 0..n {
        for (table, size, what) in [
            (&a.vperm[g], q.vertex_count(), "vertices"),
            (&a.eperm[g], q.edge_count(), "edges"),
        ] {
            if !is_permutation(table, size) {
                violations.push(ActionViolation::NotPermutation {
                    element: group.name(g).to_string(),
                    what,
                });
            }
        }
    }
    if !violations.is_empty() {
        return ActionReport { violations };
    }
    'hom: for g in 0..n {
        for h in 0..n {
            let gh = group.mul(g, h);
            for v in 0..q.vertex_count() {
                if a.vperm[gh][v] != a.vperm[h][a.vperm[g][v]] {
                    violations.push(ActionViolation::Homomorphism {
                        g: group.name(g).to_string(),
                        h: group.name(h).to_string(),
                        id: q.vertex_id(v).to_string(),
                    });
                    break 'hom;
                }
            }
            for e in 0..q.edge_count() {
                if a.eperm[gh][e] != a.eperm[h][a.eperm[g][e]] {
                    violations.push(ActionViolation::Homomorphism {
                        g: group.name(g).to_string(),
                        h: group.name(h).to_string(),
                        id: q.edge(e).id().to_string(),
                    });
                    break 'hom;
                }
            }
        }
    }
    for g in 0..n {
        for (e, edge) in q.edges().iter().enumerate() {
            let image = q.edge(a.eperm[g][e]);
            let element = || group.name(g).to_string();
            if image.src() != a.vperm[g][edge.src()] {
                violations.push(ActionViolation::Automorphism {
                    element: element(),
                    edge: edge.id().to_string(),
                    end: "src",
                });
            }
            if image.rng() != a.vperm[g][edge.rng()] {
                violations.push(ActionViolation::Automorphism {
                    element: element(),
                    edge: edge.id().to_string(),
                    end: "rng",
                });
            }
            if image.weight() != edge.weight() {
                violations.push(ActionViolation::WeightEquivariance {
                    element: element(),
                    edge: edge.id().to_string(),
                });
            }
        }
    }
    ActionReport { violations }
}

/// True iff no non-identity element fixes a vertex.
pub fn is_free(q: &FiniteQuiver, a: &QuiverAction) -> bool {
    let id = a.group.identity();
    (0..a.group.order())
        .filter(|&g| g != id)
        .all(|g| (0..q.vertex_count()).all(|v| a.vperm[g][v] != v))
}

/// Orbit partitions. Orbits and their members are listed in input order, so
/// `vertex_orbits[k][0]` is the canonical (least) representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbits {
    pub vertex_orbits: Vec<Vec<usize>>,
    pub edge_orbits: Vec<Vec<usize>>,
    pub vertex_orbit_of: Vec<usize>,
    pub edge_orbit_of: Vec<usize>,
}

fn partition(size: usize, tables: &[Vec<usize>]) -> (Vec<Vec<usize>>, Vec<usize>) {
    let mut orbit_of = vec![usize::MAX; size];
    let mut orbits = Vec::new();
    for x in 0..size {
        if orbit_of[x] != usize::MAX {
            continue;
        }
        let k = orbits.len();
        let mut members: Vec<usize> = tables.iter().map(|t| t[x]).collect();
        members.sort_unstable();
        members.dedup();
        for &m in &members {
            orbit_of[m] = k;
        }
        orbits.push(members);
    }
    (orbits, orbit_of)
}

pub fn orbits(q: &FiniteQuiver, a: &QuiverAction) -> Orbits {
    let (vertex_orbits, vertex_orbit_of) = partition(q.vertex_count(), &a.vperm);
    let (edge_orbits, edge_orbit_of) = partition(q.edge_count(), &a.eperm);
    Orbits {
        vertex_orbits,
        edge_orbits,
        vertex_orbit_of,
        edge_orbit_of,
    }
}
