//! Finite quivers with exact positive edge weights.
//!
//! A [`FiniteQuiver`] is a finite directed multigraph whose edges carry a
//! strictly positive rational weight. The weight of an edge `e` is the point
//! mass that the source-fiber measure at `src(e)` assigns to `{e}`, so a quiver
//! value is a discrete source system: every fiber measure is supported on the
//! whole fiber. Vertices without outgoing edges are allowed.
//!
//! Identifiers are opaque strings. Internally everything is indexed by the
//! declared position, and every iteration follows declared order.

mod iso;

use std::collections::HashMap;
use std::fmt;

use indexmap::IndexMap;
use num_rational::Rational64;
use num_traits::Zero;
use thiserror::Error;

pub use iso::{iso_search, iso_search_with_budget, IsoSearchError, DEFAULT_NODE_BUDGET};

/// Exact edge weight.
pub type Weight = Rational64;

/// Unvalidated edge record, as it appears in documents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeSpec {
    pub id: String,
    pub src: String,
    pub rng: String,
    pub weight: Weight,
}

impl EdgeSpec {
    pub fn new(
        id: impl Into<String>,
        src: impl Into<String>,
        rng: impl Into<String>,
        weight: Weight,
    ) -> Self {
        EdgeSpec {
            id: id.into(),
            src: src.into(),
            rng: rng.into(),
            weight,
        }
    }
}

/// A validated edge. Endpoints are vertex indices into the owning quiver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    id: String,
    src: usize,
    rng: usize,
    weight: Weight,
}

impl Edge {
    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn src(&self) -> usize {
        self.src
    }

    pub fn rng(&self) -> usize {
        self.rng
    }

    pub fn weight(&self) -> Weight {
        self.weight
    }
}

/// One reason a quiver (or action) fails validation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    DuplicateVertex(String),
    DuplicateEdge(String),
    DanglingEndpoint {
        edge: String,
        role: &'static str,
        vertex: String,
    },
    NonpositiveWeight {
        edge: String,
        weight: Weight,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateVertex(v) => write!(f, "duplicate id: vertex `{v}`"),
            Violation::DuplicateEdge(e) => write!(f, "duplicate id: edge `{e}`"),
            Violation::DanglingEndpoint { edge, role, vertex } => write!(
                f,
                "dangling endpoint: edge `{edge}` has {role} `{vertex}` which is not a vertex"
            ),
            Violation::NonpositiveWeight { edge, weight } => {
                write!(f, "nonpositive weight: edge `{edge}` has weight {weight}")
            }
        }
    }
}

/// Report-style result of [`validate_quiver`]. Empty means ok.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Checks raw quiver data for duplicate ids, dangling endpoints and
/// nonpositive weights. All violations are collected.
pub fn validate_quiver(vertices: &[String], edges: &[EdgeSpec]) -> ValidationReport {
    let mut violations = Vec::new();
    let mut seen = HashMap::new();
    for v in vertices {
        if seen.insert(v.as_str(), ()).is_some() {
            violations.push(Violation::DuplicateVertex(v.clone()));
        }
    }
    let mut seen_edges = HashMap::new();
    for e in edges {
        if seen_edges.insert(e.id.as_str(), ()).is_some() {
            violations.push(Violation::DuplicateEdge(e.id.clone()));
        }
        for (role, vertex) in [("src", &e.src), ("rng", &e.rng)] {
            if !seen.contains_key(vertex.as_str()) {
                violations.push(Violation::DanglingEndpoint {
                    edge: e.id.clone(),
                    role,
                    vertex: vertex.clone(),
                });
            }
        }
        if e.weight <= Weight::zero() {
            violations.push(Violation::NonpositiveWeight {
                edge: e.id.clone(),
                weight: e.weight,
            });
        }
    }
    ValidationReport { violations }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QuiverError {
    #[error("invalid quiver: {0}")]
    Invalid(ValidationReport),
    #[error("expected {expected} weights, got {got}")]
    WeightCount { expected: usize, got: usize },
}

/// Finite directed multigraph with exact positive edge weights.
#[derive(Clone, Debug)]
pub struct FiniteQuiver {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    vertex_index: HashMap<String, usize>,
    edge_index: HashMap<String, usize>,
}

impl PartialEq for FiniteQuiver {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.edges == other.edges
    }
}

impl Eq for FiniteQuiver {}

impl FiniteQuiver {
    pub fn new(vertices: Vec<String>, edges: Vec<EdgeSpec>) -> Result<Self, QuiverError> {
        let report = validate_quiver(&vertices, &edges);
        if !report.is_ok() {
            return Err(QuiverError::Invalid(report));
        }
        let vertex_index: HashMap<String, usize> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), i))
            .collect();
        let edges: Vec<Edge> = edges
            .into_iter()
            .map(|e| Edge {
                src: vertex_index[&e.src],
                rng: vertex_index[&e.rng],
                id: e.id,
                weight: e.weight,
            })
            .collect();
        let edge_index = edges
            .iter()
            .enumerate()
            .map(|(i, e)| (e.id.clone(), i))
            .collect();
        Ok(FiniteQuiver {
            vertices,
            edges,
            vertex_index,
            edge_index,
        })
    }

    /// Convenience constructor for tests and examples: `(id, src, rng, weight)`.
    pub fn from_parts(
        vertices: &[&str],
        edges: &[(&str, &str, &str, Weight)],
    ) -> Result<Self, QuiverError> {
        FiniteQuiver::new(
            vertices.iter().map(|v| v.to_string()).collect(),
            edges
                .iter()
                .map(|&(id, s, r, w)| EdgeSpec::new(id, s, r, w))
                .collect(),
        )
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_id(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertex_index.get(id).copied()
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edge_index.get(id).copied()
    }

    /// Edges with `src(e) = v`, in declared order.
    pub fn out_edges(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges
            .iter()
            .enumerate()
            .filter(move |(_, e)| e.src == v)
            .map(|(i, _)| i)
    }

    /// Edges with `rng(e) = v`, in declared order.
    pub fn in_edges(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges
            .iter()
            .enumerate()
            .filter(move |(_, e)| e.rng == v)
            .map(|(i, _)| i)
    }

    pub fn to_edge_specs(&self) -> Vec<EdgeSpec> {
        self.edges
            .iter()
            .map(|e| EdgeSpec {
                id: e.id.clone(),
                src: self.vertices[e.src].clone(),
                rng: self.vertices[e.rng].clone(),
                weight: e.weight,
            })
            .collect()
    }

    pub fn weights(&self) -> Vec<Weight> {
        self.edges.iter().map(|e| e.weight).collect()
    }

    /// Same underlying multigraph with new weights (declared edge order).
    pub fn with_weights(&self, weights: &[Weight]) -> Result<Self, QuiverError> {
        if weights.len() != self.edges.len() {
            return Err(QuiverError::WeightCount {
                expected: self.edges.len(),
                got: weights.len(),
            });
        }
        let mut specs = self.to_edge_specs();
        for (spec, w) in specs.iter_mut().zip(weights) {
            spec.weight = *w;
        }
        FiniteQuiver::new(self.vertices.clone(), specs)
    }

    /// The full subquiver on the given vertex indices (kept in the given order).
    pub fn induced_subquiver(&self, vertices: &[usize]) -> FiniteQuiver {
        let keep: HashMap<usize, ()> = vertices.iter().map(|&v| (v, ())).collect();
        let specs = self
            .to_edge_specs()
            .into_iter()
            .zip(&self.edges)
            .filter(|(_, e)| keep.contains_key(&e.src) && keep.contains_key(&e.rng))
            .map(|(s, _)| s)
            .collect();
        FiniteQuiver::new(
            vertices.iter().map(|&v| self.vertices[v].clone()).collect(),
            specs,
        )
        .expect("subquiver of a valid quiver is valid")
    }
}

/// A pair of id maps between two quivers.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QuiverMorphism {
    pub vmap: IndexMap<String, String>,
    pub emap: IndexMap<String, String>,
}

impl QuiverMorphism {
    pub fn identity(q: &FiniteQuiver) -> Self {
        QuiverMorphism {
            vmap: q.vertices.iter().map(|v| (v.clone(), v.clone())).collect(),
            emap: q
                .edges
                .iter()
                .map(|e| (e.id.clone(), e.id.clone()))
                .collect(),
        }
    }

    /// Index form of the maps; `None` where an id is missing or unknown.
    fn resolve(
        &self,
        src_q: &FiniteQuiver,
        dst_q: &FiniteQuiver,
    ) -> Result<(Vec<usize>, Vec<usize>), MorphismError> {
        let mut vmap = Vec::with_capacity(src_q.vertex_count());
        for v in &src_q.vertices {
            let image = self
                .vmap
                .get(v)
                .ok_or_else(|| MorphismError::NotTotal(v.clone()))?;
            vmap.push(
                dst_q
                    .vertex_index(image)
                    .ok_or_else(|| MorphismError::UndefinedId(image.clone()))?,
            );
        }
        let mut emap = Vec::with_capacity(src_q.edge_count());
        for e in &src_q.edges {
            let image = self
                .emap
                .get(&e.id)
                .ok_or_else(|| MorphismError::NotTotal(e.id.clone()))?;
            emap.push(
                dst_q
                    .edge_index(image)
                    .ok_or_else(|| MorphismError::UndefinedId(image.clone()))?,
            );
        }
        for k in self.vmap.keys() {
            if src_q.vertex_index(k).is_none() {
                return Err(MorphismError::UndefinedId(k.clone()));
            }
        }
        for k in self.emap.keys() {
            if src_q.edge_index(k).is_none() {
                return Err(MorphismError::UndefinedId(k.clone()));
            }
        }
        Ok((vmap, emap))
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MorphismError {
    #[error("morphism references undefined id `{0}`")]
    UndefinedId(String),
    #[error("morphism is not defined on `{0}`")]
    NotTotal(String),
}

/// True iff `m` commutes with both the source and the range maps.
pub fn check_morphism(
    src_q: &FiniteQuiver,
    dst_q: &FiniteQuiver,
    m: &QuiverMorphism,
) -> Result<bool, MorphismError> {
    let (vmap, emap) = m.resolve(src_q, dst_q)?;
    Ok(src_q.edges.iter().zip(&emap).all(|(e, &img)| {
        let target = &dst_q.edges[img];
        target.src == vmap[e.src] && target.rng == vmap[e.rng]
    }))
}

/// Weight-preserving isomorphism, stored with both directions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverIso {
    pub forward: QuiverMorphism,
    pub backward: QuiverMorphism,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IsoCheckError {
    #[error(transparent)]
    Morphism(#[from] MorphismError),
    #[error("{0} map does not commute with source and range")]
    NotAMorphism(&'static str),
    #[error("maps are not mutually inverse at `{0}`")]
    NotInverse(String),
    #[error("edge `{edge}` has weight {from} but its image has weight {to}")]
    WeightMismatch {
        edge: String,
        from: Weight,
        to: Weight,
    },
}

impl QuiverIso {
    pub fn identity(q: &FiniteQuiver) -> Self {
        QuiverIso {
            forward: QuiverMorphism::identity(q),
            backward: QuiverMorphism::identity(q),
        }
    }

    pub fn inverse(&self) -> Self {
        QuiverIso {
            forward: self.backward.clone(),
            backward: self.forward.clone(),
        }
    }

    /// Checks every isomorphism law against `a` (domain) and `b` (codomain).
    pub fn verify(&self, a: &FiniteQuiver, b: &FiniteQuiver) -> Result<(), IsoCheckError> {
        if !check_morphism(a, b, &self.forward)? {
            return Err(IsoCheckError::NotAMorphism("forward"));
        }
        if !check_morphism(b, a, &self.backward)? {
            return Err(IsoCheckError::NotAMorphism("backward"));
        }
        let (fv, fe) = self.forward.resolve(a, b)?;
        let (bv, be) = self.backward.resolve(b, a)?;
        for (i, &img) in fv.iter().enumerate() {
            if bv[img] != i {
                return Err(IsoCheckError::NotInverse(a.vertices[i].clone()));
            }
        }
        for (i, &img) in bv.iter().enumerate() {
            if fv[img] != i {
                return Err(IsoCheckError::NotInverse(b.vertices[i].clone()));
            }
        }
        for (i, &img) in fe.iter().enumerate() {
            if be[img] != i {
                return Err(IsoCheckError::NotInverse(a.edges[i].id.clone()));
            }
            let (from, to) = (a.edges[i].weight, b.edges[img].weight);
            if from != to {
                return Err(IsoCheckError::WeightMismatch {
                    edge: a.edges[i].id.clone(),
                    from,
                    to,
                });
            }
        }
        for (i, &img) in be.iter().enumerate() {
            if fe[img] != i {
                return Err(IsoCheckError::NotInverse(b.edges[i].id.clone()));
            }
        }
        Ok(())
    }

    /// Builds the iso from index maps `a -> b`; the inverse is derived.
    pub fn from_index_maps(
        a: &FiniteQuiver,
        b: &FiniteQuiver,
        vmap: &[usize],
        emap: &[usize],
    ) -> Self {
        let forward = QuiverMorphism {
            vmap: vmap
                .iter()
                .enumerate()
                .map(|(i, &j)| (a.vertices[i].clone(), b.vertices[j].clone()))
                .collect(),
            emap: emap
                .iter()
                .enumerate()
                .map(|(i, &j)| (a.edges[i].id.clone(), b.edges[j].id.clone()))
                .collect(),
        };
        let mut vinv: Vec<(usize, usize)> = vmap.iter().enumerate().map(|(i, &j)| (j, i)).collect();
        vinv.sort();
        let mut einv: Vec<(usize, usize)> = emap.iter().enumerate().map(|(i, &j)| (j, i)).collect();
        einv.sort();
        let backward = QuiverMorphism {
            vmap: vinv
                .into_iter()
                .map(|(j, i)| (b.vertices[j].clone(), a.vertices[i].clone()))
                .collect(),
            emap: einv
                .into_iter()
                .map(|(j, i)| (b.edges[j].id.clone(), a.edges[i].id.clone()))
                .collect(),
        };
        QuiverIso { forward, backward }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(n: i64, d: i64) -> Weight {
        Weight::new(n, d)
    }

    #[test]
    fn single_vertex_no_edges_is_ok() {
        let report = validate_quiver(&["v".into()], &[]);
        assert!(report.is_ok());
    }

    #[test]
    fn dangling_endpoint_is_reported() {
        let report = validate_quiver(&["v".into()], &[EdgeSpec::new("e", "x", "v", w(1, 1))]);
        assert_eq!(report.violations.len(), 1);
        assert!(report.to_string().starts_with("dangling endpoint"));
    }

    #[test]
    fn zero_weight_is_reported() {
        let report = validate_quiver(&["v".into()], &[EdgeSpec::new("e", "v", "v", w(0, 1))]);
        assert!(report.to_string().starts_with("nonpositive weight"));
        let report = validate_quiver(&["v".into()], &[EdgeSpec::new("e", "v", "v", w(-1, 2))]);
        assert!(!report.is_ok());
    }

    #[test]
    fn duplicate_ids_are_reported() {
        let report = validate_quiver(
            &["v".into(), "v".into()],
            &[
                EdgeSpec::new("e", "v", "v", w(1, 1)),
                EdgeSpec::new("e", "v", "v", w(1, 1)),
            ],
        );
        assert_eq!(report.violations.len(), 2);
        assert!(FiniteQuiver::new(vec!["v".into(), "v".into()], vec![]).is_err());
    }

    #[test]
    fn identity_is_a_morphism() {
        let q = FiniteQuiver::from_parts(&["v", "w"], &[("e", "v", "w", w(1, 1))]).unwrap();
        assert!(check_morphism(&q, &q, &QuiverMorphism::identity(&q)).unwrap());
        QuiverIso::identity(&q).verify(&q, &q).unwrap();
    }

    #[test]
    fn swapping_endpoints_breaks_source_square() {
        let q = FiniteQuiver::from_parts(&["v", "w"], &[("e", "v", "w", w(1, 1))]).unwrap();
        let m = QuiverMorphism {
            vmap: [("v", "w"), ("w", "v")]
                .iter()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect(),
            emap: [("e".to_string(), "e".to_string())].into_iter().collect(),
        };
        assert!(!check_morphism(&q, &q, &m).unwrap());
    }

    #[test]
    fn two_cycle_collapses_onto_loop() {
        let cycle = FiniteQuiver::from_parts(
            &["v", "w"],
            &[("a", "v", "w", w(1, 1)), ("b", "w", "v", w(1, 1))],
        )
        .unwrap();
        let loop_q = FiniteQuiver::from_parts(&["x"], &[("l", "x", "x", w(1, 1))]).unwrap();
        let m = QuiverMorphism {
            vmap: [("v", "x"), ("w", "x")]
                .iter()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect(),
            emap: [("a", "l"), ("b", "l")]
                .iter()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect(),
        };
        assert!(check_morphism(&cycle, &loop_q, &m).unwrap());
    }

    #[test]
    fn unknown_ids_are_errors() {
        let q = FiniteQuiver::from_parts(&["v"], &[]).unwrap();
        let mut m = QuiverMorphism::identity(&q);
        m.vmap.insert("v".into(), "nope".into());
        assert_eq!(
            check_morphism(&q, &q, &m),
            Err(MorphismError::UndefinedId("nope".into()))
        );
        let mut m = QuiverMorphism::identity(&q);
        m.vmap.insert("ghost".into(), "v".into());
        assert!(check_morphism(&q, &q, &m).is_err());
    }

    #[test]
    fn weight_mismatch_is_detected() {
        let a = FiniteQuiver::from_parts(&["v"], &[("e", "v", "v", w(1, 1))]).unwrap();
        let b = FiniteQuiver::from_parts(&["v"], &[("e", "v", "v", w(1, 2))]).unwrap();
        assert!(matches!(
            QuiverIso::identity(&a).verify(&a, &b),
            Err(IsoCheckError::WeightMismatch { .. })
        ));
    }
}
