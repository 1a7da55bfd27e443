//! Skew-product quivers and the free actions they carry.
//!
//! For a quiver `Q`, a finite group `G` and a cocycle `κ: E¹ -> G` (any map,
//! no cocycle identity), the skew product `Q ×_κ G` has vertices `E⁰ × G`,
//! edges `E¹ × G`, and
//!
//! ```text
//! s(e, g) = (s(e), g)      r(e, g) = (r(e), κ(e)·g)      weight(e, g) = weight(e)
//! ```
//!
//! `G` acts on it by right translation in the second coordinate,
//! `(x, h)·g = (x, hg)`. That action is free, its quotient recovers `Q`, and
//! conversely every free action is a skew product of its quotient
//! ([`gross_tucker_reconstruct`]).
//!
//! Pair ids are serialized as `x@g`. Pair `(x, g)` sits at index
//! `x·|G| + g`, so base-major with group elements in declared order.

mod classify;
mod quotient;

use indexmap::IndexMap;
use thiserror::Error;

use crate::group::{ActionReport, FiniteGroup, QuiverAction};
use crate::quiver::{EdgeSpec, FiniteQuiver, IsoCheckError, QuiverError};

pub use classify::{gross_tucker_reconstruct, GrossTuckerWitness, Section};
pub use quotient::{
    check_skew_orbit, check_skew_orbit_against, descend_weights, lift_system, quotient_quiver,
    Quotient,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SkewError {
    #[error("cocycle has no value on edge `{0}`")]
    MissingCocycleValue(String),
    #[error("cocycle value `{0}` is not a group element")]
    UnknownElement(String),
    #[error("cocycle is defined on `{0}`, which is not an edge")]
    UnknownEdge(String),
    #[error("invalid action: {}", .0.summary())]
    InvalidAction(ActionReport),
    #[error("action is not free on vertices")]
    NotFree,
    #[error("invalid section: {0}")]
    InvalidSection(String),
    #[error("orbit structure mismatch: {0}")]
    OrbitMismatch(String),
    #[error("canonical isomorphism failed to verify: {0}")]
    CanonicalIsoFailed(IsoCheckError),
    #[error("witness failed to verify: {0}")]
    WitnessFailed(String),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
}

/// A map from edge ids to group elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocycle {
    group: FiniteGroup,
    values: IndexMap<String, usize>,
}

impl Cocycle {
    /// From `edge id -> element name`.
    pub fn new(group: FiniteGroup, map: &IndexMap<String, String>) -> Result<Self, SkewError> {
        let values = map
            .iter()
            .map(|(e, g)| {
                group
                    .index_of(g)
                    .map(|i| (e.clone(), i))
                    .ok_or_else(|| SkewError::UnknownElement(g.clone()))
            })
            .collect::<Result<_, _>>()?;
        Ok(Cocycle { group, values })
    }

    /// From element indices listed in the quiver's edge order.
    pub fn from_indices(q: &FiniteQuiver, group: FiniteGroup, values: &[usize]) -> Self {
        assert_eq!(values.len(), q.edge_count(), "one cocycle value per edge");
        assert!(
            values.iter().all(|&g| g < group.order()),
            "cocycle value out of range"
        );
        Cocycle {
            values: q
                .edges()
                .iter()
                .zip(values)
                .map(|(e, &g)| (e.id().to_string(), g))
                .collect(),
            group,
        }
    }

    /// `κ ≡ 1`.
    pub fn trivial(q: &FiniteQuiver, group: FiniteGroup) -> Self {
        let id = group.identity();
        Cocycle::from_indices(q, group.clone(), &vec![id; q.edge_count()])
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn value(&self, edge: &str) -> Option<usize> {
        self.values.get(edge).copied()
    }

    /// `edge id -> element name`, in insertion order.
    pub fn to_name_map(&self) -> IndexMap<String, String> {
        self.values
            .iter()
            .map(|(e, &g)| (e.clone(), self.group.name(g).to_string()))
            .collect()
    }

    /// Values in the quiver's edge order. Fails if an edge has no value or
    /// the cocycle names an edge the quiver lacks.
    pub fn resolve(&self, q: &FiniteQuiver) -> Result<Vec<usize>, SkewError> {
        if let Some(extra) = self.values.keys().find(|k| q.edge_index(k).is_none()) {
            return Err(SkewError::UnknownEdge(extra.clone()));
        }
        q.edges()
            .iter()
            .map(|e| {
                self.value(e.id())
                    .ok_or_else(|| SkewError::MissingCocycleValue(e.id().to_string()))
            })
            .collect()
    }
}

/// Canonical id of the pair `(base, element)`.
pub fn pair_id(base: &str, element: &str) -> String {
    format!("{base}@{element}")
}

/// Index of `(base, g)` in a skew product over a group of the given order.
pub fn pair_index(base: usize, g: usize, order: usize) -> usize {
    base * order + g
}

/// Inverse of [`pair_index`].
pub fn split_index(index: usize, order: usize) -> (usize, usize) {
    (index / order, index % order)
}

/// The skew-product quiver `q ×_κ G`.
pub fn skew_product(q: &FiniteQuiver, cocycle: &Cocycle) -> Result<FiniteQuiver, SkewError> {
    let kappa = cocycle.resolve(q)?;
    let group = &cocycle.group;
    let n = group.order();
    let vertices = q
        .vertices()
        .iter()
        .flat_map(|v| group.elements().iter().map(move |g| pair_id(v, g)))
        .collect();
    let mut edges = Vec::with_capacity(q.edge_count() * n);
    for (e, edge) in q.edges().iter().enumerate() {
        for g in 0..n {
            let src = pair_id(q.vertex_id(edge.src()), group.name(g));
            let rng = pair_id(q.vertex_id(edge.rng()), group.name(group.mul(kappa[e], g)));
            edges.push(EdgeSpec {
                id: pair_id(edge.id(), group.name(g)),
                src,
                rng,
                weight: edge.weight(),
            });
        }
    }
    Ok(FiniteQuiver::new(vertices, edges)?)
}

/// Right translation `(x, h)·g = (x, hg)` on `skew_product(q, κ)`.
pub fn translation_action(q: &FiniteQuiver, cocycle: &Cocycle) -> Result<QuiverAction, SkewError> {
    cocycle.resolve(q)?;
    let group = cocycle.group.clone();
    let n = group.order();
    let table = |count: usize| -> Vec<Vec<usize>> {
        (0..n)
            .map(|g| {
                (0..count * n)
                    .map(|idx| {
                        let (x, h) = split_index(idx, n);
                        pair_index(x, group.mul(h, g), n)
                    })
                    .collect()
            })
            .collect()
    };
    let vperm = table(q.vertex_count());
    let eperm = table(q.edge_count());
    Ok(QuiverAction::from_tables(group, vperm, eperm))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{is_free, make_cyclic, orbits, validate_action};
    use crate::quiver::{iso_search, Weight};

    fn one_loop() -> FiniteQuiver {
        FiniteQuiver::from_parts(&["v"], &[("e", "v", "v", Weight::from_integer(1))]).unwrap()
    }

    #[test]
    fn trivial_group_gives_isomorphic_copy() {
        let q = one_loop();
        let k = Cocycle::trivial(&q, make_cyclic(1).unwrap());
        let f = skew_product(&q, &k).unwrap();
        assert_eq!(f.vertices(), ["v@0"]);
        assert!(iso_search(&q, &f).unwrap().is_some());
    }

    #[test]
    fn loop_over_z2_is_a_two_cycle() {
        let q = one_loop();
        let k = Cocycle::from_indices(&q, make_cyclic(2).unwrap(), &[1]);
        let f = skew_product(&q, &k).unwrap();
        assert_eq!(f.vertices(), ["v@0", "v@1"]);
        let ends: Vec<(&str, &str, &str)> = f
            .edges()
            .iter()
            .map(|e| (e.id(), f.vertex_id(e.src()), f.vertex_id(e.rng())))
            .collect();
        assert_eq!(ends, vec![("e@0", "v@0", "v@1"), ("e@1", "v@1", "v@0")]);
    }

    #[test]
    fn two_loops_over_z3() {
        let q = FiniteQuiver::from_parts(
            &["v"],
            &[
                ("e1", "v", "v", Weight::from_integer(1)),
                ("e2", "v", "v", Weight::new(1, 3)),
            ],
        )
        .unwrap();
        let k = Cocycle::from_indices(&q, make_cyclic(3).unwrap(), &[1, 2]);
        let f = skew_product(&q, &k).unwrap();
        assert_eq!(f.vertex_count(), 3);
        assert_eq!(f.edge_count(), 6);
        let got: Vec<(&str, &str, &str, Weight)> = f
            .edges()
            .iter()
            .map(|e| {
                (
                    e.id(),
                    f.vertex_id(e.src()),
                    f.vertex_id(e.rng()),
                    e.weight(),
                )
            })
            .collect();
        let third = Weight::new(1, 3);
        let one = Weight::from_integer(1);
        assert_eq!(
            got,
            vec![
                ("e1@0", "v@0", "v@1", one),
                ("e1@1", "v@1", "v@2", one),
                ("e1@2", "v@2", "v@0", one),
                ("e2@0", "v@0", "v@2", third),
                ("e2@1", "v@1", "v@0", third),
                ("e2@2", "v@2", "v@1", third),
            ]
        );
        let a = translation_action(&q, &k).unwrap();
        assert!(validate_action(&f, &a).is_ok());
        assert!(is_free(&f, &a));
        // generator 1 cycles the three vertices and each edge family
        assert_eq!(a.vertex_table()[1], vec![1, 2, 0]);
        assert_eq!(a.edge_table()[1], vec![1, 2, 0, 4, 5, 3]);
    }

    #[test]
    fn translation_on_two_cycle_is_the_swap() {
        let q = one_loop();
        let k = Cocycle::from_indices(&q, make_cyclic(2).unwrap(), &[1]);
        let a = translation_action(&q, &k).unwrap();
        assert_eq!(a.vertex_table(), [vec![0, 1], vec![1, 0]]);
        assert_eq!(a.edge_table(), [vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn z4_translation_has_one_orbit_each() {
        let q = one_loop();
        let k = Cocycle::from_indices(&q, make_cyclic(4).unwrap(), &[1]);
        let f = skew_product(&q, &k).unwrap();
        let o = orbits(&f, &translation_action(&q, &k).unwrap());
        assert_eq!(o.vertex_orbits, vec![vec![0, 1, 2, 3]]);
        assert_eq!(o.edge_orbits, vec![vec![0, 1, 2, 3]]);
    }

    #[test]
    fn missing_and_unknown_cocycle_values() {
        let q = one_loop();
        let z2 = make_cyclic(2).unwrap();
        let empty = Cocycle::new(z2.clone(), &IndexMap::new()).unwrap();
        assert_eq!(
            skew_product(&q, &empty),
            Err(SkewError::MissingCocycleValue("e".into()))
        );
        let bad: IndexMap<String, String> =
            [("e".to_string(), "7".to_string())].into_iter().collect();
        assert_eq!(
            Cocycle::new(z2.clone(), &bad),
            Err(SkewError::UnknownElement("7".into()))
        );
        let extra: IndexMap<String, String> = [("e", "0"), ("zz", "1")]
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        let k = Cocycle::new(z2, &extra).unwrap();
        assert_eq!(
            skew_product(&q, &k),
            Err(SkewError::UnknownEdge("zz".into()))
        );
    }

    #[test]
    fn edgeless_quiver() {
        let q = FiniteQuiver::from_parts(&["a", "b"], &[]).unwrap();
        let k = Cocycle::trivial(&q, make_cyclic(3).unwrap());
        let f = skew_product(&q, &k).unwrap();
        assert_eq!(f.vertex_count(), 6);
        assert_eq!(f.edge_count(), 0);
        let a = translation_action(&q, &k).unwrap();
        assert!(validate_action(&f, &a).is_ok());
        check_skew_orbit(&q, &k).unwrap();
    }
}
