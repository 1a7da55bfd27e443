//! Quotients by free actions, with descent and lift of edge weights.

use crate::group::{is_free, orbits, validate_action, Orbits, QuiverAction};
use crate::quiver::{check_morphism, EdgeSpec, FiniteQuiver, QuiverIso, QuiverMorphism, Weight};

use super::{skew_product, split_index, translation_action, Cocycle, SkewError};

/// Orbit quiver together with the orbit map onto it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    pub quiver: FiniteQuiver,
    pub projection: QuiverMorphism,
    pub orbits: Orbits,
}

/// The quiver of orbits of a free action.
///
/// Each orbit is named after its least member. The descended weight of an
/// edge orbit is the weight of any member; equivariance makes that choice
/// irrelevant, and it is re-checked here.
pub fn quotient_quiver(q: &FiniteQuiver, a: &QuiverAction) -> Result<Quotient, SkewError> {
    let report = validate_action(q, a);
    if !report.is_ok() {
        return Err(SkewError::InvalidAction(report));
    }
    if !is_free(q, a) {
        return Err(SkewError::NotFree);
    }
    let orbits = orbits(q, a);
    let vertices: Vec<String> = orbits
        .vertex_orbits
        .iter()
        .map(|o| q.vertex_id(o[0]).to_string())
        .collect();
    let mut edges = Vec::with_capacity(orbits.edge_orbits.len());
    for orbit in &orbits.edge_orbits {
        let rep = q.edge(orbit[0]);
        assert!(
            orbit.iter().all(|&e| q.edge(e).weight() == rep.weight()),
            "validated action preserves weights"
        );
        edges.push(EdgeSpec {
            id: rep.id().to_string(),
            src: vertices[orbits.vertex_orbit_of[rep.src()]].clone(),
            rng: vertices[orbits.vertex_orbit_of[rep.rng()]].clone(),
            weight: rep.weight(),
        });
    }
    let quiver = FiniteQuiver::new(vertices, edges)?;
    let projection = QuiverMorphism {
        vmap: (0..q.vertex_count())
            .map(|v| {
                (
                    q.vertex_id(v).to_string(),
                    quiver.vertex_id(orbits.vertex_orbit_of[v]).to_string(),
                )
            })
            .collect(),
        emap: (0..q.edge_count())
            .map(|e| {
                (
                    q.edge(e).id().to_string(),
                    quiver.edge(orbits.edge_orbit_of[e]).id().to_string(),
                )
            })
            .collect(),
    };
    debug_assert_eq!(check_morphism(q, &quiver, &projection), Ok(true));
    Ok(Quotient {
        quiver,
        projection,
        orbits,
    })
}

/// Weights of the quotient, in quotient edge order.
pub fn descend_weights(q: &FiniteQuiver, a: &QuiverAction) -> Result<Vec<Weight>, SkewError> {
    Ok(quotient_quiver(q, a)?.quiver.weights())
}

/// Lifts the weights of `quot` to `total` along the orbit map `projection`:
/// every edge receives the weight of its orbit. The weights already on
/// `total` are ignored; only its underlying multigraph and the action's
/// permutation structure matter.
pub fn lift_system(
    quot: &FiniteQuiver,
    total: &FiniteQuiver,
    a: &QuiverAction,
    projection: &QuiverMorphism,
) -> Result<FiniteQuiver, SkewError> {
    let unweighted = total.with_weights(&vec![Weight::from_integer(1); total.edge_count()])?;
    let report = validate_action(&unweighted, a);
    if !report.is_ok() {
        return Err(SkewError::InvalidAction(report));
    }
    if !is_free(&unweighted, a) {
        return Err(SkewError::NotFree);
    }
    let mismatch = |msg: String| SkewError::OrbitMismatch(msg);
    match check_morphism(total, quot, projection) {
        Ok(true) => {}
        Ok(false) => return Err(mismatch("projection does not commute with src/rng".into())),
        Err(e) => return Err(mismatch(e.to_string())),
    }
    let o = orbits(&unweighted, a);
    let image_of_vertex = |v: usize| {
        quot.vertex_index(&projection.vmap[total.vertex_id(v)])
            .expect("checked")
    };
    let image_of_edge = |e: usize| {
        quot.edge_index(&projection.emap[total.edge(e).id()])
            .expect("checked")
    };
    for (kind, classes, count, image) in [
        (
            "vertex",
            &o.vertex_orbits,
            quot.vertex_count(),
            &image_of_vertex as &dyn Fn(usize) -> usize,
        ),
        ("edge", &o.edge_orbits, quot.edge_count(), &image_of_edge),
    ] {
        if classes.len() != count {
            return Err(mismatch(format!(
                "{} {kind} orbits but {count} quotient {kind}s",
                classes.len()
            )));
        }
        let mut hit = vec![false; count];
        for class in classes {
            let target = image(class[0]);
            if class.iter().any(|&x| image(x) != target) {
                return Err(mismatch(format!(
                    "{kind} orbit is not mapped to a single point"
                )));
            }
            if std::mem::replace(&mut hit[target], true) {
                return Err(mismatch(format!("two {kind} orbits share an image")));
            }
        }
    }
    let weights: Vec<Weight> = (0..total.edge_count())
        .map(|e| quot.edge(image_of_edge(e)).weight())
        .collect();
    Ok(total.with_weights(&weights)?)
}

/// The canonical isomorphism from the quotient of `q ×_κ G` by translation
/// back onto `q`, projecting each orbit onto its first coordinate. Returned
/// only after it verifies.
pub fn check_skew_orbit(q: &FiniteQuiver, cocycle: &Cocycle) -> Result<QuiverIso, SkewError> {
    let f = skew_product(q, cocycle)?;
    check_skew_orbit_against(q, cocycle, &f)
}

/// As [`check_skew_orbit`], but for a given total quiver `f` laid out like
/// `skew_product(q, κ)`. Lets callers check a possibly tampered copy.
pub fn check_skew_orbit_against(
    q: &FiniteQuiver,
    cocycle: &Cocycle,
    f: &FiniteQuiver,
) -> Result<QuiverIso, SkewError> {
    let n = cocycle.group().order();
    let action = translation_action(q, cocycle)?;
    let quotient = quotient_quiver(f, &action)?;
    let vmap: Vec<usize> = quotient
        .orbits
        .vertex_orbits
        .iter()
        .map(|o| split_index(o[0], n).0)
        .collect();
    let emap: Vec<usize> = quotient
        .orbits
        .edge_orbits
        .iter()
        .map(|o| split_index(o[0], n).0)
        .collect();
    let iso = QuiverIso::from_index_maps(&quotient.quiver, q, &vmap, &emap);
    iso.verify(&quotient.quiver, q)
        .map_err(SkewError::CanonicalIsoFailed)?;
    Ok(iso)
}
