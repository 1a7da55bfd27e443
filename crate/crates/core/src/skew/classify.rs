//! Recovering a skew-product structure from a free action.
//!
//! Given a free action of `G` on `Q` and a choice of one vertex per orbit
//! (a [`Section`]), every vertex is uniquely `rep·g_v`. Then
//!
//! ```text
//! φ(v) = (v̇, g_v)        σ(e) = (ė, g_{s(e)})        κ(ė) = g_{r(e₀)}
//! ```
//!
//! where `e₀ = e·g_{s(e)}⁻¹` is the member of the orbit of `e` whose source
//! is the chosen representative. `(σ, φ)` is then an equivariant isomorphism
//! `Q ≅ q(Q) ×_κ G`.

use indexmap::IndexMap;

use crate::group::{is_free, validate_action, QuiverAction};
use crate::quiver::{FiniteQuiver, QuiverIso};

use super::{pair_index, quotient_quiver, skew_product, Cocycle, SkewError};

/// One chosen vertex per vertex orbit, keyed by quotient vertex id.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Section {
    pub representative: IndexMap<String, String>,
}

impl Section {
    /// Least vertex (in input order) of every orbit.
    pub fn least(q: &FiniteQuiver, a: &QuiverAction) -> Result<Self, SkewError> {
        let quotient = quotient_quiver(q, a)?;
        Ok(Section {
            representative: quotient
                .orbits
                .vertex_orbits
                .iter()
                .zip(quotient.quiver.vertices())
                .map(|(o, name)| (name.clone(), q.vertex_id(o[0]).to_string()))
                .collect(),
        })
    }

    /// Every section of the action, enumerated in lexicographic order of
    /// choices, stopping after `limit`.
    pub fn enumerate(
        q: &FiniteQuiver,
        a: &QuiverAction,
        limit: usize,
    ) -> Result<Vec<Self>, SkewError> {
        let quotient = quotient_quiver(q, a)?;
        let classes = &quotient.orbits.vertex_orbits;
        let mut out = Vec::new();
        let mut choice = vec![0usize; classes.len()];
        while out.len() < limit {
            out.push(Section {
                representative: classes
                    .iter()
                    .zip(quotient.quiver.vertices())
                    .zip(&choice)
                    .map(|((o, name), &c)| (name.clone(), q.vertex_id(o[c]).to_string()))
                    .collect(),
            });
            // odometer, last orbit fastest
            let mut k = classes.len();
            loop {
                if k == 0 {
                    return Ok(out);
                }
                k -= 1;
                choice[k] += 1;
                if choice[k] < classes[k].len() {
                    break;
                }
                choice[k] = 0;
            }
        }
        Ok(out)
    }
}

/// Output of [`gross_tucker_reconstruct`].
///
/// `phi[v] = (quotient vertex, g)` and `sigma[e] = (quotient edge, g)`, all
/// as indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrossTuckerWitness {
    pub quotient: FiniteQuiver,
    pub cocycle: Cocycle,
    pub phi: Vec<(usize, usize)>,
    pub sigma: Vec<(usize, usize)>,
}

impl GrossTuckerWitness {
    /// `phi` as ids: vertex -> (quotient vertex, element).
    pub fn phi_ids(&self, q: &FiniteQuiver) -> IndexMap<String, (String, String)> {
        let g = self.cocycle.group();
        self.phi
            .iter()
            .enumerate()
            .map(|(v, &(o, h))| {
                (
                    q.vertex_id(v).to_string(),
                    (
                        self.quotient.vertex_id(o).to_string(),
                        g.name(h).to_string(),
                    ),
                )
            })
            .collect()
    }

    /// `sigma` as ids: edge -> (quotient edge, element).
    pub fn sigma_ids(&self, q: &FiniteQuiver) -> IndexMap<String, (String, String)> {
        let g = self.cocycle.group();
        self.sigma
            .iter()
            .enumerate()
            .map(|(e, &(o, h))| {
                (
                    q.edge(e).id().to_string(),
                    (
                        self.quotient.edge(o).id().to_string(),
                        g.name(h).to_string(),
                    ),
                )
            })
            .collect()
    }

    /// Rebuilds a witness from id maps, e.g. after deserialization.
    pub fn from_ids(
        q: &FiniteQuiver,
        quotient: FiniteQuiver,
        cocycle: Cocycle,
        phi: &IndexMap<String, (String, String)>,
        sigma: &IndexMap<String, (String, String)>,
    ) -> Result<Self, SkewError> {
        let group = cocycle.group();
        let bad = |what: &str| SkewError::WitnessFailed(format!("unresolvable {what}"));
        let element = |name: &str| group.index_of(name).ok_or_else(|| bad(name));
        let phi = q
            .vertices()
            .iter()
            .map(|v| {
                let (o, g) = phi.get(v).ok_or_else(|| bad(v))?;
                Ok((quotient.vertex_index(o).ok_or_else(|| bad(o))?, element(g)?))
            })
            .collect::<Result<Vec<_>, SkewError>>()?;
        let sigma = q
            .edges()
            .iter()
            .map(|e| {
                let (o, g) = sigma.get(e.id()).ok_or_else(|| bad(e.id()))?;
                Ok((quotient.edge_index(o).ok_or_else(|| bad(o))?, element(g)?))
            })
            .collect::<Result<Vec<_>, SkewError>>()?;
        Ok(GrossTuckerWitness {
            quotient,
            cocycle,
            phi,
            sigma,
        })
    }

    /// `(σ, φ)` as an isomorphism `q -> skew_product(quotient, cocycle)`.
    pub fn to_iso(&self, q: &FiniteQuiver) -> Result<(FiniteQuiver, QuiverIso), SkewError> {
        let skew = skew_product(&self.quotient, &self.cocycle)?;
        let n = self.cocycle.group().order();
        let vmap: Vec<usize> = self.phi.iter().map(|&(o, g)| pair_index(o, g, n)).collect();
        let emap: Vec<usize> = self
            .sigma
            .iter()
            .map(|&(o, g)| pair_index(o, g, n))
            .collect();
        let iso = QuiverIso::from_index_maps(q, &skew, &vmap, &emap);
        Ok((skew, iso))
    }

    /// Checks bijectivity, the weight-preserving isomorphism onto the skew
    /// product, and equivariance against the action `a` on `q`.
    pub fn verify(&self, q: &FiniteQuiver, a: &QuiverAction) -> Result<(), SkewError> {
        let fail = |msg: String| SkewError::WitnessFailed(msg);
        let group = self.cocycle.group();
        let n = group.order();
        if a.group().order() != n {
            return Err(fail("action and cocycle groups differ in order".into()));
        }
        if self.phi.len() != q.vertex_count() || self.sigma.len() != q.edge_count() {
            return Err(fail("maps are not total".into()));
        }
        let bijective = |pairs: &[(usize, usize)], base: usize| {
            let mut hit = vec![false; base * n];
            pairs.len() == base * n
                && pairs.iter().all(|&(o, g)| {
                    o < base && g < n && !std::mem::replace(&mut hit[pair_index(o, g, n)], true)
                })
        };
        if !bijective(&self.phi, self.quotient.vertex_count()) {
            return Err(fail(
                "phi is not a bijection onto quotient vertices × G".into(),
            ));
        }
        if !bijective(&self.sigma, self.quotient.edge_count()) {
            return Err(fail(
                "sigma is not a bijection onto quotient edges × G".into(),
            ));
        }
        let (skew, iso) = self.to_iso(q)?;
        iso.verify(q, &skew).map_err(|e| fail(e.to_string()))?;
        let translate = |(o, h): (usize, usize), g: usize| (o, group.mul(h, g));
        for g in 0..n {
            for v in 0..q.vertex_count() {
                if self.phi[a.act_vertex(v, g)] != translate(self.phi[v], g) {
                    return Err(fail(format!(
                        "phi is not equivariant at vertex `{}`",
                        q.vertex_id(v)
                    )));
                }
            }
            for e in 0..q.edge_count() {
                if self.sigma[a.act_edge(e, g)] != translate(self.sigma[e], g) {
                    return Err(fail(format!(
                        "sigma is not equivariant at edge `{}`",
                        q.edge(e).id()
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Exhibits `q` as a skew product of its quotient by a free action, using
/// the given section to trivialize the vertex orbits.
pub fn gross_tucker_reconstruct(
    q: &FiniteQuiver,
    a: &QuiverAction,
    section: &Section,
) -> Result<GrossTuckerWitness, SkewError> {
    let report = validate_action(q, a);
    if !report.is_ok() {
        return Err(SkewError::InvalidAction(report));
    }
    if !is_free(q, a) {
        return Err(SkewError::NotFree);
    }
    let quotient = quotient_quiver(q, a)?;
    let orbits = &quotient.orbits;
    let group = a.group();

    if let Some(k) = section
        .representative
        .keys()
        .find(|k| quotient.quiver.vertex_index(k).is_none())
    {
        return Err(SkewError::InvalidSection(format!(
            "`{k}` is not a vertex orbit"
        )));
    }
    let mut reps = Vec::with_capacity(orbits.vertex_orbits.len());
    for (k, name) in quotient.quiver.vertices().iter().enumerate() {
        let chosen = section
            .representative
            .get(name)
            .ok_or_else(|| SkewError::InvalidSection(format!("no representative for `{name}`")))?;
        let v = q
            .vertex_index(chosen)
            .filter(|&v| orbits.vertex_orbit_of[v] == k)
            .ok_or_else(|| {
                SkewError::InvalidSection(format!("`{chosen}` is not in orbit `{name}`"))
            })?;
        reps.push(v);
    }

    // g_v with rep·g_v = v; unique because the action is free
    let mut offset = vec![usize::MAX; q.vertex_count()];
    for &rep in &reps {
        for g in 0..group.order() {
            offset[a.act_vertex(rep, g)] = g;
        }
    }

    let phi: Vec<(usize, usize)> = (0..q.vertex_count())
        .map(|v| (orbits.vertex_orbit_of[v], offset[v]))
        .collect();
    let sigma: Vec<(usize, usize)> = q
        .edges()
        .iter()
        .enumerate()
        .map(|(e, edge)| (orbits.edge_orbit_of[e], offset[edge.src()]))
        .collect();

    let kappa: Vec<usize> = orbits
        .edge_orbits
        .iter()
        .map(|orbit| {
            let e = orbit[0];
            let based = a.act_edge(e, group.inv(offset[q.edge(e).src()]));
            debug_assert_eq!(offset[q.edge(based).src()], group.identity());
            offset[q.edge(based).rng()]
        })
        .collect();
    let cocycle = Cocycle::from_indices(&quotient.quiver, group.clone(), &kappa);

    let witness = GrossTuckerWitness {
        quotient: quotient.quiver,
        cocycle,
        phi,
        sigma,
    };
    witness.verify(q, a)?;
    Ok(witness)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::make_cyclic;
    use crate::quiver::Weight;
    use crate::skew::translation_action;

    fn two_loops_z3() -> (FiniteQuiver, Cocycle) {
        let q = FiniteQuiver::from_parts(
            &["v"],
            &[
                ("e1", "v", "v", Weight::from_integer(1)),
                ("e2", "v", "v", Weight::new(1, 3)),
            ],
        )
        .unwrap();
        let k = Cocycle::from_indices(&q, make_cyclic(3).unwrap(), &[1, 2]);
        (q, k)
    }

    #[test]
    fn identity_section_recovers_the_cocycle() {
        let (q, k) = two_loops_z3();
        let f = skew_product(&q, &k).unwrap();
        let a = translation_action(&q, &k).unwrap();
        let s = Section::least(&f, &a).unwrap();
        assert_eq!(s.representative["v@0"], "v@0");
        let w = gross_tucker_reconstruct(&f, &a, &s).unwrap();
        assert_eq!(w.cocycle.resolve(&w.quotient).unwrap(), vec![1, 2]);
        // identity relabeling: (v, h) -> (orbit of v, h)
        assert_eq!(w.phi, vec![(0, 0), (0, 1), (0, 2)]);
        assert_eq!(
            w.sigma,
            vec![(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2)]
        );
    }

    #[test]
    fn other_sections_still_verify() {
        // Two vertices so a non-identity section can change the cocycle.
        let q = FiniteQuiver::from_parts(
            &["a", "b"],
            &[
                ("x", "a", "b", Weight::from_integer(2)),
                ("y", "b", "a", Weight::new(3, 5)),
                ("z", "a", "a", Weight::from_integer(1)),
            ],
        )
        .unwrap();
        let k = Cocycle::from_indices(&q, make_cyclic(4).unwrap(), &[1, 0, 3]);
        let f = skew_product(&q, &k).unwrap();
        let a = translation_action(&q, &k).unwrap();
        let sections = Section::enumerate(&f, &a, usize::MAX).unwrap();
        assert_eq!(sections.len(), 16);
        let mut changed = false;
        for s in &sections {
            let w = gross_tucker_reconstruct(&f, &a, s).unwrap();
            w.verify(&f, &a).unwrap();
            changed |= w.cocycle.resolve(&w.quotient).unwrap() != vec![1, 0, 3];
        }
        assert!(changed);
    }

    #[test]
    fn trivial_group_gives_identity_witness() {
        let q = FiniteQuiver::from_parts(&["v", "w"], &[("e", "v", "w", Weight::from_integer(1))])
            .unwrap();
        let a = QuiverAction::trivial(&q, make_cyclic(1).unwrap());
        let s = Section::least(&q, &a).unwrap();
        let w = gross_tucker_reconstruct(&q, &a, &s).unwrap();
        assert_eq!(w.quotient, q);
        assert_eq!(w.cocycle.resolve(&q).unwrap(), vec![0]);
        assert_eq!(w.phi, vec![(0, 0), (1, 0)]);
    }

    #[test]
    fn bad_sections_and_non_free_actions() {
        let (q, k) = two_loops_z3();
        let f = skew_product(&q, &k).unwrap();
        let a = translation_action(&q, &k).unwrap();
        let mut s = Section::least(&f, &a).unwrap();
        s.representative.insert("v@0".into(), "nope".into());
        assert!(matches!(
            gross_tucker_reconstruct(&f, &a, &s),
            Err(SkewError::InvalidSection(_))
        ));
        assert!(matches!(
            gross_tucker_reconstruct(&f, &a, &Section::default()),
            Err(SkewError::InvalidSection(_))
        ));
        let lone = FiniteQuiver::from_parts(&["v"], &[]).unwrap();
        let fixed = QuiverAction::trivial(&lone, make_cyclic(2).unwrap());
        assert_eq!(
            gross_tucker_reconstruct(&lone, &fixed, &Section::default()),
            Err(SkewError::NotFree)
        );
    }

    #[test]
    fn tampered_witness_fails() {
        let (q, k) = two_loops_z3();
        let f = skew_product(&q, &k).unwrap();
        let a = translation_action(&q, &k).unwrap();
        let mut w = gross_tucker_reconstruct(&f, &a, &Section::least(&f, &a).unwrap()).unwrap();
        w.phi.swap(1, 2);
        assert!(w.verify(&f, &a).is_err());
    }
}
