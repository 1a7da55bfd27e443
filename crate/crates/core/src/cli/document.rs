//! JSON document formats.
//!
//! Weights are strings holding an exact rational, `"p/q"` or an integer, so
//! no floating point ever touches them. Emitted weights are reduced.

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::group::{make_cyclic, make_symmetric, FiniteGroup, PermutationMaps, QuiverAction};
use crate::quiver::{EdgeSpec, FiniteQuiver, QuiverMorphism, Weight};
use crate::skew::{Cocycle, GrossTuckerWitness, Section};

use super::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDocument {
    pub id: String,
    pub src: String,
    pub rng: String,
    pub weight: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverDocument {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeDocument>,
}

/// Parses `"p/q"` or `"p"` into an exact rational.
pub fn parse_weight(s: &str) -> Result<Weight, CliError> {
    let bad = || {
        CliError::Parse(format!(
            "weight `{s}` is not a rational \"p/q\" or an integer"
        ))
    };
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: i64 = num.parse().map_err(|_| bad())?;
    let den: i64 = den.parse().map_err(|_| bad())?;
    if den == 0 {
        return Err(bad());
    }
    Ok(Weight::new(num, den))
}

pub fn format_weight(w: &Weight) -> String {
    w.to_string()
}

impl QuiverDocument {
    pub fn from_quiver(q: &FiniteQuiver) -> Self {
        QuiverDocument {
            vertices: q.vertices().to_vec(),
            edges: q
                .to_edge_specs()
                .into_iter()
                .map(|e| EdgeDocument {
                    weight: format_weight(&e.weight),
                    id: e.id,
                    src: e.src,
                    rng: e.rng,
                })
                .collect(),
        }
    }

    /// Raw parts, before quiver validation.
    pub fn to_specs(&self) -> Result<(Vec<String>, Vec<EdgeSpec>), CliError> {
        let edges = self
            .edges
            .iter()
            .map(|e| {
                Ok(EdgeSpec {
                    id: e.id.clone(),
                    src: e.src.clone(),
                    rng: e.rng.clone(),
                    weight: parse_weight(&e.weight)?,
                })
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        Ok((self.vertices.clone(), edges))
    }

    pub fn to_quiver(&self) -> Result<FiniteQuiver, CliError> {
        let (vertices, edges) = self.to_specs()?;
        FiniteQuiver::new(vertices, edges).map_err(|e| CliError::Domain(e.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum GroupDocument {
    Cyclic {
        n: usize,
    },
    Symmetric {
        n: usize,
    },
    Table {
        elements: Vec<String>,
        identity: String,
        table: Vec<Vec<String>>,
    },
}

impl GroupDocument {
    pub fn to_group(&self) -> Result<FiniteGroup, CliError> {
        let group = match self {
            GroupDocument::Cyclic { n } => make_cyclic(*n),
            GroupDocument::Symmetric { n } => make_symmetric(*n),
            GroupDocument::Table {
                elements,
                identity,
                table,
            } => FiniteGroup::from_table(elements.clone(), identity, table.clone()),
        };
        group.map_err(|e| CliError::Domain(format!("invalid group: {e}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CocycleDocument {
    pub group: GroupDocument,
    pub map: IndexMap<String, String>,
}

impl CocycleDocument {
    pub fn to_cocycle(&self) -> Result<Cocycle, CliError> {
        Cocycle::new(self.group.to_group()?, &self.map).map_err(|e| CliError::Domain(e.to_string()))
    }

    pub fn from_cocycle(group: GroupDocument, cocycle: &Cocycle) -> Self {
        CocycleDocument {
            group,
            map: cocycle.to_name_map(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionDocument {
    pub group: GroupDocument,
    pub vperm: PermutationMaps,
    pub eperm: PermutationMaps,
}

impl ActionDocument {
    pub fn to_action(&self, q: &FiniteQuiver) -> Result<QuiverAction, CliError> {
        QuiverAction::from_maps(q, self.group.to_group()?, &self.vperm, &self.eperm)
            .map_err(|e| CliError::Domain(e.to_string()))
    }

    pub fn from_action(group: GroupDocument, q: &FiniteQuiver, a: &QuiverAction) -> Self {
        let (vperm, eperm) = a.to_maps(q);
        ActionDocument {
            group,
            vperm,
            eperm,
        }
    }
}

/// Section file: quotient vertex id -> chosen vertex id.
pub type SectionDocument = IndexMap<String, String>;

pub fn section_from_document(doc: &SectionDocument) -> Section {
    Section {
        representative: doc.clone(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismDocument {
    pub vertices: IndexMap<String, String>,
    pub edges: IndexMap<String, String>,
}

impl From<&QuiverMorphism> for MorphismDocument {
    fn from(m: &QuiverMorphism) -> Self {
        MorphismDocument {
            vertices: m.vmap.clone(),
            edges: m.emap.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientDocument {
    pub quotient: QuiverDocument,
    pub projection: MorphismDocument,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairDocument {
    pub orbit: String,
    pub element: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessDocument {
    pub quotient: QuiverDocument,
    pub cocycle: CocycleDocument,
    pub section: SectionDocument,
    pub phi: IndexMap<String, PairDocument>,
    pub sigma: IndexMap<String, PairDocument>,
}

impl WitnessDocument {
    pub fn new(
        q: &FiniteQuiver,
        group: GroupDocument,
        section: &Section,
        witness: &GrossTuckerWitness,
    ) -> Self {
        let pairs = |m: IndexMap<String, (String, String)>| {
            m.into_iter()
                .map(|(k, (orbit, element))| (k, PairDocument { orbit, element }))
                .collect()
        };
        WitnessDocument {
            quotient: QuiverDocument::from_quiver(&witness.quotient),
            cocycle: CocycleDocument::from_cocycle(group, &witness.cocycle),
            section: section.representative.clone(),
            phi: pairs(witness.phi_ids(q)),
            sigma: pairs(witness.sigma_ids(q)),
        }
    }

    /// Rebuilds the witness against the original quiver.
    pub fn to_witness(&self, q: &FiniteQuiver) -> Result<GrossTuckerWitness, CliError> {
        let unpair = |m: &IndexMap<String, PairDocument>| -> IndexMap<String, (String, String)> {
            m.iter()
                .map(|(k, p)| (k.clone(), (p.orbit.clone(), p.element.clone())))
                .collect()
        };
        GrossTuckerWitness::from_ids(
            q,
            self.quotient.to_quiver()?,
            self.cocycle.to_cocycle()?,
            &unpair(&self.phi),
            &unpair(&self.sigma),
        )
        .map_err(|e| CliError::Domain(e.to_string()))
    }
}
