//! Self-checking suite of structural laws for a single `(quiver, cocycle)` pair.
//!
//! Every check builds what it needs, asserts an exact identity and reports
//! PASS or FAIL with the reason. Checks that only make sense for acyclic
//! quivers report SKIP otherwise. Results come back in a fixed order.

use std::collections::HashSet;
use std::fmt;

use crate::cstar::{
    acyclic_block_structure, coaction_crossed_product_blocks, dual_crossed_product_blocks,
    graded_dimensions, is_acyclic, path_space, regular_vertices,
};
use crate::group::{is_free, orbits, validate_action, QuiverAction};
use crate::quiver::{iso_search_with_budget, FiniteQuiver, Weight, DEFAULT_NODE_BUDGET};
use crate::skew::{
    check_skew_orbit_against, descend_weights, gross_tucker_reconstruct, lift_system, pair_index,
    quotient_quiver, skew_product, split_index, translation_action, Cocycle, Section,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail(String),
    Skip(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub outcome: Outcome,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        !matches!(self.outcome, Outcome::Fail(_))
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.outcome {
            Outcome::Pass => write!(f, "PASS {}", self.name),
            Outcome::Fail(why) => write!(f, "FAIL {}: {why}", self.name),
            Outcome::Skip(why) => write!(f, "SKIP {}: {why}", self.name),
        }
    }
}

/// Deliberate corruption of the skew product, used to prove the suite can fail.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fault {
    /// Doubles the weight of the first skew-product edge.
    MutateWeight,
}

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    /// Maximum number of sections tried in the reconstruction check.
    pub section_budget: usize,
    /// Node budget for the independent isomorphism search.
    pub iso_budget: u64,
    pub fault: Option<Fault>,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            section_budget: 64,
            iso_budget: DEFAULT_NODE_BUDGET,
            fault: None,
        }
    }
}

fn outcome(r: Result<(), String>) -> Outcome {
    match r {
        Ok(()) => Outcome::Pass,
        Err(e) => Outcome::Fail(e),
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Independently of the canonical map, a backtracking search finds a
/// weight-preserving isomorphism from the quotient onto `q`.
pub fn check_quotient_search(
    q: &FiniteQuiver,
    f: &FiniteQuiver,
    a: &QuiverAction,
    budget: u64,
) -> Result<(), String> {
    let quot = quotient_quiver(f, a).map_err(|e| e.to_string())?;
    let iso = iso_search_with_budget(&quot.quiver, q, budget)
        .map_err(|e| e.to_string())?
        .ok_or_else(|| "quotient is not isomorphic to the base quiver".to_string())?;
    iso.verify(&quot.quiver, q).map_err(|e| e.to_string())
}

/// Translation action is valid and free, no non-identity element fixes an
/// edge, and every orbit has exactly `|G|` members.
pub fn check_freeness(f: &FiniteQuiver, a: &QuiverAction) -> Result<(), String> {
    let report = validate_action(f, a);
    ensure(report.is_ok(), || {
        format!("invalid action: {}", report.summary())
    })?;
    ensure(is_free(f, a), || "translation fixes a vertex".into())?;
    let group = a.group();
    for g in (0..group.order()).filter(|&g| g != group.identity()) {
        if let Some(e) = (0..f.edge_count()).find(|&e| a.act_edge(e, g) == e) {
            return Err(format!(
                "element `{}` fixes edge `{}`",
                group.name(g),
                f.edge(e).id()
            ));
        }
    }
    let o = orbits(f, a);
    let n = group.order();
    ensure(
        o.vertex_orbits
            .iter()
            .chain(&o.edge_orbits)
            .all(|c| c.len() == n),
        || "an orbit has size other than |G|".into(),
    )
}

/// Reconstructs from the identity-coordinate section (must give back `κ`)
/// and from up to `budget` sections in total (each witness must verify).
pub fn check_reconstruction(
    q: &FiniteQuiver,
    cocycle: &Cocycle,
    f: &FiniteQuiver,
    a: &QuiverAction,
    budget: usize,
) -> Result<usize, String> {
    let group = cocycle.group();
    let expected = cocycle.resolve(q).map_err(|e| e.to_string())?;
    let quotient = quotient_quiver(f, a).map_err(|e| e.to_string())?;
    let n = group.order();
    let identity_section = Section {
        representative: quotient
            .quiver
            .vertices()
            .iter()
            .zip(&quotient.orbits.vertex_orbits)
            .map(|(name, orbit)| {
                let base = split_index(orbit[0], n).0;
                (
                    name.clone(),
                    f.vertex_id(pair_index(base, group.identity(), n))
                        .to_string(),
                )
            })
            .collect(),
    };
    let w = gross_tucker_reconstruct(f, a, &identity_section).map_err(|e| e.to_string())?;
    // quotient edge k is the orbit of (e_k, ·), so cocycles compare positionally
    let recovered = w.cocycle.resolve(&w.quotient).map_err(|e| e.to_string())?;
    ensure(recovered == expected, || {
        "identity section did not recover κ".into()
    })?;
    let sections = Section::enumerate(f, a, budget).map_err(|e| e.to_string())?;
    for s in &sections {
        let w = gross_tucker_reconstruct(f, a, s).map_err(|e| e.to_string())?;
        w.verify(f, a).map_err(|e| e.to_string())?;
    }
    Ok(sections.len())
}

/// `descend ∘ lift` and `lift ∘ descend` are identities on weight data.
pub fn check_descent_lift(f: &FiniteQuiver, a: &QuiverAction) -> Result<(), String> {
    let quot = quotient_quiver(f, a).map_err(|e| e.to_string())?;
    let relifted = lift_system(&quot.quiver, f, a, &quot.projection).map_err(|e| e.to_string())?;
    ensure(&relifted == f, || {
        "lift ∘ descend changed the weights".into()
    })?;
    let fresh: Vec<Weight> = quot
        .quiver
        .weights()
        .iter()
        .enumerate()
        .map(|(i, w)| w * Weight::new(i as i64 + 2, i as i64 + 1))
        .collect();
    let target = quot
        .quiver
        .with_weights(&fresh)
        .map_err(|e| e.to_string())?;
    let lifted = lift_system(&target, f, a, &quot.projection).map_err(|e| e.to_string())?;
    let back = descend_weights(&lifted, a).map_err(|e| e.to_string())?;
    ensure(back == fresh, || {
        "descend ∘ lift changed the weights".into()
    })
}

/// Every path of `q` from `w` lifts uniquely to a path of the skew product
/// from `(w, h)`, ending at `(r(p), κ(p)·h)`, and these lifts are all of the
/// paths from `(w, h)`.
pub fn check_path_lifting(
    q: &FiniteQuiver,
    cocycle: &Cocycle,
    f: &FiniteQuiver,
) -> Result<(), String> {
    let kappa = cocycle.resolve(q).map_err(|e| e.to_string())?;
    let group = cocycle.group();
    let n = group.order();
    let base = path_space(q).map_err(|e| e.to_string())?;
    let total = path_space(f).map_err(|e| e.to_string())?;
    for (w, paths) in base.from.iter().enumerate() {
        for h in 0..n {
            let start = pair_index(w, h, n);
            let upstairs: HashSet<&[usize]> = total.from[start].iter().map(|p| p.edges()).collect();
            ensure(upstairs.len() == paths.len(), || {
                format!(
                    "{} paths from `{}` but {} upstairs",
                    paths.len(),
                    q.vertex_id(w),
                    upstairs.len()
                )
            })?;
            let mut lifts = HashSet::new();
            for p in paths {
                // walk eₙ, …, e₁ from (w, h)
                let mut at = h;
                let mut lifted = Vec::with_capacity(p.len());
                for &e in p.edges().iter().rev() {
                    let up = pair_index(e, at, n);
                    lifted.push(up);
                    at = split_index(f.edge(up).rng(), n).1;
                }
                lifted.reverse();
                let end = pair_index(p.range(q), group.mul(p.label(group, &kappa), h), n);
                let actual_end = lifted.first().map_or(start, |&e| f.edge(e).rng());
                ensure(actual_end == end, || "lift ends at the wrong vertex".into())?;
                ensure(upstairs.contains(lifted.as_slice()), || {
                    "lift is not a path".into()
                })?;
                lifts.insert(lifted);
            }
            ensure(lifts.len() == paths.len(), || {
                "two paths share a lift".into()
            })?;
        }
    }
    Ok(())
}

/// Skew product blocks equal the predicted coaction crossed product blocks,
/// non-regular vertices correspond, and the grading sums to the dimension.
pub fn check_block_identity(
    q: &FiniteQuiver,
    cocycle: &Cocycle,
    f: &FiniteQuiver,
) -> Result<(), String> {
    let n = cocycle.group().order();
    let direct = acyclic_block_structure(f).map_err(|e| e.to_string())?;
    let predicted = coaction_crossed_product_blocks(q, cocycle).map_err(|e| e.to_string())?;
    ensure(direct == predicted, || {
        format!(
            "skew product blocks {:?} != predicted {:?}",
            direct.blocks, predicted.blocks
        )
    })?;
    let base = acyclic_block_structure(q).map_err(|e| e.to_string())?;
    ensure(direct.dimension() == n as u64 * base.dimension(), || {
        "dim C*(F) != |G|·dim C*(Q)".into()
    })?;
    let reg_q: HashSet<usize> = regular_vertices(q).into_iter().collect();
    let reg_f: HashSet<usize> = regular_vertices(f).into_iter().collect();
    for x in 0..f.vertex_count() {
        let (w, _) = split_index(x, n);
        ensure(reg_f.contains(&x) == reg_q.contains(&w), || {
            format!(
                "regularity of `{}` does not match `{}`",
                f.vertex_id(x),
                q.vertex_id(w)
            )
        })?;
    }
    let graded = graded_dimensions(q, cocycle).map_err(|e| e.to_string())?;
    ensure(graded.total() == base.dimension(), || {
        "graded dimensions do not sum to the dimension".into()
    })
}

/// Dual crossed product has one block `N_w·|G|` per non-regular `w`, the
/// same block count as `C*(q)`, hence the same K₀ free rank.
pub fn check_morita_shadow(q: &FiniteQuiver, cocycle: &Cocycle) -> Result<(), String> {
    let n = cocycle.group().order() as u64;
    let base = acyclic_block_structure(q).map_err(|e| e.to_string())?;
    let dual = dual_crossed_product_blocks(q, cocycle).map_err(|e| e.to_string())?;
    let mut expected: Vec<u64> = base.blocks.iter().map(|b| b * n).collect();
    expected.sort_unstable();
    ensure(dual.blocks == expected, || {
        "dual blocks are not N_w·|G|".into()
    })?;
    ensure(dual.block_count() == base.block_count(), || {
        "block counts differ".into()
    })?;
    ensure(dual.k_theory() == base.k_theory(), || {
        "K₀ free ranks differ".into()
    })
}

/// Runs every check in a fixed order.
pub fn run_suite(q: &FiniteQuiver, cocycle: &Cocycle, options: &SuiteOptions) -> Vec<CheckResult> {
    let mut results = Vec::new();
    let (f, a) =
        match skew_product(q, cocycle).and_then(|f| Ok((f, translation_action(q, cocycle)?))) {
            Ok(pair) => pair,
            Err(e) => {
                results.push(CheckResult {
                    name: "skew product construction",
                    outcome: Outcome::Fail(e.to_string()),
                });
                return results;
            }
        };
    let f = match options.fault {
        None => f,
        Some(Fault::MutateWeight) => {
            if f.edge_count() == 0 {
                results.push(CheckResult {
                    name: "fault injection",
                    outcome: Outcome::Fail("no edge to mutate".into()),
                });
                f
            } else {
                let mut weights = f.weights();
                weights[0] *= Weight::from_integer(2);
                f.with_weights(&weights)
                    .expect("doubling keeps weights positive")
            }
        }
    };

    results.push(CheckResult {
        name: "skew-orbit recovery",
        outcome: outcome(
            check_skew_orbit_against(q, cocycle, &f)
                .map(|_| ())
                .map_err(|e| e.to_string()),
        ),
    });
    results.push(CheckResult {
        name: "quotient isomorphism search",
        outcome: outcome(check_quotient_search(q, &f, &a, options.iso_budget)),
    });
    results.push(CheckResult {
        name: "freeness propagation",
        outcome: outcome(check_freeness(&f, &a)),
    });
    results.push(CheckResult {
        name: "gross-tucker roundtrip",
        outcome: outcome(
            check_reconstruction(q, cocycle, &f, &a, options.section_budget).map(|_| ()),
        ),
    });
    results.push(CheckResult {
        name: "measure descent/lift",
        outcome: outcome(check_descent_lift(&f, &a)),
    });
    let acyclic = is_acyclic(q);
    let cyclic_skip = || Outcome::Skip("quiver has a directed cycle".into());
    results.push(CheckResult {
        name: "path lifting bijection",
        outcome: if acyclic {
            outcome(check_path_lifting(q, cocycle, &f))
        } else {
            cyclic_skip()
        },
    });
    results.push(CheckResult {
        name: "block-multiset identity",
        outcome: if acyclic {
            outcome(check_block_identity(q, cocycle, &f))
        } else {
            cyclic_skip()
        },
    });
    results.push(CheckResult {
        name: "dual-action morita shadow",
        outcome: if acyclic {
            outcome(check_morita_shadow(q, cocycle))
        } else {
            cyclic_skip()
        },
    });
    results
}
