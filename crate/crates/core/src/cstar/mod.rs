//! Finite-dimensional and K-theoretic invariants of quiver algebras.
//!
//! Edge weights never enter here: rescaling a discrete source system changes
//! the generators but not the isomorphism class of the algebra, so every
//! invariant is a function of the underlying multigraph.
//!
//! Conventions. A vertex is *regular* when it receives an edge; the
//! Cuntz-Krieger relation is imposed exactly there. For an acyclic quiver
//! the algebra is a direct sum of full matrix algebras, one per non-regular
//! vertex `w`, of size the number of paths starting at `w`.

mod paths;
mod snf;

use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::quiver::FiniteQuiver;
use crate::skew::{Cocycle, SkewError};

pub use paths::{path_space, Path, PathSpace};
pub use snf::{identity_matrix, mat_mul, smith_normal_form, IntMatrix, SmithForm};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CstarError {
    #[error("quiver has a directed cycle")]
    Cyclic,
    #[error(transparent)]
    Cocycle(#[from] SkewError),
}

/// Vertices receiving at least one edge, in declared order.
pub fn regular_vertices(q: &FiniteQuiver) -> Vec<usize> {
    let mut receives = vec![false; q.vertex_count()];
    for e in q.edges() {
        receives[e.rng()] = true;
    }
    (0..q.vertex_count()).filter(|&v| receives[v]).collect()
}

fn non_regular_vertices(q: &FiniteQuiver) -> Vec<usize> {
    let regular = regular_vertices(q);
    (0..q.vertex_count())
        .filter(|v| regular.binary_search(v).is_err())
        .collect()
}

/// `A[v][w]` = number of edges from `w` to `v`.
pub fn vertex_matrix(q: &FiniteQuiver) -> IntMatrix {
    let n = q.vertex_count();
    let mut a = vec![vec![0i64; n]; n];
    for e in q.edges() {
        a[e.rng()][e.src()] += 1;
    }
    a
}

/// Vertices ordered so that every edge goes forward, or `None` if there is a
/// directed cycle. Ties are broken by declared order.
pub fn topological_order(q: &FiniteQuiver) -> Option<Vec<usize>> {
    let n = q.vertex_count();
    let mut indegree = vec![0usize; n];
    for e in q.edges() {
        indegree[e.rng()] += 1;
    }
    let mut ready: VecDeque<usize> = (0..n).filter(|&v| indegree[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(v) = ready.pop_front() {
        order.push(v);
        for e in q.out_edges(v) {
            let r = q.edge(e).rng();
            indegree[r] -= 1;
            if indegree[r] == 0 {
                ready.push_back(r);
            }
        }
    }
    (order.len() == n).then_some(order)
}

pub fn is_acyclic(q: &FiniteQuiver) -> bool {
    topological_order(q).is_some()
}

/// K₀ as invariant factors (all ≥ 2) plus free rank, and the rank of K₁.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct KTheory {
    pub k0_invariant_factors: Vec<i64>,
    pub k0_free_rank: usize,
    pub k1_rank: usize,
}

impl KTheory {
    /// K-theory of a direct sum. Torsion is renormalized into a divisibility
    /// chain, so `Z/2 ⊕ Z/3` comes out as `Z/6`.
    pub fn direct_sum(&self, other: &KTheory) -> KTheory {
        let torsion: Vec<i64> = self
            .k0_invariant_factors
            .iter()
            .chain(&other.k0_invariant_factors)
            .copied()
            .collect();
        let diag: IntMatrix = (0..torsion.len())
            .map(|i| {
                (0..torsion.len())
                    .map(|j| if i == j { torsion[i] } else { 0 })
                    .collect()
            })
            .collect();
        KTheory {
            k0_invariant_factors: smith_normal_form(&diag)
                .invariant_factors()
                .into_iter()
                .filter(|&d| d >= 2)
                .collect(),
            k0_free_rank: self.k0_free_rank + other.k0_free_rank,
            k1_rank: self.k1_rank + other.k1_rank,
        }
    }

    /// `n`-fold direct sum.
    pub fn repeat(&self, n: usize) -> KTheory {
        (0..n).fold(KTheory::default(), |acc, _| acc.direct_sum(self))
    }
}

/// The map `Z^R -> Z^V` whose column at a regular vertex `v` is
/// `w ↦ A[v][w] - δ(v, w)`.
pub fn k_theory_matrix(q: &FiniteQuiver) -> IntMatrix {
    let a = vertex_matrix(q);
    let regular = regular_vertices(q);
    (0..q.vertex_count())
        .map(|w| {
            regular
                .iter()
                .map(|&v| a[v][w] - i64::from(v == w))
                .collect()
        })
        .collect()
}

/// K₀ is the cokernel and K₁ the kernel of [`k_theory_matrix`].
pub fn k_theory(q: &FiniteQuiver) -> KTheory {
    let m = k_theory_matrix(q);
    let columns = regular_vertices(q).len();
    let smith = smith_normal_form(&m);
    let factors = smith.invariant_factors();
    let rank = factors.len();
    KTheory {
        k0_invariant_factors: factors.into_iter().filter(|&d| d >= 2).collect(),
        k0_free_rank: q.vertex_count() - rank,
        k1_rank: columns - rank,
    }
}

/// Multiset of matrix block sizes, kept sorted ascending.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BlockStructure {
    pub blocks: Vec<u64>,
}

impl BlockStructure {
    pub fn new(mut blocks: Vec<u64>) -> Self {
        blocks.sort_unstable();
        BlockStructure { blocks }
    }

    /// Sum of squares of the block sizes.
    pub fn dimension(&self) -> u64 {
        self.blocks.iter().map(|b| b * b).sum()
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// K-theory of a direct sum of full matrix algebras: `Z^blocks`, `0`.
    pub fn k_theory(&self) -> KTheory {
        KTheory {
            k0_invariant_factors: Vec::new(),
            k0_free_rank: self.blocks.len(),
            k1_rank: 0,
        }
    }
}

/// Number of paths starting at each vertex of an acyclic quiver.
pub fn path_counts(q: &FiniteQuiver) -> Result<Vec<u64>, CstarError> {
    let order = topological_order(q).ok_or(CstarError::Cyclic)?;
    let mut count = vec![0u64; q.vertex_count()];
    for &w in order.iter().rev() {
        count[w] = 1 + q.out_edges(w).map(|e| count[q.edge(e).rng()]).sum::<u64>();
    }
    Ok(count)
}

/// One block per non-regular vertex `w`, of size the number of paths from `w`.
pub fn acyclic_block_structure(q: &FiniteQuiver) -> Result<BlockStructure, CstarError> {
    let count = path_counts(q)?;
    Ok(BlockStructure::new(
        non_regular_vertices(q)
            .into_iter()
            .map(|w| count[w])
            .collect(),
    ))
}

/// Dimension of each homogeneous component under the grading
/// `deg(s_p s_q*) = κ(p)·κ(q)⁻¹`, keyed by group element name.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedDimensions {
    pub by_element: BTreeMap<String, u64>,
}

impl GradedDimensions {
    pub fn total(&self) -> u64 {
        self.by_element.values().sum()
    }
}

/// Graded dimensions of an acyclic quiver algebra under a cocycle grading.
///
/// Paths from each vertex are counted by label with a dynamic program over
/// a reverse topological order: a path from `w` is either trivial or `p'e`
/// with `s(e) = w`, and then `κ(p'e) = κ(p')·κ(e)`.
pub fn graded_dimensions(
    q: &FiniteQuiver,
    cocycle: &Cocycle,
) -> Result<GradedDimensions, CstarError> {
    let kappa = cocycle.resolve(q)?;
    let group = cocycle.group();
    let n = group.order();
    let order = topological_order(q).ok_or(CstarError::Cyclic)?;
    let mut by_label = vec![vec![0u64; n]; q.vertex_count()];
    for &w in order.iter().rev() {
        let mut c = vec![0u64; n];
        c[group.identity()] = 1;
        for e in q.out_edges(w) {
            let from_range = &by_label[q.edge(e).rng()];
            for (y, &k) in from_range.iter().enumerate() {
                c[group.mul(y, kappa[e])] += k;
            }
        }
        by_label[w] = c;
    }
    let mut dims = vec![0u64; n];
    for w in non_regular_vertices(q) {
        let c = &by_label[w];
        for a in 0..n {
            for b in 0..n {
                dims[group.mul(a, group.inv(b))] += c[a] * c[b];
            }
        }
    }
    Ok(GradedDimensions {
        by_element: (0..n)
            .map(|g| (group.name(g).to_string(), dims[g]))
            .collect(),
    })
}

/// Predicted blocks of the crossed product by the cocycle's coaction: every
/// block of `q`'s algebra, once per group element. Built without forming
/// the skew product.
pub fn coaction_crossed_product_blocks(
    q: &FiniteQuiver,
    cocycle: &Cocycle,
) -> Result<BlockStructure, CstarError> {
    cocycle.resolve(q)?;
    let n = cocycle.group().order();
    let base = acyclic_block_structure(q)?;
    Ok(BlockStructure::new(
        base.blocks
            .iter()
            .flat_map(|&b| std::iter::repeat_n(b, n))
            .collect(),
    ))
}

/// Predicted blocks of the skew product's algebra crossed by the dual
/// translation action: the `|G|` blocks over each non-regular vertex form
/// one free orbit, giving a single block of size `N_w·|G|`.
pub fn dual_crossed_product_blocks(
    q: &FiniteQuiver,
    cocycle: &Cocycle,
) -> Result<BlockStructure, CstarError> {
    cocycle.resolve(q)?;
    let n = cocycle.group().order() as u64;
    let base = acyclic_block_structure(q)?;
    Ok(BlockStructure::new(
        base.blocks.iter().map(|&b| b * n).collect(),
    ))
}
