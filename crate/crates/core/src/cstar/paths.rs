//! Directed paths, written right to left.
//!
//! A path `p = e₁e₂…eₙ` satisfies `s(eᵢ) = r(eᵢ₊₁)`; it starts at
//! `s(p) = s(eₙ)` and ends at `r(p) = r(e₁)`. The trivial path at `v` has no
//! edges. Group labels multiply in the written order,
//! `κ(p) = κ(e₁)·κ(e₂)···κ(eₙ)`.

use crate::group::FiniteGroup;
use crate::quiver::FiniteQuiver;

use super::{topological_order, CstarError};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    start: usize,
    /// `e₁, …, eₙ`
    edges: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path {
            start: v,
            edges: Vec::new(),
        }
    }

    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn source(&self) -> usize {
        self.start
    }

    pub fn range(&self, q: &FiniteQuiver) -> usize {
        self.edges.first().map_or(self.start, |&e| q.edge(e).rng())
    }

    /// `κ(e₁)···κ(eₙ)`, with `kappa` indexed by edge.
    pub fn label(&self, group: &FiniteGroup, kappa: &[usize]) -> usize {
        self.edges
            .iter()
            .fold(group.identity(), |acc, &e| group.mul(acc, kappa[e]))
    }
}

/// All paths of an acyclic quiver, grouped by source vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathSpace {
    pub from: Vec<Vec<Path>>,
}

impl PathSpace {
    pub fn total(&self) -> usize {
        self.from.iter().map(Vec::len).sum()
    }
}

/// Enumerates every path. Each list starts with the trivial path, then
/// extends along out-edges in declared order, depth first.
pub fn path_space(q: &FiniteQuiver) -> Result<PathSpace, CstarError> {
    topological_order(q).ok_or(CstarError::Cyclic)?;
    fn walk(q: &FiniteQuiver, start: usize, at: usize, rev: &mut Vec<usize>, out: &mut Vec<Path>) {
        out.push(Path {
            start,
            edges: rev.iter().rev().copied().collect(),
        });
        for e in q.out_edges(at) {
            rev.push(e);
            walk(q, start, q.edge(e).rng(), rev, out);
            rev.pop();
        }
    }
    let from = (0..q.vertex_count())
        .map(|v| {
            let mut out = Vec::new();
            walk(q, v, v, &mut Vec::new(), &mut out);
            out
        })
        .collect();
    Ok(PathSpace { from })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Weight;

    #[test]
    fn single_edge_paths() {
        let q = FiniteQuiver::from_parts(&["w", "v"], &[("e", "w", "v", Weight::from_integer(1))])
            .unwrap();
        let ps = path_space(&q).unwrap();
        assert_eq!(ps.from[0].len(), 2);
        assert_eq!(ps.from[1].len(), 1);
        assert_eq!(ps.from[0][1].range(&q), 1);
        assert_eq!(ps.from[0][1].source(), 0);
    }

    #[test]
    fn composition_order_is_right_to_left() {
        // a -x-> b -y-> c : the path from a to c is written y x
        let q = FiniteQuiver::from_parts(
            &["a", "b", "c"],
            &[
                ("x", "a", "b", Weight::from_integer(1)),
                ("y", "b", "c", Weight::from_integer(1)),
            ],
        )
        .unwrap();
        let ps = path_space(&q).unwrap();
        let long = ps.from[0].iter().find(|p| p.len() == 2).unwrap();
        assert_eq!(long.edges(), &[1, 0]);
        assert_eq!(long.range(&q), 2);
    }

    #[test]
    fn cycles_are_rejected() {
        let q =
            FiniteQuiver::from_parts(&["v"], &[("e", "v", "v", Weight::from_integer(1))]).unwrap();
        assert_eq!(path_space(&q), Err(CstarError::Cyclic));
    }
}
