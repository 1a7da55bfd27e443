//! Backtracking search for weight-preserving quiver isomorphisms.
//!
//! Vertices are matched one at a time in a breadth-first order of the
//! domain, pruned by a per-vertex signature (sorted out-, in- and loop weight
//! multisets) and by exact agreement of the weight multisets between every
//! pair of already matched vertices. Once the vertex bijection is complete
//! the edges between each ordered vertex pair are paired up by sorted weight.

use std::collections::{HashMap, VecDeque};

use thiserror::Error;

use super::{FiniteQuiver, QuiverIso, Weight};

/// Default number of search nodes before giving up.
pub const DEFAULT_NODE_BUDGET: u64 = 2_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IsoSearchError {
    #[error("isomorphism search exceeded its budget of {0} nodes")]
    BudgetExceeded(u64),
}

pub fn iso_search(a: &FiniteQuiver, b: &FiniteQuiver) -> Result<Option<QuiverIso>, IsoSearchError> {
    iso_search_with_budget(a, b, DEFAULT_NODE_BUDGET)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Signature {
    out: Vec<Weight>,
    inc: Vec<Weight>,
    loops: Vec<Weight>,
}

struct Indexed<'q> {
    q: &'q FiniteQuiver,
    // (src, rng) -> sorted weights
    pair_weights: HashMap<(usize, usize), Vec<Weight>>,
    // (src, rng) -> edges sorted by (weight, declared index)
    pair_edges: HashMap<(usize, usize), Vec<usize>>,
    signatures: Vec<Signature>,
}

impl<'q> Indexed<'q> {
    fn new(q: &'q FiniteQuiver) -> Self {
        let mut pair_edges: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        let mut signatures = vec![
            Signature {
                out: vec![],
                inc: vec![],
                loops: vec![]
            };
            q.vertex_count()
        ];
        for (i, e) in q.edges().iter().enumerate() {
            pair_edges.entry((e.src(), e.rng())).or_default().push(i);
            if e.src() == e.rng() {
                signatures[e.src()].loops.push(e.weight());
            } else {
                signatures[e.src()].out.push(e.weight());
                signatures[e.rng()].inc.push(e.weight());
            }
        }
        for s in &mut signatures {
            s.out.sort();
            s.inc.sort();
            s.loops.sort();
        }
        for edges in pair_edges.values_mut() {
            edges.sort_by_key(|&i| (q.edge(i).weight(), i));
        }
        let pair_weights = pair_edges
            .iter()
            .map(|(&k, es)| (k, es.iter().map(|&i| q.edge(i).weight()).collect()))
            .collect();
        Indexed {
            q,
            pair_weights,
            pair_edges,
            signatures,
        }
    }

    fn weights(&self, src: usize, rng: usize) -> &[Weight] {
        self.pair_weights
            .get(&(src, rng))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    /// Breadth-first order over the underlying undirected graph, seeded in
    /// declared order.
    fn search_order(&self) -> Vec<usize> {
        let n = self.q.vertex_count();
        let mut adjacency = vec![Vec::new(); n];
        for e in self.q.edges() {
            adjacency[e.src()].push(e.rng());
            adjacency[e.rng()].push(e.src());
        }
        let mut seen = vec![false; n];
        let mut order = Vec::with_capacity(n);
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                order.push(v);
                for &u in &adjacency[v] {
                    if !seen[u] {
                        seen[u] = true;
                        queue.push_back(u);
                    }
                }
            }
        }
        order
    }
}

struct Search<'a, 'b> {
    a: Indexed<'a>,
    b: Indexed<'b>,
    order: Vec<usize>,
    mapping: Vec<Option<usize>>,
    used: Vec<bool>,
    nodes: u64,
    budget: u64,
}

impl Search<'_, '_> {
    fn consistent(&self, x: usize, y: usize, depth: usize) -> bool {
        if self.a.weights(x, x) != self.b.weights(y, y) {
            return false;
        }
        self.order[..depth].iter().all(|&u| {
            let image = self.mapping[u].expect("matched prefix");
            self.a.weights(x, u) == self.b.weights(y, image)
                && self.a.weights(u, x) == self.b.weights(image, y)
        })
    }

    fn extend(&mut self, depth: usize) -> Result<bool, IsoSearchError> {
        if depth == self.order.len() {
            return Ok(true);
        }
        let x = self.order[depth];
        for y in 0..self.b.q.vertex_count() {
            if self.used[y] || self.a.signatures[x] != self.b.signatures[y] {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(IsoSearchError::BudgetExceeded(self.budget));
            }
            if !self.consistent(x, y, depth) {
                continue;
            }
            self.mapping[x] = Some(y);
            self.used[y] = true;
            if self.extend(depth + 1)? {
                return Ok(true);
            }
            self.mapping[x] = None;
            self.used[y] = false;
        }
        Ok(false)
    }
}

/// Finds a weight-preserving isomorphism `a -> b`, or `None` if there is none.
pub fn iso_search_with_budget(
    a: &FiniteQuiver,
    b: &FiniteQuiver,
    budget: u64,
) -> Result<Option<QuiverIso>, IsoSearchError> {
    if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
        return Ok(None);
    }
    let ia = Indexed::new(a);
    let ib = Indexed::new(b);
    let mut sa = ia.signatures.clone();
    let mut sb = ib.signatures.clone();
    sa.sort();
    sb.sort();
    if sa != sb {
        return Ok(None);
    }
    let order = ia.search_order();
    let mut search = Search {
        a: ia,
        b: ib,
        order,
        mapping: vec![None; a.vertex_count()],
        used: vec![false; b.vertex_count()],
        nodes: 0,
        budget,
    };
    if !search.extend(0)? {
        return Ok(None);
    }
    let vmap: Vec<usize> = search
        .mapping
        .iter()
        .map(|m| m.expect("complete"))
        .collect();
    let mut emap = vec![usize::MAX; a.edge_count()];
    for (&(s, r), edges) in &search.a.pair_edges {
        let targets = &search.b.pair_edges[&(vmap[s], vmap[r])];
        for (&e, &f) in edges.iter().zip(targets) {
            emap[e] = f;
        }
    }
    Ok(Some(QuiverIso::from_index_maps(a, b, &vmap, &emap)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(n: i64, d: i64) -> Weight {
        Weight::new(n, d)
    }

    #[test]
    fn loop_is_isomorphic_to_itself() {
        let q = FiniteQuiver::from_parts(&["v"], &[("e", "v", "v", w(1, 1))]).unwrap();
        let iso = iso_search(&q, &q).unwrap().unwrap();
        assert_eq!(iso, QuiverIso::identity(&q));
    }

    #[test]
    fn weighted_two_cycles_match_by_rotation() {
        let a = FiniteQuiver::from_parts(
            &["v", "w"],
            &[("e", "v", "w", w(1, 1)), ("f", "w", "v", w(1, 2))],
        )
        .unwrap();
        let b = FiniteQuiver::from_parts(
            &["v", "w"],
            &[("e", "v", "w", w(1, 2)), ("f", "w", "v", w(1, 1))],
        )
        .unwrap();
        let iso = iso_search(&a, &b).unwrap().unwrap();
        iso.verify(&a, &b).unwrap();
        assert_eq!(iso.forward.vmap["v"], "w");
        assert_eq!(iso.forward.vmap["w"], "v");
        assert_eq!(iso.forward.emap["e"], "f");
    }

    #[test]
    fn two_cycle_is_not_two_loops() {
        let a = FiniteQuiver::from_parts(
            &["v", "w"],
            &[("e", "v", "w", w(1, 1)), ("f", "w", "v", w(1, 1))],
        )
        .unwrap();
        let b = FiniteQuiver::from_parts(
            &["v", "w"],
            &[("e", "v", "v", w(1, 1)), ("f", "w", "w", w(1, 1))],
        )
        .unwrap();
        assert!(iso_search(&a, &b).unwrap().is_none());
    }

    #[test]
    fn budget_is_enforced() {
        // Six isolated vertices: many equal-signature candidates, so a
        // one-node budget cannot finish.
        let names = ["a", "b", "c", "d", "e", "f"];
        let q = FiniteQuiver::from_parts(&names, &[]).unwrap();
        assert_eq!(
            iso_search_with_budget(&q, &q, 1),
            Err(IsoSearchError::BudgetExceeded(1))
        );
    }

    #[test]
    fn parallel_edges_pair_by_weight() {
        let a = FiniteQuiver::from_parts(
            &["v", "w"],
            &[("x", "v", "w", w(2, 1)), ("y", "v", "w", w(1, 1))],
        )
        .unwrap();
        let b = FiniteQuiver::from_parts(
            &["p", "q"],
            &[("s", "p", "q", w(1, 1)), ("t", "p", "q", w(2, 1))],
        )
        .unwrap();
        let iso = iso_search(&a, &b).unwrap().unwrap();
        iso.verify(&a, &b).unwrap();
        assert_eq!(iso.forward.emap["x"], "t");
    }
}
