//! Seeded random quivers, cocycles and groups for property checks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::group::{make_cyclic, make_symmetric, FiniteGroup};
use crate::quiver::{EdgeSpec, FiniteQuiver, Weight};
use crate::skew::Cocycle;

/// `Z/2, Z/3, Z/4, Z/6, S₃` with display names.
pub fn standard_groups() -> Vec<(&'static str, FiniteGroup)> {
    vec![
        ("Z/2", make_cyclic(2).expect("n >= 1")),
        ("Z/3", make_cyclic(3).expect("n >= 1")),
        ("Z/4", make_cyclic(4).expect("n >= 1")),
        ("Z/6", make_cyclic(6).expect("n >= 1")),
        ("S3", make_symmetric(3).expect("n <= 5")),
    ]
}

fn random_weight<R: Rng>(rng: &mut R) -> Weight {
    Weight::new(rng.gen_range(1..=12), rng.gen_range(1..=12))
}

fn build(vertices: usize, ends: Vec<(usize, usize)>, weights: Vec<Weight>) -> FiniteQuiver {
    let names: Vec<String> = (0..vertices).map(|i| format!("v{i}")).collect();
    let edges = ends
        .into_iter()
        .zip(weights)
        .enumerate()
        .map(|(i, ((s, r), w))| {
            EdgeSpec::new(format!("e{i}"), names[s].clone(), names[r].clone(), w)
        })
        .collect();
    FiniteQuiver::new(names, edges).expect("generated quiver is valid")
}

/// Between 1 and `max_vertices` vertices and at most `max_edges` edges with
/// uniformly random endpoints (loops and parallel edges allowed).
pub fn random_quiver<R: Rng>(rng: &mut R, max_vertices: usize, max_edges: usize) -> FiniteQuiver {
    let n = rng.gen_range(1..=max_vertices);
    let m = rng.gen_range(0..=max_edges);
    let ends = (0..m)
        .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n)))
        .collect();
    let weights = (0..m).map(|_| random_weight(rng)).collect();
    build(n, ends, weights)
}

/// Like [`random_quiver`] but every edge goes forward in a hidden random
/// ranking of the vertices, so there are no directed cycles.
pub fn random_acyclic_quiver<R: Rng>(
    rng: &mut R,
    max_vertices: usize,
    max_edges: usize,
) -> FiniteQuiver {
    let n = rng.gen_range(1..=max_vertices);
    let m = if n < 2 {
        0
    } else {
        rng.gen_range(0..=max_edges)
    };
    let mut rank: Vec<usize> = (0..n).collect();
    rank.shuffle(rng);
    let ends = (0..m)
        .map(|_| {
            let a = rng.gen_range(0..n);
            let mut b = rng.gen_range(0..n - 1);
            if b >= a {
                b += 1;
            }
            let (lo, hi) = if rank[a] < rank[b] { (a, b) } else { (b, a) };
            (lo, hi)
        })
        .collect();
    let weights = (0..m).map(|_| random_weight(rng)).collect();
    build(n, ends, weights)
}

pub fn random_cocycle<R: Rng>(rng: &mut R, q: &FiniteQuiver, group: &FiniteGroup) -> Cocycle {
    let values: Vec<usize> = (0..q.edge_count())
        .map(|_| rng.gen_range(0..group.order()))
        .collect();
    Cocycle::from_indices(q, group.clone(), &values)
}

/// A quiver with a cocycle into a randomly chosen standard group.
#[derive(Clone, Debug)]
pub struct Case {
    pub group_name: &'static str,
    pub quiver: FiniteQuiver,
    pub cocycle: Cocycle,
}

pub fn random_case<R: Rng>(
    rng: &mut R,
    max_vertices: usize,
    max_edges: usize,
    acyclic: bool,
) -> Case {
    let groups = standard_groups();
    let (group_name, group) = groups.choose(rng).expect("nonempty").clone();
    let quiver = if acyclic {
        random_acyclic_quiver(rng, max_vertices, max_edges)
    } else {
        random_quiver(rng, max_vertices, max_edges)
    };
    let cocycle = random_cocycle(rng, &quiver, &group);
    Case {
        group_name,
        quiver,
        cocycle,
    }
}
