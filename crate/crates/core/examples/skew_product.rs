//! Skew product of a one-vertex quiver with two loops by a `Z/3` cocycle.
//!
//! Run with `cargo run --example skew_product`.

use indexmap::IndexMap;
use skewquiver::group::make_cyclic;
use skewquiver::group::{is_free, orbits};
use skewquiver::quiver::{FiniteQuiver, Weight};
use skewquiver::skew::{skew_product, translation_action, Cocycle};

fn main() {
    let q = FiniteQuiver::from_parts(
        &["v"],
        &[
            ("a", "v", "v", Weight::from_integer(1)),
            ("b", "v", "v", Weight::new(1, 3)),
        ],
    )
    .unwrap();
    let z3 = make_cyclic(3).unwrap();
    let map: IndexMap<String, String> = [("a", "1"), ("b", "2")]
        .into_iter()
        .map(|(e, g)| (e.to_string(), g.to_string()))
        .collect();
    let k = Cocycle::new(z3, &map).unwrap();

    let f = skew_product(&q, &k).unwrap();
    println!("{} vertices, {} edges", f.vertex_count(), f.edge_count());
    for e in f.edges() {
        println!(
            "  {:6} {} -> {}  weight {}",
            e.id(),
            f.vertex_id(e.src()),
            f.vertex_id(e.rng()),
            e.weight()
        );
    }

    let a = translation_action(&q, &k).unwrap();
    println!("translation is free: {}", is_free(&f, &a));
    for orbit in orbits(&f, &a).edge_orbits {
        let ids: Vec<&str> = orbit.iter().map(|&e| f.edge(e).id()).collect();
        println!("  edge orbit {ids:?}");
    }
}
