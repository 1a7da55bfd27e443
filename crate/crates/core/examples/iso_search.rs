//! Weighted isomorphism search between small quivers.

use skewquiver::quiver::{iso_search, FiniteQuiver, Weight};

fn main() {
    let w = |n| Weight::from_integer(n);
    let p = FiniteQuiver::from_parts(
        &["x", "y", "z"],
        &[
            ("a", "x", "y", w(1)),
            ("b", "y", "z", w(2)),
            ("c", "z", "x", w(3)),
        ],
    )
    .unwrap();
    let q = FiniteQuiver::from_parts(
        &["1", "2", "3"],
        &[
            ("r", "3", "1", w(2)),
            ("s", "1", "2", w(3)),
            ("t", "2", "3", w(1)),
        ],
    )
    .unwrap();
    match iso_search(&p, &q).unwrap() {
        Some(iso) => {
            iso.verify(&p, &q).unwrap();
            println!("vertices {:?}", iso.forward.vmap);
            println!("edges    {:?}", iso.forward.emap);
        }
        None => println!("not isomorphic"),
    }

    // same shape, weights in the other rotation
    let r = q.with_weights(&[w(3), w(2), w(1)]).unwrap();
    println!("p ~ r: {}", iso_search(&p, &r).unwrap().is_some());
}
