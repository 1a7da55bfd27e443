//! Quotient a skew product by translation, then move weights back and forth.

use skewquiver::fixtures::standard_groups;
use skewquiver::quiver::{FiniteQuiver, Weight};
use skewquiver::skew::{
    check_skew_orbit, descend_weights, lift_system, quotient_quiver, skew_product,
    translation_action, Cocycle,
};

fn main() {
    let q = FiniteQuiver::from_parts(
        &["u", "v"],
        &[
            ("e", "u", "v", Weight::new(2, 3)),
            ("f", "v", "u", Weight::new(5, 7)),
            ("g", "v", "v", Weight::from_integer(4)),
        ],
    )
    .unwrap();
    let (_, s3) = standard_groups().pop().unwrap();
    let k = Cocycle::from_indices(&q, s3, &[1, 3, 5]);
    let f = skew_product(&q, &k).unwrap();
    let a = translation_action(&q, &k).unwrap();

    let quot = quotient_quiver(&f, &a).unwrap();
    println!("quotient vertices {:?}", quot.quiver.vertices());
    for (edge, orbit) in &quot.projection.emap {
        if edge == orbit {
            println!("  orbit of {edge}");
        }
    }
    check_skew_orbit(&q, &k).expect("F/G is isomorphic to q");

    // new weights downstairs, lifted to F, then descended again
    let fresh: Vec<Weight> = vec![Weight::new(1, 2), Weight::new(1, 3), Weight::new(1, 5)];
    let target = quot.quiver.with_weights(&fresh).unwrap();
    let lifted = lift_system(&target, &f, &a, &quot.projection).unwrap();
    let back = descend_weights(&lifted, &a).unwrap();
    println!(
        "descended {:?}",
        back.iter().map(|w| w.to_string()).collect::<Vec<_>>()
    );
    assert_eq!(back, fresh);
}
