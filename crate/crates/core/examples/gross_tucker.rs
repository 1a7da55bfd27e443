//! Recover a cocycle from a free action, under every choice of section.

use skewquiver::group::make_symmetric;
use skewquiver::quiver::{FiniteQuiver, Weight};
use skewquiver::skew::{
    gross_tucker_reconstruct, skew_product, translation_action, Cocycle, Section,
};

fn main() {
    let one = Weight::from_integer(1);
    let q =
        FiniteQuiver::from_parts(&["v"], &[("a", "v", "v", one), ("b", "v", "v", one)]).unwrap();
    let s3 = make_symmetric(3).unwrap();
    let a_val = s3.index_of("213").unwrap();
    let b_val = s3.index_of("231").unwrap();
    let k = Cocycle::from_indices(&q, s3.clone(), &[a_val, b_val]);

    let f = skew_product(&q, &k).unwrap();
    let action = translation_action(&q, &k).unwrap();

    for s in Section::enumerate(&f, &action, 6).unwrap() {
        let w = gross_tucker_reconstruct(&f, &action, &s).unwrap();
        w.verify(&f, &action).unwrap();
        let rep = s.representative.values().next().unwrap();
        let labels: Vec<String> = w.cocycle.to_name_map().into_values().collect();
        // a different section conjugates the cocycle
        println!("section {rep:>6}: κ = {labels:?}");
    }
}
