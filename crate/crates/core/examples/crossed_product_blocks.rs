//! Matrix-block shapes for an acyclic quiver, its skew product and the two
//! crossed products.

use skewquiver::cstar::{
    acyclic_block_structure, coaction_crossed_product_blocks, dual_crossed_product_blocks,
    graded_dimensions,
};
use skewquiver::group::make_cyclic;
use skewquiver::quiver::{FiniteQuiver, Weight};
use skewquiver::skew::{skew_product, Cocycle};

fn main() {
    let one = Weight::from_integer(1);
    // diamond: a -> b -> d, a -> c -> d
    let q = FiniteQuiver::from_parts(
        &["a", "b", "c", "d"],
        &[
            ("ab", "a", "b", one),
            ("ac", "a", "c", one),
            ("bd", "b", "d", one),
            ("cd", "c", "d", one),
        ],
    )
    .unwrap();
    let k = Cocycle::from_indices(&q, make_cyclic(2).unwrap(), &[1, 0, 0, 1]);

    let base = acyclic_block_structure(&q).unwrap();
    let f = skew_product(&q, &k).unwrap();
    let upstairs = acyclic_block_structure(&f).unwrap();
    println!(
        "C*(Q)      blocks {:?}, dim {}",
        base.blocks,
        base.dimension()
    );
    println!(
        "C*(F)      blocks {:?}, dim {}",
        upstairs.blocks,
        upstairs.dimension()
    );
    println!(
        "coaction   blocks {:?}",
        coaction_crossed_product_blocks(&q, &k).unwrap().blocks
    );
    println!(
        "dual       blocks {:?}",
        dual_crossed_product_blocks(&q, &k).unwrap().blocks
    );
    println!(
        "graded     {:?}",
        graded_dimensions(&q, &k).unwrap().by_element
    );
}
