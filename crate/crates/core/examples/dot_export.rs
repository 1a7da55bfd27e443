//! Print a skew product as Graphviz. Pipe into `dot -Tsvg`.

use skewquiver::cli::dot::to_dot;
use skewquiver::group::make_cyclic;
use skewquiver::quiver::{FiniteQuiver, Weight};
use skewquiver::skew::{skew_product, Cocycle};

fn main() {
    let q = FiniteQuiver::from_parts(
        &["v", "w"],
        &[
            ("e", "v", "w", Weight::from_integer(1)),
            ("f", "w", "v", Weight::new(1, 2)),
        ],
    )
    .unwrap();
    let k = Cocycle::from_indices(&q, make_cyclic(4).unwrap(), &[1, 0]);
    print!("{}", to_dot(&skew_product(&q, &k).unwrap()));
}
