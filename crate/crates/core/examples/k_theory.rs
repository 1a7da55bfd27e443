//! K-groups of a few small quivers from the Smith form of `Aᵗ − I`.

use skewquiver::cstar::{k_theory, k_theory_matrix, smith_normal_form};
use skewquiver::quiver::{FiniteQuiver, Weight};

fn loops(n: usize) -> FiniteQuiver {
    let ids: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
    let edges: Vec<_> = ids
        .iter()
        .map(|id| (id.as_str(), "v", "v", Weight::from_integer(1)))
        .collect();
    FiniteQuiver::from_parts(&["v"], &edges).unwrap()
}

fn main() {
    let one = Weight::from_integer(1);
    let cases = [
        ("O2", loops(2)),
        ("O3", loops(3)),
        ("O5", loops(5)),
        (
            "single edge",
            FiniteQuiver::from_parts(&["v", "w"], &[("e", "v", "w", one)]).unwrap(),
        ),
        (
            "isolated vertex",
            FiniteQuiver::from_parts(&["v"], &[]).unwrap(),
        ),
        (
            "2-cycle",
            FiniteQuiver::from_parts(&["v", "w"], &[("e", "v", "w", one), ("f", "w", "v", one)])
                .unwrap(),
        ),
    ];
    for (name, q) in &cases {
        let m = k_theory_matrix(q);
        let snf = smith_normal_form(&m);
        let k = k_theory(q);
        println!(
            "{name:16} factors {:?}  K0 = Z^{} + torsion {:?}, K1 = Z^{}",
            snf.invariant_factors(),
            k.k0_free_rank,
            k.k0_invariant_factors,
            k.k1_rank
        );
    }
}
