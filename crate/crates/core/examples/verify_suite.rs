//! Run the full check suite on seeded random fixtures.
//!
//! `cargo run --example verify_suite -- 7` uses seed 7.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use skewquiver::fixtures::random_case;
use skewquiver::verify::{run_suite, SuiteOptions};

fn main() {
    let seed = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(2024);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let options = SuiteOptions::default();
    let mut failures = 0;
    for i in 0..10 {
        let case = random_case(&mut rng, 6, 10, i % 2 == 0);
        println!(
            "case {i}: {} |V|={} |E|={}",
            case.group_name,
            case.quiver.vertex_count(),
            case.quiver.edge_count()
        );
        for r in run_suite(&case.quiver, &case.cocycle, &options) {
            failures += usize::from(!r.passed());
            println!("  {r}");
        }
    }
    println!("{failures} failures");
}
