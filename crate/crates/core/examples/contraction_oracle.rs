//! Path-tracing evaluation against a plain tensor-network contraction of the
//! uncomposed layers.

use entangle_tl::diagram::{brute_force_evaluate_stack, compose_all, evaluate, random_diagram, OperatorTable};
use entangle_tl::random::{random_matrix, seeded};

fn main() -> entangle_tl::Result<()> {
    let d = 3;
    let mut rng = seeded(5);
    let mut ops = OperatorTable::new();
    for l in ["A", "B"] {
        ops.insert(l, random_matrix(d, d, &mut rng));
    }
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let layers = vec![
            random_diagram(2, 4, &["A", "B"], 2, &mut rng)?,
            random_diagram(4, 2, &["A", "B"], 2, &mut rng)?,
            random_diagram(2, 2, &["A"], 1, &mut rng)?,
        ];
        let fast = evaluate(&compose_all(&layers)?, d, &ops)?;
        let slow = brute_force_evaluate_stack(&layers, d, &ops)?;
        worst = worst.max(fast.max_residual(&slow)?);
    }
    println!("50 random three-layer stacks at d = {d}: max residual {worst:.2e}");
    Ok(())
}
