//! Eight local unitaries on a five-strand diagram: the input state reaches
//! the last strand transformed by a fixed product of them.

use entangle_tl::diagram::{flow_diagram, quantum_flow, render, FLOW_WIRING};
use entangle_tl::maxent::shift;
use entangle_tl::numkernel::{Matrix, Tolerance};
use entangle_tl::random::{random_state, random_unitary, seeded};

fn main() -> entangle_tl::Result<()> {
    println!("wiring: {FLOW_WIRING:?}\n");
    println!("{}\n", render(&flow_diagram().normalized()));

    let mut rng = seeded(19);
    let tol = Tolerance::LONG_CHAIN;
    for d in [2, 3] {
        let ops: Vec<Matrix> = (0..8).map(|_| random_unitary(d, &mut rng)).collect();
        let phi = random_state(d, &mut rng);
        let out = quantum_flow(&ops, &phi, d, tol)?;
        println!(
            "d = {d}: |phi_B| = {:.3e}, vs closed form {:.1e}, vs contraction {:.1e}",
            out.output.norm(),
            out.residual,
            out.oracle_residual
        );
    }

    let phi = random_state(2, &mut rng);
    let ids = vec![Matrix::identity(2); 8];
    let out = quantum_flow(&ids, &phi, 2, tol)?;
    println!(
        "identities: phi_B / phi_C = {}",
        out.output.amplitudes()[0] / phi.amplitudes()[0]
    );
    let mut orth = ids;
    orth[4] = shift(2);
    println!(
        "tr(U2^dag U5) = 0: |phi_B| = {:e}",
        quantum_flow(&orth, &phi, 2, tol)?.output.norm()
    );
    Ok(())
}
