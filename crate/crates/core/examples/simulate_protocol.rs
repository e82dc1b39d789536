//! Seeded Monte Carlo run of the protocol; the record serializes to JSON.

use entangle_tl::maxent::weyl_basis;
use entangle_tl::random::{random_state, seeded};
use entangle_tl::teleport::simulate;

fn main() -> entangle_tl::Result<()> {
    let seed = 7;
    for d in [2, 3, 4] {
        let psi = random_state(d, &mut seeded(seed));
        let record = simulate(d, &psi, &weyl_basis(d)?, 4096, seed)?;
        println!(
            "d = {d}: histogram {:?}, min fidelity {:.15}",
            record.histogram, record.min_fidelity
        );
        if d == 2 {
            println!("{}", serde_json::to_string(&record).unwrap());
        }
    }
    Ok(())
}
