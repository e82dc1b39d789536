//! Characteristic equations of tight teleportation and dense coding.

use entangle_tl::maxent::weyl_basis;
use entangle_tl::numkernel::Tolerance;
use entangle_tl::random::{random_state, seeded};
use entangle_tl::teleport::{dense_coding_table, tight_teleportation_check, tight_term, DensityOperator};

fn main() -> entangle_tl::Result<()> {
    let tol = Tolerance::DEFAULT;
    let mut rng = seeded(3);
    for d in 2..=4 {
        let basis = weyl_basis(d)?;
        let rho = DensityOperator::rank_one(&random_state(d, &mut rng), &random_state(d, &mut rng))?;
        let obs = DensityOperator::rank_one(&random_state(d, &mut rng), &random_state(d, &mut rng))?;
        let t1 = tight_term(d, 1, &rho, &obs, &basis)?;
        println!("d = {d}: first term {t1:.6}");
        println!("{}\n", tight_teleportation_check(d, &rho, &obs, &basis, tol)?);
    }

    let table = dense_coding_table(2, &weyl_basis(2)?)?;
    println!("dense coding, d = 2:");
    for r in 0..table.rows() {
        let row: Vec<String> = (0..table.cols())
            .map(|c| format!("{:.0}", table.get(r, c).re.abs()))
            .collect();
        println!("  {}", row.join(" "));
    }
    Ok(())
}
