//! Teleporting a qudit: every measurement branch leaves Bob with
//! `U_n^dag psi`, weighted `1/d^2`.

use entangle_tl::maxent::weyl_basis;
use entangle_tl::numkernel::Tolerance;
use entangle_tl::random::{random_state, seeded};
use entangle_tl::teleport::{measurement_form, qudit_resolution_check};

fn main() -> entangle_tl::Result<()> {
    let d = 3;
    let tol = Tolerance::DEFAULT;
    let basis = weyl_basis(d)?;
    let psi = random_state(d, &mut seeded(42));

    println!("{}\n", qudit_resolution_check(d, &psi, &basis, tol)?);

    println!("outcome  weight     fidelity after correction");
    for n in 1..=basis.len() {
        let o = measurement_form(d, n, &psi, &basis, tol)?;
        let fixed = o.correction.apply(&o.bob_state)?;
        let fidelity = psi.inner(&fixed)?.norm_sqr();
        println!("{n:>7}  {:.6}   {fidelity:.15}", o.amplitude_weight);
    }
    Ok(())
}
