//! The qubit teleportation equation in its three guises: Bell-state
//! branches, the Bell matrix, and swap gates.

use entangle_tl::numkernel::{StateVector, Tolerance, C64};
use entangle_tl::teleport::{bell_matrix_form_check, teleport_equation_qubit_check, virtual_form_check};

fn main() -> entangle_tl::Result<()> {
    let tol = Tolerance::DEFAULT;
    let (a, b) = (C64::new(0.6, 0.0), C64::new(0.0, 0.8));
    println!("{}\n", teleport_equation_qubit_check(a, b, tol)?);
    let psi = StateVector::new(vec![a, b])?;
    println!("{}\n", bell_matrix_form_check(&psi, tol)?);
    println!("{}", virtual_form_check(&psi, tol)?);
    Ok(())
}
