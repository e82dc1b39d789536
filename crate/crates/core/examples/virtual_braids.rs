//! Swap gates as virtual crossings next to the Bell braid, and the cyclic
//! routing of a qudit past an entangled pair.

use entangle_tl::braidgroup::{check_virtual_mixed, check_virtual_relations, teleport_swap, StrandOperator};
use entangle_tl::numkernel::{StateVector, Tolerance};

fn main() -> entangle_tl::Result<()> {
    let tol = Tolerance::DEFAULT;
    for d in [2, 3] {
        println!("{}\n", check_virtual_relations(&StrandOperator::swap(d), tol)?);
    }
    println!(
        "{}\n",
        check_virtual_mixed(&StrandOperator::bell(), &StrandOperator::swap(2), tol)?
    );

    let d = 3;
    let route = teleport_swap(d);
    let ket = StateVector::product_basis(d, &[1, 2, 0]);
    let moved = route.apply(&ket)?;
    let hit = moved.amplitudes().iter().position(|z| z.norm() > 0.5).unwrap();
    println!(
        "(P x 1)(1 x P)|1 2>|0> = |{} {} {}>",
        hit / (d * d),
        (hit / d) % d,
        hit % d
    );
    Ok(())
}
