//! Brauer diagrams: swaps as crossings and their mixed relations with the
//! Temperley-Lieb generators.

use entangle_tl::diagram::{check_brauer_mixed, e_gen, product, render, v_gen};
use entangle_tl::numkernel::Tolerance;

fn main() -> entangle_tl::Result<()> {
    let v1 = v_gen(1, 3)?;
    println!("v_1:\n{}\n", render(&v1));
    println!("planar: {}\n", v1.is_planar());

    let lhs = product(&[&v_gen(2, 3)?, &v_gen(1, 3)?, &e_gen(2, 3)?])?;
    let rhs = product(&[&e_gen(1, 3)?, &e_gen(2, 3)?])?;
    println!("v_2 v_1 E_2 = {:?} * E_1 E_2", lhs.ratio_to(&rhs));

    for (n, d) in [(3, 2), (4, 3)] {
        println!("\n{}", check_brauer_mixed(n, d, Tolerance::DEFAULT)?);
    }
    Ok(())
}
