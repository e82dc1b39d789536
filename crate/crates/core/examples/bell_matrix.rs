//! The Bell matrix: Bell states from the product basis, its powers, and the
//! braid relation it satisfies.

use entangle_tl::braidgroup::{braid_relation_sides, check_braid_relation, StrandOperator};
use entangle_tl::numkernel::{StateVector, Tolerance};
use entangle_tl::qubitbell::{bell_matrix, bell_state, check_bell_matrix_identities, BellKind};

fn main() -> entangle_tl::Result<()> {
    let b = bell_matrix();
    println!("B =\n{b:?}\n");

    for (digits, kind) in [
        ([0, 0], BellKind::PhiMinus),
        ([0, 1], BellKind::PsiPlus),
        ([1, 1], BellKind::PhiPlus),
    ] {
        let out = b.apply(&StateVector::product_basis(2, &digits))?;
        let target = bell_state(kind);
        println!(
            "B|{}{}> vs {kind:?}: residual {:.1e}",
            digits[0],
            digits[1],
            out.max_residual(&target)?
        );
    }

    let b4 = b.pow(4)?;
    println!("B^4[0,0] = {}", b4.get(0, 0));

    let tol = Tolerance::DEFAULT;
    println!("\n{}", check_bell_matrix_identities(tol)?);

    let op = StrandOperator::bell();
    let (lhs, rhs) = braid_relation_sides(&op)?;
    println!("\n|b1 b2 b1 - b2 b1 b2| = {:.1e}", lhs.max_residual(&rhs)?);
    println!("{}", check_braid_relation(&op, tol)?);
    Ok(())
}
