//! Decorated arcs: operators slide around cups, and a cup under a cap
//! closes into a trace.

use entangle_tl::diagram::{
    check_tl_decorated, compose, cup, decorated_cap, decorated_cup, evaluate, operator_box, projector, render,
    Decoration, Flavor, OperatorTable,
};
use entangle_tl::maxent::weyl_basis;
use entangle_tl::numkernel::Tolerance;

fn main() -> entangle_tl::Result<()> {
    let d = 3;
    let basis = weyl_basis(d)?;
    let ops = OperatorTable::new()
        .with("M", basis.get(4)?.clone())
        .with("N", basis.get(4)?.clone());

    let left = compose(&cup(), &operator_box(Decoration::plain("M"), 0, 2)?)?;
    let right = compose(&cup(), &operator_box(Decoration::new("M", Flavor::Transpose), 1, 2)?)?;
    println!("M below the left leg == M^T below the right leg: {}", left == right);

    let closed = compose(&decorated_cup("M"), &decorated_cap("N"))?;
    println!("{}\n", render(&closed));
    println!("value (1/d) tr(M N^dag) = {}\n", evaluate(&closed, d, &ops)?.get(0, 0));

    println!("{}\n", render(&projector("U", 1, 2)?));
    println!("{}", check_tl_decorated(3, d, 5, Tolerance::DEFAULT)?);
    Ok(())
}
