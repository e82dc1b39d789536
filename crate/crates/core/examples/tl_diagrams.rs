//! Temperley-Lieb diagrams: generators, composition with loop removal,
//! scalar bookkeeping, evaluation, drawing and JSON.

use entangle_tl::diagram::{
    check_tl_axioms, compose, e_gen, evaluate, product, render, DecoratedDiagram, OperatorTable,
};
use entangle_tl::numkernel::Tolerance;

fn main() -> entangle_tl::Result<()> {
    let e1 = e_gen(1, 3)?;
    let e2 = e_gen(2, 3)?;
    println!("E_1 on three strands:\n{}\n", render(&e1));

    let e1e2e1 = product(&[&e1, &e2, &e1])?;
    println!("E_1 E_2 E_1:\n{}\n", render(&e1e2e1));
    println!("ratio to E_1: {:?}", e1e2e1.ratio_to(&e1));

    let sq = compose(&e1, &e1)?;
    println!(
        "E_1 E_1 has {} loop(s), equal to E_1: {:?}\n",
        sq.loops().len(),
        sq.structural_eq(&e1)
    );

    let m = evaluate(&e1e2e1, 2, &OperatorTable::new())?;
    println!("evaluated at d = 2: {}x{}, trace {}", m.rows(), m.cols(), m.trace()?);

    let json = e1.to_json();
    println!("{json}");
    assert_eq!(DecoratedDiagram::from_json(&json)?, e1);

    println!("\n{}", check_tl_axioms(4, 3, Tolerance::DEFAULT)?);
    Ok(())
}
