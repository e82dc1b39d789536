//! `|Omega>`, the clock-and-shift basis, and sliding operators across a cup.

use entangle_tl::maxent::{completeness_check, omega_n, slide_identity_check, transfer_composition, weyl_basis};
use entangle_tl::numkernel::Tolerance;
use entangle_tl::random::{random_matrix, random_unitary, seeded};

fn main() -> entangle_tl::Result<()> {
    let d = 3;
    let tol = Tolerance::DEFAULT;
    let mut rng = seeded(11);
    let basis = weyl_basis(d)?;
    let gram = basis.trace_gram();
    let off: f64 = (0..gram.rows())
        .flat_map(|r| (0..gram.cols()).filter(move |&c| c != r).map(move |c| (r, c)))
        .map(|(r, c)| gram.get(r, c).norm())
        .fold(0.0, f64::max);
    println!("tr(U_n^dag U_n) = {}, largest off-diagonal {off:.1e}\n", gram.get(0, 0));

    let w5 = omega_n(d, 5, &basis)?;
    println!("|Omega_5> = {:?}\n", w5.ket);

    println!("{}\n", slide_identity_check(&random_matrix(d, d, &mut rng), d, tol)?);
    let (u, v) = (random_unitary(d, &mut rng), random_unitary(d, &mut rng));
    println!("{}\n", transfer_composition(&u, &v, d, tol)?);
    println!("{}", completeness_check(d, &basis, tol)?);
    Ok(())
}
