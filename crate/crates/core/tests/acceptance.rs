//! Acceptance criteria, one line each. Every criterion recomputes its
//! identity from literal matrices or an independent route and also requires
//! the library's own report to pass at the same tolerance.

use std::f64::consts::{FRAC_1_SQRT_2, TAU};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use entangle_tl::braidgroup::{check_braid_relation, check_virtual_mixed, StrandOperator};
use entangle_tl::diagram::{
    brute_force_evaluate, brute_force_evaluate_stack, check_brauer_mixed, check_tl_axioms, check_tl_decorated, compose,
    compose_all, e_gen, evaluate, flow_layers, quantum_flow, random_diagram, OperatorTable,
};
use entangle_tl::maxent::weyl_basis;
use entangle_tl::numkernel::{Matrix, StateVector, Tolerance, C64};
use entangle_tl::qubitbell::check_bell_matrix_identities;
use entangle_tl::random::{random_matrix, random_state, random_unitary, seeded};
use entangle_tl::teleport::{
    bell_matrix_form_check, dense_coding_check, qudit_resolution_check, simulate, teleport_equation_qubit_check,
    tight_teleportation_check, virtual_form_check, DensityOperator,
};
use statrs::distribution::{ChiSquared, ContinuousCDF};

const TOL_QUBIT: f64 = 1e-12;
const TOL_QUDIT: f64 = 1e-10;
const TOL_FLOW: f64 = 1e-9;
const TOL_EXACT: f64 = 1e-15;
const CHI2_ALPHA: f64 = 0.01;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn r(x: f64) -> C64 {
    c(x, 0.0)
}

fn tol(eps: f64) -> Tolerance {
    Tolerance::new(eps).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(what: &str, residual: f64, eps: f64) -> Result<f64, String> {
    ensure(residual <= eps, || {
        format!("{what}: residual {residual:.3e} > {eps:.0e}")
    })?;
    Ok(residual)
}

fn library(report: entangle_tl::VerificationReport) -> Result<f64, String> {
    ensure(report.overall_pass, || format!("library report failed:\n{report}"))?;
    Ok(report.max_residual())
}

fn real_matrix(rows: &[&[f64]]) -> Matrix {
    Matrix::from_real_rows(rows).unwrap()
}

fn bell_literal() -> Matrix {
    let s = FRAC_1_SQRT_2;
    real_matrix(&[
        &[s, 0.0, 0.0, s],
        &[0.0, s, -s, 0.0],
        &[0.0, s, s, 0.0],
        &[-s, 0.0, 0.0, s],
    ])
}

fn sig1() -> Matrix {
    real_matrix(&[&[0.0, 1.0], &[1.0, 0.0]])
}

fn sig2() -> Matrix {
    Matrix::from_rows(vec![vec![r(0.0), c(0.0, -1.0)], vec![c(0.0, 1.0), r(0.0)]]).unwrap()
}

fn sig3() -> Matrix {
    real_matrix(&[&[1.0, 0.0], &[0.0, -1.0]])
}

fn perm_literal() -> Matrix {
    real_matrix(&[
        &[1.0, 0.0, 0.0, 0.0],
        &[0.0, 0.0, 1.0, 0.0],
        &[0.0, 1.0, 0.0, 0.0],
        &[0.0, 0.0, 0.0, 1.0],
    ])
}

fn ket(amps: &[f64]) -> StateVector {
    StateVector::from_real(amps).unwrap()
}

/// Bell states as listed: phi+, phi-, psi+, psi-.
fn bell_states() -> [StateVector; 4] {
    let s = FRAC_1_SQRT_2;
    [
        ket(&[s, 0.0, 0.0, s]),
        ket(&[s, 0.0, 0.0, -s]),
        ket(&[0.0, s, s, 0.0]),
        ket(&[0.0, s, -s, 0.0]),
    ]
}

fn res(a: &Matrix, b: &Matrix) -> f64 {
    a.max_residual(b).unwrap()
}

fn vres(a: &StateVector, b: &StateVector) -> f64 {
    a.max_residual(b).unwrap()
}

/// `X^a Z^b` built entrywise, ordered `n - 1 = a + d b`.
fn weyl_oracle(d: usize) -> Vec<Matrix> {
    let mut out = Vec::new();
    for b in 0..d {
        for a in 0..d {
            out.push(Matrix::from_fn(d, d, |row, col| {
                if row == (col + a) % d {
                    C64::from_polar(1.0, TAU * (b * col) as f64 / d as f64)
                } else {
                    r(0.0)
                }
            }));
        }
    }
    let mut ordered = vec![Matrix::identity(d); d * d];
    for b in 0..d {
        for a in 0..d {
            ordered[a + d * b] = out[b * d + a].clone();
        }
    }
    ordered
}

/// `(1/sqrt d) sum_i |ii>`, entrywise.
fn omega_oracle(d: usize) -> StateVector {
    let mut v = vec![r(0.0); d * d];
    for i in 0..d {
        v[i * d + i] = r(1.0 / (d as f64).sqrt());
    }
    StateVector::new(v).unwrap()
}

fn criterion_1() -> Outcome {
    let b = bell_literal();
    let id4 = Matrix::identity(4);
    let b2 = &b * &b;
    let b4 = &b2 * &b2;
    let b8 = &b4 * &b4;
    let mut worst = 0.0f64;
    worst = worst.max(within(
        "B^2 = i s1 x s2",
        res(&b2, &sig1().kron(&sig2()).scale(c(0.0, 1.0))),
        TOL_QUBIT,
    )?);
    worst = worst.max(within("B^4 = -1", res(&b4, &id4.scale(r(-1.0))), TOL_QUBIT)?);
    worst = worst.max(within("B^8 = 1", res(&b8, &id4), TOL_QUBIT)?);
    worst = worst.max(within(
        "B = (1 + B^2)/sqrt2",
        res(&b, &id4.checked_add(&b2).unwrap().scale(r(FRAC_1_SQRT_2))),
        TOL_QUBIT,
    )?);
    let [phi_p, phi_m, psi_p, psi_m] = bell_states();
    let basis = |i: usize, j: usize| StateVector::product_basis(2, &[i, j]);
    for (name, got, want) in [
        ("phi+ = B|11>", b.apply(&basis(1, 1)).unwrap(), phi_p),
        ("phi- = B|00>", b.apply(&basis(0, 0)).unwrap(), phi_m),
        ("psi+ = B|01>", b.apply(&basis(0, 1)).unwrap(), psi_p),
        ("psi- = -B|10>", b.apply(&basis(1, 0)).unwrap().scale(r(-1.0)), psi_m),
    ] {
        worst = worst.max(within(name, vres(&got, &want), TOL_QUBIT)?);
    }
    ensure(res(&entangle_tl::qubitbell::bell_matrix(), &b) == 0.0, || {
        "library B differs from the literal".into()
    })?;
    let lib = library(check_bell_matrix_identities(tol(TOL_QUBIT)).map_err(|e| e.to_string())?)?;
    Ok(format!("max residual {:.1e} (tol {TOL_QUBIT:.0e})", worst.max(lib)))
}

fn embed3(m: &Matrix, i: usize) -> Matrix {
    let id = Matrix::identity(2);
    if i == 1 {
        m.kron(&id)
    } else {
        id.kron(m)
    }
}

fn criterion_2() -> Outcome {
    let b = bell_literal();
    let b2 = &b * &b;
    let id = Matrix::identity(2);
    let closed = id.kron(&b2).checked_add(&b2.kron(&id)).unwrap().scale(r(FRAC_1_SQRT_2));
    let (b1, bb2) = (embed3(&b, 1), embed3(&b, 2));
    let lhs = &(&b1 * &bb2) * &b1;
    let rhs = &(&bb2 * &b1) * &bb2;
    let mut worst = within("b1 b2 b1 = closed form", res(&lhs, &closed), TOL_QUBIT)?;
    worst = worst.max(within("b2 b1 b2 = closed form", res(&rhs, &closed), TOL_QUBIT)?);
    let p = perm_literal();
    let (v1, v2) = (embed3(&p, 1), embed3(&p, 2));
    worst = worst.max(within(
        "b2 v1 v2 = v1 v2 b1",
        res(&(&(&bb2 * &v1) * &v2), &(&(&v1 * &v2) * &b1)),
        TOL_QUBIT,
    )?);
    let t = tol(TOL_QUBIT);
    let lib = library(check_braid_relation(&StrandOperator::bell(), t).map_err(|e| e.to_string())?)?.max(library(
        check_virtual_mixed(&StrandOperator::bell(), &StrandOperator::swap(2), t).map_err(|e| e.to_string())?,
    )?);
    Ok(format!("max residual {:.1e} (tol {TOL_QUBIT:.0e})", worst.max(lib)))
}

fn criterion_3() -> Outcome {
    let [phi_p, phi_m, psi_p, psi_m] = bell_states();
    let corrections = [Matrix::identity(2), sig3(), sig1(), sig2().scale(c(0.0, -1.0))];
    let bells = [phi_p.clone(), phi_m, psi_p, psi_m];
    let p = perm_literal();
    let id2 = Matrix::identity(2);
    let vtele = id2.kron(&p).checked_sub(&id2.kron(&sig2()).kron(&sig2())).unwrap();
    let mut rng = seeded(3);
    let t = tol(TOL_QUBIT);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let psi = random_state(2, &mut rng);
        let lhs = psi.kron(&phi_p);
        let mut rhs = StateVector::zeros(8);
        for (bell, k) in bells.iter().zip(&corrections) {
            rhs = &rhs + &bell.kron(&k.apply(&psi).unwrap()).scale(r(0.5));
        }
        worst = worst.max(within("teleportation equation", vres(&lhs, &rhs), TOL_QUBIT)?);
        let v = vtele.apply(&phi_p.kron(&psi)).unwrap();
        worst = worst.max(within("swap form", vres(&v, &lhs), TOL_QUBIT)?);
        let (a, b) = (psi.amplitudes()[0], psi.amplitudes()[1]);
        worst = worst.max(library(
            teleport_equation_qubit_check(a, b, t).map_err(|e| e.to_string())?,
        )?);
        worst = worst.max(library(bell_matrix_form_check(&psi, t).map_err(|e| e.to_string())?)?);
        worst = worst.max(library(virtual_form_check(&psi, t).map_err(|e| e.to_string())?)?);
    }
    Ok(format!("100 states, max residual {worst:.1e} (tol {TOL_QUBIT:.0e})"))
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let mut rng = seeded(4);
    let mut worst = 0.0f64;
    for d in 2..=8 {
        let us = weyl_oracle(d);
        let basis = weyl_basis(d).map_err(|e| e.to_string())?;
        for (n, u) in us.iter().enumerate() {
            ensure(res(u, basis.get(n + 1).unwrap()) <= 1e-14, || {
                format!("d={d}: basis element {} differs", n + 1)
            })?;
        }
        let w = omega_oracle(d);
        let id = Matrix::identity(d);
        let omegas: Vec<StateVector> = us.iter().map(|u| u.kron(&id).apply(&w).unwrap()).collect();
        for _ in 0..20 {
            let psi = random_state(d, &mut rng);
            let lhs = psi.kron(&w);
            let mut rhs = StateVector::zeros(d * d * d);
            for (u, wn) in us.iter().zip(&omegas) {
                rhs = &rhs + &wn.kron(&u.dagger().apply(&psi).unwrap());
            }
            let rhs = rhs.scale(r(1.0 / d as f64));
            worst = worst.max(within(&format!("resolution d={d}"), vres(&lhs, &rhs), TOL_QUDIT)?);
            worst = worst.max(library(
                qudit_resolution_check(d, &psi, &basis, tol(TOL_QUDIT)).map_err(|e| e.to_string())?,
            )?);
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(10), || format!("took {elapsed:?}"))?;
    Ok(format!(
        "d = 2..8 x 20 states, max residual {worst:.1e} (tol {TOL_QUDIT:.0e}), {} ms",
        elapsed.as_millis()
    ))
}

fn criterion_5() -> Outcome {
    let mut rng = seeded(5);
    let mut worst = 0.0f64;
    for d in 2..=5 {
        let us = weyl_oracle(d);
        let basis = weyl_basis(d).map_err(|e| e.to_string())?;
        let w = omega_oracle(d).projector();
        let id = Matrix::identity(d);
        let projs: Vec<Matrix> = us
            .iter()
            .map(|u| u.kron(&id).apply(&omega_oracle(d)).unwrap().projector())
            .collect();
        for _ in 0..10 {
            let (p1, p2) = (random_state(d, &mut rng), random_state(d, &mut rng));
            let (q1, q2) = (random_state(d, &mut rng), random_state(d, &mut rng));
            let rho = p1.outer(&p2);
            let obs = q1.outer(&q2);
            let target = (&rho * &obs).trace().unwrap();
            let left = rho.kron(&w);
            let mut total = r(0.0);
            for (u, wn) in us.iter().zip(&projs) {
                let tn = &(&u.dagger() * &obs) * u;
                let term = (&left * &wn.kron(&tn)).trace().unwrap();
                worst = worst.max(within(
                    &format!("term d={d}"),
                    (term - target / (d * d) as f64).norm(),
                    TOL_QUDIT,
                )?);
                total += term;
            }
            worst = worst.max(within(&format!("sum d={d}"), (total - target).norm(), TOL_QUDIT)?);
            let rho = DensityOperator::rank_one(&p1, &p2).map_err(|e| e.to_string())?;
            let obs = DensityOperator::rank_one(&q1, &q2).map_err(|e| e.to_string())?;
            worst = worst.max(library(
                tight_teleportation_check(d, &rho, &obs, &basis, tol(TOL_QUDIT)).map_err(|e| e.to_string())?,
            )?);
        }
    }
    Ok(format!(
        "d = 2..5 x 10 pairs, max residual {worst:.1e} (tol {TOL_QUDIT:.0e})"
    ))
}

fn criterion_6() -> Outcome {
    let mut worst = 0.0f64;
    for d in 2..=5 {
        let us = weyl_oracle(d);
        let w = omega_oracle(d);
        let id = Matrix::identity(d);
        // tr(omega (U_n^dag x 1) omega_m (U_n x 1)) = |<Omega|(U_n^dag U_m x 1)|Omega>|^2
        for (n, un) in us.iter().enumerate() {
            for (m, um) in us.iter().enumerate() {
                let amp = w.inner(&(&un.dagger() * um).kron(&id).apply(&w).unwrap()).unwrap();
                let want = if n == m { 1.0 } else { 0.0 };
                worst = worst.max(within(
                    &format!("d={d} ({n},{m})"),
                    (amp.norm_sqr() - want).abs(),
                    TOL_QUDIT,
                )?);
            }
        }
        worst = worst.max(library(
            dense_coding_check(d, &weyl_basis(d).unwrap(), tol(TOL_QUDIT)).map_err(|e| e.to_string())?,
        )?);
    }
    Ok(format!("d = 2..5, max residual {worst:.1e} (tol {TOL_QUDIT:.0e})"))
}

/// `1^(i-1) x |Omega><Omega| x 1^(n-i-1)` built with Kronecker products.
fn e_oracle(i: usize, n: usize, d: usize) -> Matrix {
    let left = Matrix::identity(d.pow(i as u32 - 1));
    let right = Matrix::identity(d.pow((n - i - 1) as u32));
    left.kron(&omega_oracle(d).projector()).kron(&right)
}

fn swap_oracle(i: usize, n: usize, d: usize) -> Matrix {
    let p = Matrix::from_fn(d * d, d * d, |row, col| {
        if row == (col % d) * d + col / d {
            r(1.0)
        } else {
            r(0.0)
        }
    });
    Matrix::identity(d.pow(i as u32 - 1))
        .kron(&p)
        .kron(&Matrix::identity(d.pow((n - i - 1) as u32)))
}

fn criterion_7() -> Outcome {
    let t = tol(TOL_QUDIT);
    let mut worst = 0.0f64;
    let mut checks = 0;
    for n in 2..=5 {
        for d in 2..=4 {
            let report = check_tl_axioms(n, d, t).map_err(|e| e.to_string())?;
            let diag = report
                .checks
                .iter()
                .find(|x| x.identity_name.contains("E_i E_j E_i") && x.identity_name.contains("[diagram]"));
            if n >= 3 {
                ensure(diag.is_some_and(|x| x.pass), || {
                    format!("n={n} d={d}: diagram relation missing or failed")
                })?;
            }
            worst = worst.max(library(report)?);
            checks += 1;
            for i in 1..n - 1 {
                let (a, b) = (e_oracle(i, n, d), e_oracle(i + 1, n, d));
                let scale = r(1.0 / (d * d) as f64);
                worst = worst.max(within(
                    "E_i E_i+1 E_i",
                    res(&(&(&a * &b) * &a), &a.scale(scale)),
                    TOL_QUDIT,
                )?);
                worst = worst.max(within(
                    "E_i+1 E_i E_i+1",
                    res(&(&(&b * &a) * &b), &b.scale(scale)),
                    TOL_QUDIT,
                )?);
                let composed = compose(
                    &compose(&e_gen(i, n).unwrap(), &e_gen(i + 1, n).unwrap()).unwrap(),
                    &e_gen(i, n).unwrap(),
                )
                .unwrap();
                let ratio = composed.ratio_to(&e_gen(i, n).unwrap());
                ensure(ratio.is_some_and(|s| s.half_power == -4 && s.coeff == r(1.0)), || {
                    format!("ratio {ratio:?}")
                })?;
                let m = evaluate(&e_gen(i, n).unwrap(), d, &OperatorTable::new()).unwrap();
                worst = worst.max(within("E_i evaluates to the Kronecker form", res(&m, &a), TOL_QUDIT)?);
            }
        }
    }
    for d in 2..=3 {
        for k in 1..=d * d {
            worst = worst.max(library(check_tl_decorated(3, d, k, t).map_err(|e| e.to_string())?)?);
            checks += 1;
        }
    }
    Ok(format!(
        "{checks} suites, exponent -4 in every composition, max residual {worst:.1e} (tol {TOL_QUDIT:.0e})"
    ))
}

fn criterion_8() -> Outcome {
    let t = tol(TOL_QUDIT);
    let mut worst = 0.0f64;
    for n in 3..=4 {
        for d in 2..=3 {
            worst = worst.max(library(check_brauer_mixed(n, d, t).map_err(|e| e.to_string())?)?);
            for i in 1..n - 1 {
                let j = i + 1;
                let (ei, ej) = (e_oracle(i, n, d), e_oracle(j, n, d));
                let (vi, vj) = (swap_oracle(i, n, d), swap_oracle(j, n, d));
                let lam = r(d as f64);
                let eiej = (&ei * &ej).scale(lam);
                let ejei = (&ej * &ei).scale(lam);
                worst = worst.max(within(
                    "v_j v_i E_j = d E_i E_j",
                    res(&(&(&vj * &vi) * &ej), &eiej),
                    TOL_QUDIT,
                )?);
                worst = worst.max(within(
                    "E_i v_j v_i = d E_i E_j",
                    res(&(&(&ei * &vj) * &vi), &eiej),
                    TOL_QUDIT,
                )?);
                worst = worst.max(within(
                    "v_i v_j E_i = d E_j E_i",
                    res(&(&(&vi * &vj) * &ei), &ejei),
                    TOL_QUDIT,
                )?);
                worst = worst.max(within("E_i v_i = E_i", res(&(&ei * &vi), &ei), TOL_QUDIT)?);
            }
        }
    }
    Ok(format!(
        "n = 3, 4 and d = 2, 3 with lambda = d, max residual {worst:.1e} (tol {TOL_QUDIT:.0e})"
    ))
}

fn flow_closed_form_oracle(u: &[Matrix], phi: &StateVector) -> StateVector {
    let d = phi.dim();
    let chain = [
        u[7].transpose(),
        u[6].dagger(),
        u[5].transpose(),
        u[4].conj(),
        u[3].clone(),
        u[2].dagger(),
        u[1].transpose(),
        u[0].dagger(),
    ];
    let m = chain.iter().fold(Matrix::identity(d), |acc, f| &acc * f);
    let t25 = (&u[1].dagger() * &u[4]).trace().unwrap();
    let t47 = (&u[3].dagger() * &u[6]).trace().unwrap();
    m.apply(phi).unwrap().scale(t25 * t47 / (d as f64).powi(6))
}

fn criterion_9() -> Outcome {
    let layers = flow_layers();
    let mut rng = seeded(9);
    let mut worst = 0.0f64;
    for (d, samples) in [(2usize, 50), (3, 10)] {
        for _ in 0..samples {
            let ops: Vec<Matrix> = (0..8).map(|_| random_unitary(d, &mut rng)).collect();
            let phi = random_state(d, &mut rng);
            let mut table = OperatorTable::new();
            for (k, u) in ops.iter().enumerate() {
                table.insert(format!("U{}", k + 1), u.clone());
            }
            let contracted = brute_force_evaluate_stack(&layers, d, &table)
                .unwrap()
                .apply(&phi)
                .unwrap();
            let want = flow_closed_form_oracle(&ops, &phi);
            worst = worst.max(within(&format!("flow d={d}"), vres(&contracted, &want), TOL_FLOW)?);
            let out = quantum_flow(&ops, &phi, d, tol(TOL_FLOW)).map_err(|e| e.to_string())?;
            worst = worst.max(within("library flow", vres(&out.output, &want), TOL_FLOW)?);
        }
        let phi = random_state(d, &mut rng);
        let ids = vec![Matrix::identity(d); 8];
        let out = quantum_flow(&ids, &phi, d, tol(TOL_FLOW)).map_err(|e| e.to_string())?;
        let scaled = phi.scale(r((d as f64).powi(-4)));
        within(&format!("identities d={d}"), vres(&out.output, &scaled), TOL_EXACT)?;
        let mut orth = ids;
        // tr(1^dag X) = 0 for the cyclic shift
        orth[4] = Matrix::from_fn(d, d, |row, col| if row == (col + 1) % d { r(1.0) } else { r(0.0) });
        let out = quantum_flow(&orth, &phi, d, tol(TOL_FLOW)).map_err(|e| e.to_string())?;
        within(&format!("orthogonal pair d={d}"), out.output.norm(), TOL_EXACT)?;
    }
    Ok(format!("50 octuples at d=2, 10 at d=3, max residual {worst:.1e} (tol {TOL_FLOW:.0e}); special cases within {TOL_EXACT:.0e}"))
}

fn criterion_10() -> Outcome {
    let start = Instant::now();
    let mut rng = seeded(10);
    let labels = ["A", "B", "C"];
    let mut worst = 0.0f64;
    let mut loops = 0;
    for k in 0..200 {
        let d = 1 + k % 3;
        let mut table = OperatorTable::new();
        for l in labels {
            table.insert(l, random_matrix(d, d, &mut rng));
        }
        // arities up to 4 sharing the parity of `a`
        let a = k % 5;
        let same = |j: usize| if a % 2 == 0 { [0, 2, 4][j % 3] } else { [1, 3, 1][j % 3] };
        let (b, e) = (same(k / 5), same(k / 15));
        let x = random_diagram(a, b, &labels, 3, &mut rng).map_err(|e| e.to_string())?;
        let y = random_diagram(b, e, &labels, 3, &mut rng).map_err(|e| e.to_string())?;
        let diag = compose(&x, &y).unwrap();
        loops += diag.loops().len();
        let fast = evaluate(&diag, d, &table).unwrap();
        let single = brute_force_evaluate(&diag, d, &table).unwrap();
        let stacked = brute_force_evaluate_stack(&[x, y], d, &table).unwrap();
        let scale = 1.0 + single.data().iter().map(|z| z.norm()).fold(0.0, f64::max);
        worst = worst.max(within(
            "evaluate vs contraction",
            res(&fast, &single) / scale,
            TOL_QUDIT,
        )?);
        worst = worst.max(within(
            "evaluate vs layered contraction",
            res(&fast, &stacked) / scale,
            TOL_QUDIT,
        )?);
    }
    let composed = compose_all(&[e_gen(1, 2).unwrap(), e_gen(1, 2).unwrap()]).unwrap();
    within(
        "closed loop",
        res(
            &evaluate(&composed, 3, &OperatorTable::new()).unwrap(),
            &brute_force_evaluate(&composed, 3, &OperatorTable::new()).unwrap(),
        ),
        TOL_QUDIT,
    )?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!(
        "200 diagrams ({loops} loops), max relative residual {worst:.1e} (tol {TOL_QUDIT:.0e}), {} ms",
        elapsed.as_millis()
    ))
}

fn criterion_11() -> Outcome {
    let mut notes = Vec::new();
    for d in [2usize, 3] {
        let psi = random_state(d, &mut seeded(11 + d as u64));
        let basis = weyl_basis(d).map_err(|e| e.to_string())?;
        let trials = 4096;
        let run = || simulate(d, &psi, &basis, trials, 2024).map_err(|e| e.to_string());
        let a = run()?;
        let b = run()?;
        let bytes = |x: &entangle_tl::teleport::SimulationRecord| serde_json::to_vec(x).unwrap();
        ensure(bytes(&a) == bytes(&b), || "seeded runs differ".into())?;
        within(&format!("fidelity d={d}"), 1.0 - a.min_fidelity, TOL_QUBIT)?;
        let k = (d * d) as f64;
        let expected = trials as f64 / k;
        let chi2: f64 = a
            .histogram
            .iter()
            .map(|&o| (o as f64 - expected).powi(2) / expected)
            .sum();
        let p = 1.0 - ChiSquared::new(k - 1.0).unwrap().cdf(chi2);
        ensure(p > CHI2_ALPHA, || format!("d={d}: chi2 {chi2:.2}, p = {p:.4}"))?;
        notes.push(format!("d={d} chi2 {chi2:.2} p {p:.3}"));
    }
    Ok(format!(
        "4096 trials, fidelity within {TOL_QUBIT:.0e}, byte-identical reruns, {}",
        notes.join(", ")
    ))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("Bell matrix identities", criterion_1),
        ("braid and virtual mixed relations", criterion_2),
        (
            "qubit teleportation equation and its Bell-matrix and swap forms",
            criterion_3,
        ),
        ("qudit resolution of psi x Omega", criterion_4),
        ("tight teleportation characteristic equation", criterion_5),
        ("dense coding delta table", criterion_6),
        ("Temperley-Lieb axioms, plain and decorated", criterion_7),
        ("Brauer mixed relations", criterion_8),
        ("information-flow formula", criterion_9),
        ("evaluate matches tensor contraction", criterion_10),
        ("protocol simulator", criterion_11),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default())
        });
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("[PASS] criterion {:>2}: {name}: {detail} [{ms} ms]", k + 1),
            Err(why) => {
                failed += 1;
                println!("[FAIL] criterion {:>2}: {name}: {why} [{ms} ms]", k + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
