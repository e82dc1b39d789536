//! Teleportation and dense coding: the qubit equation, its Bell-matrix and
//! virtual-crossing forms, the qudit measurement form, a seeded protocol
//! simulator, and the characteristic equations of the tight scheme.

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use serde::{Deserialize, Serialize};

use crate::braidgroup::teleport_swap;
use crate::error::{Error, Result};
use crate::maxent::{omega, omega_n, WeylBasis};
use crate::numkernel::{Matrix, StateVector, Tolerance, C64, ONE, ZERO};
use crate::qubitbell::{bell_matrix, bell_state, permutation_qubit, sigma1, sigma2, sigma3, sigma_11, BellKind};
use crate::random::seeded;
use crate::report::VerificationReport;

const NORM_SLACK: f64 = 1e-10;

fn require_unit(psi: &StateVector, dim: usize) -> Result<()> {
    if psi.dim() != dim {
        return Err(Error::Dimension {
            op: "teleport input",
            left: (psi.dim(), 1),
            right: (dim, 1),
        });
    }
    let n = psi.norm();
    if (n - 1.0).abs() > NORM_SLACK {
        return Err(Error::ContractViolation(format!(
            "input state must be normalized, norm is {n}"
        )));
    }
    Ok(())
}

fn half() -> C64 {
    C64::new(0.5, 0.0)
}

/// `(<phi|_{CA} x 1_B) |state>_{CAB}` for a two-site bra on the first two
/// qudits of a three-qudit ket.
fn contract_front(bra: &StateVector, state: &StateVector, d: usize) -> StateVector {
    let mut out = vec![ZERO; d];
    for (ca, w) in bra.amplitudes().iter().enumerate() {
        let w = w.conj();
        for (b, o) in out.iter_mut().enumerate() {
            *o += w * state.amplitudes()[ca * d + b];
        }
    }
    StateVector::new(out).expect("finite")
}

/// The standard qubit teleportation equation for `|psi> = a|0> + b|1>`:
/// each Bell branch on CA carries `(1/2) K|psi>` on B with corrections
/// `1, s3, s1, -i s2`, and the four branches sum back to `|psi>|phi+>`.
pub fn teleport_equation_qubit_check(a: C64, b: C64, tol: Tolerance) -> Result<VerificationReport> {
    let psi = StateVector::new(vec![a, b])?;
    require_unit(&psi, 2)?;
    let lhs = psi.kron(&bell_state(BellKind::PhiPlus));
    let mut report = VerificationReport::new("teleport-qubit");
    let mut rebuilt = StateVector::zeros(8);
    for kind in BellKind::ALL {
        let bell = bell_state(kind);
        let bob = contract_front(&bell, &lhs, 2);
        let expect = kind.branch_operator().apply(&psi)?.scale(half());
        report.record(format!("{kind} branch = (1/2) K psi"), bob.max_residual(&expect)?, tol);
        rebuilt = &rebuilt + &bell.kron(&expect);
    }
    report.record("psi x phi+ = sum of branches", lhs.max_residual(&rebuilt)?, tol);
    Ok(report)
}

/// `v^T x M s11 |psi> = sum_k |k> x M s11_k |psi>` with `k` over `00, 01, 10, 11`.
fn v_sigma(m: &Matrix, psi: &StateVector, coeff: C64) -> Result<StateVector> {
    let mut out = StateVector::zeros(8);
    for (k, s) in sigma_11().iter().enumerate() {
        let branch = (m * s).apply(psi)?.scale(coeff);
        out = &out + &StateVector::basis(4, k).kron(&branch);
    }
    Ok(out)
}

/// The Bell-matrix form of teleportation and its three companions for the
/// other resource states.
pub fn bell_matrix_form_check(psi: &StateVector, tol: Tolerance) -> Result<VerificationReport> {
    require_unit(psi, 2)?;
    let id = Matrix::identity(2);
    let b = bell_matrix();
    let b_inv = b.transpose();
    let front = id.kron(&b);
    let back = b.kron(&id);
    let config = &b_inv.kron(&id) * &front;
    let two = |i, j| StateVector::product_basis(2, &[i, j]);
    let mut report = VerificationReport::new("bell-matrix-form");

    let lhs = front.apply(&psi.kron(&two(1, 1)))?;
    let rhs = back.apply(&v_sigma(&id, psi, half())?)?;
    report.record(
        "phi+: (1 x B)(psi|11>) = (B x 1)(v x s11 psi/2)",
        lhs.max_residual(&rhs)?,
        tol,
    );
    report.record(
        "phi+: (1 x B)(psi|11>) = psi x phi+",
        lhs.max_residual(&psi.kron(&bell_state(BellKind::PhiPlus)))?,
        tol,
    );

    let lhs = front.apply(&psi.kron(&two(0, 0)))?;
    let rhs = back.apply(&v_sigma(&sigma3(), psi, half())?)?;
    report.record(
        "phi-: (1 x B)(psi|00>) = (B x 1)(v x s3 s11 psi/2)",
        lhs.max_residual(&rhs)?,
        tol,
    );
    let via_local = psi.kron(&id.kron(&sigma3()).apply(&bell_state(BellKind::PhiPlus))?);
    report.record(
        "phi-: psi x (1 x s3)phi+ = (1 x B)(psi|00>)",
        lhs.max_residual(&via_local)?,
        tol,
    );

    let lhs = config.apply(&psi.kron(&two(0, 1)))?;
    let rhs = v_sigma(&sigma1(), psi, half())?;
    report.record(
        "psi+: (B^-1 x 1)(1 x B)(psi|01>) = v x s1 s11 psi/2",
        lhs.max_residual(&rhs)?,
        tol,
    );

    let lhs = config.apply(&psi.kron(&two(1, 0).scale(-ONE)))?;
    let rhs = v_sigma(&sigma2().scale(crate::numkernel::I), psi, C64::new(-0.5, 0.0))?;
    report.record(
        "psi-: (B^-1 x 1)(1 x B)(psi|-10>) = -v x i s2 s11 psi/2",
        lhs.max_residual(&rhs)?,
        tol,
    );
    Ok(report)
}

/// The virtual-crossing form `(1 x P - 1 x S)(bell_CA x psi_B) = psi_C x bell_AB`
/// for all four resource states, its agreement with the teleportation swap,
/// and the mixed relation on `|11> x psi`.
pub fn virtual_form_check(psi: &StateVector, tol: Tolerance) -> Result<VerificationReport> {
    require_unit(psi, 2)?;
    let id = Matrix::identity(2);
    let p = permutation_qubit();
    let id_p = id.kron(&p);
    let mut report = VerificationReport::new("virtual-form");
    let cases = [
        (BellKind::PhiPlus, id.kron(&sigma2()).kron(&sigma2())),
        (BellKind::PhiMinus, id.kron(&sigma1()).kron(&sigma1())),
        (BellKind::PsiPlus, id.kron(&sigma3()).kron(&sigma3())),
        (BellKind::PsiMinus, Matrix::identity(8)),
    ];
    for (kind, sub) in cases {
        let bell = bell_state(kind);
        let lhs = psi.kron(&bell);
        let rhs = (&id_p - &sub).apply(&bell.kron(psi))?;
        report.record(
            format!("{kind}: psi x bell = (1 x P - S)(bell x psi)"),
            lhs.max_residual(&rhs)?,
            tol,
        );
    }

    let start = bell_state(BellKind::PhiPlus).kron(psi);
    let virt = (&id_p - &id.kron(&sigma2()).kron(&sigma2())).apply(&start)?;
    let swapped = teleport_swap(2).apply(&start)?;
    report.record(
        "(1 x P - 1 x s2 x s2) = (P x 1)(1 x P) on phi+ x psi",
        virt.max_residual(&swapped)?,
        tol,
    );

    let b = bell_matrix();
    let swap = teleport_swap(2);
    let seed = StateVector::product_basis(2, &[1, 1]).kron(psi);
    let lhs = (&id.kron(&b) * &swap).apply(&seed)?;
    let rhs = (&swap * &b.kron(&id)).apply(&seed)?;
    report.record(
        "(1 x B)(P x 1)(1 x P) = (P x 1)(1 x P)(B x 1) on |11> x psi",
        lhs.max_residual(&rhs)?,
        tol,
    );
    Ok(report)
}

/// One branch of the qudit measurement form.
#[derive(Debug, Clone, PartialEq)]
pub struct TeleportOutcome {
    pub outcome_index: usize,
    /// `U_n`, the unitary Bob applies.
    pub correction: Matrix,
    /// `U_n^dag |psi>`, the state Bob holds before correcting.
    pub bob_state: StateVector,
    /// Squared norm of the unnormalized branch; always `1/d^2`.
    pub amplitude_weight: f64,
    pub residual: f64,
}

/// `(omega_n x 1)(psi x Omega) = (1/d) Omega_n x U_n^dag psi`.
pub fn measurement_form(
    d: usize,
    n: usize,
    psi: &StateVector,
    basis: &WeylBasis,
    tol: Tolerance,
) -> Result<TeleportOutcome> {
    require_unit(psi, d)?;
    let state = psi.kron(&omega(d)?);
    let me = omega_n(d, n, basis)?;
    let u = basis.get(n)?.clone();
    let branch = contract_front(&me.ket, &state, d);
    let projected = me.ket.kron(&branch);
    let bob = u.dagger().apply(psi)?;
    let expected = me.ket.kron(&bob).scale(C64::new(1.0 / d as f64, 0.0));
    let residual = projected.max_residual(&expected)?;
    if !tol.accepts(residual) {
        return Err(Error::IdentityViolated {
            identity: format!("measurement form n={n}"),
            residual,
        });
    }
    Ok(TeleportOutcome {
        outcome_index: n,
        correction: u,
        amplitude_weight: branch.norm().powi(2),
        bob_state: branch.normalized()?,
        residual,
    })
}

/// `psi x Omega = (1/d) sum_n Omega_n x U_n^dag psi`.
pub fn qudit_resolution_check(
    d: usize,
    psi: &StateVector,
    basis: &WeylBasis,
    tol: Tolerance,
) -> Result<VerificationReport> {
    require_unit(psi, d)?;
    let lhs = psi.kron(&omega(d)?);
    let mut rhs = StateVector::zeros(d * d * d);
    for n in 1..=basis.len() {
        let me = omega_n(d, n, basis)?;
        let bob = basis.get(n)?.dagger().apply(psi)?;
        rhs = &rhs + &me.ket.kron(&bob);
    }
    let rhs = rhs.scale(C64::new(1.0 / d as f64, 0.0));
    let mut report = VerificationReport::new("qudit-resolution");
    report.record(
        "psi x Omega = (1/d) sum Omega_n x Un^dag psi",
        lhs.max_residual(&rhs)?,
        tol,
    );
    Ok(report)
}

/// Outcome statistics of a seeded run of the protocol.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationRecord {
    pub d: usize,
    pub seed: u64,
    pub trials: u64,
    /// `histogram[k]` counts outcome `n = k + 1`.
    pub histogram: Vec<u64>,
    pub min_fidelity: f64,
}

/// Samples measurement outcomes from the exact branch weights, applies the
/// correction and records the worst fidelity with the input.
pub fn simulate(d: usize, psi: &StateVector, basis: &WeylBasis, trials: u64, seed: u64) -> Result<SimulationRecord> {
    if trials == 0 {
        return Err(Error::ContractViolation("trials must be at least 1".into()));
    }
    require_unit(psi, d)?;
    if basis.d() != d {
        return Err(Error::ContractViolation(format!(
            "basis has d = {}, requested d = {d}",
            basis.d()
        )));
    }
    let state = psi.kron(&omega(d)?);
    let mut weights = Vec::with_capacity(basis.len());
    let mut corrected = Vec::with_capacity(basis.len());
    for n in 1..=basis.len() {
        let me = omega_n(d, n, basis)?;
        let branch = contract_front(&me.ket, &state, d);
        weights.push(branch.norm().powi(2));
        corrected.push(basis.get(n)?.apply(&branch.normalized()?)?);
    }
    let dist = WeightedIndex::new(&weights).map_err(|e| Error::ContractViolation(e.to_string()))?;
    let mut rng = seeded(seed);
    let mut histogram = vec![0u64; basis.len()];
    let mut min_fidelity = f64::INFINITY;
    for _ in 0..trials {
        let k = dist.sample(&mut rng);
        histogram[k] += 1;
        let f = psi.inner(&corrected[k])?.norm_sqr();
        min_fidelity = min_fidelity.min(f);
    }
    Ok(SimulationRecord {
        d,
        seed,
        trials,
        histogram,
        min_fidelity,
    })
}

/// A `d x d` operator playing a density matrix or an observable. Rank-one
/// non-hermitian forms `|a><b|` are allowed.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    pub d: usize,
    pub matrix: Matrix,
}

impl DensityOperator {
    pub fn new(matrix: Matrix) -> Result<Self> {
        if !matrix.is_square() || matrix.rows() == 0 {
            return Err(Error::Dimension {
                op: "density operator",
                left: matrix.shape(),
                right: (matrix.rows(), matrix.rows()),
            });
        }
        Ok(DensityOperator {
            d: matrix.rows(),
            matrix,
        })
    }

    pub fn rank_one(a: &StateVector, b: &StateVector) -> Result<Self> {
        if a.dim() != b.dim() {
            return Err(Error::Dimension {
                op: "rank one",
                left: (a.dim(), 1),
                right: (b.dim(), 1),
            });
        }
        DensityOperator::new(a.outer(b))
    }
}

/// `T_n(O) = U_n^dag O U_n`.
pub fn transform_observable(u: &Matrix, obs: &Matrix) -> Matrix {
    &(&u.dagger() * obs) * u
}

/// `tr((rho x omega)(omega_n x T_n(O)))`, evaluated densely on the
/// three-qudit space.
pub fn tight_term(d: usize, n: usize, rho: &DensityOperator, obs: &DensityOperator, basis: &WeylBasis) -> Result<C64> {
    let w = omega(d)?.projector();
    let wn = omega_n(d, n, basis)?.projector();
    let left = rho.matrix.kron(&w);
    let right = wn.kron(&transform_observable(basis.get(n)?, &obs.matrix));
    left.checked_mul(&right)?.trace()
}

/// The characteristic equation of teleportation: each term is
/// `(1/d^2) tr(rho O)` and the terms sum to `tr(rho O)`.
pub fn tight_teleportation_check(
    d: usize,
    rho: &DensityOperator,
    obs: &DensityOperator,
    basis: &WeylBasis,
    tol: Tolerance,
) -> Result<VerificationReport> {
    if rho.d != d || obs.d != d {
        return Err(Error::Dimension {
            op: "tight teleportation",
            left: (rho.d, obs.d),
            right: (d, d),
        });
    }
    let target = (&rho.matrix * &obs.matrix).trace()?;
    let per = target / (basis.len() as f64);
    let mut total = ZERO;
    let mut worst = 0.0f64;
    for n in 1..=basis.len() {
        let t = tight_term(d, n, rho, obs, basis)?;
        worst = worst.max((t - per).norm());
        total += t;
    }
    let mut report = VerificationReport::new("tight-teleportation");
    report.record("term_n = tr(rho O)/d^2", worst, tol);
    report.record("sum_n term_n = tr(rho O)", (total - target).norm(), tol);
    Ok(report)
}

/// `D[n][m] = tr(omega (T_n x 1)(omega_m))` with
/// `(T_n x 1)(omega_m) = (U_n^dag x 1) omega_m (U_n x 1)`.
pub fn dense_coding_table(d: usize, basis: &WeylBasis) -> Result<Matrix> {
    let w = omega(d)?.projector();
    let id = Matrix::identity(d);
    let k = basis.len();
    let mut table = Matrix::zeros(k, k);
    for n in 1..=k {
        let un = basis.get(n)?.kron(&id);
        let und = un.dagger();
        for m in 1..=k {
            let wm = omega_n(d, m, basis)?.projector();
            let value = (&w * &(&(&und * &wm) * &un)).trace()?;
            table.set(n - 1, m - 1, value);
        }
    }
    Ok(table)
}

/// The dense-coding characteristic equation: the table is the identity.
pub fn dense_coding_check(d: usize, basis: &WeylBasis, tol: Tolerance) -> Result<VerificationReport> {
    let table = dense_coding_table(d, basis)?;
    let mut report = VerificationReport::new("dense-coding");
    report.record(
        "tr(omega (T_n x 1)(omega_m)) = delta_nm",
        table.max_residual(&Matrix::identity(basis.len()))?,
        tol,
    );
    Ok(report)
}
