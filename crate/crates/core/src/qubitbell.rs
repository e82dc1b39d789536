//! Qubit layer: Pauli matrices, Bell states, the Bell matrix and the qubit swap.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};
use std::fmt;

use crate::error::{Error, Result};
use crate::numkernel::{Matrix, StateVector, Tolerance, C64, I, ONE, ZERO};
use crate::report::VerificationReport;

/// Index of a Pauli matrix; 0 is the 2x2 identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PauliIndex(u8);

impl PauliIndex {
    pub const IDENTITY: PauliIndex = PauliIndex(0);
    pub const X: PauliIndex = PauliIndex(1);
    pub const Y: PauliIndex = PauliIndex(2);
    pub const Z: PauliIndex = PauliIndex(3);

    pub fn new(k: u8) -> Result<Self> {
        if k <= 3 {
            Ok(PauliIndex(k))
        } else {
            Err(Error::IndexOutOfRange {
                what: "Pauli",
                index: k as usize,
                min: 0,
                max: 3,
            })
        }
    }

    pub fn get(self) -> u8 {
        self.0
    }
}

/// `sigma_1 = [[0,1],[1,0]]`, `sigma_2 = [[0,-i],[i,0]]`, `sigma_3 = diag(1,-1)`.
pub fn pauli(k: PauliIndex) -> Matrix {
    let rows = match k.0 {
        0 => [[ONE, ZERO], [ZERO, ONE]],
        1 => [[ZERO, ONE], [ONE, ZERO]],
        2 => [[ZERO, -I], [I, ZERO]],
        _ => [[ONE, ZERO], [ZERO, -ONE]],
    };
    Matrix::from_rows(rows.iter().map(|r| r.to_vec()).collect()).expect("2x2")
}

pub fn sigma1() -> Matrix {
    pauli(PauliIndex::X)
}

pub fn sigma2() -> Matrix {
    pauli(PauliIndex::Y)
}

pub fn sigma3() -> Matrix {
    pauli(PauliIndex::Z)
}

/// The operator vector `(sigma_3, sigma_1, i sigma_2, 1)` paired with
/// `(|00>, |01>, |10>, |11>)` in the Bell-matrix form of teleportation.
pub fn sigma_11() -> [Matrix; 4] {
    [sigma3(), sigma1(), sigma2().scale(I), Matrix::identity(2)]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BellKind {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

impl BellKind {
    pub const ALL: [BellKind; 4] = [
        BellKind::PhiPlus,
        BellKind::PhiMinus,
        BellKind::PsiPlus,
        BellKind::PsiMinus,
    ];

    /// Local unitary `U` with `|kind> = (U (x) 1)|phi+>`: `1, sigma_3, sigma_1, i sigma_2`.
    pub fn local_unitary(self) -> Matrix {
        match self {
            BellKind::PhiPlus => Matrix::identity(2),
            BellKind::PhiMinus => sigma3(),
            BellKind::PsiPlus => sigma1(),
            BellKind::PsiMinus => sigma2().scale(I),
        }
    }

    /// Bob's branch operator when Alice finds this Bell state in the standard
    /// teleportation expansion: `1, sigma_3, sigma_1, -i sigma_2`.
    pub fn branch_operator(self) -> Matrix {
        self.local_unitary().dagger()
    }
}

impl fmt::Display for BellKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BellKind::PhiPlus => "phi+",
            BellKind::PhiMinus => "phi-",
            BellKind::PsiPlus => "psi+",
            BellKind::PsiMinus => "psi-",
        })
    }
}

pub fn bell_state(kind: BellKind) -> StateVector {
    let h = FRAC_1_SQRT_2;
    let amps = match kind {
        BellKind::PhiPlus => [h, 0.0, 0.0, h],
        BellKind::PhiMinus => [h, 0.0, 0.0, -h],
        BellKind::PsiPlus => [0.0, h, h, 0.0],
        BellKind::PsiMinus => [0.0, h, -h, 0.0],
    };
    StateVector::from_real(&amps).expect("finite")
}

pub fn bell_matrix() -> Matrix {
    let h = FRAC_1_SQRT_2;
    Matrix::from_real_rows(&[
        &[h, 0.0, 0.0, h],
        &[0.0, h, -h, 0.0],
        &[0.0, h, h, 0.0],
        &[-h, 0.0, 0.0, h],
    ])
    .expect("4x4")
}

fn two_qubit(i: usize, j: usize) -> StateVector {
    StateVector::product_basis(2, &[i, j])
}

/// All six local-unitary relations among the Bell states.
pub fn check_local_unitary_relations(tol: Tolerance) -> Result<VerificationReport> {
    let id = Matrix::identity(2);
    let phi_plus = bell_state(BellKind::PhiPlus);
    let mut report = VerificationReport::new("local-unitary-relations");
    let cases = [
        ("phi- = (1 x s3)phi+", BellKind::PhiMinus, id.kron(&sigma3())),
        ("phi- = (s3 x 1)phi+", BellKind::PhiMinus, sigma3().kron(&id)),
        ("psi+ = (1 x s1)phi+", BellKind::PsiPlus, id.kron(&sigma1())),
        ("psi+ = (s1 x 1)phi+", BellKind::PsiPlus, sigma1().kron(&id)),
        (
            "psi- = (1 x -i s2)phi+",
            BellKind::PsiMinus,
            id.kron(&sigma2().scale(-I)),
        ),
        ("psi- = (i s2 x 1)phi+", BellKind::PsiMinus, sigma2().scale(I).kron(&id)),
    ];
    for (name, target, op) in cases {
        let lhs = bell_state(target);
        let rhs = op.apply(&phi_plus)?;
        report.record(name, lhs.max_residual(&rhs)?, tol);
    }
    Ok(report)
}

pub fn check_bell_matrix_identities(tol: Tolerance) -> Result<VerificationReport> {
    let b = bell_matrix();
    let id4 = Matrix::identity(4);
    let s1s2 = sigma1().kron(&sigma2());
    let b2 = b.pow(2)?;
    let mut report = VerificationReport::new("bell-matrix");

    let exp_form = &id4.scale(C64::new(FRAC_PI_4.cos(), 0.0)) + &s1s2.scale(I * FRAC_PI_4.sin());
    report.record("B = cos(pi/4) + i sin(pi/4) s1 x s2", b.max_residual(&exp_form)?, tol);
    report.record("B^2 = i s1 x s2", b2.max_residual(&s1s2.scale(I))?, tol);
    report.record("B^4 = -1", b.pow(4)?.max_residual(&-&id4)?, tol);
    report.record("B^8 = 1", b.pow(8)?.max_residual(&id4)?, tol);
    report.record(
        "B = (1 + B^2)/sqrt2",
        b.max_residual(&(&id4 + &b2).scale(C64::new(FRAC_1_SQRT_2, 0.0)))?,
        tol,
    );
    report.record("B B^T = 1", (&b * &b.transpose()).max_residual(&id4)?, tol);
    report.record("B^T B = 1", (&b.transpose() * &b).max_residual(&id4)?, tol);

    let generation = [
        ("B|11> = phi+", two_qubit(1, 1), ONE, BellKind::PhiPlus),
        ("B|00> = phi-", two_qubit(0, 0), ONE, BellKind::PhiMinus),
        ("B|01> = psi+", two_qubit(0, 1), ONE, BellKind::PsiPlus),
        ("-B|10> = psi-", two_qubit(1, 0), -ONE, BellKind::PsiMinus),
    ];
    for (name, ket, sign, kind) in generation {
        let got = b.apply(&ket)?.scale(sign);
        report.record(name, got.max_residual(&bell_state(kind))?, tol);
    }
    Ok(report)
}

/// The 4x4 swap `P|ij> = |ji>`.
pub fn permutation_qubit() -> Matrix {
    Matrix::from_real_rows(&[
        &[1.0, 0.0, 0.0, 0.0],
        &[0.0, 0.0, 1.0, 0.0],
        &[0.0, 1.0, 0.0, 0.0],
        &[0.0, 0.0, 0.0, 1.0],
    ])
    .expect("4x4")
}

/// `P|ij> = |ji>` on every basis ket and `P = (1 + s1 x s1 + s2 x s2 + s3 x s3)/2`.
pub fn check_permutation_expansion(tol: Tolerance) -> Result<VerificationReport> {
    let p = permutation_qubit();
    let mut report = VerificationReport::new("permutation");
    for i in 0..2 {
        for j in 0..2 {
            let got = p.apply(&two_qubit(i, j))?;
            report.record(
                format!("P|{i}{j}> = |{j}{i}>"),
                got.max_residual(&two_qubit(j, i))?,
                tol,
            );
        }
    }
    let expansion = [sigma1(), sigma2(), sigma3()]
        .iter()
        .fold(Matrix::identity(4), |acc, s| &acc + &s.kron(s))
        .scale(C64::new(0.5, 0.0));
    report.record("P = (1 + sum_k sk x sk)/2", p.max_residual(&expansion)?, tol);
    report.record("P^2 = 1", p.pow(2)?.max_residual(&Matrix::identity(4))?, tol);
    Ok(report)
}
