//! Maximally entangled qudit states and the trace-orthogonal unitary basis.
//!
//! Indices into a [`WeylBasis`] are 1-based, so `U_1` is always the identity.

use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::numkernel::{Matrix, StateVector, Tolerance, C64, ONE, ZERO};
use crate::report::VerificationReport;

fn check_dim(d: usize) -> Result<()> {
    if d == 0 {
        Err(Error::ZeroDimension)
    } else {
        Ok(())
    }
}

fn check_square(m: &Matrix, d: usize, op: &'static str) -> Result<()> {
    if m.shape() != (d, d) {
        return Err(Error::Dimension {
            op,
            left: m.shape(),
            right: (d, d),
        });
    }
    Ok(())
}

/// `(1/sqrt d) sum_i |i>|i>`.
pub fn omega(d: usize) -> Result<StateVector> {
    check_dim(d)?;
    let amp = C64::new(1.0 / (d as f64).sqrt(), 0.0);
    let mut amps = vec![ZERO; d * d];
    for i in 0..d {
        amps[i * d + i] = amp;
    }
    StateVector::new(amps)
}

/// Cyclic shift `X|j> = |j+1 mod d>`.
pub fn shift(d: usize) -> Matrix {
    Matrix::from_fn(d, d, |r, c| if r == (c + 1) % d { ONE } else { ZERO })
}

/// Clock `Z|j> = exp(2 pi i j / d)|j>`.
pub fn clock(d: usize) -> Matrix {
    let phases: Vec<C64> = (0..d)
        .map(|j| C64::from_polar(1.0, TAU * j as f64 / d as f64))
        .collect();
    Matrix::diag(&phases)
}

/// An ordered family of `d^2` unitaries with `tr(U_n^dag U_m) = d delta_nm`
/// and `U_1 = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeylBasis {
    d: usize,
    unitaries: Vec<Matrix>,
}

impl WeylBasis {
    /// Clock-and-shift family `X^a Z^b`, with `n - 1 = a + d b`.
    pub fn clock_and_shift(d: usize) -> Result<Self> {
        check_dim(d)?;
        let x = shift(d);
        let z = clock(d);
        let mut unitaries = Vec::with_capacity(d * d);
        for b in 0..d as u32 {
            let zb = z.pow(b)?;
            for a in 0..d as u32 {
                unitaries.push(&x.pow(a)? * &zb);
            }
        }
        Ok(WeylBasis { d, unitaries })
    }

    /// The qubit set `{1, s1, i s2, s3}`.
    pub fn qubit_pauli() -> Self {
        use crate::qubitbell::{sigma1, sigma2, sigma3};
        WeylBasis {
            d: 2,
            unitaries: vec![
                Matrix::identity(2),
                sigma1(),
                sigma2().scale(crate::numkernel::I),
                sigma3(),
            ],
        }
    }

    /// Validates a user-supplied family against every basis invariant.
    pub fn from_unitaries(d: usize, unitaries: Vec<Matrix>, tol: Tolerance) -> Result<Self> {
        check_dim(d)?;
        if unitaries.len() != d * d {
            return Err(Error::ContractViolation(format!(
                "expected {} unitaries, got {}",
                d * d,
                unitaries.len()
            )));
        }
        for u in &unitaries {
            check_square(u, d, "weyl basis")?;
            if !u.is_unitary(tol) {
                return Err(Error::ContractViolation("basis element is not unitary".into()));
            }
        }
        if !unitaries[0].approx_eq(&Matrix::identity(d), tol)? {
            return Err(Error::ContractViolation(
                "first basis element must be the identity".into(),
            ));
        }
        let basis = WeylBasis { d, unitaries };
        let gram = basis.trace_gram();
        let expected = Matrix::identity(d * d).scale(C64::new(d as f64, 0.0));
        let residual = gram.max_residual(&expected)?;
        if !tol.accepts(residual) {
            return Err(Error::IdentityViolated {
                identity: "tr(Un^dag Um) = d delta".into(),
                residual,
            });
        }
        Ok(basis)
    }

    /// `V U_n V^dag` for every element; still trace-orthogonal, still starts at 1.
    pub fn conjugated(&self, v: &Matrix, tol: Tolerance) -> Result<Self> {
        check_square(v, self.d, "conjugated basis")?;
        if !v.is_unitary(tol) {
            return Err(Error::ContractViolation("conjugating matrix is not unitary".into()));
        }
        let vd = v.dagger();
        let unitaries = self.unitaries.iter().map(|u| &(v * u) * &vd).collect();
        Ok(WeylBasis { d: self.d, unitaries })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.unitaries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.unitaries.is_empty()
    }

    /// `U_n`, 1-based.
    pub fn get(&self, n: usize) -> Result<&Matrix> {
        if n == 0 || n > self.unitaries.len() {
            return Err(Error::IndexOutOfRange {
                what: "basis",
                index: n,
                min: 1,
                max: self.unitaries.len(),
            });
        }
        Ok(&self.unitaries[n - 1])
    }

    pub fn iter(&self) -> impl Iterator<Item = &Matrix> {
        self.unitaries.iter()
    }

    /// Matrix of `tr(U_n^dag U_m)`.
    pub fn trace_gram(&self) -> Matrix {
        let k = self.unitaries.len();
        Matrix::from_fn(k, k, |n, m| {
            let a = self.unitaries[n].data();
            let b = self.unitaries[m].data();
            a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
        })
    }
}

pub fn weyl_basis(d: usize) -> Result<WeylBasis> {
    WeylBasis::clock_and_shift(d)
}

/// `|Omega_n> = (U_n x 1)|Omega>`.
#[derive(Debug, Clone, PartialEq)]
pub struct MaxEntangled {
    pub d: usize,
    pub index: usize,
    pub ket: StateVector,
}

impl MaxEntangled {
    /// `omega_n = |Omega_n><Omega_n|`.
    pub fn projector(&self) -> Matrix {
        self.ket.projector()
    }
}

pub fn omega_n(d: usize, n: usize, basis: &WeylBasis) -> Result<MaxEntangled> {
    if basis.d() != d {
        return Err(Error::ContractViolation(format!(
            "basis has d = {}, requested d = {d}",
            basis.d()
        )));
    }
    let u = basis.get(n)?;
    let ket = u.kron(&Matrix::identity(d)).apply(&omega(d)?)?;
    Ok(MaxEntangled { d, index: n, ket })
}

/// `(M x 1)|Omega> = (1 x M^T)|Omega>`.
pub fn slide_identity_check(m: &Matrix, d: usize, tol: Tolerance) -> Result<VerificationReport> {
    check_dim(d)?;
    check_square(m, d, "slide identity")?;
    let id = Matrix::identity(d);
    let w = omega(d)?;
    let lhs = m.kron(&id).apply(&w)?;
    let rhs = id.kron(&m.transpose()).apply(&w)?;
    let mut report = VerificationReport::new("slide-identity");
    report.record("(M x 1)Omega = (1 x M^T)Omega", lhs.max_residual(&rhs)?, tol);
    Ok(report)
}

/// Trace form of inner products between slid maximally entangled vectors.
pub fn trace_identities_check(
    m: &Matrix,
    m2: &Matrix,
    n1: &Matrix,
    n2: &Matrix,
    d: usize,
    tol: Tolerance,
) -> Result<VerificationReport> {
    check_dim(d)?;
    for x in [m, m2, n1, n2] {
        check_square(x, d, "trace identities")?;
    }
    let id = Matrix::identity(d);
    let w = omega(d)?;
    let psi = m.kron(&id).apply(&w)?;
    let psi2 = m2.kron(&id).apply(&w)?;
    let dd = C64::new(d as f64, 0.0);
    let mut report = VerificationReport::new("trace-identities");

    let lhs = (&m.dagger() * m2).trace()?;
    let rhs = psi.inner(&psi2)? * dd;
    report.record("tr(M^dag M') = d <psi|psi'>", (lhs - rhs).norm(), tol);

    let lhs = psi.inner(&n1.kron(n2).apply(&psi2)?)?;
    let rhs = (&(&(&m.dagger() * n1) * m2) * &n2.transpose()).trace()? / dd;
    report.record("<psi|N1 x N2|psi'> = tr(M^dag N1 M' N2^T)/d", (lhs - rhs).norm(), tol);
    Ok(report)
}

/// The relabeling map from Charlie's system to Bob's: the identity matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct TransferOperator {
    pub d: usize,
    pub matrix: Matrix,
}

impl TransferOperator {
    pub fn new(d: usize) -> Result<Self> {
        check_dim(d)?;
        Ok(TransferOperator {
            d,
            matrix: Matrix::identity(d),
        })
    }

    /// Carries a ket from C to B.
    pub fn apply(&self, psi: &StateVector) -> Result<StateVector> {
        self.matrix.apply(psi)
    }
}

/// `<Phi(U)|_{CA} |Phi(V^T)>_{AB}` as a `d x d` map from C to B, contracting
/// over A entry by entry.
pub fn partial_overlap(u: &Matrix, v: &Matrix, d: usize) -> Result<Matrix> {
    check_dim(d)?;
    check_square(u, d, "partial overlap")?;
    check_square(v, d, "partial overlap")?;
    // <Phi(U)|_{CA}: amplitude conj(U[c, a]) / sqrt d on |c a>
    // |Phi(V^T)>_{AB}: amplitude V^T[a, b] / sqrt d on |a b>
    let norm = 1.0 / d as f64;
    let mut out = Matrix::zeros(d, d);
    for b in 0..d {
        for c in 0..d {
            let mut acc = ZERO;
            for a in 0..d {
                acc += u.get(c, a).conj() * v.get(b, a);
            }
            out.set(b, c, acc * norm);
        }
    }
    Ok(out)
}

/// The partial overlap equals `(1/d) V U^dag` followed by the transfer.
pub fn transfer_composition(u: &Matrix, v: &Matrix, d: usize, tol: Tolerance) -> Result<VerificationReport> {
    check_dim(d)?;
    check_square(u, d, "transfer composition")?;
    check_square(v, d, "transfer composition")?;
    if !u.is_unitary(Tolerance::DEFAULT) || !v.is_unitary(Tolerance::DEFAULT) {
        return Err(Error::ContractViolation(
            "transfer composition needs unitary U and V".into(),
        ));
    }
    let t = TransferOperator::new(d)?;
    let lhs = partial_overlap(u, v, d)?;
    let rhs = (&(v * &u.dagger()) * &t.matrix).scale(C64::new(1.0 / d as f64, 0.0));
    let mut report = VerificationReport::new("transfer");
    report.record("<Phi(U)|Phi(V^T)> = (1/d) V U^dag T", lhs.max_residual(&rhs)?, tol);
    Ok(report)
}

/// Orthonormality of the `|Omega_n>`, idempotence of each projector, and
/// their sum being the identity on the `d^2`-dimensional space.
pub fn completeness_check(d: usize, basis: &WeylBasis, tol: Tolerance) -> Result<VerificationReport> {
    let states: Vec<MaxEntangled> = (1..=basis.len()).map(|n| omega_n(d, n, basis)).collect::<Result<_>>()?;
    let mut report = VerificationReport::new("completeness");

    let mut ortho = 0.0f64;
    for (i, a) in states.iter().enumerate() {
        for (j, b) in states.iter().enumerate() {
            let expected = if i == j { ONE } else { ZERO };
            ortho = ortho.max((a.ket.inner(&b.ket)? - expected).norm());
        }
    }
    report.record("<Omega_n|Omega_m> = delta", ortho, tol);

    let mut idem = 0.0f64;
    let mut sum = Matrix::zeros(d * d, d * d);
    for s in &states {
        let p = s.projector();
        idem = idem.max((&p * &p).max_residual(&p)?);
        sum = &sum + &p;
    }
    report.record("omega_n^2 = omega_n", idem, tol);
    report.record("sum omega_n = 1", sum.max_residual(&Matrix::identity(d * d))?, tol);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::I;
    use crate::qubitbell::{bell_state, sigma1, sigma2, sigma3, BellKind};
    use crate::random::{random_matrix, random_unitary, seeded};

    fn tol() -> Tolerance {
        Tolerance::DEFAULT
    }

    #[test]
    fn omega_small_cases() {
        assert_eq!(omega(1).unwrap().amplitudes(), &[ONE]);
        assert!(omega(2)
            .unwrap()
            .approx_eq(&bell_state(BellKind::PhiPlus), tol())
            .unwrap());
        let s = 1.0 / 3f64.sqrt();
        let expect = StateVector::from_real(&[s, 0., 0., 0., s, 0., 0., 0., s]).unwrap();
        assert!(omega(3).unwrap().approx_eq(&expect, tol()).unwrap());
        assert_eq!(omega(0), Err(Error::ZeroDimension));
    }

    #[test]
    fn qubit_weyl_basis_matches_hand_table() {
        let b = weyl_basis(2).unwrap();
        let expect = [Matrix::identity(2), sigma1(), sigma3(), &sigma1() * &sigma3()];
        for (n, e) in expect.iter().enumerate() {
            assert!(b.get(n + 1).unwrap().approx_eq(e, tol()).unwrap());
        }
        assert!(b.get(4).unwrap().approx_eq(&sigma2().scale(-I), tol()).unwrap());
        let gram = b.trace_gram();
        assert!(gram
            .approx_eq(&Matrix::identity(4).scale(C64::new(2.0, 0.0)), tol())
            .unwrap());
    }

    #[test]
    fn weyl_trace_table_d3() {
        let b = weyl_basis(3).unwrap();
        assert_eq!(b.len(), 9);
        // direct trace table, independent of trace_gram
        for n in 1..=9 {
            for m in 1..=9 {
                let t = (&b.get(n).unwrap().dagger() * b.get(m).unwrap()).trace().unwrap();
                let e = if n == m { 3.0 } else { 0.0 };
                assert!((t - C64::new(e, 0.0)).norm() < 1e-12, "n={n} m={m}");
            }
        }
    }

    #[test]
    fn basis_index_bounds() {
        let b = weyl_basis(1).unwrap();
        assert_eq!(b.len(), 1);
        assert!(b.get(0).is_err());
        assert!(b.get(2).is_err());
        assert!(omega_n(1, 2, &b).is_err());
        assert!(omega_n(2, 1, &b).is_err());
    }

    #[test]
    fn from_unitaries_rejects_bad_families() {
        let good = vec![Matrix::identity(2), sigma1(), sigma2(), sigma3()];
        assert!(WeylBasis::from_unitaries(2, good, tol()).is_ok());
        let not_first = vec![sigma1(), Matrix::identity(2), sigma2(), sigma3()];
        assert!(WeylBasis::from_unitaries(2, not_first, tol()).is_err());
        let repeated = vec![Matrix::identity(2), sigma1(), sigma1(), sigma3()];
        assert!(matches!(
            WeylBasis::from_unitaries(2, repeated, tol()),
            Err(Error::IdentityViolated { .. })
        ));
        assert!(WeylBasis::from_unitaries(2, vec![Matrix::identity(2)], tol()).is_err());
    }

    #[test]
    fn qubit_omega_n_are_bell_states_up_to_phase() {
        for basis in [weyl_basis(2).unwrap(), WeylBasis::qubit_pauli()] {
            let mut matched = [false; 4];
            for n in 1..=4 {
                let k = omega_n(2, n, &basis).unwrap().ket;
                for (slot, kind) in BellKind::ALL.iter().enumerate() {
                    let overlap = bell_state(*kind).inner(&k).unwrap().norm();
                    if (overlap - 1.0).abs() < 1e-12 {
                        matched[slot] = true;
                    }
                }
            }
            assert_eq!(matched, [true; 4]);
        }
        let basis = weyl_basis(2).unwrap();
        assert_eq!(omega_n(2, 1, &basis).unwrap().ket, omega(2).unwrap());
    }

    #[test]
    fn slide_identity_sigma2_hand_values() {
        let s = 1.0 / 2f64.sqrt();
        let lhs = sigma2().kron(&Matrix::identity(2)).apply(&omega(2).unwrap()).unwrap();
        // s2|0> = i|1>, s2|1> = -i|0>
        let expect = StateVector::new(vec![ZERO, C64::new(0.0, -s), C64::new(0.0, s), ZERO]).unwrap();
        assert!(lhs.approx_eq(&expect, tol()).unwrap());
        assert!(slide_identity_check(&sigma2(), 2, tol()).unwrap().overall_pass);
        assert!(slide_identity_check(&sigma2(), 3, tol()).is_err());
    }

    #[test]
    fn trace_identities_cases() {
        let id = Matrix::identity(2);
        assert!(
            trace_identities_check(&id, &sigma1(), &id, &id, 2, tol())
                .unwrap()
                .overall_pass
        );
        let mut rng = seeded(11);
        let ms: Vec<Matrix> = (0..4).map(|_| random_matrix(3, 3, &mut rng)).collect();
        let r = trace_identities_check(&ms[0], &ms[1], &ms[2], &ms[3], 3, tol()).unwrap();
        assert!(r.overall_pass, "{r}");
    }

    #[test]
    fn partial_overlap_against_dense_contraction() {
        // full-space oracle: <Phi(U)|_{CA} x 1_B applied to |c>_C x |Phi(V^T)>_{AB}
        let d = 3;
        let mut rng = seeded(5);
        let u = random_unitary(d, &mut rng);
        let v = random_unitary(d, &mut rng);
        let id = Matrix::identity(d);
        let w = omega(d).unwrap();
        let bra = u.kron(&id).apply(&w).unwrap();
        let ket = v.transpose().kron(&id).apply(&w).unwrap();
        let got = partial_overlap(&u, &v, d).unwrap();
        for c in 0..d {
            let full = StateVector::basis(d, c).kron(&ket);
            for b in 0..d {
                let probe = bra.kron(&StateVector::basis(d, b));
                let amp = probe.inner(&full).unwrap();
                assert!((amp - got.get(b, c)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn transfer_cases() {
        let id = Matrix::identity(2);
        let p = partial_overlap(&id, &id, 2).unwrap();
        assert!(p.approx_eq(&id.scale(C64::new(0.5, 0.0)), tol()).unwrap());
        let p = partial_overlap(&id, &sigma3(), 2).unwrap();
        assert!(p.approx_eq(&sigma3().scale(C64::new(0.5, 0.0)), tol()).unwrap());
        let mut rng = seeded(3);
        let u = random_unitary(3, &mut rng);
        let v = random_unitary(3, &mut rng);
        assert!(transfer_composition(&u, &v, 3, tol()).unwrap().overall_pass);
        let bad = random_matrix(3, 3, &mut rng);
        assert!(matches!(
            transfer_composition(&bad, &v, 3, tol()),
            Err(Error::ContractViolation(_))
        ));
    }

    #[test]
    fn completeness_small_and_d4() {
        for d in [1, 2, 4] {
            let r = completeness_check(d, &weyl_basis(d).unwrap(), tol()).unwrap();
            assert!(r.overall_pass, "d={d}: {r}");
        }
        assert!(
            completeness_check(2, &WeylBasis::qubit_pauli(), tol())
                .unwrap()
                .overall_pass
        );
    }

    #[test]
    fn conjugated_basis_stays_valid() {
        let mut rng = seeded(9);
        let v = random_unitary(3, &mut rng);
        let b = weyl_basis(3).unwrap().conjugated(&v, tol()).unwrap();
        let checked = WeylBasis::from_unitaries(3, b.iter().cloned().collect(), Tolerance::new(1e-9).unwrap());
        assert!(checked.is_ok());
    }
}
