//! Braid, virtual-braid and mixed relations for two-strand operators, plus
//! the braid teleportation configuration and teleportation swapping.
//!
//! A [`StrandOperator`] acts on `V (x) V` with `dim V = d`. Placed on strands
//! `i, i+1` of `n` it becomes `1_{d^(i-1)} (x) b (x) 1_{d^(n-i-1)}`.
//! Relations are checked on the smallest strand counts that exercise them:
//! three strands for adjacent relations, four for far commutativity.

use crate::error::{Error, Result};
use crate::numkernel::{Matrix, Tolerance};
use crate::qubitbell::bell_matrix;
use crate::report::VerificationReport;

#[derive(Debug, Clone, PartialEq)]
pub struct StrandOperator {
    d: usize,
    matrix: Matrix,
}

impl StrandOperator {
    pub fn new(d: usize, matrix: Matrix) -> Result<Self> {
        if d == 0 {
            return Err(Error::ZeroDimension);
        }
        if matrix.shape() != (d * d, d * d) {
            return Err(Error::Dimension {
                op: "StrandOperator::new",
                left: matrix.shape(),
                right: (d * d, d * d),
            });
        }
        Ok(StrandOperator { d, matrix })
    }

    pub fn identity(d: usize) -> Self {
        StrandOperator::new(d, Matrix::identity(d * d)).expect("square")
    }

    /// The `d`-dimensional swap `P|ij> = |ji>`.
    pub fn swap(d: usize) -> Self {
        let m = Matrix::from_fn(d * d, d * d, |r, c| {
            let (i, j) = (c / d, c % d);
            if r == j * d + i {
                crate::numkernel::ONE
            } else {
                crate::numkernel::ZERO
            }
        });
        StrandOperator::new(d, m).expect("square")
    }

    pub fn bell() -> Self {
        StrandOperator::new(2, bell_matrix()).expect("4x4")
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// `b^dagger` when `b` is unitary, otherwise an explicit inverse.
    pub fn inverse(&self) -> Result<StrandOperator> {
        let inv = if self.matrix.is_unitary(Tolerance::DEFAULT) {
            self.matrix.dagger()
        } else {
            self.matrix.inverse()?
        };
        StrandOperator::new(self.d, inv)
    }
}

/// A strand operator placed at strands `position, position + 1` (1-based) of `n_strands`.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddedOperator {
    pub n_strands: usize,
    pub position: usize,
    pub base: StrandOperator,
}

impl EmbeddedOperator {
    pub fn new(base: StrandOperator, position: usize, n_strands: usize) -> Result<Self> {
        if n_strands < 2 || position == 0 || position >= n_strands {
            return Err(Error::IndexOutOfRange {
                what: "strand position",
                index: position,
                min: 1,
                max: n_strands.saturating_sub(1),
            });
        }
        Ok(EmbeddedOperator {
            n_strands,
            position,
            base,
        })
    }

    pub fn matrix(&self) -> Matrix {
        let d = self.base.d;
        let left = Matrix::identity(d.pow(self.position as u32 - 1));
        let right = Matrix::identity(d.pow((self.n_strands - self.position - 1) as u32));
        left.kron(&self.base.matrix).kron(&right)
    }
}

pub fn embed(op: &StrandOperator, i: usize, n: usize) -> Result<Matrix> {
    Ok(EmbeddedOperator::new(op.clone(), i, n)?.matrix())
}

/// Both sides of the braid relation on three strands: `(b_1 b_2 b_1, b_2 b_1 b_2)`.
pub fn braid_relation_sides(b: &StrandOperator) -> Result<(Matrix, Matrix)> {
    let b1 = embed(b, 1, 3)?;
    let b2 = embed(b, 2, 3)?;
    Ok((&(&b1 * &b2) * &b1, &(&b2 * &b1) * &b2))
}

fn far_commutator_residual(a: &StrandOperator, b: &StrandOperator) -> Result<f64> {
    let a1 = embed(a, 1, 4)?;
    let b3 = embed(b, 3, 4)?;
    (&a1 * &b3).max_residual(&(&b3 * &a1))
}

pub fn check_braid_relation(b: &StrandOperator, tol: Tolerance) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("braid");
    let (lhs, rhs) = braid_relation_sides(b)?;
    report.record("b1 b2 b1 = b2 b1 b2", lhs.max_residual(&rhs)?, tol);
    report.record("b1 b3 = b3 b1", far_commutator_residual(b, b)?, tol);
    Ok(report)
}

pub fn check_virtual_relations(v: &StrandOperator, tol: Tolerance) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("virtual");
    let v2 = &v.matrix * &v.matrix;
    report.record("v^2 = 1", v2.max_residual(&Matrix::identity(v.d * v.d))?, tol);
    let (lhs, rhs) = braid_relation_sides(v)?;
    report.record("v1 v2 v1 = v2 v1 v2", lhs.max_residual(&rhs)?, tol);
    report.record("v1 v3 = v3 v1", far_commutator_residual(v, v)?, tol);
    Ok(report)
}

pub fn check_virtual_mixed(b: &StrandOperator, v: &StrandOperator, tol: Tolerance) -> Result<VerificationReport> {
    if b.d != v.d {
        return Err(Error::ContractViolation(format!(
            "braid and virtual crossing act on different dimensions ({} vs {})",
            b.d, v.d
        )));
    }
    let mut report = VerificationReport::new("virtual-mixed");
    let b1 = embed(b, 1, 3)?;
    let b2 = embed(b, 2, 3)?;
    let v1 = embed(v, 1, 3)?;
    let v2 = embed(v, 2, 3)?;
    let lhs = &(&b2 * &v1) * &v2;
    let rhs = &(&v1 * &v2) * &b1;
    report.record("b2 v1 v2 = v1 v2 b1", lhs.max_residual(&rhs)?, tol);
    report.record("b1 v3 = v3 b1", far_commutator_residual(b, v)?, tol);
    report.record("v1 b3 = b3 v1", far_commutator_residual(v, b)?, tol);
    Ok(report)
}

/// `(b^-1 (x) 1)(1 (x) b)` on three strands.
pub fn braid_teleport_config(b: &StrandOperator) -> Result<Matrix> {
    let inv = b.inverse()?;
    Ok(&embed(&inv, 1, 3)? * &embed(b, 2, 3)?)
}

/// `(P (x) 1)(1 (x) P)`: sends `|ij> (x) |k>` to `|k> (x) |ij>`.
pub fn teleport_swap(d: usize) -> Matrix {
    let p = StrandOperator::swap(d);
    let l = embed(&p, 1, 3).expect("valid position");
    let r = embed(&p, 2, 3).expect("valid position");
    &l * &r
}

/// `(1 (x) P)(P (x) 1)`: sends `|k> (x) |ij>` back to `|ij> (x) |k>`.
pub fn teleport_swap_reverse(d: usize) -> Matrix {
    let p = StrandOperator::swap(d);
    let l = embed(&p, 1, 3).expect("valid position");
    let r = embed(&p, 2, 3).expect("valid position");
    &r * &l
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::{StateVector, C64, ONE, ZERO};
    use crate::qubitbell::permutation_qubit;
    use crate::random::{random_unitary, seeded};

    const TOL: Tolerance = Tolerance::DEFAULT;

    /// Permutation matrix on `n` strands of dimension `d` that moves the
    /// factor in slot `k` to slot `target[k]`, built from index arithmetic only.
    fn slot_permutation(d: usize, target: &[usize]) -> Matrix {
        let n = target.len();
        let dim = d.pow(n as u32);
        Matrix::from_fn(dim, dim, |r, c| {
            let mut digits = vec![0; n];
            let mut x = c;
            for k in (0..n).rev() {
                digits[k] = x % d;
                x /= d;
            }
            let mut out = vec![0; n];
            for k in 0..n {
                out[target[k]] = digits[k];
            }
            let idx = out.iter().fold(0, |acc, &v| acc * d + v);
            if idx == r {
                ONE
            } else {
                ZERO
            }
        })
    }

    #[test]
    fn embed_conventions() {
        let b = StrandOperator::bell();
        assert_eq!(embed(&b, 1, 2).unwrap(), bell_matrix());
        assert_eq!(embed(&b, 2, 3).unwrap(), Matrix::identity(2).kron(&bell_matrix()));
        assert!(matches!(embed(&b, 0, 3), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(embed(&b, 3, 3), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn swap_pair_rotates_three_factors() {
        let p = StrandOperator::new(2, permutation_qubit()).unwrap();
        let m = &embed(&p, 1, 3).unwrap() * &embed(&p, 2, 3).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    let input = StateVector::product_basis(2, &[i, j, k]);
                    let expected = StateVector::product_basis(2, &[k, i, j]);
                    assert_eq!(m.apply(&input).unwrap(), expected);
                }
            }
        }
    }

    #[test]
    fn bell_matrix_braid_relation_and_closed_form() {
        let b = StrandOperator::bell();
        let r = check_braid_relation(&b, Tolerance::new(1e-12).unwrap()).unwrap();
        assert!(r.overall_pass, "{r}");
        let b2 = &bell_matrix() * &bell_matrix();
        let id = Matrix::identity(2);
        let closed = (&id.kron(&b2) + &b2.kron(&id)).scale(C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0));
        let (lhs, rhs) = braid_relation_sides(&b).unwrap();
        assert!(lhs.max_residual(&closed).unwrap() < 1e-12);
        assert!(rhs.max_residual(&closed).unwrap() < 1e-12);
    }

    #[test]
    fn identity_and_swap_satisfy_braid_relation() {
        assert!(
            check_braid_relation(&StrandOperator::identity(2), TOL)
                .unwrap()
                .overall_pass
        );
        let p = StrandOperator::swap(2);
        let (lhs, _) = braid_relation_sides(&p).unwrap();
        // s1 s2 s1 on three strands reverses the slots
        assert_eq!(lhs, slot_permutation(2, &[2, 1, 0]));
        assert!(check_braid_relation(&p, TOL).unwrap().overall_pass);
    }

    #[test]
    fn inverse_braid_passes_too() {
        let b = StrandOperator::bell().inverse().unwrap();
        assert!(check_braid_relation(&b, TOL).unwrap().overall_pass);
    }

    #[test]
    fn virtual_relations_for_swaps() {
        assert_eq!(StrandOperator::swap(2).matrix(), &permutation_qubit());
        for d in 1..=3 {
            let r = check_virtual_relations(&StrandOperator::swap(d), TOL).unwrap();
            assert!(r.overall_pass, "d={d}: {r}");
        }
        let (lhs, rhs) = braid_relation_sides(&StrandOperator::swap(3)).unwrap();
        assert_eq!(lhs, slot_permutation(3, &[2, 1, 0]));
        assert_eq!(rhs, slot_permutation(3, &[2, 1, 0]));
        assert!(
            check_virtual_relations(&StrandOperator::identity(2), TOL)
                .unwrap()
                .overall_pass
        );
        assert!(
            !check_virtual_relations(&StrandOperator::bell(), TOL)
                .unwrap()
                .overall_pass
        );
    }

    #[test]
    fn virtual_mixed_relation() {
        let p = StrandOperator::swap(2);
        let r = check_virtual_mixed(&StrandOperator::bell(), &p, Tolerance::new(1e-12).unwrap()).unwrap();
        assert!(r.overall_pass, "{r}");
        let id = StrandOperator::identity(2);
        assert!(check_virtual_mixed(&id, &id, TOL).unwrap().overall_pass);
        // b = v = P: both sides reduce to the slot reversal |ijk> -> |kji>
        let v1 = embed(&p, 1, 3).unwrap();
        let v2 = embed(&p, 2, 3).unwrap();
        let lhs = &(&v2 * &v1) * &v2;
        let rhs = &(&v1 * &v2) * &v1;
        assert_eq!(lhs, slot_permutation(2, &[2, 1, 0]));
        assert_eq!(rhs, slot_permutation(2, &[2, 1, 0]));
        assert!(check_virtual_mixed(&p, &p, TOL).unwrap().overall_pass);
        assert!(check_virtual_mixed(&StrandOperator::bell(), &StrandOperator::swap(3), TOL).is_err());
    }

    #[test]
    fn virtual_mixed_holds_for_any_strand_operator_with_swap() {
        let mut rng = seeded(3);
        let u = random_unitary(9, &mut rng);
        let b = StrandOperator::new(3, u).unwrap();
        assert!(
            check_virtual_mixed(&b, &StrandOperator::swap(3), TOL)
                .unwrap()
                .overall_pass
        );
    }

    #[test]
    fn braid_teleport_configurations() {
        assert_eq!(
            braid_teleport_config(&StrandOperator::identity(2)).unwrap(),
            Matrix::identity(8)
        );
        let cfg = braid_teleport_config(&StrandOperator::bell()).unwrap();
        let id = Matrix::identity(2);
        let expected = &bell_matrix().transpose().kron(&id) * &id.kron(&bell_matrix());
        assert!(cfg.approx_eq(&expected, TOL).unwrap());
        let swap_cfg = braid_teleport_config(&StrandOperator::swap(2)).unwrap();
        assert_eq!(swap_cfg, teleport_swap(2));
    }

    #[test]
    fn singular_braid_is_rejected() {
        let z = StrandOperator::new(2, Matrix::zeros(4, 4)).unwrap();
        assert_eq!(braid_teleport_config(&z), Err(Error::Singular));
        // invertible but not unitary goes through the explicit inverse
        let m = Matrix::identity(4).scale(C64::new(2.0, 0.0));
        let cfg = braid_teleport_config(&StrandOperator::new(2, m).unwrap()).unwrap();
        assert!(cfg.approx_eq(&Matrix::identity(8), TOL).unwrap());
    }

    #[test]
    fn teleport_swap_cases() {
        assert_eq!(teleport_swap(1), Matrix::identity(1));
        let got = teleport_swap(2)
            .apply(&StateVector::product_basis(2, &[0, 1, 1]))
            .unwrap();
        assert_eq!(got, StateVector::product_basis(2, &[1, 0, 1]));
        assert_eq!(teleport_swap(3), slot_permutation(3, &[1, 2, 0]));
        for d in 1..=3 {
            let round = &teleport_swap_reverse(d) * &teleport_swap(d);
            assert_eq!(round, Matrix::identity(d * d * d));
        }
    }

    #[test]
    fn strand_operator_shape_is_checked() {
        assert!(StrandOperator::new(2, Matrix::identity(3)).is_err());
        assert!(StrandOperator::new(0, Matrix::identity(1)).is_err());
    }
}
