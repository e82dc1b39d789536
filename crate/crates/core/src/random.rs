//! Seeded generators for random matrices, unitaries and states.
//!
//! Everything is driven by `ChaCha8Rng` so runs are reproducible across
//! platforms for a fixed seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::numkernel::{Matrix, StateVector, C64};

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn entry<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

/// Entries uniform in the unit square of the complex plane.
pub fn random_matrix<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| entry(rng))
}

/// Unit vector with uniformly drawn real and imaginary parts, then normalized.
pub fn random_state<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> StateVector {
    loop {
        let amps: Vec<C64> = (0..dim).map(|_| entry(rng)).collect();
        let v = StateVector::new(amps).expect("finite amplitudes");
        if v.norm() > 1e-3 {
            return v.normalized().expect("non-zero");
        }
    }
}

/// Unitary obtained by Gram-Schmidt orthonormalization of the columns of a
/// random complex matrix.
pub fn random_unitary<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Matrix {
    'retry: loop {
        let raw = random_matrix(d, d, rng);
        let mut cols: Vec<Vec<C64>> = Vec::with_capacity(d);
        for c in 0..d {
            let mut v: Vec<C64> = (0..d).map(|r| raw.get(r, c)).collect();
            // two passes of modified Gram-Schmidt keep the result unitary to ~1e-15
            for _ in 0..2 {
                for q in &cols {
                    let proj: C64 = q.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                    for (vi, qi) in v.iter_mut().zip(q) {
                        *vi -= proj * qi;
                    }
                }
            }
            let norm = v.iter().map(C64::norm_sqr).sum::<f64>().sqrt();
            if norm < 1e-6 {
                continue 'retry;
            }
            v.iter_mut().for_each(|x| *x /= norm);
            cols.push(v);
        }
        let mut u = Matrix::zeros(d, d);
        for (c, col) in cols.iter().enumerate() {
            for (r, &x) in col.iter().enumerate() {
                u.set(r, c, x);
            }
        }
        return u;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::Tolerance;

    #[test]
    fn unitaries_are_unitary_for_all_small_dimensions() {
        let mut rng = seeded(11);
        for d in 1..=8 {
            for _ in 0..5 {
                let u = random_unitary(d, &mut rng);
                assert!(u.unitarity_residual().unwrap() < 1e-13, "d={d}");
            }
        }
    }

    #[test]
    fn same_seed_same_stream() {
        let a = random_unitary(3, &mut seeded(5));
        let b = random_unitary(3, &mut seeded(5));
        assert_eq!(a, b);
        let s = random_state(4, &mut seeded(1));
        assert!(Tolerance::DEFAULT.accepts((s.norm() - 1.0).abs()));
    }
}
