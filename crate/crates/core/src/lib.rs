//! Algebra of quantum teleportation, certified numerically.
//!
//! The crate covers the Bell matrix and its braid/virtual-braid relations,
//! maximally entangled qudit states over a trace-orthogonal unitary basis,
//! every teleportation and dense-coding identity built on them, and a
//! decorated Temperley-Lieb/Brauer diagram calculus whose evaluation is
//! cross-checked against an independent tensor-network contraction.
//!
//! Each `check_*` function returns a [`VerificationReport`] carrying the
//! maximum residual of every identity it tested.

pub mod braidgroup;
pub mod cli;
pub mod diagram;
pub mod error;
pub mod maxent;
pub mod numkernel;
pub mod qubitbell;
pub mod random;
pub mod report;
pub mod teleport;

pub use error::{Error, Result};
pub use numkernel::{Matrix, StateVector, Tolerance, C64};
pub use report::{CheckResult, VerificationReport};
