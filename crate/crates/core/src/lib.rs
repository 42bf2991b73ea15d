//! Stationary measures of one-dimensional two-state quantum walks.
//!
//! The walk acts on spinor fields `Psi: Z -> C^2` by
//! `(U Psi)(x) = P Psi(x+1) + Q Psi(x-1)`, where `P` and `Q` are the top and
//! bottom rows of a 2x2 unitary coin. A solution of `U Psi = lambda Psi` with
//! `|lambda| = 1` gives a time-invariant measure `mu(x) = |Psi(x)|^2`.
//!
//! The crate builds such eigenfunctions by transfer-matrix iteration and by
//! explicit formulas, checks them against the walk itself, classifies the
//! Hadamard-walk measures by eigenvalue argument, and sweeps the Fourier
//! symbol to locate the spectrum.

// `!(x <= tol)` is used on purpose so that NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod classify;
pub mod closed_form;
pub mod coin;
pub mod error;
pub mod evolution;
pub mod field;
pub mod linalg;
pub mod rational;
pub mod spectrum;
pub mod sweep;
pub mod transfer;
pub mod verify;

pub use classify::{classify, classify_checked, Classification, PeriodVerdict, StationaryClass, ThetaRegion};
pub use closed_form::{
    char_roots, closed_form_eigenfunction, closed_form_field, root_type, CharRoots, ClosedForm, RootKind, RootType,
};
pub use coin::{decompose, validate_coin, CoinDecomposition, CoinMatrix};
pub use error::{Error, Result};
pub use evolution::{eigen_residual, evolve, step, verify_field, verify_stationary, StationarityReport};
pub use field::{measure_of, InitialVector, Measure, Spinor, SpinorField};
pub use linalg::{cis, Mat2, C64};
pub use sweep::Execution;
pub use transfer::{
    boundary_values, build_transfer, signed_eigenfunction, signed_eigenvalue, transfer_eigenfunction, Sign,
    TransferPair,
};
