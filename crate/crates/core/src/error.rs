// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix must have dimension >= 1")]
    EmptyMatrix,

    #[error("matrix contains a non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimMismatch { expected: usize, found: usize },

    #[error("matrix is not Hermitian: ||A - A^†||_F = {residual:e} exceeds {limit:e}")]
    NotHermitian { residual: f64, limit: f64 },

    #[error("matrix is not positive semidefinite: minimum eigenvalue {min_eigenvalue:e}")]
    NotPositiveSemidefinite { min_eigenvalue: f64 },

    #[error("trace {trace} deviates from 1 by more than {tol:e}")]
    TraceNotOne { trace: f64, tol: f64 },

    #[error("Kraus operators are not complete: ||Σ K†K - I||_F = {residual:e} exceeds {tol:e}")]
    IncompleteKraus { residual: f64, tol: f64 },

    #[error("Hermitian eigensolver did not converge")]
    ConvergenceFailure,

    #[error("list of operators must be nonempty")]
    EmptyList,

    #[error("operation requires at least two operators, got {0}")]
    RequiresAtLeastTwo(usize),

    #[error("operation requires at least three operators, got {0}")]
    RequiresAtLeastThree(usize),

    #[error("permutation search space of {candidates} candidates exceeds cap {cap}")]
    SearchSpaceTooLarge { candidates: f64, cap: u64 },

    #[error("invalid permutation {0:?}")]
    BadPermutation(Vec<usize>),

    #[error("Bloch vector outside the unit ball: |r|^2 = {0}")]
    OutsideBlochBall(f64),

    #[error("parameter outside its domain: {0}")]
    OutsideParameterDomain(String),

    #[error("parameter out of range: {0}")]
    ParamOutOfRange(String),

    #[error("argument outside the domain of the closed form: {0}")]
    DomainError(String),

    #[error("invalid tolerance {name} = {value}")]
    InvalidTolerance { name: &'static str, value: f64 },

    #[error("parse error: {0}")]
    Parse(String),
}
