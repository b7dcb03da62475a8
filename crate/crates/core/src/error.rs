use thiserror::Error;

/// Errors raised by contract checks across the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension {requested} exceeds capacity {capacity}")]
    Capacity { requested: usize, capacity: usize },

    #[error("{context}: expected dimension {expected}, found {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("matrix is not square or has ragged rows")]
    Shape,

    #[error("matrix contains a non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("operator is not Hermitian: max |m - m^dagger| = {deviation:e}")]
    NotHermitian { deviation: f64 },

    #[error("operator is not positive semidefinite: eigenvalue {eigenvalue:e}")]
    NotPsd { eigenvalue: f64 },

    #[error("operator is not unitary: max |u^dagger u - 1| = {deviation:e}")]
    NotUnitary { deviation: f64 },

    #[error("density operator trace is {trace}, expected 1")]
    Trace { trace: f64 },

    #[error("state is not normalized: norm^2 = {norm_sqr}")]
    NotNormalized { norm_sqr: f64 },

    #[error("encoding states are not orthogonal: |<psi0|psi1>| = {overlap:e}")]
    NotOrthogonal { overlap: f64 },

    #[error("conserved quantity is not conserved: ||U L U^dagger - L|| = {residual:e}")]
    ConservationViolated { residual: f64 },

    #[error("fidelity {value} outside [0, 1] beyond the clipping window")]
    FidelityOutOfRange { value: f64 },

    #[error("energy checks need a Hamiltonian-generated evolution; use check_tradeoff for explicit unitaries")]
    ExplicitEvolution,

    #[error(
        "feasible point violates the no-go lower bound: 2*||H_int|| = {twice_norm:e} < {bound:e}"
    )]
    CorollaryViolation { twice_norm: f64, bound: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
