//! How strong must an interaction be to copy a classical bit from one
//! quantum system to another?
//!
//! A bit is encoded in orthogonal pure states of system `A`, which then
//! interacts with system `B`. This crate evolves such scenarios, measures how
//! distinguishable the two encodings remain on each side (Uhlmann fidelity),
//! and checks the bound
//!
//! ```text
//! |<psi0|L_A|psi1>| <= ||L_B|| F_A + ||L_A|| F_B + 2 ||L_int||
//! ```
//!
//! for any conserved quantity `L = L_A + L_B + L_int` of the dynamics,
//! including the Hamiltonian itself.
//!
//! Modules, bottom up:
//! - [`linalg`]: dense complex matrices and Hermitian matrix functions
//! - [`qstate`]: states, embedding, partial trace, purification, evolution
//! - [`fidelity`]: fidelity, measurement overlaps, the optimal PVM
//! - [`tradeoff`]: scenarios, the bound, the no-go verdict, the spin example
//! - [`optimizer`]: weakest-interaction search and random sweeps
//! - [`document`]: JSON scenario files and reports

pub mod document;
pub mod error;
pub mod fidelity;
pub mod linalg;
pub mod optimizer;
pub mod qstate;
pub mod random;
pub mod tradeoff;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, EigenSystem};
pub use qstate::{CompositeDims, DensityOperator, PureState, Side};
pub use tradeoff::{Scenario, TradeoffReport, Verdict};
