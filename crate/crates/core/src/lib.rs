//! Analysis of qudit quantum convolutional encoders.
//!
//! An encoder is a symplectic matrix over F_p acting on `m` memory qudits
//! plus `n` frame qudits. From it this crate builds the state diagram on
//! the `p^{2m}` memory Paulis and decides whether the encoder is
//! catastrophic and/or recursive, computes the finite-memory and
//! zero-physical-cycle subgroups, evaluates the commutator-sum criterion,
//! and searches encoder spaces for classification patterns.
//!
//! The runnable programs under `examples/` walk through each capability;
//! the `quconv` binary exposes `analyze`, `verify` and `search`.

pub mod analysis;
pub mod diagram;
pub mod encoder;
pub mod error;
pub mod field;
pub mod harness;
pub mod pauli;

pub use analysis::{Budgets, Classification};
pub use diagram::{Edge, EdgeFilter, StateDiagram};
pub use encoder::{CodeParams, Gate, SymplecticEncoder};
pub use error::{Error, Result};
pub use field::{FpMatrix, FpScalar, PrimeField};
pub use pauli::{PauliOp, PhaseExponent};
