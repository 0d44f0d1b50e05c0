pub mod action;
pub mod classify;
pub mod error;
pub mod expr;
pub mod galois;
pub mod hdet;
pub mod hopf;
pub mod invariants;
pub mod linalg;
pub mod pbw;
pub mod replay;
pub mod scenario;
pub mod scalar;
pub mod verdict;

pub use error::{Error, Result};
pub use scalar::{CycScalar, Rational};
pub use verdict::Verdict;
