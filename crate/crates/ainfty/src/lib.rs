//! Exact-arithmetic computer algebra for finite-dimensional A∞-algebras,
//! A∞-coalgebras, and their modules, comodules and contramodules, given as
//! structure constants over ℚ or a prime field.
//!
//! The crate verifies every defining identity (Stasheff identities and their
//! module/comodule/contramodule counterparts), implements the functorial
//! constructions (graded dual, adjoint module↔comodule duality, rational
//! pairings and rationalization, free contramodules, contratensor products),
//! and certifies the associated adjunctions by exact rank computations.

pub mod scalar;
pub mod matrix;
pub mod graded;
pub mod tensor;
pub mod homspace;
pub mod report;
pub mod algebra;
pub mod generate;
pub mod module;
pub mod comodule;
pub mod contramodule;
pub mod morphism;
pub mod em;
pub mod homsolve;
pub mod pairing;
pub mod cd;

pub use scalar::{Field, Scalar};

#[derive(thiserror::Error, Debug)]
pub enum Error {
    #[error("field mismatch between operands")]
    FieldMismatch,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("cannot parse scalar `{0}`")]
    BadScalar(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("operation {0} has degree {1}, expected {2}")]
    BadOpDegree(String, i64, i64),
    #[error("no solution: {0}")]
    NoSolution(String),
    #[error("structure must be even: {0}")]
    OddStructure(String),
    #[error("descent failure: {0}")]
    Descent(String),
    #[error("generation budget exhausted (seed {0})")]
    BudgetExhausted(u64),
    #[error("{0}")]
    Invalid(String),
}
