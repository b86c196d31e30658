//! Multimode Gaussian quantum states over real `2n x 2n` covariance matrices.
//!
//! The crate models an n-mode Gaussian state by its mean annihilation vector
//! and quadrature covariance matrix, and provides:
//!
//! - the symplectic substrate (`J`, the complex <-> real embedding, the
//!   J-commutant splitting, group and positivity predicates with explicit
//!   tolerances);
//! - parameter-level state operations (characteristic function, displacement,
//!   passive and general symplectic conjugation, classical Gaussian
//!   averaging);
//! - Williamson and orthosymplectic decompositions with thermal parameters;
//! - the `(A, Lambda, mu)` parametrization and both conversion directions;
//! - the classification lattice
//!   `valid > classical > passive-normalizable > circularly symmetric`
//!   with numeric residuals and certificates for every membership decision;
//! - the Glauber-Sudarshan representation of classical states;
//! - seeded, reproducible generators targeting each class.
//!
//! All operations are pure functions of their inputs and safe for concurrent
//! use. Every predicate threads a [`Tolerances`] value; thresholds scale with
//! the Frobenius norm of the tested matrix.

pub mod alambda;
pub mod classical;
pub mod classify;
pub mod error;
pub mod randgen;
pub mod state;
pub mod symplectic;
pub mod tol;
pub mod williamson;

pub use error::{Error, Result};
pub use state::{ClassicalNoise, GaussianState, ValidityReport};
pub use symplectic::{ComplexMatrix, ComplexVector, RealMatrix, RealVector};
pub use tol::Tolerances;
