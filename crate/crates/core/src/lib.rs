//! Exact computer algebra for finite-dimensional nonassociative algebras and
//! Lie superalgebras: composition algebras and their trace-zero bracket
//! algebras, Jordan algebras of hermitian 3×3 matrices, the Tits construction
//! and Freudenthal's Magic Square, Shestakov's commutative alternative
//! superalgebras, and the characteristic-3 superalgebra construction
//! (s ⊗ A) ⊕ d with its ℤ-graded instances.
//!
//! Everything is exact: coefficients live in GF(p) (p an odd prime) or in the
//! rationals. Every structural claim (identities, dimensions, gradings,
//! simplicity) is verified by sweeps over basis tuples or by certified
//! linear algebra.

pub mod algebra;
pub mod altsuper;
pub mod char3;
pub mod composition;
pub mod derivations;
pub mod error;
pub mod field;
pub mod homs;
pub mod identities;
pub mod jordan;
pub mod linalg;
pub mod meataxe;
pub mod serial;
pub mod tits;

pub use algebra::{BilinearForm, Counterexample, LinearMap, Parity, Superalgebra, VerificationReport};
pub use error::Error;
pub use field::{binomial, FieldSpec, Scalar};
pub use linalg::{Basis, Matrix, Subspace};
pub use meataxe::DEFAULT_SEED;
