//! Exact factorization of isometries of R^{p,q} into hyperplane reflections.
//!
//! Every orthogonal transformation of a real space with a non-degenerate
//! symmetric form of signature `(p, q)` is a composition of at most `p + q`
//! hyperplane reflections. This crate computes such a factorization with
//! exact rational arithmetic, checks it through Clifford-algebra sandwich
//! products and Householder matrices, and bounds the shortest possible
//! factorization by the grade of the versor.

pub mod analysis;
pub mod bilinear_space;
pub mod clifford;
pub mod error;
pub mod factorization;
pub mod matrix;
pub mod sampling;
pub mod scalar;

pub use bilinear_space::{Basis, OrthogonalBasis, Signature, Vector};
pub use clifford::{Blade, Multivector, Versor};
pub use error::{Error, Result};
pub use factorization::{OrthogonalMap, ReflectionSequence};
pub use matrix::Matrix;
pub use scalar::{NumberMode, Scalar};
