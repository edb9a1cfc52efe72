//! Numerical laboratory for Schatten-type tensor norms.
//!
//! The crate implements elements `x = sum a_i (x) b_i` of an algebraic tensor
//! product of matrix algebras as operators on Schatten p-classes, estimates
//! the associated operator norms, and runs the same machinery over truncated
//! group algebras of the rank-2 free group and of the integers: convolution,
//! reduced-norm compressions, positive-definite length kernels, Schur
//! multipliers, and spectral-radius comparisons between competing norms.
//!
//! Entry points:
//! - [`matrix`]: dense complex matrices, SVD, Schatten norms, trace duality.
//! - [`tensor`]: tensor elements and their action `T -> sum a_i T b_i^T`.
//! - [`norms`]: operator-norm estimation, Haagerup bound, interpolation and
//!   sandwich reports.
//! - [`group`]: reduced words, ball enumeration, sparse convolution, length
//!   functions on F2 and Z.
//! - [`kernels`]: product-group kernels as Schatten-class matrices, diagonal
//!   lifts, Schur multiplication, CHH sequences.
//! - [`spectral`]: spectral radii from power-norm sequences and the l1 vs
//!   reduced gap reports.
//! - [`runner`]: declarative, seeded experiment runner with CSV/JSON/SVG
//!   emission.
//!
//! The `examples/` directory contains one runnable program per capability;
//! the thin `schattenlab` binary drives the runner from the command line.

pub mod error;
pub mod group;
pub mod kernels;
pub mod matrix;
pub mod norms;
pub mod runner;
pub mod spectral;
pub mod tensor;
pub mod tol;

pub use error::{Error, Result};
