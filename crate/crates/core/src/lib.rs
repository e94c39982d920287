//! Frequency-truncated L2 norms of discrete-time LTI systems and finite-band
//! integrals of descriptor-form resolvents.
//!
//! The closed forms are built from three dense matrix-function kernels
//! ([`matfun::expm`], [`matfun::logm_principal`], [`matfun::psi1`]) applied to
//! pencil-derived matrices. Every closed form has an independent counterpart
//! in [`oracle`], which integrates the same quantities by adaptive
//! Gauss–Kronrod quadrature.
//!
//! Module map:
//!
//! - [`matfun`]: exponential, principal logarithm, ψ1, eigenvalues and a
//!   diagonalizable spectral oracle.
//! - [`lyap`]: the discrete Lyapunov (Stein) equation `AᵀPA − P + Q = 0`.
//! - [`pencil`]: descriptor pairs, shift selection, generalized eigenvalues and
//!   arc clearance.
//! - [`descint`]: band integrals of `(e^{jθ}E − A)⁻¹` and `(jωE − A)⁻¹`.
//! - [`sysnorm`]: truncated norms, the full-band norm and the multirate error.
//! - [`oracle`]: adaptive quadrature ground truth.

#![allow(clippy::excessive_precision, clippy::neg_cmp_op_on_partial_ord)]

pub mod descint;
mod error;
pub mod exec;
pub mod lyap;
pub mod matfun;
pub mod matrix;
pub mod oracle;
pub mod pencil;
pub mod random;
pub mod sysnorm;

pub use error::{Error, ErrorKind, Result};
pub use exec::Execution;
pub use matrix::{Complex64, ComplexMatrix, RealMatrix};
pub use pencil::{Band, DescriptorPair};
pub use sysnorm::{NormMethod, NormResult, StateSpace};
