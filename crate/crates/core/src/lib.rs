//! Exact Fischer operators and the polynomial Dirichlet problem.
//!
//! The crate works over `Q` and `Q(i)` with arbitrary-precision rationals:
//!
//! - [`poly`], [`monomial`], [`scalar`]: sparse polynomials, graded bases,
//!   derivatives and constant-coefficient differential operators.
//! - [`linalg`]: dense exact Gauss-Jordan elimination, solving, nullspaces and
//!   cokernel witnesses.
//! - [`fischer`]: the maps `q -> P(D)(psi*q)` as matrices between graded slices,
//!   Fischer decompositions `f = psi*q + h` and per-degree rank profiles.
//! - [`dirichlet`]: harmonic polynomial solutions of the Dirichlet problem on
//!   quadric domains with exact and sampled verification.
//! - [`expr`]: a parser and canonical printer for polynomial expressions.

pub mod dirichlet;
mod error;
pub mod expr;
pub mod fischer;
pub mod linalg;
pub mod monomial;
pub mod poly;
pub mod scalar;

pub use dirichlet::{
    boundary_samples, dirichlet_solve, ks_residual, sample_residuals, verify_solution, BoundarySample,
    DirichletSolution, KsResidual, QuadricDomain, Verification,
};
pub use error::{Error, Result};
pub use expr::{format_polynomial, parse_polynomial, ExprAst, ParseError};
pub use fischer::{
    fischer_apply, fischer_decompose, fischer_theorem_check, khavinson_psi, operator_matrix, rank_profile,
    DecompositionCertificate, FischerOperator, ProfileMode, RankProfile, Verdict,
};
pub use linalg::{cokernel_witness, nullspace_basis, rref, solve, ExactMatrix, RrefResult};
pub use monomial::{monomials, Basis, Degree, Monomial, SliceKind};
pub use poly::Poly;
pub use scalar::{Field, Scalar};
