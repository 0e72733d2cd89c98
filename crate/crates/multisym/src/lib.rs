//! Exact-arithmetic toolkit for multisymplectic linear algebra.
//!
//! A multisymplectic vector space of order `k` is a pair `(V, ω)` with
//! `ω ∈ Λ^{k+1} V*`. This crate classifies its subspaces (isotropic,
//! coisotropic, Lagrangian with respect to the indexed orthogonals), builds
//! the canonical models `L ⊕ Λ^k_r L*`, performs linear coisotropic
//! reduction, and runs symbolic calculus (exterior derivative,
//! Schouten-Nijenhuis bracket, graded Hamiltonian brackets) on polynomial
//! differential forms and multivector fields over coordinate space.
//!
//! Everything is computed over arbitrary-precision rationals: results are
//! exact, reproducible, and tolerance-free.

pub mod bundle;
pub mod canonical;
pub mod error;
pub mod exterior;
pub mod formats;
pub mod graded;
pub mod linalg;
pub mod mspace;
pub mod poly;
pub mod polyalt;
pub mod reduction;
pub mod sample;
pub mod scalar;
pub mod subspace;
pub mod verify;

pub use error::{Error, Result};
pub use exterior::{AltElement, LinearMap, MultiIndex, Variance};
pub use mspace::{MSpace, SubspaceClass};
pub use scalar::Rat;
pub use subspace::Subspace;
