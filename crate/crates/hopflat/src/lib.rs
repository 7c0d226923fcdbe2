//! Exact-arithmetic Kitaev lattice models and Hopf algebra gauge theories.
//!
//! Everything in this crate works over the rationals with no rounding anywhere:
//! Hopf algebras are given by exact structure-constant tensors, ribbon graphs are
//! pure combinatorics, and all operator identities are verified as exact matrix
//! or element equalities.
//!
//! The main layers, bottom to top:
//!
//! - [`linalg`]: rational scalars, dense/sparse exact matrices, rank and kernel
//!   computations, mixed-radix tensor indexing.
//! - [`hopf`]: structure-constant Hopf algebras, elements of their tensor powers,
//!   and an exhaustive axiom checker.
//! - [`constructions`]: group algebras, duals, Drinfeld doubles, Heisenberg
//!   doubles, Haar integrals and the associated projectors and structure maps.
//! - [`graph`]: ciliated ribbon graphs, faces, regularity and regularization.
//! - [`thickening`]: the thickened graph, path words and the distinguished
//!   vertex/face loops, edge paths and vertex-neighbourhood paths.
//! - [`kitaev`]: triangle operators, holonomies, vertex/face operators, gauge
//!   action, flatness projectors and the protected space dimension.
//! - [`gauge`]: vertex algebras, the graph algebra of functions, curvatures and
//!   the quantum moduli algebra.
//! - [`equiv`]: the isomorphism between the two models and its verification
//!   suites.

pub mod constructions;
pub mod equiv;
pub mod exec;
pub mod gauge;
pub mod graph;
pub mod hopf;
pub mod kitaev;
pub mod linalg;
pub mod report;
pub mod thickening;

pub use hopf::{Element, HopfAlgebraSpec, Space};
pub use linalg::Scalar;
