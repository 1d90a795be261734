//! Exact-arithmetic kernels for classical and poset Möbius inversion and
//! the structures it touches: cyclotomic polynomials, finite fields,
//! incidence algebras, inclusion-exclusion, truncated Dirichlet series,
//! and small permutation groups.
//!
//! Everything outside [`dirichlet`] is exact (arbitrary-precision integers
//! and rationals); the Dirichlet module is binary64 with explicit,
//! conservative error bounds so its inequality checks remain meaningful.
//!
//! Data-parallel inner loops (irreducible enumeration, batch sweeps) run on
//! rayon with the default `parallel` feature; build with
//! `--no-default-features` for the sequential fallback. Outputs are
//! identical either way.

pub mod arith;
pub mod dirichlet;
pub mod error;
pub mod finfield;
pub mod inclexcl;
pub mod intpoly;
pub mod par;
pub mod permgroup;
pub mod poset;
pub mod rng;

pub use error::{Error, Result};
pub use finfield::{FieldSpec, FqElement, FqPolynomial};
pub use intpoly::IntPolynomial;
pub use permgroup::{PermSet, Permutation};
pub use poset::{IncidenceFunction, Poset};
