//! Finite k-potent commutative integral residuated lattices (k-CIRL).
//!
//! The crate validates and enumerates finite algebras, evaluates formulas
//! of the full Lambek calculus with exchange and weakening, builds
//! `(·,∨,1)`-canonical formulas and searches for the embeddings that
//! characterize their refutation.

pub mod algebra;
pub mod axioms;
pub mod canonical;
pub mod closure;
pub mod enumeration;
pub mod error;
pub mod formula;
pub mod verify;

pub use algebra::FiniteRl;
pub use error::{Error, Law, Result};
pub use formula::{Formula, Valuation};
