//! Exact finite-dimensional associative algebras and their modules over ℚ,
//! number fields and finite fields: structure theory, scalar extension,
//! descent to subfields, absolute simplicity and splitting fields.

pub mod acceptance;
pub mod error;
pub mod algebra;
pub mod basechange;
pub mod corpus;
pub mod document;
pub mod field;
pub mod linalg;
pub mod module;
pub mod split;
pub mod structure;

pub use error::{Error, Result};
