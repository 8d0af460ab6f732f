//! Exact, desk-scale machinery for the quantum vector-interpolation algorithm
//! over finite fields: field and character arithmetic, input domains, the
//! `Z`-map census with its moment identities, query-count formulas, and a
//! state-vector simulation of the `k`-query algorithm.
//!
//! The crate is `no_std` and only needs `alloc`. Parallel enumeration, file
//! formats and the command-line front end live in the `qvint` crate.
#![no_std]
#![deny(rust_2018_idioms)]

extern crate alloc;

pub mod complexity;
pub mod count;
pub mod domain;
pub mod error;
pub mod field;
pub mod simulator;
pub mod vector;
pub mod zmap;

pub use domain::{Domain, DomainStats, Independence};
pub use error::{Error, Result};
pub use field::{Field, FieldElement, FieldParams, Fq};
pub use vector::{FqVec, Space};
