//! Typical ranks and minimum-rank real completions of partially specified
//! symmetric matrices.
//!
//! A partial symmetric matrix is described by a *semisimple graph*: vertices
//! are row/column indices, an edge `{i, j}` marks a specified entry and a loop
//! `{i, i}` a specified diagonal entry. The crate provides
//!
//! * [`graph`]: semisimple graphs and the combinatorial predicates used by the
//!   typical-rank characterizations (complements, bipartiteness, cycle
//!   structure, independent sets, bipartite induced subgraphs);
//! * [`linalg`]: dense symmetric-matrix primitives (inertia, numeric rank,
//!   determinant signs, Schur-complement rank, a Jacobi eigensolver);
//! * [`completion`]: constructive completions for unions of cliques, the
//!   one-missing-entry solver and the minor-poset full-rank certificate;
//! * [`classifier`]: exact typical-rank sets for the characterized graph
//!   families and bounds for everything else;
//! * [`oracle`]: an independent numeric minimum-rank solver and Monte Carlo
//!   estimators built on it.
//!
//! The crate is `no_std` and only needs `alloc`.
#![cfg_attr(not(any(feature = "std", test)), no_std)]

extern crate alloc;

pub mod classifier;
pub mod completion;
mod error;
pub mod graph;
pub mod linalg;
pub mod oracle;

pub use error::{Error, Result};
pub use graph::{SemisimpleGraph, VertexSet};
pub use linalg::{Inertia, Matrix, SymmetricMatrix, Tolerance};
