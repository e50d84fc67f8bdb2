//! Generalized I-graphs `GI(n;J)`: construction, canonical forms, automorphism
//! groups, symmetry classification, brute-force oracles and drawings.

pub mod arith;
pub mod autgroup;
pub mod canon;
pub mod census;
pub mod classify;
pub mod export;
pub mod graph;
pub mod layout;
pub mod oracle;
pub mod perm;

pub use autgroup::{aut_order, AutCase, AutOrderReport};
pub use canon::{canonical_form, equivalent, standard_form, CanonicalForm};
pub use classify::{classify, ClassificationReport, Verdict};
pub use graph::{build, components, GiGraph, GiSpec, SimpleGraph, SpecError, VertexId};
pub use perm::Perm;
