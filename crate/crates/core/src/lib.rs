//! Odd transversals, minimal non-odd-transversal hypergraphs and the
//! adjacency-tensor bounds that go with them.
//!
//! The crate is organised bottom-up:
//!
//! * [`gf2`] – dense bit-packed matrices over the two-element field.
//! * [`hypergraph`] – the hypergraph model, incidence matrix, duality,
//!   sub-hypergraphs and cut structure.
//! * [`format`] – the plain-text edge-list format.
//! * [`transversal`] – odd-transversal search, counting and minimality
//!   classification.
//! * [`generators`] – Cayley hypergraphs, generalized powers, blow-ups,
//!   projective planes, random 2-regular constructions, simplices and the
//!   named fixtures.
//! * [`spectral`] – adjacency-tensor products, Perron iteration, least
//!   H-eigenvalue upper estimates and the bound report.
//! * [`report`] – serializable analysis and spectral reports shared by the
//!   command line and the browser demo.

pub mod format;
pub mod generators;
pub mod gf2;
pub mod hypergraph;
pub mod report;
pub mod spectral;
pub mod transversal;

pub use gf2::{BitMatrix, BitVector, Gf2Error};
pub use hypergraph::{DualResult, Hypergraph, HypergraphError};
pub use transversal::{classify, ClassificationReport};
