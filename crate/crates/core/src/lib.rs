//! Automorphisms of Cayley graphs of Coxeter groups.
//!
//! Given a finite weighted defining graph, this crate decides whether the
//! automorphism group of the Cayley graph (standard generators) is discrete,
//! and builds the evidence: ball automorphisms synthesized from legal
//! configurations of local actions, good separating sets with witness
//! symmetries, and a brute-force oracle to check them against.

pub mod autgamma;
pub mod cayley;
pub mod classifier;
pub mod defgraph;
pub mod error;
pub mod fixtures;
pub mod limits;
pub mod localaction;
pub mod oracle;
pub mod words;

pub use autgamma::GraphAutomorphism;
pub use cayley::CayleyBall;
pub use classifier::Verdict;
pub use defgraph::{DefiningGraph, Vertex, VertexSet, Weight};
pub use error::{Error, Result};
pub use limits::Limits;
pub use localaction::{BallAutomorphism, Configuration};
pub use words::{Coxeter, NormalForm, Word};
