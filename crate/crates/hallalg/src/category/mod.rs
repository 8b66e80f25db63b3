//! Brute-force materializations of the two categories behind the Hall
//! algebras: labeled rooted forests with cut morphisms, and φ³ Feynman
//! graphs with contraction morphisms.
//!
//! Both categories share one design: a morphism `F1 → F2` is a triple —
//! a "kernel" piece cut out of the source, an "image" piece cut out of
//! the target, and an isomorphism from what remains of the source onto
//! the image piece.  Every Hom-set is finite and enumerable, every
//! morphism has a kernel and a cokernel, and the number of short exact
//! sequences `∅ → A → K → B → ∅` is an exact integer — the independent
//! oracle against which the Hall structure constants are checked:
//!
//! ```text
//! g^K_{A,B} = h^K_{A,B} · |Aut(A)| · |Aut(B)|
//! ```
//!
//! Enumeration is exhaustive, so object sizes are capped; oversized
//! inputs return [`crate::error::OracleError::TooLarge`] rather than
//! searching forever.

pub mod forest;
pub mod graph;

pub use forest::{
    cokernel_forest, compose_forest, count_short_exact, hom_set_forests, identity_forest,
    kernel_forest, zero_forest, ForestMorphism,
};
pub use graph::{
    cokernel_graph, compose_graph, count_short_exact_graphs, hom_set_graphs, identity_graph,
    kernel_graph, zero_graph, GraphMorphism,
};
