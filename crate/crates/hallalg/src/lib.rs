//! Exact-arithmetic Ringel-Hall algebras on two combinatorial categories:
//! rooted forests with admissible cuts, and trivalent (φ³) Feynman graphs
//! with subgraph contraction and insertion.
//!
//! The crate is organized around three layers:
//!
//! * **Objects** — canonical rooted trees/forests ([`forest`]) and validated
//!   half-edge Feynman graphs ([`graph`]), each with a bit-exact canonical
//!   serialization, isomorphism testing, and automorphism counting.
//! * **Algebras** — the Hall Hopf algebra and the Connes–Kreimer pre-Lie/Lie
//!   structures on each family ([`treealg`], [`graphalg`]), with coefficients
//!   in exact rationals.
//! * **Oracle** — a brute-force materialization of both categories at bounded
//!   size ([`category`]): Hom-set enumeration, composition, kernels,
//!   cokernels, and short-exact-sequence counting. Every Hall structure
//!   constant can be cross-checked against the oracle's independent count.
//!
//! All values are immutable and all operations are pure functions, so the
//! whole API is safe to drive from multiple threads.

pub mod category;
pub mod combo;
pub mod error;
pub mod forest;
pub mod graph;
pub mod graphalg;
pub mod treealg;

/// Exact rational coefficient type used by every algebra in this crate.
///
/// Hall structure constants are ratios of subobject counts by automorphism
/// orders, so exactness is part of the contract; floating point is never
/// used.
pub type Coeff = num::BigRational;

/// Signed big integer, re-exported for coefficient construction.
pub type Int = num::BigInt;

/// Hall algebra element over canonical forests.
pub type ForestCombo = combo::LinearCombo<forest::Forest>;

/// Coproduct output over ordered pairs of canonical forests.
pub type ForestPairCombo = combo::PairCombo<forest::Forest>;

/// Hall algebra element over canonical Feynman graphs.
pub type GraphCombo = combo::LinearCombo<graph::CanonGraph>;

/// Coproduct output over ordered pairs of canonical Feynman graphs.
pub type GraphPairCombo = combo::PairCombo<graph::CanonGraph>;


/// Convenience constructor for an exact integer coefficient.
pub fn coeff(n: i64) -> Coeff {
    Coeff::from_integer(Int::from(n))
}

/// Convenience constructor for an exact rational coefficient `n/d`.
pub fn ratio(n: i64, d: i64) -> Coeff {
    Coeff::new(Int::from(n), Int::from(d))
}
