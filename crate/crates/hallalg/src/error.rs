//! Error types shared across the crate.

use thiserror::Error;

/// Errors arising from parsing tree, forest, or graph text.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    /// Unexpected character while reading a tree literal.
    #[error("tree literal: unexpected character {found:?} at byte {at}")]
    TreeChar { at: usize, found: char },
    /// A tree literal ended with unbalanced parentheses.
    #[error("tree literal: unbalanced parentheses")]
    TreeUnbalanced,
    /// A graph line did not match `v <id>`, `h <id> <vertex>`, or `p <hid> <hid>`.
    #[error("graph text line {line}: malformed directive {text:?}")]
    GraphLine { line: usize, text: String },
    /// A graph line referenced an id that was never declared.
    #[error("graph text line {line}: unknown id {id}")]
    GraphUnknownId { line: usize, id: u32 },
    /// A graph declared the same id twice.
    #[error("graph text line {line}: duplicate id {id}")]
    GraphDuplicateId { line: usize, id: u32 },
    /// A half-edge was paired more than once or paired with itself.
    #[error("graph text line {line}: invalid pairing of {a} with {b}")]
    GraphBadPairing { line: usize, a: u32, b: u32 },
    /// Unexpected character while reading a labeled-forest literal.
    #[error("labeled forest literal: unexpected character {found:?} at byte {at}")]
    LabeledChar { at: usize, found: char },
    /// A labeled forest used one vertex label twice.
    #[error("labeled forest literal: duplicate label {label}")]
    DuplicateLabel { label: u32 },
    /// A labeled-forest parent map was inconsistent (unknown parent or cycle).
    #[error("labeled forest structure: {reason}")]
    ForestStructure { reason: String },
}

/// Errors arising from structural validation of half-edge graphs.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    /// A vertex was not trivalent.
    #[error("vertex {vertex} has {degree} incident half-edges; φ³ requires exactly 3")]
    NotTrivalent { vertex: u32, degree: usize },
    /// A connected component had an external-leg count other than 2 or 3.
    #[error("component containing vertex {vertex} has {externals} external legs; expected 2 or 3")]
    BadExternalCount { vertex: u32, externals: usize },
    /// The pairing relation was not a symmetric irreflexive partial matching.
    #[error("half-edge {halfedge} has an inconsistent pairing")]
    BadPairing { halfedge: u32 },
    /// A half-edge was incident to an undeclared vertex.
    #[error("half-edge {halfedge} is incident to unknown vertex {vertex}")]
    UnknownVertex { halfedge: u32, vertex: u32 },
    /// An operation that requires a connected graph received a disconnected one.
    #[error("operation requires a connected graph")]
    Disconnected,
    /// A vertex subset did not induce a valid subgraph selection.
    #[error("vertex subset is not a valid subgraph selection: {reason}")]
    BadSelection { reason: String },
    /// Contracting a 2-external component whose external half-edges are
    /// mutually paired would produce an edge with no endpoints. Validated
    /// selections can never reach this state; the check guards hand-built
    /// vertex sets.
    #[error("contraction would create a vertexless edge")]
    VertexlessEdge,
    /// Insertion arity mismatch (wrong external-leg count or bad site).
    #[error("insertion mismatch: {reason}")]
    BadInsertion { reason: String },
}

/// Errors arising from cut calculus on forests.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CutError {
    /// Cut names a label that is not the child end of any edge (the label
    /// is absent, a root, or lies in the wrong component).
    #[error("cut names vertex {label}, which is not an edge's child end here")]
    UnknownLabel { label: u32 },
    /// Cut has the wrong number of per-component entries.
    #[error("cut has {got} component entries, forest has {want}")]
    ComponentCount { got: usize, want: usize },
    /// Two cut edges lie on one root-to-leaf path.
    #[error("cut is not an antichain: {upper} is an ancestor of {lower}")]
    NotAntichain { upper: u32, lower: u32 },
    /// Operation on cuts over different forests.
    #[error("cuts belong to different forests")]
    ForestMismatch,
    /// A claimed subforest is not descendant-closed in its host.
    #[error("vertex set is not a subforest (not descendant-closed at {label})")]
    NotSubforest { label: u32 },
}

/// Any error this crate produces, for callers that funnel several
/// operations through one result type.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HallError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Cut(#[from] CutError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// Errors arising from category-oracle operations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    /// Composition of morphisms whose middle objects differ.
    #[error("morphisms are not composable: middle objects differ")]
    MiddleMismatch,
    /// A morphism triple failed its structural invariant.
    #[error("invalid morphism: {reason}")]
    BadMorphism { reason: String },
    /// Enumeration bound exceeded.
    #[error("object size {got} exceeds oracle bound {bound}")]
    TooLarge { got: usize, bound: usize },
}
