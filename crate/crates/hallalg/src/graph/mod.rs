//! Half-edge Feynman graphs for the φ³ vertex model.
//!
//! A [`HalfEdgeGraph`] is a finite set of vertices, a finite set of
//! half-edges each incident to exactly one vertex, and a symmetric,
//! irreflexive partial pairing on half-edges.  Two paired half-edges form
//! an internal edge; an unpaired half-edge is an external leg.  A
//! [`FeynmanGraph`] is a half-edge graph in which every vertex is
//! trivalent and every connected component has 2 or 3 external legs.
//!
//! The text format is line oriented: `v <id>` declares a vertex,
//! `h <id> <vertex>` declares a half-edge at a vertex, `p <a> <b>` pairs
//! two half-edges, and `#` starts a comment.  [`canonical_form`] renumbers
//! vertices and half-edges into a labeling-independent normal form whose
//! serialization is a complete isomorphism invariant.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::ops::Deref;

use itertools::Itertools;

use crate::combo::BasisKey;
use crate::error::{GraphError, ParseError};
use crate::forest::factorial;
use crate::Int;

pub mod fixtures;
pub mod sub;

/// Identifier of a vertex.
pub type VertexId = u32;

/// Identifier of a half-edge.
pub type HalfEdgeId = u32;

/// A graph given by vertices, half-edges and a partial pairing.
///
/// The pairing map stores each internal edge twice (`a -> b` and `b -> a`),
/// so lookup of a partner is a single map access.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HalfEdgeGraph {
    pub(crate) vertices: BTreeSet<VertexId>,
    pub(crate) incidence: BTreeMap<HalfEdgeId, VertexId>,
    pub(crate) pairing: BTreeMap<HalfEdgeId, HalfEdgeId>,
}

impl HalfEdgeGraph {
    /// The graph with no vertices and no half-edges.
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a vertex. Panics if the id is already present.
    pub fn add_vertex(&mut self, v: VertexId) {
        assert!(self.vertices.insert(v), "duplicate vertex id {v}");
    }

    /// Adds a half-edge at `v`. Panics on duplicate ids or unknown vertex.
    pub fn add_halfedge(&mut self, h: HalfEdgeId, v: VertexId) {
        assert!(self.vertices.contains(&v), "unknown vertex {v}");
        assert!(
            self.incidence.insert(h, v).is_none(),
            "duplicate half-edge id {h}"
        );
    }

    /// Pairs two distinct, currently unpaired half-edges.
    pub fn pair(&mut self, a: HalfEdgeId, b: HalfEdgeId) {
        assert!(a != b, "half-edge {a} paired with itself");
        assert!(self.incidence.contains_key(&a), "unknown half-edge {a}");
        assert!(self.incidence.contains_key(&b), "unknown half-edge {b}");
        assert!(
            !self.pairing.contains_key(&a) && !self.pairing.contains_key(&b),
            "half-edge already paired"
        );
        self.pairing.insert(a, b);
        self.pairing.insert(b, a);
    }

    /// Removes the pairing of `a` with its partner, making both external.
    pub fn unpair(&mut self, a: HalfEdgeId) {
        if let Some(b) = self.pairing.remove(&a) {
            self.pairing.remove(&b);
        }
    }

    /// The vertex set.
    pub fn vertices(&self) -> &BTreeSet<VertexId> {
        &self.vertices
    }

    /// Number of vertices.
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// True for the graph with no vertices.
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// All half-edge ids with their vertices.
    pub fn halfedges(&self) -> impl Iterator<Item = (HalfEdgeId, VertexId)> + '_ {
        self.incidence.iter().map(|(&h, &v)| (h, v))
    }

    /// The vertex a half-edge sits at.
    pub fn vertex_of(&self, h: HalfEdgeId) -> Option<VertexId> {
        self.incidence.get(&h).copied()
    }

    /// The partner of a half-edge, if internal.
    pub fn partner(&self, h: HalfEdgeId) -> Option<HalfEdgeId> {
        self.pairing.get(&h).copied()
    }

    /// True if the half-edge is an external leg.
    pub fn is_external(&self, h: HalfEdgeId) -> bool {
        !self.pairing.contains_key(&h)
    }

    /// Half-edges at `v`, ascending.
    pub fn halfedges_at(&self, v: VertexId) -> Vec<HalfEdgeId> {
        self.incidence
            .iter()
            .filter(|&(_, &w)| w == v)
            .map(|(&h, _)| h)
            .collect()
    }

    /// All external half-edges, ascending.
    pub fn external_halfedges(&self) -> Vec<HalfEdgeId> {
        self.incidence
            .keys()
            .copied()
            .filter(|&h| self.is_external(h))
            .collect()
    }

    /// Internal edges as pairs `(a, b)` with `a < b`, ascending.
    pub fn internal_pairs(&self) -> Vec<(HalfEdgeId, HalfEdgeId)> {
        self.pairing
            .iter()
            .filter(|&(&a, &b)| a < b)
            .map(|(&a, &b)| (a, b))
            .collect()
    }

    /// Connected components as vertex sets, ordered by smallest vertex.
    ///
    /// Connectivity is generated by internal edges only; external legs do
    /// not join anything.
    pub fn components(&self) -> Vec<BTreeSet<VertexId>> {
        let mut seen: BTreeSet<VertexId> = BTreeSet::new();
        let mut comps = Vec::new();
        for &start in &self.vertices {
            if seen.contains(&start) {
                continue;
            }
            let mut comp = BTreeSet::new();
            let mut queue = VecDeque::from([start]);
            seen.insert(start);
            comp.insert(start);
            while let Some(v) = queue.pop_front() {
                for h in self.halfedges_at(v) {
                    if let Some(p) = self.partner(h) {
                        let w = self.incidence[&p];
                        if seen.insert(w) {
                            comp.insert(w);
                            queue.push_back(w);
                        }
                    }
                }
            }
            comps.push(comp);
        }
        comps
    }

    /// True if the graph has at most one connected component.
    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// First Betti number: internal edges − vertices + components.
    pub fn loop_number(&self) -> usize {
        let edges = self.internal_pairs().len();
        let comps = self.components().len();
        edges + comps - self.vertex_count()
    }

    /// Parses the line-oriented text format.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut g = HalfEdgeGraph::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let bad = || ParseError::GraphLine {
                line,
                text: content.to_string(),
            };
            let toks: Vec<&str> = content.split_whitespace().collect();
            match toks.as_slice() {
                ["v", id] => {
                    let v: VertexId = id.parse().map_err(|_| bad())?;
                    if !g.vertices.insert(v) {
                        return Err(ParseError::GraphDuplicateId { line, id: v });
                    }
                }
                ["h", id, at] => {
                    let h: HalfEdgeId = id.parse().map_err(|_| bad())?;
                    let v: VertexId = at.parse().map_err(|_| bad())?;
                    if !g.vertices.contains(&v) {
                        return Err(ParseError::GraphUnknownId { line, id: v });
                    }
                    if g.incidence.insert(h, v).is_some() {
                        return Err(ParseError::GraphDuplicateId { line, id: h });
                    }
                }
                ["p", x, y] => {
                    let a: HalfEdgeId = x.parse().map_err(|_| bad())?;
                    let b: HalfEdgeId = y.parse().map_err(|_| bad())?;
                    for id in [a, b] {
                        if !g.incidence.contains_key(&id) {
                            return Err(ParseError::GraphUnknownId { line, id });
                        }
                    }
                    if a == b || g.pairing.contains_key(&a) || g.pairing.contains_key(&b) {
                        return Err(ParseError::GraphBadPairing { line, a, b });
                    }
                    g.pairing.insert(a, b);
                    g.pairing.insert(b, a);
                }
                _ => return Err(bad()),
            }
        }
        Ok(g)
    }

    /// Serializes to the text format with sorted lines and no trailing newline.
    pub fn serialize(&self) -> String {
        let mut lines = Vec::new();
        for v in &self.vertices {
            lines.push(format!("v {v}"));
        }
        for (&h, &v) in &self.incidence {
            lines.push(format!("h {h} {v}"));
        }
        for (a, b) in self.internal_pairs() {
            lines.push(format!("p {a} {b}"));
        }
        lines.join("\n")
    }
}

impl fmt::Display for HalfEdgeGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

/// A validated φ³ Feynman graph: trivalent, with 2 or 3 external legs per
/// connected component.  The empty graph is valid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeynmanGraph {
    inner: HalfEdgeGraph,
}

impl Deref for FeynmanGraph {
    type Target = HalfEdgeGraph;

    fn deref(&self) -> &HalfEdgeGraph {
        &self.inner
    }
}

/// Checks the φ³ constraints and wraps the graph.
pub fn validate_feynman(g: HalfEdgeGraph) -> Result<FeynmanGraph, GraphError> {
    for (h, v) in g.halfedges() {
        if !g.vertices.contains(&v) {
            return Err(GraphError::UnknownVertex {
                halfedge: h,
                vertex: v,
            });
        }
    }
    for (&a, &b) in &g.pairing {
        if a == b || g.pairing.get(&b) != Some(&a) || !g.incidence.contains_key(&b) {
            return Err(GraphError::BadPairing { halfedge: a });
        }
    }
    for &v in &g.vertices {
        let degree = g.halfedges_at(v).len();
        if degree != 3 {
            return Err(GraphError::NotTrivalent { vertex: v, degree });
        }
    }
    for comp in g.components() {
        let externals = comp
            .iter()
            .flat_map(|&v| g.halfedges_at(v))
            .filter(|&h| g.is_external(h))
            .count();
        if externals != 2 && externals != 3 {
            let vertex = *comp.iter().next().expect("nonempty component");
            return Err(GraphError::BadExternalCount { vertex, externals });
        }
    }
    Ok(FeynmanGraph { inner: g })
}

impl FeynmanGraph {
    /// The empty Feynman graph (the null object).
    pub fn empty() -> Self {
        FeynmanGraph {
            inner: HalfEdgeGraph::new(),
        }
    }

    /// Parses and validates; `"0"` denotes the empty graph.
    pub fn parse(text: &str) -> Result<Self, crate::error::HallError> {
        if text.trim() == "0" {
            return Ok(FeynmanGraph::empty());
        }
        let raw = HalfEdgeGraph::parse(text)?;
        Ok(validate_feynman(raw)?)
    }

    /// The underlying half-edge data.
    pub fn raw(&self) -> &HalfEdgeGraph {
        &self.inner
    }

    /// Disjoint union, with the right operand's ids shifted out of the way.
    pub fn disjoint_union(&self, other: &FeynmanGraph) -> FeynmanGraph {
        let vshift = self.vertices.iter().max().map_or(0, |&m| m + 1);
        let hshift = self.incidence.keys().max().map_or(0, |&m| m + 1);
        let mut g = self.inner.clone();
        for &v in &other.vertices {
            g.add_vertex(v + vshift);
        }
        for (h, v) in other.halfedges() {
            g.add_halfedge(h + hshift, v + vshift);
        }
        for (a, b) in other.internal_pairs() {
            g.pair(a + hshift, b + hshift);
        }
        FeynmanGraph { inner: g }
    }

    /// True if connected and still connected after removing any one
    /// internal edge (one-particle irreducible).
    ///
    /// Errors on disconnected input.
    pub fn is_1pi(&self) -> Result<bool, GraphError> {
        if !self.is_connected() {
            return Err(GraphError::Disconnected);
        }
        for (a, b) in self.internal_pairs() {
            let mut cut = self.inner.clone();
            cut.pairing.remove(&a);
            cut.pairing.remove(&b);
            if cut.components().len() > 1 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Canonical form of this graph.
    pub fn canon(&self) -> CanonGraph {
        canonical_form(self)
    }
}

impl fmt::Display for FeynmanGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

/// A Feynman graph in canonical labeling together with its serialization.
///
/// Two graphs are isomorphic if and only if their canonical serializations
/// are equal; ordering and hashing use the serialization.
#[derive(Clone, Debug)]
pub struct CanonGraph {
    graph: FeynmanGraph,
    enc: String,
}

impl CanonGraph {
    /// The canonically labeled graph.
    pub fn graph(&self) -> &FeynmanGraph {
        &self.graph
    }

    /// The canonical multi-line serialization.
    pub fn serialization(&self) -> &str {
        &self.enc
    }
}

impl PartialEq for CanonGraph {
    fn eq(&self, other: &Self) -> bool {
        self.enc == other.enc
    }
}

impl Eq for CanonGraph {}

impl PartialOrd for CanonGraph {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CanonGraph {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.enc.cmp(&other.enc)
    }
}

impl std::hash::Hash for CanonGraph {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.enc.hash(state);
    }
}

impl BasisKey for CanonGraph {
    /// One-line form: serialization lines joined by `"; "`, or `"0"` for
    /// the empty graph.
    fn literal(&self) -> String {
        if self.enc.is_empty() {
            "0".to_string()
        } else {
            self.enc.replace('\n', "; ")
        }
    }

    /// Graded by loop number.
    fn degree(&self) -> usize {
        self.graph.loop_number()
    }
}

impl fmt::Display for CanonGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.literal())
    }
}

/// Vertex-level summary of a graph: external and self-loop counts per
/// vertex and edge multiplicities, used by the canonical-labeling and
/// isomorphism searches.
struct MultigraphView {
    /// Original vertex ids, ascending; positions index the other fields.
    verts: Vec<VertexId>,
    ext: Vec<usize>,
    selfloops: Vec<usize>,
    /// `mult[i][j]` = number of edges between positions i and j (i ≠ j).
    mult: Vec<BTreeMap<usize, usize>>,
}

impl MultigraphView {
    fn build(g: &HalfEdgeGraph) -> Self {
        let verts: Vec<VertexId> = g.vertices.iter().copied().collect();
        let pos: BTreeMap<VertexId, usize> =
            verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let n = verts.len();
        let mut ext = vec![0usize; n];
        let mut selfloops = vec![0usize; n];
        let mut mult: Vec<BTreeMap<usize, usize>> = vec![BTreeMap::new(); n];
        for (h, v) in g.halfedges() {
            if g.is_external(h) {
                ext[pos[&v]] += 1;
            }
        }
        for (a, b) in g.internal_pairs() {
            let i = pos[&g.incidence[&a]];
            let j = pos[&g.incidence[&b]];
            if i == j {
                selfloops[i] += 1;
            } else {
                *mult[i].entry(j).or_insert(0) += 1;
                *mult[j].entry(i).or_insert(0) += 1;
            }
        }
        MultigraphView {
            verts,
            ext,
            selfloops,
            mult,
        }
    }

    fn len(&self) -> usize {
        self.verts.len()
    }
}

/// Iteratively refines vertex classes by external count, self-loop count
/// and neighbor class multiset.  Class ids are canonical: they are ranks
/// of the (iso-invariant) signatures, so equal ids mean "possibly
/// matchable" across different graphs refined jointly.
fn refine_classes(views: &[&MultigraphView]) -> Vec<Vec<usize>> {
    let offsets: Vec<usize> = views
        .iter()
        .scan(0, |acc, v| {
            let o = *acc;
            *acc += v.len();
            Some(o)
        })
        .collect();
    let total: usize = views.iter().map(|v| v.len()).sum();
    let flat: Vec<(usize, usize)> = views
        .iter()
        .enumerate()
        .flat_map(|(gi, v)| (0..v.len()).map(move |i| (gi, i)))
        .collect();

    let mut class: Vec<usize> = {
        let sigs: Vec<(usize, usize)> = flat
            .iter()
            .map(|&(gi, i)| (views[gi].ext[i], views[gi].selfloops[i]))
            .collect();
        rank(&sigs)
    };
    loop {
        let sigs: Vec<(usize, Vec<(usize, usize)>)> = flat
            .iter()
            .enumerate()
            .map(|(k, &(gi, i))| {
                let mut nb: Vec<(usize, usize)> = views[gi]
                    .mult[i]
                    .iter()
                    .map(|(&j, &m)| (class[offsets[gi] + j], m))
                    .collect();
                nb.sort_unstable();
                (class[k], nb)
            })
            .collect();
        let next = rank(&sigs);
        if next == class {
            break;
        }
        class = next;
    }
    let mut out = Vec::new();
    let mut k = 0;
    for v in views {
        out.push(class[k..k + v.len()].to_vec());
        k += v.len();
    }
    debug_assert_eq!(k, total);
    out
}

/// Ranks items by sorted order of their values (equal values, equal rank).
fn rank<T: Ord + Clone>(items: &[T]) -> Vec<usize> {
    let mut sorted: Vec<T> = items.to_vec();
    sorted.sort();
    sorted.dedup();
    items
        .iter()
        .map(|x| sorted.binary_search(x).expect("present"))
        .collect()
}

/// Edge list of the view under a relabeling, sorted; the comparison key of
/// the canonical search (external/self-loop data is constant per class).
fn edge_list_under(view: &MultigraphView, label: &[usize]) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for i in 0..view.len() {
        for (&j, &m) in &view.mult[i] {
            if j > i {
                let (a, b) = (label[i].min(label[j]), label[i].max(label[j]));
                for _ in 0..m {
                    edges.push((a, b));
                }
            }
        }
    }
    edges.sort_unstable();
    edges
}

/// Exhaustive class-respecting search for the minimal edge list.  Returns
/// the best relabeling (position → new label) and the number of labelings
/// achieving the minimum, which equals the order of the vertex-level
/// automorphism group.
fn canonical_search(view: &MultigraphView) -> (Vec<usize>, u64) {
    let n = view.len();
    if n == 0 {
        return (Vec::new(), 1);
    }
    let class = refine_classes(&[view]).pop().expect("one view");
    let nclasses = class.iter().max().unwrap() + 1;
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); nclasses];
    for (i, &c) in class.iter().enumerate() {
        groups[c].push(i);
    }
    let starts: Vec<usize> = groups
        .iter()
        .scan(0, |acc, g| {
            let s = *acc;
            *acc += g.len();
            Some(s)
        })
        .collect();

    let mut best: Option<Vec<(usize, usize)>> = None;
    let mut best_label = vec![0usize; n];
    let mut hits = 0u64;
    let choices = groups
        .iter()
        .map(|g| g.iter().permutations(g.len()))
        .multi_cartesian_product();
    for perm_set in choices {
        let mut label = vec![0usize; n];
        for (ci, perm) in perm_set.iter().enumerate() {
            for (offset, &&i) in perm.iter().enumerate() {
                label[i] = starts[ci] + offset;
            }
        }
        let edges = edge_list_under(view, &label);
        match &best {
            Some(b) if edges > *b => {}
            Some(b) if edges == *b => hits += 1,
            _ => {
                best = Some(edges);
                best_label = label;
                hits = 1;
            }
        }
    }
    (best_label, hits)
}

/// Builds the canonically labeled graph for a computed relabeling.
fn rebuild_canonical(view: &MultigraphView, label: &[usize]) -> FeynmanGraph {
    let n = view.len();
    let mut inv = vec![0usize; n];
    for (i, &l) in label.iter().enumerate() {
        inv[l] = i;
    }
    let mut g = HalfEdgeGraph::new();
    for newv in 0..n {
        g.add_vertex(newv as VertexId);
    }
    let mut next: HalfEdgeId = 0;
    let mut take = |g: &mut HalfEdgeGraph, v: usize| {
        let h = next;
        next += 1;
        g.add_halfedge(h, v as VertexId);
        h
    };
    for newv in 0..n {
        for _ in 0..view.ext[inv[newv]] {
            take(&mut g, newv);
        }
    }
    for newv in 0..n {
        for _ in 0..view.selfloops[inv[newv]] {
            let a = take(&mut g, newv);
            let b = take(&mut g, newv);
            g.pair(a, b);
        }
    }
    let mut edges: Vec<(usize, usize, usize)> = Vec::new();
    for i in 0..n {
        for (&j, &m) in &view.mult[i] {
            if j > i {
                let (a, b) = (label[i].min(label[j]), label[i].max(label[j]));
                edges.push((a, b, m));
            }
        }
    }
    edges.sort_unstable();
    for (u, v, m) in edges {
        for _ in 0..m {
            let a = take(&mut g, u);
            let b = take(&mut g, v);
            g.pair(a, b);
        }
    }
    validate_feynman(g).expect("relabeling preserves validity")
}

/// Canonical form: the labeling-independent normal form of a graph.
pub fn canonical_form(g: &FeynmanGraph) -> CanonGraph {
    let view = MultigraphView::build(g);
    let (label, _) = canonical_search(&view);
    let graph = rebuild_canonical(&view, &label);
    let enc = graph.serialize();
    CanonGraph { graph, enc }
}

/// True if the two graphs are isomorphic.
pub fn is_isomorphic(a: &FeynmanGraph, b: &FeynmanGraph) -> bool {
    canonical_form(a).enc == canonical_form(b).enc
}

/// Order of the automorphism group, counting pairs of vertex and
/// half-edge bijections that preserve incidence and pairing.  External
/// legs are freely permutable within a vertex.
pub fn aut_order(g: &FeynmanGraph) -> Int {
    let view = MultigraphView::build(g);
    let (_, vertex_auts) = canonical_search(&view);
    let mut order = Int::from(vertex_auts);
    for i in 0..view.len() {
        order *= factorial(view.ext[i]);
        order *= factorial(view.selfloops[i]) * Int::from(2u32).pow(view.selfloops[i] as u32);
        for (&j, &m) in &view.mult[i] {
            if j > i {
                order *= factorial(m);
            }
        }
    }
    order
}

/// An isomorphism as explicit vertex and half-edge bijections.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct GraphIso {
    pub vmap: BTreeMap<VertexId, VertexId>,
    pub hmap: BTreeMap<HalfEdgeId, HalfEdgeId>,
}

impl GraphIso {
    /// The identity isomorphism of a graph.
    pub fn identity(g: &HalfEdgeGraph) -> Self {
        GraphIso {
            vmap: g.vertices.iter().map(|&v| (v, v)).collect(),
            hmap: g.halfedges().map(|(h, _)| (h, h)).collect(),
        }
    }
}

/// All isomorphisms from `a` to `b`, in a deterministic order.
pub fn enumerate_isos(a: &FeynmanGraph, b: &FeynmanGraph) -> Vec<GraphIso> {
    let va = MultigraphView::build(a);
    let vb = MultigraphView::build(b);
    if va.len() != vb.len() {
        return Vec::new();
    }
    let classes = refine_classes(&[&va, &vb]);
    let (ca, cb) = (&classes[0], &classes[1]);

    let mut vertex_isos: Vec<Vec<usize>> = Vec::new();
    let mut assignment = vec![usize::MAX; va.len()];
    let mut used = vec![false; vb.len()];
    fn extend(
        va: &MultigraphView,
        vb: &MultigraphView,
        ca: &[usize],
        cb: &[usize],
        i: usize,
        assignment: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if i == va.len() {
            out.push(assignment.clone());
            return;
        }
        for j in 0..vb.len() {
            if used[j] || ca[i] != cb[j] {
                continue;
            }
            let consistent = va.mult[i].iter().all(|(&k, &m)| {
                assignment[k] == usize::MAX || vb.mult[j].get(&assignment[k]) == Some(&m)
            }) && vb.mult[j].iter().all(|(&l, &m)| {
                !used[l]
                    || va.mult[i]
                        .iter()
                        .any(|(&k, &mk)| assignment[k] == l && mk == m)
            });
            if !consistent {
                continue;
            }
            assignment[i] = j;
            used[j] = true;
            extend(va, vb, ca, cb, i + 1, assignment, used, out);
            assignment[i] = usize::MAX;
            used[j] = false;
        }
    }
    extend(
        &va,
        &vb,
        ca,
        cb,
        0,
        &mut assignment,
        &mut used,
        &mut vertex_isos,
    );

    let mut result = Vec::new();
    for vassign in vertex_isos {
        extend_halfedge_isos(a, b, &va, &vb, &vassign, &mut result);
    }
    result.sort();
    result
}

/// Classified half-edges of one vertex: externals, self-loop pairs, and
/// per-neighbor edge halves.
struct VertexHalves {
    ext: Vec<HalfEdgeId>,
    selfloops: Vec<(HalfEdgeId, HalfEdgeId)>,
    to_neighbor: BTreeMap<VertexId, Vec<HalfEdgeId>>,
}

fn classify_halves(g: &HalfEdgeGraph, v: VertexId) -> VertexHalves {
    let mut ext = Vec::new();
    let mut selfloops = Vec::new();
    let mut to_neighbor: BTreeMap<VertexId, Vec<HalfEdgeId>> = BTreeMap::new();
    for h in g.halfedges_at(v) {
        match g.partner(h) {
            None => ext.push(h),
            Some(p) => {
                let w = g.vertex_of(p).expect("paired half-edge has a vertex");
                if w == v {
                    if h < p {
                        selfloops.push((h, p));
                    }
                } else {
                    to_neighbor.entry(w).or_default().push(h);
                }
            }
        }
    }
    VertexHalves {
        ext,
        selfloops,
        to_neighbor,
    }
}

/// Enumerates all half-edge extensions of one vertex bijection.
fn extend_halfedge_isos(
    a: &FeynmanGraph,
    b: &FeynmanGraph,
    va: &MultigraphView,
    vb: &MultigraphView,
    vassign: &[usize],
    out: &mut Vec<GraphIso>,
) {
    let vmap: BTreeMap<VertexId, VertexId> = vassign
        .iter()
        .enumerate()
        .map(|(i, &j)| (va.verts[i], vb.verts[j]))
        .collect();

    // Independent choice groups; each choice fixes part of the half-edge map.
    let mut groups: Vec<Vec<Vec<(HalfEdgeId, HalfEdgeId)>>> = Vec::new();
    for (&av, &bv) in &vmap {
        let ha = classify_halves(a, av);
        let hb = classify_halves(b, bv);
        // External legs: any bijection.
        let opts: Vec<Vec<(HalfEdgeId, HalfEdgeId)>> = hb
            .ext
            .iter()
            .permutations(hb.ext.len())
            .map(|perm| ha.ext.iter().copied().zip(perm.into_iter().copied()).collect())
            .collect();
        groups.push(opts);
        // Self-loops: match pairs, then orient each.
        if !ha.selfloops.is_empty() {
            let mut opts = Vec::new();
            for perm in hb.selfloops.iter().permutations(hb.selfloops.len()) {
                for orient in 0..(1u32 << ha.selfloops.len()) {
                    let mut m = Vec::new();
                    for (k, (&(a1, a2), &(b1, b2))) in
                        ha.selfloops.iter().zip(perm.iter().copied()).enumerate()
                    {
                        if orient >> k & 1 == 0 {
                            m.push((a1, b1));
                            m.push((a2, b2));
                        } else {
                            m.push((a1, b2));
                            m.push((a2, b1));
                        }
                    }
                    opts.push(m);
                }
            }
            groups.push(opts);
        }
        // Ordinary edges: one bijection per unordered edge class; the map on
        // the far side is forced by the pairing. Handle each class once.
        for (&aw, halves_a) in &ha.to_neighbor {
            if aw < av {
                continue;
            }
            let bw = vmap[&aw];
            let empty = Vec::new();
            let halves_b = hb.to_neighbor.get(&bw).unwrap_or(&empty);
            let opts: Vec<Vec<(HalfEdgeId, HalfEdgeId)>> = halves_b
                .iter()
                .permutations(halves_b.len())
                .map(|perm| {
                    let mut m = Vec::new();
                    for (&x, &y) in halves_a.iter().zip(perm) {
                        m.push((x, y));
                        m.push((
                            a.partner(x).expect("internal"),
                            b.partner(y).expect("internal"),
                        ));
                    }
                    m
                })
                .collect();
            groups.push(opts);
        }
    }

    for combo in groups
        .iter()
        .map(|opts| opts.iter())
        .multi_cartesian_product()
    {
        let mut hmap = BTreeMap::new();
        for part in combo {
            for &(x, y) in part {
                hmap.insert(x, y);
            }
        }
        out.push(GraphIso {
            vmap: vmap.clone(),
            hmap,
        });
    }
}

/// All connected Feynman graphs with at most `max_vertices` vertices, in
/// canonical form, generated by exhaustive search over edge-multiplicity
/// matrices with vertex degrees ≤ 3.
pub fn enumerate_feynman_graphs(max_vertices: usize) -> Vec<CanonGraph> {
    let mut found: BTreeSet<CanonGraph> = BTreeSet::new();
    for n in 1..=max_vertices {
        let mut selfloops = vec![0usize; n];
        let mut mult = vec![vec![0usize; n]; n];
        let mut degree = vec![0usize; n];
        search_matrices(n, 0, 0, &mut selfloops, &mut mult, &mut degree, &mut found);
    }
    found.into_iter().collect()
}

fn search_matrices(
    n: usize,
    i: usize,
    j: usize,
    selfloops: &mut Vec<usize>,
    mult: &mut Vec<Vec<usize>>,
    degree: &mut Vec<usize>,
    found: &mut BTreeSet<CanonGraph>,
) {
    if i == n {
        emit_candidate(n, selfloops, mult, found);
        return;
    }
    let (ni, nj) = if j + 1 == n { (i + 1, i + 1) } else { (i, j + 1) };
    if i == j {
        // Self-loops: each consumes two units of degree.
        for s in 0..=((3 - degree[i]) / 2) {
            selfloops[i] = s;
            degree[i] += 2 * s;
            search_matrices(n, ni, nj, selfloops, mult, degree, found);
            degree[i] -= 2 * s;
            selfloops[i] = 0;
        }
    } else {
        let cap = (3 - degree[i]).min(3 - degree[j]);
        for m in 0..=cap {
            mult[i][j] = m;
            degree[i] += m;
            degree[j] += m;
            search_matrices(n, ni, nj, selfloops, mult, degree, found);
            degree[i] -= m;
            degree[j] -= m;
            mult[i][j] = 0;
        }
    }
}

fn emit_candidate(
    n: usize,
    selfloops: &[usize],
    mult: &[Vec<usize>],
    found: &mut BTreeSet<CanonGraph>,
) {
    let mut g = HalfEdgeGraph::new();
    for v in 0..n {
        g.add_vertex(v as VertexId);
    }
    let mut next: HalfEdgeId = 0;
    for v in 0..n {
        let deg = 2 * selfloops[v]
            + (0..n)
                .map(|u| {
                    if u < v {
                        mult[u][v]
                    } else if u > v {
                        mult[v][u]
                    } else {
                        0
                    }
                })
                .sum::<usize>();
        for _ in 0..(3 - deg) {
            g.add_halfedge(next, v as VertexId);
            next += 1;
        }
    }
    for v in 0..n {
        for _ in 0..selfloops[v] {
            g.add_halfedge(next, v as VertexId);
            g.add_halfedge(next + 1, v as VertexId);
            g.pair(next, next + 1);
            next += 2;
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for _ in 0..mult[i][j] {
                g.add_halfedge(next, i as VertexId);
                g.add_halfedge(next + 1, j as VertexId);
                g.pair(next, next + 1);
                next += 2;
            }
        }
    }
    if !g.is_connected() {
        return;
    }
    let ext = g.external_halfedges().len();
    if ext != 2 && ext != 3 {
        return;
    }
    let fg = validate_feynman(g).expect("constructed trivalent");
    found.insert(canonical_form(&fg));
}

#[cfg(test)]
mod tests {
    use super::fixtures;
    use super::*;

    #[test]
    fn parse_serialize_round_trip() {
        let text = "v 0\nv 1\nh 0 0\nh 1 0\nh 2 0\nh 3 1\nh 4 1\nh 5 1\np 1 3\np 2 4";
        let g = HalfEdgeGraph::parse(text).unwrap();
        assert_eq!(g.serialize(), text);
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.external_halfedges(), vec![0, 5]);
        let again = HalfEdgeGraph::parse(&g.serialize()).unwrap();
        assert_eq!(again, g);
    }

    #[test]
    fn parse_errors_are_reported() {
        assert!(matches!(
            HalfEdgeGraph::parse("x 1"),
            Err(ParseError::GraphLine { line: 1, .. })
        ));
        assert!(matches!(
            HalfEdgeGraph::parse("v 0\nv 0"),
            Err(ParseError::GraphDuplicateId { line: 2, id: 0 })
        ));
        assert!(matches!(
            HalfEdgeGraph::parse("v 0\nh 0 7"),
            Err(ParseError::GraphUnknownId { line: 2, id: 7 })
        ));
        assert!(matches!(
            HalfEdgeGraph::parse("v 0\nh 0 0\nh 1 0\np 0 0"),
            Err(ParseError::GraphBadPairing { line: 4, .. })
        ));
    }

    #[test]
    fn validation_rejects_bad_graphs() {
        let mut g = HalfEdgeGraph::new();
        g.add_vertex(0);
        for h in 0..4 {
            g.add_halfedge(h, 0);
        }
        assert!(matches!(
            validate_feynman(g),
            Err(GraphError::NotTrivalent {
                vertex: 0,
                degree: 4
            })
        ));

        // A single trivalent vertex with a self-loop has one external leg.
        let mut g = HalfEdgeGraph::new();
        g.add_vertex(0);
        for h in 0..3 {
            g.add_halfedge(h, 0);
        }
        g.pair(0, 1);
        assert!(matches!(
            validate_feynman(g),
            Err(GraphError::BadExternalCount {
                vertex: 0,
                externals: 1
            })
        ));
    }

    #[test]
    fn bubble_and_triangle_basics() {
        let bub = fixtures::bubble();
        assert_eq!(bub.loop_number(), 1);
        assert!(bub.is_1pi().unwrap());
        assert_eq!(aut_order(&bub), Int::from(4));

        let tri = fixtures::triangle();
        assert_eq!(tri.loop_number(), 1);
        assert!(tri.is_1pi().unwrap());
        assert_eq!(aut_order(&tri), Int::from(6));

        let one = fixtures::vertex_graph();
        assert_eq!(one.loop_number(), 0);
        assert_eq!(aut_order(&one), Int::from(6));

        assert!(!is_isomorphic(&bub, &tri));
        assert!(is_isomorphic(&bub, canonical_form(&bub).graph()));
    }

    #[test]
    fn series_bubbles_are_not_1pi() {
        let chain = fixtures::bubble_chain();
        assert_eq!(chain.loop_number(), 2);
        assert!(!chain.is_1pi().unwrap());
        assert_eq!(aut_order(&chain), Int::from(8));
    }

    #[test]
    fn example_graph_has_three_loops() {
        let g = fixtures::example_graph();
        assert_eq!(g.vertex_count(), 6);
        assert_eq!(g.internal_pairs().len(), 8);
        assert_eq!(g.loop_number(), 3);
        assert!(g.is_1pi().unwrap());
        assert_eq!(g.external_halfedges().len(), 2);
    }

    #[test]
    fn canonical_form_is_stable_under_relabeling() {
        let bub = fixtures::bubble();
        // Rebuild the bubble with scrambled ids.
        let mut g = HalfEdgeGraph::new();
        g.add_vertex(17);
        g.add_vertex(3);
        for (h, v) in [(90, 17), (7, 17), (21, 17), (8, 3), (40, 3), (11, 3)] {
            g.add_halfedge(h, v);
        }
        g.pair(7, 40);
        g.pair(21, 8);
        let scrambled = validate_feynman(g).unwrap();
        assert_eq!(
            canonical_form(&bub).serialization(),
            canonical_form(&scrambled).serialization()
        );
    }

    #[test]
    fn iso_count_matches_aut_order() {
        for g in [
            fixtures::bubble(),
            fixtures::triangle(),
            fixtures::vertex_graph(),
            fixtures::bubble_chain(),
            fixtures::bubble_in_triangle(),
            fixtures::double_triangle(),
        ] {
            let isos = enumerate_isos(&g, &g);
            assert_eq!(Int::from(isos.len()), aut_order(&g), "graph:\n{g}");
            let id = GraphIso::identity(&g);
            assert!(isos.contains(&id));
        }
    }

    #[test]
    fn disjoint_union_counts() {
        let bub = fixtures::bubble();
        let two = bub.disjoint_union(&bub);
        assert_eq!(two.vertex_count(), 4);
        assert_eq!(two.components().len(), 2);
        assert_eq!(two.loop_number(), 2);
        // 4 per bubble, times swapping the bubbles.
        assert_eq!(aut_order(&two), Int::from(32));
    }

    #[test]
    fn enumerate_small_graphs() {
        // One vertex: only the bare vertex (a self-loop would leave one leg).
        let one = enumerate_feynman_graphs(1);
        assert_eq!(one.len(), 1);
        // Two vertices add the bubble and the tadpole-on-a-bridge.
        let two = enumerate_feynman_graphs(2);
        assert_eq!(two.len(), 3);
        let bub = canonical_form(&fixtures::bubble());
        assert!(two.contains(&bub));
    }

    #[test]
    fn empty_graph_literal() {
        let e = canonical_form(&FeynmanGraph::empty());
        assert_eq!(e.literal(), "0");
        assert_eq!(e.degree(), 0);
    }
}
