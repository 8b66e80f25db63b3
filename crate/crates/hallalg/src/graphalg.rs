//! The Connes–Kreimer Lie algebra on φ³ graphs in both presentations —
//! insertion pre-Lie `★` and subgraph-counting pre-Lie `#` — together
//! with the |Aut|-scaling map intertwining them, the Ringel–Hall Hopf
//! algebra on graphs, and the Grothendieck class map onto primitive
//! generators.
//!
//! The Hall product counts subobjects exactly as for forests:
//!
//! ```text
//! (δ_{G1} × δ_{G2})(K) = #{ selections γ of K (including ∅ and K) :
//!                           γ ≅ G1 and K/γ ≅ G2 }
//! ```
//!
//! and the coproduct splits disjoint unions, `Δ(f)(A, B) = f(A ⊔ B)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;

use crate::combo::BasisKey;
use crate::error::GraphError;
use crate::graph::sub::{
    all_selections, attach_external, contract, enumerate_subgraphs, induced_raw, insert_at_edge,
    insert_at_vertex,
};
use crate::graph::{
    aut_order, canonical_form, validate_feynman, CanonGraph, FeynmanGraph, VertexId,
};
use crate::{Coeff, GraphCombo, GraphPairCombo};

/// The Hall-algebra generator δ of a graph's isomorphism class.
pub fn delta(g: &FeynmanGraph) -> GraphCombo {
    GraphCombo::delta(canonical_form(g))
}

/// The component of `g` containing exactly the vertices `comp`.
fn component_graph(g: &FeynmanGraph, comp: &BTreeSet<VertexId>) -> FeynmanGraph {
    validate_feynman(induced_raw(g, comp)).expect("whole component is a valid graph")
}

/// All ways of grafting `guest` (3 legs) into a vertex of `host`:
/// every vertex and every leg bijection counts separately.
fn vertex_insertions(guest: &FeynmanGraph, host: &FeynmanGraph) -> Vec<FeynmanGraph> {
    let ext = guest.external_halfedges();
    let mut out = Vec::new();
    for &v in host.vertices() {
        let site = host.halfedges_at(v);
        for perm in ext.iter().permutations(ext.len()) {
            let legs: BTreeMap<_, _> = site
                .iter()
                .copied()
                .zip(perm.iter().map(|&&e| e))
                .collect();
            out.push(insert_at_vertex(host, v, guest, &legs).expect("arities match"));
        }
    }
    out
}

/// All ways of grafting `guest` (2 legs) into an internal edge of `host`.
fn edge_insertions(guest: &FeynmanGraph, host: &FeynmanGraph) -> Vec<FeynmanGraph> {
    let ext = guest.external_halfedges();
    let mut out = Vec::new();
    for (a, b) in host.internal_pairs() {
        for (e1, e2) in [(ext[0], ext[1]), (ext[1], ext[0])] {
            let legs = BTreeMap::from([(a, e1), (b, e2)]);
            out.push(insert_at_edge(host, (a, b), guest, &legs).expect("arities match"));
        }
    }
    out
}

/// All ways of joining one external leg of `guest` to one of `host`.
fn attachments(guest: &FeynmanGraph, host: &FeynmanGraph) -> Vec<FeynmanGraph> {
    let mut out = Vec::new();
    for h in host.external_halfedges() {
        for e in guest.external_halfedges() {
            if let Ok(g) = attach_external(host, h, guest, e) {
                out.push(g);
            }
        }
    }
    out
}

/// The insertion pre-Lie product `G1 ★ G2`: the sum over all insertions
/// of `G1` into `G2` — all vertices with all leg bijections when `G1`
/// has three legs, all internal edges with both orientations when it has
/// two.
pub fn prelie_star(g1: &FeynmanGraph, g2: &FeynmanGraph) -> Result<GraphCombo, GraphError> {
    if !g1.is_connected() || g1.is_empty() {
        return Err(GraphError::BadInsertion {
            reason: "the inserted graph must be connected and nonempty".to_string(),
        });
    }
    let results = match g1.external_halfedges().len() {
        3 => vertex_insertions(g1, g2),
        2 => edge_insertions(g1, g2),
        n => {
            return Err(GraphError::BadInsertion {
                reason: format!("inserted graph has {n} external legs, need 2 or 3"),
            })
        }
    };
    let mut sum = GraphCombo::zero();
    for r in results {
        sum = sum.add(&GraphCombo::delta(canonical_form(&r)));
    }
    Ok(sum)
}

/// The insertion Lie bracket `[G1, G2]_★ = G1 ★ G2 − G2 ★ G1`.
pub fn bracket_star(g1: &FeynmanGraph, g2: &FeynmanGraph) -> Result<GraphCombo, GraphError> {
    Ok(prelie_star(g1, g2)?.sub(&prelie_star(g2, g1)?))
}

/// True if the selection is of insertion type: no component exhausts a
/// whole host component, and every 2-leg component has both legs paired
/// inside the host (so it sits inside an edge rather than hanging off an
/// external leg).
fn is_insertion_type(host: &FeynmanGraph, w: &BTreeSet<VertexId>) -> bool {
    let sub = induced_raw(host, w);
    let host_comps = host.components();
    for comp in sub.components() {
        if host_comps.contains(&comp) {
            return false;
        }
        let legs: Vec<_> = comp
            .iter()
            .flat_map(|&v| sub.halfedges_at(v))
            .filter(|&h| sub.is_external(h))
            .collect();
        if legs.len() == 2 && legs.iter().any(|&h| host.partner(h).is_none()) {
            return false;
        }
    }
    true
}

/// The subgraph count `a(G1, G2; G)`: the number of insertion-type
/// selections `γ ⊂ G` with `γ ≅ G1` and `G/γ ≅ G2`.
pub fn subgraph_count_a(g1: &FeynmanGraph, g2: &FeynmanGraph, host: &FeynmanGraph) -> usize {
    let want_sub = canonical_form(g1);
    let want_quot = canonical_form(g2);
    let mut count = 0;
    for w in all_selections(host) {
        if w.is_empty() || !is_insertion_type(host, &w) {
            continue;
        }
        let piece = validate_feynman(induced_raw(host, &w)).expect("valid selection");
        if canonical_form(&piece) != want_sub {
            continue;
        }
        let (q, _) = contract(host, &w).expect("valid selection contracts");
        if canonical_form(&q) == want_quot {
            count += 1;
        }
    }
    count
}

/// The counting pre-Lie product `G1 # G2 = Σ_Γ a(G1, G2; Γ)·Γ`, computed
/// over the finite candidate set produced by `★` insertions (vertex
/// counting shows no other graph can contribute).
pub fn prelie_sharp(g1: &FeynmanGraph, g2: &FeynmanGraph) -> Result<GraphCombo, GraphError> {
    let candidates = prelie_star(g1, g2)?;
    let mut sum = GraphCombo::zero();
    for (k, _) in candidates.iter() {
        let a = subgraph_count_a(g1, g2, k.graph());
        sum.add_term(k.clone(), Coeff::from_integer(a.into()));
    }
    Ok(sum)
}

/// The counting Lie bracket `[G1, G2]_# = G1 # G2 − G2 # G1`.
pub fn bracket_sharp(g1: &FeynmanGraph, g2: &FeynmanGraph) -> Result<GraphCombo, GraphError> {
    Ok(prelie_sharp(g1, g2)?.sub(&prelie_sharp(g2, g1)?))
}

/// The scaling map `Γ ↦ |Aut(Γ)|·Γ`, extended linearly.  It intertwines
/// the two pre-Lie presentations: `aut_scale([x,y]_★) = [aut_scale(x),
/// aut_scale(y)]_#`.
pub fn aut_scale(x: &GraphCombo) -> GraphCombo {
    let mut out = GraphCombo::zero();
    for (k, c) in x.iter() {
        let aut = Coeff::from_integer(aut_order(k.graph()));
        out.add_term(k.clone(), c * aut);
    }
    out
}

/// Hall structure constant `h^K_{G1,G2}`: the number of selections of
/// `K` (including the improper `∅` and full ones) isomorphic to `G1`
/// with quotient isomorphic to `G2`.
pub fn structure_constant_h(g1: &CanonGraph, g2: &CanonGraph, k: &FeynmanGraph) -> usize {
    let mut count = 0;
    for w in all_selections(k) {
        let piece = validate_feynman(induced_raw(k, &w)).expect("valid selection");
        if &canonical_form(&piece) != g1 {
            continue;
        }
        let (q, _) = contract(k, &w).expect("valid selection contracts");
        if &canonical_form(&q) == g2 {
            count += 1;
        }
    }
    count
}

/// Candidate hosts for the Hall product: all graphs obtainable by adding
/// the components of `a` to `b` one at a time, each component either
/// disjointly, grafted into a vertex or an edge, or attached to an
/// external leg.  Every `K` with `h^K_{a,b} ≠ 0` arises this way:
/// un-contracting a selection component reverses exactly one such move.
fn hall_candidates(a: &FeynmanGraph, b: &FeynmanGraph) -> Vec<CanonGraph> {
    let mut cands: BTreeSet<CanonGraph> = BTreeSet::from([canonical_form(b)]);
    for comp in a.components() {
        let piece = component_graph(a, &comp);
        let ext = piece.external_halfedges().len();
        let mut next: BTreeSet<CanonGraph> = BTreeSet::new();
        for k in &cands {
            let host = k.graph();
            next.insert(canonical_form(&host.disjoint_union(&piece)));
            if ext == 3 {
                for r in vertex_insertions(&piece, host) {
                    next.insert(canonical_form(&r));
                }
            } else {
                for r in edge_insertions(&piece, host) {
                    next.insert(canonical_form(&r));
                }
                for r in attachments(&piece, host) {
                    next.insert(canonical_form(&r));
                }
            }
        }
        cands = next;
    }
    cands.into_iter().collect()
}

/// The Hall product on basis elements:
/// `δ_{G1} × δ_{G2} = Σ_K h^K_{G1,G2} δ_K`.
pub fn hall_product_basis(g1: &CanonGraph, g2: &CanonGraph) -> GraphCombo {
    let mut sum = GraphCombo::zero();
    for k in hall_candidates(g1.graph(), g2.graph()) {
        let h = structure_constant_h(g1, g2, k.graph());
        sum.add_term(k, Coeff::from_integer(h.into()));
    }
    sum
}

/// The Hall product, extended bilinearly.
pub fn hall_product(x: &GraphCombo, y: &GraphCombo) -> GraphCombo {
    let mut sum = GraphCombo::zero();
    for (a, ca) in x.iter() {
        for (b, cb) in y.iter() {
            sum = sum.add(&hall_product_basis(a, b).scale(&(ca * cb)));
        }
    }
    sum
}

/// The canonical connected components of a graph as a multiset.
fn component_multiset(g: &FeynmanGraph) -> Vec<(CanonGraph, usize)> {
    let mut counts: BTreeMap<CanonGraph, usize> = BTreeMap::new();
    for comp in g.components() {
        let piece = canonical_form(&component_graph(g, &comp));
        *counts.entry(piece).or_insert(0) += 1;
    }
    counts.into_iter().collect()
}

fn union_of(parts: &[(CanonGraph, usize)]) -> CanonGraph {
    let mut g = FeynmanGraph::empty();
    for (piece, m) in parts {
        for _ in 0..*m {
            g = g.disjoint_union(piece.graph());
        }
    }
    canonical_form(&g)
}

/// The Hall coproduct on a basis element: one term per ordered split of
/// the component multiset, `Δ(δ_K) = Σ_{A ⊔ B ≅ K} δ_A ⊗ δ_B`.
pub fn coproduct_basis(k: &CanonGraph) -> GraphPairCombo {
    let comps = component_multiset(k.graph());
    let mut out = GraphPairCombo::zero();
    let mut picks = vec![0usize; comps.len()];
    loop {
        let left: Vec<(CanonGraph, usize)> = comps
            .iter()
            .zip(&picks)
            .map(|((g, _), &p)| (g.clone(), p))
            .collect();
        let right: Vec<(CanonGraph, usize)> = comps
            .iter()
            .zip(&picks)
            .map(|((g, m), &p)| (g.clone(), m - p))
            .collect();
        out.add_term(
            union_of(&left),
            union_of(&right),
            Coeff::from_integer(1.into()),
        );
        let mut i = 0;
        loop {
            if i == comps.len() {
                return out;
            }
            if picks[i] < comps[i].1 {
                picks[i] += 1;
                break;
            }
            picks[i] = 0;
            i += 1;
        }
    }
}

/// The Hall coproduct, extended linearly.
pub fn coproduct(x: &GraphCombo) -> GraphPairCombo {
    let mut out = GraphPairCombo::zero();
    for (k, c) in x.iter() {
        for ((a, b), n) in coproduct_basis(k).iter() {
            out.add_term(a.clone(), b.clone(), c * n);
        }
    }
    out
}

/// The counit: the coefficient of the empty graph.
pub fn counit(x: &GraphCombo) -> Coeff {
    x.coeff(&canonical_form(&FeynmanGraph::empty()))
}

/// The antipode, by the graded recursion
/// `S(δ_K) = −δ_K − Σ S(δ_A) × δ_B` over proper splits `(A, B)` of the
/// component multiset; each proper piece has strictly fewer components.
pub fn antipode(x: &GraphCombo) -> GraphCombo {
    let mut memo: BTreeMap<CanonGraph, GraphCombo> = BTreeMap::new();
    let mut out = GraphCombo::zero();
    for (k, c) in x.iter() {
        out = out.add(&antipode_basis(k, &mut memo).scale(c));
    }
    out
}

fn antipode_basis(k: &CanonGraph, memo: &mut BTreeMap<CanonGraph, GraphCombo>) -> GraphCombo {
    if let Some(hit) = memo.get(k) {
        return hit.clone();
    }
    let empty = canonical_form(&FeynmanGraph::empty());
    if *k == empty {
        return GraphCombo::delta(empty);
    }
    let mut s = GraphCombo::delta(k.clone()).neg();
    for ((a, b), n) in coproduct_basis(k).iter() {
        if a == &empty || b == &empty {
            continue;
        }
        let term = hall_product(&antipode_basis(a, memo), &GraphCombo::delta(b.clone()));
        s = s.sub(&term.scale(n));
    }
    memo.insert(k.clone(), s.clone());
    s
}

/// An element of the Grothendieck group `ℤ[𝒫]`: a multiset of primitive
/// canonical graphs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PrimitiveClass {
    counts: BTreeMap<CanonGraph, usize>,
}

impl PrimitiveClass {
    /// The class of the empty graph.
    pub fn empty() -> Self {
        Self::default()
    }

    /// Adds `n` copies of a primitive generator.
    pub fn add(&mut self, key: CanonGraph, n: usize) {
        if n > 0 {
            *self.counts.entry(key).or_insert(0) += n;
        }
    }

    /// Merges another class into this one.
    pub fn merge(&mut self, other: &PrimitiveClass) {
        for (k, &n) in &other.counts {
            self.add(k.clone(), n);
        }
    }

    /// The generators with multiplicities, ascending by key.
    pub fn iter(&self) -> impl Iterator<Item = (&CanonGraph, usize)> {
        self.counts.iter().map(|(k, &n)| (k, n))
    }

    /// Total multiplicity.
    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }
}

impl fmt::Display for PrimitiveClass {
    /// One sorted `"multiplicity x key"` line per generator; `"0"` for
    /// the empty class.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.counts.is_empty() {
            return f.write_str("0");
        }
        let lines: Vec<String> = self
            .counts
            .iter()
            .map(|(k, n)| format!("{n} x {}", k.literal()))
            .collect();
        f.write_str(&lines.join("\n"))
    }
}

/// The class of a graph in `K(LFG) = ℤ[𝒫]`: repeatedly split off a
/// primitive subgraph and its quotient.  Loop-free primitives contribute
/// nothing: a bare vertex arises as quotient residue in one decomposition
/// order but not another, so the defining relations [K] = [γ] + [K/γ]
/// force its class to zero.  With that convention the result does not
/// depend on the choices made.
pub fn grothendieck_class(g: &FeynmanGraph) -> PrimitiveClass {
    let mut class = PrimitiveClass::empty();
    if g.is_empty() {
        return class;
    }
    let primitives = enumerate_subgraphs(g);
    if let Some(w) = primitives.first() {
        let piece = validate_feynman(induced_raw(g, w)).expect("valid selection");
        let (quot, _) = contract(g, w).expect("valid selection contracts");
        class.merge(&grothendieck_class(&piece));
        class.merge(&grothendieck_class(&quot));
    } else if g.is_connected() {
        if g.raw().loop_number() > 0 {
            class.add(canonical_form(g), 1);
        }
    } else {
        for comp in g.components() {
            class.merge(&grothendieck_class(&component_graph(g, &comp)));
        }
    }
    class
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures;
    use crate::graph::sub::is_primitive;
    use crate::{coeff, Int};

    fn canon(g: &FeynmanGraph) -> CanonGraph {
        canonical_form(g)
    }

    #[test]
    fn star_products_match_worked_examples() {
        let bub = fixtures::bubble();
        let tri = fixtures::triangle();
        let star = prelie_star(&bub, &tri).unwrap();
        let mut want = GraphCombo::zero();
        want.add_term(canon(&fixtures::bubble_in_triangle()), coeff(6));
        assert_eq!(star, want);

        let star = prelie_star(&tri, &bub).unwrap();
        let mut want = GraphCombo::zero();
        want.add_term(canon(&fixtures::diamond()), coeff(12));
        assert_eq!(star, want);
    }

    #[test]
    fn star_into_single_vertex_is_six_copies() {
        let one = fixtures::vertex_graph();
        for g in [fixtures::triangle(), fixtures::bubble_in_triangle()] {
            let star = prelie_star(&g, &one).unwrap();
            let mut want = GraphCombo::zero();
            want.add_term(canon(&g), coeff(6));
            assert_eq!(star, want, "inserting into the bare vertex");
        }
        // A two-leg guest needs an internal edge to land on, and the bare
        // vertex has none.
        assert!(prelie_star(&fixtures::bubble(), &one).unwrap().is_zero());
    }

    #[test]
    fn bracket_star_and_sharp_examples() {
        let bub = fixtures::bubble();
        let tri = fixtures::triangle();

        let b = bracket_star(&bub, &tri).unwrap();
        let mut want = GraphCombo::zero();
        want.add_term(canon(&fixtures::bubble_in_triangle()), coeff(6));
        want.add_term(canon(&fixtures::diamond()), coeff(-12));
        assert_eq!(b, want);

        let b = bracket_sharp(&bub, &tri).unwrap();
        let mut want = GraphCombo::zero();
        want.add_term(canon(&fixtures::bubble_in_triangle()), coeff(1));
        want.add_term(canon(&fixtures::diamond()), coeff(-2));
        assert_eq!(b, want);

        assert!(bracket_star(&bub, &bub).unwrap().is_zero());
    }

    #[test]
    fn subgraph_counts_match() {
        let bub = fixtures::bubble();
        let tri = fixtures::triangle();
        assert_eq!(subgraph_count_a(&bub, &tri, &fixtures::bubble_in_triangle()), 1);
        assert_eq!(subgraph_count_a(&tri, &bub, &fixtures::diamond()), 2);
        assert_eq!(subgraph_count_a(&bub, &tri, &fixtures::diamond()), 0);
    }

    #[test]
    fn aut_scale_intertwines_the_brackets() {
        let pairs = [
            (fixtures::bubble(), fixtures::triangle()),
            (fixtures::bubble(), fixtures::bubble_chain()),
            (fixtures::triangle(), fixtures::diamond()),
        ];
        for (x, y) in pairs {
            let lhs = aut_scale(&bracket_star(&x, &y).unwrap());
            let scale = Coeff::from_integer(aut_order(&x) * aut_order(&y));
            let rhs = bracket_sharp(&x, &y).unwrap().scale(&scale);
            assert_eq!(lhs, rhs, "intertwiner on {x} vs {y}");
        }
    }

    #[test]
    fn hall_product_of_two_bubbles() {
        let bub = canon(&fixtures::bubble());
        let prod = hall_product_basis(&bub, &bub);
        let chain = canon(&fixtures::bubble_chain());
        let cycle = canon(&fixtures::bubble_cycle());
        let two = canon(&fixtures::bubble().disjoint_union(&fixtures::bubble()));
        assert_eq!(prod.coeff(&chain), coeff(2));
        assert_eq!(prod.coeff(&cycle), coeff(1));
        assert_eq!(prod.coeff(&two), coeff(2));
        assert_eq!(prod.len(), 3);
    }

    #[test]
    fn hall_unit_and_counit() {
        let empty = canon(&FeynmanGraph::empty());
        let bub = delta(&fixtures::bubble());
        let unit = GraphCombo::delta(empty.clone());
        assert_eq!(hall_product(&unit, &bub), bub);
        assert_eq!(hall_product(&bub, &unit), bub);
        assert_eq!(counit(&unit), coeff(1));
        assert_eq!(counit(&bub), coeff(0));
    }

    #[test]
    fn hall_product_bubble_triangle() {
        let b = canon(&fixtures::bubble());
        let t = canon(&fixtures::triangle());
        let prod = hall_product_basis(&b, &t);
        assert_eq!(prod.coeff(&canon(&fixtures::bubble_in_triangle())), coeff(1));
        let apart = canon(&fixtures::bubble().disjoint_union(&fixtures::triangle()));
        assert_eq!(prod.coeff(&apart), coeff(1));
    }

    #[test]
    fn example_graph_hall_coefficient() {
        let g = fixtures::example_graph();
        let piece = canon(&fixtures::bubble());
        let quot = canon(&fixtures::example_quotient());
        assert_eq!(structure_constant_h(&piece, &quot, &g), 1);
    }

    #[test]
    fn coproduct_splits_components() {
        let bub = fixtures::bubble();
        let empty = canon(&FeynmanGraph::empty());
        let b = canon(&bub);
        let cop = coproduct_basis(&b);
        assert_eq!(cop.coeff(&empty, &b), coeff(1));
        assert_eq!(cop.coeff(&b, &empty), coeff(1));
        assert_eq!(cop.iter().count(), 2);

        let two = canon(&bub.disjoint_union(&bub));
        let cop = coproduct_basis(&two);
        assert_eq!(cop.coeff(&b, &b), coeff(1));
        assert_eq!(cop.iter().count(), 3);
    }

    #[test]
    fn antipode_convolution_identity() {
        let bub = fixtures::bubble();
        let tri = fixtures::triangle();
        for g in [
            bub.clone(),
            tri.clone(),
            bub.disjoint_union(&bub),
            bub.disjoint_union(&tri),
        ] {
            let k = canon(&g);
            let mut conv = GraphCombo::zero();
            for ((a, b), n) in coproduct_basis(&k).iter() {
                let term = hall_product(
                    &antipode(&GraphCombo::delta(a.clone())),
                    &GraphCombo::delta(b.clone()),
                );
                conv = conv.add(&term.scale(n));
            }
            let want = if counit(&GraphCombo::delta(k.clone())) == coeff(0) {
                GraphCombo::zero()
            } else {
                GraphCombo::delta(canon(&FeynmanGraph::empty()))
            };
            assert_eq!(conv, want, "convolution identity on {k}");
        }
    }

    #[test]
    fn grothendieck_classes() {
        let bub = fixtures::bubble();
        let tri = fixtures::triangle();
        assert!(is_primitive(&bub));
        assert!(is_primitive(&tri));
        assert!(!is_primitive(&fixtures::diamond()));

        let mut want = PrimitiveClass::empty();
        want.add(canon(&bub), 1);
        assert_eq!(grothendieck_class(&bub), want);

        let mut want = PrimitiveClass::empty();
        want.add(canon(&bub), 1);
        want.add(canon(&tri), 1);
        assert_eq!(grothendieck_class(&fixtures::bubble_in_triangle()), want);

        let mut want = PrimitiveClass::empty();
        want.add(canon(&bub), 2);
        want.add(canon(&tri), 1);
        let class = grothendieck_class(&fixtures::example_graph());
        assert_eq!(class, want);
        assert_eq!(class.total(), 3);
        assert_eq!(
            Int::from(class.iter().map(|(k, n)| k.degree() * n).sum::<usize>()),
            Int::from(fixtures::example_graph().loop_number())
        );
    }
}
