//! The category of φ³ Feynman graphs.
//!
//! A morphism `Γ1 → Γ2` is a triple `(γ1, γ2, f)` of subgraph selections
//! on source and target — each empty, full, or valid — together with an
//! isomorphism `f: Γ1/γ1 ≅ γ2` onto the induced subgraph of the target.
//! `γ1` is the kernel piece, `γ2` the image.  The identity is
//! `(∅, full, id)`, the zero morphism `(full, ∅, ∅)`.
//!
//! Composition contracts the source by everything `m2` kills, then chases
//! vertices and half-edges through both isomorphisms.  Contraction
//! preserves surviving half-edge ids, which is what makes the chase
//! well-defined; whenever the chased data fails to assemble into a
//! morphism (the killed region does not pull back to a valid selection),
//! the composite is the zero morphism, exactly as in the quotient
//! category picture.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::OracleError;
use crate::graph::sub::{all_selections, contract, induced_raw, is_valid_selection};
use crate::graph::{
    enumerate_isos, validate_feynman, FeynmanGraph, GraphIso, VertexId,
};

/// Largest graph (by vertex count) the oracle enumerates morphisms for.
pub const MAX_GRAPH_OBJECT: usize = 8;

/// A morphism of Feynman graphs.
///
/// Two morphisms are equal exactly when their selections and both maps
/// of the piece isomorphism coincide.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphMorphism {
    /// Domain graph.
    pub source: FeynmanGraph,
    /// Codomain graph.
    pub target: FeynmanGraph,
    /// Kernel selection on the source.
    pub gamma1: BTreeSet<VertexId>,
    /// Image selection on the target.
    pub gamma2: BTreeSet<VertexId>,
    /// Isomorphism `source/gamma1 ≅ induced(target, gamma2)`.
    pub f: GraphIso,
}

impl GraphMorphism {
    /// Builds and validates a morphism.
    pub fn new(
        source: FeynmanGraph,
        target: FeynmanGraph,
        gamma1: BTreeSet<VertexId>,
        gamma2: BTreeSet<VertexId>,
        f: GraphIso,
    ) -> Result<Self, OracleError> {
        let m = GraphMorphism { source, target, gamma1, gamma2, f };
        m.validate()?;
        Ok(m)
    }

    fn validate(&self) -> Result<(), OracleError> {
        let bad = |reason: &str| OracleError::BadMorphism { reason: reason.to_string() };
        if !in_selection_family(&self.source, &self.gamma1) {
            return Err(bad("the kernel set is not a subgraph selection of the source"));
        }
        if !in_selection_family(&self.target, &self.gamma2) {
            return Err(bad("the image set is not a subgraph selection of the target"));
        }
        let q = contract(&self.source, &self.gamma1)
            .map_err(|e| bad(&e.to_string()))?
            .0;
        let p = piece(&self.target, &self.gamma2);
        if !check_iso(&q, &p, &self.f) {
            return Err(bad("the map is not an isomorphism source/γ1 ≅ γ2"));
        }
        Ok(())
    }

    /// Monomorphism test: nothing is contracted away from the source.
    pub fn is_mono(&self) -> bool {
        self.gamma1.is_empty()
    }

    /// Epimorphism test: the image is the whole target.
    pub fn is_epi(&self) -> bool {
        self.gamma2 == *self.target.vertices()
    }

    fn sort_key(&self) -> (BTreeSet<VertexId>, BTreeSet<VertexId>, GraphIso) {
        (self.gamma1.clone(), self.gamma2.clone(), self.f.clone())
    }
}

/// Membership in the selection family: empty, full, or valid.
fn in_selection_family(host: &FeynmanGraph, w: &BTreeSet<VertexId>) -> bool {
    w.is_empty() || w == host.vertices() || is_valid_selection(host, w)
}

/// The induced subgraph of a family selection as a Feynman graph.
fn piece(host: &FeynmanGraph, w: &BTreeSet<VertexId>) -> FeynmanGraph {
    validate_feynman(induced_raw(host, w)).expect("family selections induce valid graphs")
}

/// Is `iso` a genuine isomorphism `a → b` of half-edge structures?
fn check_iso(a: &FeynmanGraph, b: &FeynmanGraph, iso: &GraphIso) -> bool {
    let averts: BTreeSet<VertexId> = iso.vmap.keys().copied().collect();
    let bverts: BTreeSet<VertexId> = iso.vmap.values().copied().collect();
    if averts != *a.vertices() || bverts != *b.vertices() || bverts.len() != iso.vmap.len() {
        return false;
    }
    let ahalves: BTreeSet<_> = a.halfedges().map(|(h, _)| h).collect();
    let bhalves: BTreeSet<_> = b.halfedges().map(|(h, _)| h).collect();
    let keys: BTreeSet<_> = iso.hmap.keys().copied().collect();
    let vals: BTreeSet<_> = iso.hmap.values().copied().collect();
    if keys != ahalves || vals != bhalves || vals.len() != iso.hmap.len() {
        return false;
    }
    for (h, v) in a.halfedges() {
        if b.vertex_of(iso.hmap[&h]) != Some(iso.vmap[&v]) {
            return false;
        }
        match a.partner(h) {
            Some(p) => {
                if b.partner(iso.hmap[&h]) != Some(iso.hmap[&p]) {
                    return false;
                }
            }
            None => {
                if b.partner(iso.hmap[&h]).is_some() {
                    return false;
                }
            }
        }
    }
    true
}

/// The identity morphism `(∅, full, id)`.
pub fn identity_graph(g: &FeynmanGraph) -> GraphMorphism {
    GraphMorphism {
        source: g.clone(),
        target: g.clone(),
        gamma1: BTreeSet::new(),
        gamma2: g.vertices().clone(),
        f: GraphIso::identity(g.raw()),
    }
}

/// The zero morphism `(full, ∅, ∅)` through the empty graph.
pub fn zero_graph(g1: &FeynmanGraph, g2: &FeynmanGraph) -> GraphMorphism {
    GraphMorphism {
        source: g1.clone(),
        target: g2.clone(),
        gamma1: g1.vertices().clone(),
        gamma2: BTreeSet::new(),
        f: GraphIso { vmap: BTreeMap::new(), hmap: BTreeMap::new() },
    }
}

fn guard(g: &FeynmanGraph) -> Result<(), OracleError> {
    if g.vertex_count() > MAX_GRAPH_OBJECT {
        return Err(OracleError::TooLarge { got: g.vertex_count(), bound: MAX_GRAPH_OBJECT });
    }
    Ok(())
}

/// The full Hom-set `Hom(G1, G2)`: every selection pair together with
/// every isomorphism between quotient and induced piece, in a canonical
/// deterministic order.
pub fn hom_set_graphs(
    g1: &FeynmanGraph,
    g2: &FeynmanGraph,
) -> Result<Vec<GraphMorphism>, OracleError> {
    guard(g1)?;
    guard(g2)?;
    let mut out = Vec::new();
    for w1 in all_selections(g1) {
        let q = contract(g1, &w1).expect("family selections contract").0;
        for w2 in all_selections(g2) {
            let p = piece(g2, &w2);
            for f in enumerate_isos(&q, &p) {
                out.push(GraphMorphism {
                    source: g1.clone(),
                    target: g2.clone(),
                    gamma1: w1.clone(),
                    gamma2: w2.clone(),
                    f,
                });
            }
        }
    }
    out.sort_by_key(|m| m.sort_key());
    Ok(out)
}

/// Composition `m2 ∘ m1` of `m1: Γ1 → Γ2` and `m2: Γ2 → Γ3`.
///
/// The kernel grows by the preimage of everything `m2` kills:
/// `ξ = γ1 ∪ f⁻¹(γ2 ∩ τ1)`; the surviving quotient `Γ1/ξ` maps through
/// `g ∘ f` onto an induced piece of `Γ3`.  If the chase does not close
/// up — `ξ` or the image set leaves the selection family, or a half-edge
/// lands in the contracted region — the composite is zero.
pub fn compose_graph(
    m1: &GraphMorphism,
    m2: &GraphMorphism,
) -> Result<GraphMorphism, OracleError> {
    if m1.target != m2.source {
        return Err(OracleError::MiddleMismatch);
    }
    Ok(try_compose(m1, m2).unwrap_or_else(|| zero_graph(&m1.source, &m2.target)))
}

fn try_compose(m1: &GraphMorphism, m2: &GraphMorphism) -> Option<GraphMorphism> {
    let sigma: BTreeSet<VertexId> = m1.gamma2.intersection(&m2.gamma1).copied().collect();
    let mut xi = m1.gamma1.clone();
    for &v in m1.source.vertices() {
        if !xi.contains(&v) && sigma.contains(m1.f.vmap.get(&v)?) {
            xi.insert(v);
        }
    }
    if !in_selection_family(&m1.source, &xi) {
        return None;
    }
    let (q1, _) = contract(&m1.source, &xi).ok()?;

    let mut hmap = BTreeMap::new();
    for (h, _) in q1.halfedges() {
        let mid = m1.f.hmap.get(&h)?;
        hmap.insert(h, *m2.f.hmap.get(mid)?);
    }
    let mut vmap = BTreeMap::new();
    for &x in q1.vertices() {
        let far = if m1.source.vertices().contains(&x) {
            *m2.f.vmap.get(m1.f.vmap.get(&x)?)?
        } else {
            // Fresh vertex from contracting a ξ-component: it carries its
            // legs, whose images already locate the far vertex.
            let leg = q1.halfedges_at(x).into_iter().next()?;
            m2.target.vertex_of(*hmap.get(&leg)?)?
        };
        vmap.insert(x, far);
    }

    let rho: BTreeSet<VertexId> = vmap.values().copied().collect();
    if !in_selection_family(&m2.target, &rho) {
        return None;
    }
    let iso = GraphIso { vmap, hmap };
    if !check_iso(&q1, &piece(&m2.target, &rho), &iso) {
        return None;
    }
    Some(GraphMorphism {
        source: m1.source.clone(),
        target: m2.target.clone(),
        gamma1: xi,
        gamma2: rho,
        f: iso,
    })
}

/// The kernel `(∅, γ1, id): γ1 → Γ1` of a morphism.
pub fn kernel_graph(m: &GraphMorphism) -> GraphMorphism {
    let k = piece(&m.source, &m.gamma1);
    GraphMorphism {
        gamma1: BTreeSet::new(),
        gamma2: m.gamma1.clone(),
        f: GraphIso::identity(k.raw()),
        source: k,
        target: m.source.clone(),
    }
}

/// The cokernel `(γ2, full, id): Γ2 → Γ2/γ2` of a morphism.
pub fn cokernel_graph(m: &GraphMorphism) -> GraphMorphism {
    let q = contract(&m.target, &m.gamma2)
        .expect("family selections contract")
        .0;
    GraphMorphism {
        gamma1: m.gamma2.clone(),
        gamma2: q.vertices().clone(),
        f: GraphIso::identity(q.raw()),
        source: m.target.clone(),
        target: q,
    }
}

/// The number `g^K_{G1,G2}` of short exact sequences
/// `∅ → G1 → K → G2 → ∅`: pairs of a mono and an epi whose image and
/// kernel selections agree inside `K`.
pub fn count_short_exact_graphs(
    g1: &FeynmanGraph,
    g2: &FeynmanGraph,
    k: &FeynmanGraph,
) -> Result<usize, OracleError> {
    let monos: Vec<GraphMorphism> = hom_set_graphs(g1, k)?
        .into_iter()
        .filter(GraphMorphism::is_mono)
        .collect();
    let epis: Vec<GraphMorphism> = hom_set_graphs(k, g2)?
        .into_iter()
        .filter(GraphMorphism::is_epi)
        .collect();
    let mut count = 0;
    for m in &monos {
        for e in &epis {
            if m.gamma2 == e.gamma1 {
                count += 1;
            }
        }
    }
    Ok(count)
}
