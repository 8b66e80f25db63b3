//! Subgraph selections, contraction, and insertion for φ³ graphs.
//!
//! A *subgraph selection* of a host graph is a vertex subset; the
//! selected subgraph is the induced one (all half-edges at selected
//! vertices, pairings with both ends selected, the rest becoming external
//! legs).  A selection is *valid* when every induced component has 2 or 3
//! external legs and at least one loop.  Valid selections are exactly the
//! subobjects used by the Hall-algebra and category layers
//! ([`proper_selections`], [`all_selections`]); [`enumerate_subgraphs`]
//! returns the *primitive* ones, those containing no smaller valid
//! selection — the irreducible pieces that generate everything under
//! insertion.
//!
//! Contraction `G/γ` erases each component of a valid selection: a
//! component that exhausts a whole component of `G` disappears, a 3-leg
//! component collapses to a fresh trivalent vertex inheriting its legs,
//! and a 2-leg component is excised with its two outer attachment points
//! joined into one edge.  Insertion is the opposite move: grafting a
//! 3-leg graph into a vertex or a 2-leg graph into an internal edge.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::GraphError;
use crate::graph::{
    validate_feynman, FeynmanGraph, HalfEdgeGraph, HalfEdgeId, VertexId,
};

/// The subgraph induced by a vertex subset, as raw half-edge data.
///
/// Every half-edge at a selected vertex is kept; pairings survive only
/// when both ends are selected.
pub fn induced_raw(host: &FeynmanGraph, w: &BTreeSet<VertexId>) -> HalfEdgeGraph {
    let mut g = HalfEdgeGraph::new();
    for &v in w {
        g.add_vertex(v);
    }
    for (h, v) in host.halfedges() {
        if w.contains(&v) {
            g.add_halfedge(h, v);
        }
    }
    for (a, b) in host.internal_pairs() {
        let va = host.vertex_of(a).expect("incident");
        let vb = host.vertex_of(b).expect("incident");
        if w.contains(&va) && w.contains(&vb) {
            g.pair(a, b);
        }
    }
    g
}

/// The induced subgraph of a valid selection, as a Feynman graph.
pub fn induced(host: &FeynmanGraph, w: &BTreeSet<VertexId>) -> Result<FeynmanGraph, GraphError> {
    validate_selection(host, w)?;
    Ok(validate_feynman(induced_raw(host, w)).expect("validated selection"))
}

/// Checks that a vertex subset is a valid subgraph selection of the
/// host: every induced component has 2 or 3 external legs and first
/// Betti number ≥ 1.
pub fn validate_selection(host: &FeynmanGraph, w: &BTreeSet<VertexId>) -> Result<(), GraphError> {
    check_selection(host, w, false)
}

/// Selection check with an optional exemption for components that
/// exhaust a whole host component.  Contraction erases those outright,
/// so the improper full selection contracts on any host — even one with
/// loopless components — while proper pieces must satisfy the literal
/// 2/3-leg and loop requirements.
fn check_selection(
    host: &FeynmanGraph,
    w: &BTreeSet<VertexId>,
    exempt_whole_components: bool,
) -> Result<(), GraphError> {
    for &v in w {
        if !host.vertices().contains(&v) {
            return Err(GraphError::BadSelection {
                reason: format!("vertex {v} is not in the host graph"),
            });
        }
    }
    let sub = induced_raw(host, w);
    let host_comps = host.components();
    for comp in sub.components() {
        if exempt_whole_components && host_comps.contains(&comp) {
            continue;
        }
        let mut externals = 0usize;
        let mut internal_half = 0usize;
        for &v in &comp {
            for h in sub.halfedges_at(v) {
                if sub.is_external(h) {
                    externals += 1;
                } else {
                    internal_half += 1;
                }
            }
        }
        if externals != 2 && externals != 3 {
            return Err(GraphError::BadSelection {
                reason: format!(
                    "component containing vertex {} has {externals} external legs",
                    comp.iter().next().expect("nonempty")
                ),
            });
        }
        // Per-component Betti number: edges − vertices + 1.
        let loops = (internal_half / 2 + 1).saturating_sub(comp.len());
        if loops == 0 {
            return Err(GraphError::BadSelection {
                reason: format!(
                    "component containing vertex {} has no loop",
                    comp.iter().next().expect("nonempty")
                ),
            });
        }
    }
    Ok(())
}

/// True if the vertex subset is a valid selection.
pub fn is_valid_selection(host: &FeynmanGraph, w: &BTreeSet<VertexId>) -> bool {
    validate_selection(host, w).is_ok()
}

/// All proper, nonempty valid selections of the host, ascending as sets.
/// These are the subobjects the Hall product and the category oracle sum
/// over (with `∅` and the full set handled as improper terms).
pub fn proper_selections(host: &FeynmanGraph) -> Vec<BTreeSet<VertexId>> {
    let verts: Vec<VertexId> = host.vertices().iter().copied().collect();
    let n = verts.len();
    let mut out = Vec::new();
    for mask in 1u64..((1u64 << n) - 1).max(1) {
        let w: BTreeSet<VertexId> = (0..n)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| verts[i])
            .collect();
        if is_valid_selection(host, &w) {
            out.push(w);
        }
    }
    out.sort();
    out
}

/// Valid selections including the improper ones `∅` and the full vertex
/// set, ascending.
pub fn all_selections(host: &FeynmanGraph) -> Vec<BTreeSet<VertexId>> {
    let mut out = vec![BTreeSet::new()];
    out.extend(proper_selections(host));
    if !host.is_empty() {
        out.push(host.vertices().clone());
    }
    out.sort();
    out.dedup();
    out
}

/// The proper *primitive* selections of the host: valid selections
/// containing no smaller valid selection.  A graph is primitive exactly
/// when this set is empty, and repeatedly contracting entries of this
/// set decomposes any graph into its primitive constituents.
pub fn enumerate_subgraphs(host: &FeynmanGraph) -> Vec<BTreeSet<VertexId>> {
    let proper = proper_selections(host);
    proper
        .iter()
        .filter(|w| {
            !proper
                .iter()
                .any(|v| v.len() < w.len() && v.is_subset(w))
        })
        .cloned()
        .collect()
}

/// True when the graph contains no proper subgraph, i.e. it is a
/// primitive generator of the Grothendieck group.
pub fn is_primitive(host: &FeynmanGraph) -> bool {
    enumerate_subgraphs(host).is_empty()
}

/// Contraction `G/γ` of a valid selection, together with the vertex fate
/// map: survivor ↦ itself, member of a collapsed 3-leg component ↦ the
/// fresh vertex, member of an erased component ↦ `None`.
///
/// Surviving half-edges keep their ids; collapsed components' external
/// legs move to the fresh vertex unchanged, so the quotient introduces no
/// new half-edge ids.
pub fn contract(
    host: &FeynmanGraph,
    w: &BTreeSet<VertexId>,
) -> Result<(FeynmanGraph, BTreeMap<VertexId, Option<VertexId>>), GraphError> {
    check_selection(host, w, true)?;
    let sub = induced_raw(host, w);
    let host_comps = host.components();
    let mut g: HalfEdgeGraph = host.raw().clone();
    let mut fate: BTreeMap<VertexId, Option<VertexId>> = host
        .vertices()
        .iter()
        .map(|&v| (v, Some(v)))
        .collect();
    let mut fresh = host.vertices().iter().max().map_or(0, |&m| m + 1);

    for comp in sub.components() {
        let legs: Vec<HalfEdgeId> = comp
            .iter()
            .flat_map(|&v| sub.halfedges_at(v))
            .filter(|&h| sub.is_external(h))
            .collect();
        let whole_host_component = host_comps
            .iter()
            .any(|hc| *hc == comp);
        if whole_host_component {
            erase_component(&mut g, &comp, &legs, &mut fate)?;
        } else if legs.len() == 3 {
            // Collapse to a fresh trivalent vertex carrying the legs.
            let v_new = fresh;
            fresh += 1;
            g.add_vertex(v_new);
            for &v in &comp {
                for h in g.halfedges_at(v) {
                    if legs.contains(&h) {
                        g.incidence.insert(h, v_new);
                    } else {
                        g.unpair(h);
                        g.incidence.remove(&h);
                    }
                }
                g.vertices.remove(&v);
                fate.insert(v, Some(v_new));
            }
        } else {
            erase_component(&mut g, &comp, &legs, &mut fate)?;
        }
    }
    Ok((validate_feynman(g)?, fate))
}

/// Removes a component, rejoining the outside partners of its external
/// legs (two legs yield one repaired edge or external; a whole host
/// component has nothing to repair).
fn erase_component(
    g: &mut HalfEdgeGraph,
    comp: &BTreeSet<VertexId>,
    legs: &[HalfEdgeId],
    fate: &mut BTreeMap<VertexId, Option<VertexId>>,
) -> Result<(), GraphError> {
    let partners: Vec<Option<HalfEdgeId>> = legs.iter().map(|&h| g.partner(h)).collect();
    if let [Some(a), Some(b)] = partners.as_slice() {
        if legs.contains(a) || legs.contains(b) {
            return Err(GraphError::VertexlessEdge);
        }
    }
    for &v in comp.iter() {
        for h in g.halfedges_at(v) {
            g.unpair(h);
            g.incidence.remove(&h);
        }
        g.vertices.remove(&v);
        fate.insert(v, None);
    }
    if let [Some(a), Some(b)] = partners.as_slice() {
        g.pair(*a, *b);
    }
    Ok(())
}

/// The quotient graph `G/γ` alone.
pub fn quotient(host: &FeynmanGraph, w: &BTreeSet<VertexId>) -> Result<FeynmanGraph, GraphError> {
    Ok(contract(host, w)?.0)
}

/// Shifts a graph's ids above the host's, returning the shifted copy and
/// the shift amounts `(vshift, hshift)`.
fn shifted_copy(host: &FeynmanGraph, guest: &FeynmanGraph) -> (HalfEdgeGraph, VertexId, HalfEdgeId) {
    let vshift = host.vertices().iter().max().map_or(0, |&m| m + 1);
    let hshift = host
        .halfedges()
        .map(|(h, _)| h)
        .max()
        .map_or(0, |m| m + 1);
    let mut g = HalfEdgeGraph::new();
    for &v in guest.vertices() {
        g.add_vertex(v + vshift);
    }
    for (h, v) in guest.halfedges() {
        g.add_halfedge(h + hshift, v + vshift);
    }
    for (a, b) in guest.internal_pairs() {
        g.pair(a + hshift, b + hshift);
    }
    (g, vshift, hshift)
}

/// Grafts a 3-leg guest into a vertex of the host.  `legs` matches each
/// half-edge of the host vertex to a guest external leg (guest ids): the
/// host half-edge disappears and its pairing (or external status)
/// transfers to that leg.
pub fn insert_at_vertex(
    host: &FeynmanGraph,
    at: VertexId,
    guest: &FeynmanGraph,
    legs: &BTreeMap<HalfEdgeId, HalfEdgeId>,
) -> Result<FeynmanGraph, GraphError> {
    if !host.vertices().contains(&at) {
        return Err(GraphError::BadInsertion {
            reason: format!("host has no vertex {at}"),
        });
    }
    let host_halves = host.halfedges_at(at);
    let guest_ext = guest.external_halfedges();
    if guest_ext.len() != 3 {
        return Err(GraphError::BadInsertion {
            reason: format!("guest has {} external legs, vertex grafting needs 3", guest_ext.len()),
        });
    }
    check_leg_map(legs, &host_halves, &guest_ext)?;
    let (shifted, _, hshift) = shifted_copy(host, guest);
    let mut g = host.raw().clone();
    for &v in shifted.vertices() {
        g.add_vertex(v);
    }
    for (h, v) in shifted.halfedges() {
        g.add_halfedge(h, v);
    }
    for (a, b) in shifted.internal_pairs() {
        g.pair(a, b);
    }
    for &h in &host_halves {
        let partner = g.partner(h);
        let leg = legs[&h] + hshift;
        g.unpair(h);
        g.incidence.remove(&h);
        if let Some(p) = partner {
            g.pair(p, leg);
        }
    }
    g.vertices.remove(&at);
    validate_feynman(g)
}

/// Grafts a 2-leg guest into an internal edge `(a, b)` of the host.
/// `legs` matches each of the two host half-edges to a guest external
/// leg; the edge is cut and each side rejoined through the guest.
pub fn insert_at_edge(
    host: &FeynmanGraph,
    edge: (HalfEdgeId, HalfEdgeId),
    guest: &FeynmanGraph,
    legs: &BTreeMap<HalfEdgeId, HalfEdgeId>,
) -> Result<FeynmanGraph, GraphError> {
    let (a, b) = edge;
    if host.partner(a) != Some(b) {
        return Err(GraphError::BadInsertion {
            reason: format!("half-edges {a} and {b} are not a host edge"),
        });
    }
    let guest_ext = guest.external_halfedges();
    if guest_ext.len() != 2 {
        return Err(GraphError::BadInsertion {
            reason: format!("guest has {} external legs, edge grafting needs 2", guest_ext.len()),
        });
    }
    check_leg_map(legs, &[a, b], &guest_ext)?;
    let (shifted, _, hshift) = shifted_copy(host, guest);
    let mut g = host.raw().clone();
    for &v in shifted.vertices() {
        g.add_vertex(v);
    }
    for (h, v) in shifted.halfedges() {
        g.add_halfedge(h, v);
    }
    for (x, y) in shifted.internal_pairs() {
        g.pair(x, y);
    }
    g.unpair(a);
    g.pair(a, legs[&a] + hshift);
    g.pair(b, legs[&b] + hshift);
    validate_feynman(g)
}

/// Joins one external leg of the host with one of the guest into an
/// internal edge of the disjoint union.
pub fn attach_external(
    host: &FeynmanGraph,
    host_leg: HalfEdgeId,
    guest: &FeynmanGraph,
    guest_leg: HalfEdgeId,
) -> Result<FeynmanGraph, GraphError> {
    if !host.is_external(host_leg) {
        return Err(GraphError::BadInsertion {
            reason: format!("host half-edge {host_leg} is not external"),
        });
    }
    if !guest.is_external(guest_leg) {
        return Err(GraphError::BadInsertion {
            reason: format!("guest half-edge {guest_leg} is not external"),
        });
    }
    let (shifted, _, hshift) = shifted_copy(host, guest);
    let mut g = host.raw().clone();
    for &v in shifted.vertices() {
        g.add_vertex(v);
    }
    for (h, v) in shifted.halfedges() {
        g.add_halfedge(h, v);
    }
    for (x, y) in shifted.internal_pairs() {
        g.pair(x, y);
    }
    g.pair(host_leg, guest_leg + hshift);
    validate_feynman(g)
}

fn check_leg_map(
    legs: &BTreeMap<HalfEdgeId, HalfEdgeId>,
    host_halves: &[HalfEdgeId],
    guest_ext: &[HalfEdgeId],
) -> Result<(), GraphError> {
    let dom: BTreeSet<HalfEdgeId> = legs.keys().copied().collect();
    let img: BTreeSet<HalfEdgeId> = legs.values().copied().collect();
    let want_dom: BTreeSet<HalfEdgeId> = host_halves.iter().copied().collect();
    let want_img: BTreeSet<HalfEdgeId> = guest_ext.iter().copied().collect();
    if dom != want_dom || img != want_img {
        return Err(GraphError::BadInsertion {
            reason: "leg matching is not a bijection between the site and the guest legs"
                .to_string(),
        });
    }
    Ok(())
}
