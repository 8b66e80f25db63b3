//! Hand-built φ³ graphs used across tests, docs, and the CLI's built-in
//! names.
//!
//! |Aut| values quoted below count vertex–half-edge automorphism pairs as
//! computed by [`super::aut_order`].

use std::collections::BTreeSet;

use super::{validate_feynman, FeynmanGraph, HalfEdgeGraph, HalfEdgeId, VertexId};

fn assemble(
    vertices: &[VertexId],
    halves: &[(HalfEdgeId, VertexId)],
    pairs: &[(HalfEdgeId, HalfEdgeId)],
) -> FeynmanGraph {
    let mut g = HalfEdgeGraph::new();
    for &v in vertices {
        g.add_vertex(v);
    }
    for &(h, v) in halves {
        g.add_halfedge(h, v);
    }
    for &(a, b) in pairs {
        g.pair(a, b);
    }
    validate_feynman(g).expect("fixture is a valid Feynman graph")
}

/// The bubble: two vertices joined by a double edge, one external leg on
/// each side.  One loop; |Aut| = 4.
pub fn bubble() -> FeynmanGraph {
    assemble(
        &[0, 1],
        &[(0, 0), (1, 0), (2, 0), (3, 1), (4, 1), (5, 1)],
        &[(1, 3), (2, 4)],
    )
}

/// The triangle: a 3-cycle with one external leg per vertex.  One loop;
/// |Aut| = 6.
pub fn triangle() -> FeynmanGraph {
    assemble(
        &[0, 1, 2],
        &[
            (0, 0),
            (1, 0),
            (2, 0),
            (3, 1),
            (4, 1),
            (5, 1),
            (6, 2),
            (7, 2),
            (8, 2),
        ],
        &[(1, 4), (5, 7), (8, 2)],
    )
}

/// A single trivalent vertex with three external legs: the only loop-free
/// connected graph.  |Aut| = 6.
pub fn vertex_graph() -> FeynmanGraph {
    assemble(&[0], &[(0, 0), (1, 0), (2, 0)], &[])
}

/// The tadpole on a bridge: a self-loop vertex tied to a vertex carrying
/// two external legs.  One loop; |Aut| = 4.
pub fn lollipop() -> FeynmanGraph {
    assemble(
        &[0, 1],
        &[(0, 0), (1, 0), (2, 0), (3, 1), (4, 1), (5, 1)],
        &[(0, 1), (2, 3)],
    )
}

/// A bubble grown inside one edge of a triangle: vertices `a=0, u=1, v=2,
/// b=3, c=4` with edges a–u, a double edge u=v, v–b, b–c, c–a, and
/// external legs at a, b, c.  Two loops; |Aut| = 4.
pub fn bubble_in_triangle() -> FeynmanGraph {
    assemble(
        &[0, 1, 2, 3, 4],
        &[
            (0, 0),
            (1, 0),
            (2, 0),
            (3, 1),
            (4, 1),
            (5, 1),
            (6, 2),
            (7, 2),
            (8, 2),
            (9, 3),
            (10, 3),
            (11, 3),
            (12, 4),
            (13, 4),
            (14, 4),
        ],
        &[(1, 3), (4, 6), (5, 7), (8, 9), (10, 12), (13, 2)],
    )
}

/// The diamond: a triangle `t1=1, t2=2, t3=3` with an extra vertex `v=0`
/// joined to t1 and t2 (K₄ minus one edge), external legs at v and t3.
/// Two loops; |Aut| = 4.
pub fn diamond() -> FeynmanGraph {
    assemble(
        &[0, 1, 2, 3],
        &[
            (0, 0),
            (1, 0),
            (2, 0),
            (3, 1),
            (4, 1),
            (5, 1),
            (6, 2),
            (7, 2),
            (8, 2),
            (9, 3),
            (10, 3),
            (11, 3),
        ],
        &[(1, 3), (2, 6), (4, 7), (5, 9), (8, 10)],
    )
}

/// Two bubbles in series joined by a bridge, external legs at the far
/// ends.  Two loops; |Aut| = 8.
pub fn bubble_chain() -> FeynmanGraph {
    assemble(
        &[0, 1, 2, 3],
        &[
            (0, 0),
            (1, 0),
            (2, 0),
            (3, 1),
            (4, 1),
            (5, 1),
            (6, 2),
            (7, 2),
            (8, 2),
            (9, 3),
            (10, 3),
            (11, 3),
        ],
        &[(1, 3), (2, 4), (5, 6), (7, 9), (8, 10)],
    )
}

/// A bubble grown inside one edge of a bubble: the 4-cycle `u,x,y,v` with
/// the x–y edge doubled and external legs at u and v.  Two loops;
/// |Aut| = 4.
pub fn bubble_cycle() -> FeynmanGraph {
    assemble(
        &[0, 1, 2, 3],
        &[
            (0, 0),
            (1, 0),
            (2, 0),
            (3, 1),
            (4, 1),
            (5, 1),
            (6, 2),
            (7, 2),
            (8, 2),
            (9, 3),
            (10, 3),
            (11, 3),
        ],
        &[(1, 3), (2, 9), (4, 6), (5, 7), (8, 10)],
    )
}

/// A triangle grown at one corner of a triangle: vertices a=0, b=1 of the
/// host triangle, corners x=2, y=3, z=4 of the guest, edges a–b, a–x,
/// b–y and the guest 3-cycle, external legs at a, b, z.  Two loops;
/// |Aut| = 4.
pub fn double_triangle() -> FeynmanGraph {
    assemble(
        &[0, 1, 2, 3, 4],
        &[
            (0, 0),
            (1, 0),
            (2, 0),
            (3, 1),
            (4, 1),
            (5, 1),
            (6, 2),
            (7, 2),
            (8, 2),
            (9, 3),
            (10, 3),
            (11, 3),
            (12, 4),
            (13, 4),
            (14, 4),
        ],
        &[(1, 3), (2, 6), (4, 9), (7, 10), (8, 12), (11, 13)],
    )
}

/// The three-loop propagator graph used as the worked contraction
/// example: a bubble on vertices 3, 4 nested inside a two-loop box on
/// vertices 1, 2, 5, 6.
///
/// Vertices: externals sit at 1 and 2; vertex 5 joins 1, 2, 3 and
/// vertex 6 joins 1, 2, 4; vertices 3 and 4 share a double edge.
pub fn example_graph() -> FeynmanGraph {
    assemble(
        &[1, 2, 3, 4, 5, 6],
        &[
            (0, 1),
            (1, 2),
            (2, 6),
            (3, 1),
            (4, 6),
            (5, 2),
            (6, 5),
            (7, 1),
            (8, 5),
            (9, 2),
            (10, 5),
            (11, 3),
            (12, 6),
            (13, 4),
            (14, 3),
            (15, 4),
            (16, 3),
            (17, 4),
        ],
        &[(2, 3), (4, 5), (6, 7), (8, 9), (10, 11), (12, 13), (14, 15), (16, 17)],
    )
}

/// The bubble subgraph `{3, 4}` of [`example_graph`]: its only valid
/// proper subgraph selection.
pub fn example_selection() -> BTreeSet<VertexId> {
    BTreeSet::from([3, 4])
}

/// The quotient of [`example_graph`] by [`example_selection`]: a two-loop
/// box on vertices 1, 2, 5, 6 where the erased bubble's outer legs have
/// joined into a direct 5–6 edge.
pub fn example_quotient() -> FeynmanGraph {
    assemble(
        &[1, 2, 5, 6],
        &[
            (0, 1),
            (1, 2),
            (2, 6),
            (3, 1),
            (4, 6),
            (5, 2),
            (6, 5),
            (7, 1),
            (8, 5),
            (9, 2),
            (10, 5),
            (12, 6),
        ],
        &[(2, 3), (4, 5), (6, 7), (8, 9), (10, 12)],
    )
}
