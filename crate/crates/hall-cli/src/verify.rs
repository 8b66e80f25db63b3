//! Batch verification suites behind `hall verify`.
//!
//! Every suite re-derives an algebraic law from scratch over a bounded,
//! exhaustively enumerated family and reports one `ok:` line per law.  A
//! violated law aborts with the smallest counterexample encountered, which
//! the caller turns into exit code 1.

use std::collections::BTreeMap;

use hallalg::combo::{render_coeff, BasisKey};
use hallalg::forest::labeled::LabeledForest;
use hallalg::forest::{enumerate_forests, enumerate_trees, Forest, RootedTree};
use hallalg::graph::fixtures;
use hallalg::graph::{
    aut_order, canonical_form, enumerate_feynman_graphs, CanonGraph, FeynmanGraph,
};
use hallalg::category::forest::count_short_exact;
use hallalg::category::graph::count_short_exact_graphs;
use hallalg::error::GraphError;
use hallalg::graphalg;
use hallalg::treealg;
use hallalg::{coeff, Coeff, ForestCombo, GraphCombo};

use crate::Failure;

fn fail(msg: String) -> Failure {
    Failure::Verify(msg)
}

/// All forests with at most `n` vertices, including the empty forest.
fn forests_up_to(n: usize) -> Vec<Forest> {
    let mut out = vec![Forest::empty()];
    for k in 1..=n {
        out.extend(enumerate_forests(k));
    }
    out
}

/// All rooted trees with at most `n` vertices.
fn trees_up_to(n: usize) -> Vec<RootedTree> {
    let mut out = Vec::new();
    for k in 1..=n {
        out.extend(enumerate_trees(k));
    }
    out
}

// ---------------------------------------------------------------------------
// Linear extensions of the basis-level operations.
// ---------------------------------------------------------------------------

fn as_tree(f: &Forest) -> &RootedTree {
    match f.trees() {
        [t] => t,
        _ => panic!("pre-Lie support must be a single tree"),
    }
}

/// Bilinear extension of tree grafting to combinations whose supports are
/// single trees.
fn star_trees(x: &ForestCombo, y: &ForestCombo) -> ForestCombo {
    let mut out = ForestCombo::zero();
    for (a, ca) in x.iter() {
        for (b, cb) in y.iter() {
            out = out.add(&treealg::prelie_tree(as_tree(a), as_tree(b)).scale(&(ca * cb)));
        }
    }
    out
}

type GraphOp = fn(&FeynmanGraph, &FeynmanGraph) -> Result<GraphCombo, GraphError>;

/// Bilinear extension of a connected-graph operation to combinations.
fn ext_graphs(x: &GraphCombo, y: &GraphCombo, op: GraphOp) -> Result<GraphCombo, Failure> {
    let mut out = GraphCombo::zero();
    for (a, ca) in x.iter() {
        for (b, cb) in y.iter() {
            let term = op(a.graph(), b.graph())
                .map_err(|e| fail(format!("graph operation failed on a support pair: {e}")))?;
            out = out.add(&term.scale(&(ca * cb)));
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Coproduct triple expansions.
// ---------------------------------------------------------------------------

type TripleMap<K> = BTreeMap<(K, K, K), Coeff>;

/// `(Δ ⊗ id)Δ` or `(id ⊗ Δ)Δ` of a single forest, as a function on triples.
fn triple_forest(f: &Forest, expand_left: bool) -> TripleMap<Forest> {
    let mut out = TripleMap::new();
    for ((a, b), c) in treealg::coproduct(&ForestCombo::delta(f.clone())).iter() {
        let (again, keep) = if expand_left { (a, b) } else { (b, a) };
        for ((x, y), c2) in treealg::coproduct(&ForestCombo::delta(again.clone())).iter() {
            let key = if expand_left {
                (x.clone(), y.clone(), keep.clone())
            } else {
                (keep.clone(), x.clone(), y.clone())
            };
            *out.entry(key).or_insert_with(|| coeff(0)) += c * c2;
        }
    }
    out.retain(|_, v| *v != coeff(0));
    out
}

/// Same expansion for a single graph basis key.
fn triple_graph(g: &CanonGraph, expand_left: bool) -> TripleMap<CanonGraph> {
    let mut out = TripleMap::new();
    for ((a, b), c) in graphalg::coproduct_basis(g).iter() {
        let (again, keep) = if expand_left { (a, b) } else { (b, a) };
        for ((x, y), c2) in graphalg::coproduct_basis(again).iter() {
            let key = if expand_left {
                (x.clone(), y.clone(), keep.clone())
            } else {
                (keep.clone(), x.clone(), y.clone())
            };
            *out.entry(key).or_insert_with(|| coeff(0)) += c * c2;
        }
    }
    out.retain(|_, v| *v != coeff(0));
    out
}

// ---------------------------------------------------------------------------
// Forest Hopf suite.
// ---------------------------------------------------------------------------

/// Hopf-algebra laws for forests with at most `n` vertices.
pub fn hopf_trees(n: usize) -> Result<Vec<String>, Failure> {
    let pool = forests_up_to(n);
    let mut lines = Vec::new();

    let unit = ForestCombo::delta(Forest::empty());
    let mut cases = 0;
    for f in &pool {
        let x = ForestCombo::delta(f.clone());
        if treealg::hall_product(&unit, &x) != x || treealg::hall_product(&x, &unit) != x {
            return Err(fail(format!("unit law fails on {}", f.literal())));
        }
        cases += 1;
    }
    lines.push(format!("ok: unit laws ({cases} forests)"));

    let mut cases = 0;
    for a in &pool {
        for b in &pool {
            for c in &pool {
                if a.vertex_count() + b.vertex_count() + c.vertex_count() > n {
                    continue;
                }
                let ab = treealg::hall_product_basis(a, b);
                let bc = treealg::hall_product_basis(b, c);
                let left = treealg::hall_product(&ab, &ForestCombo::delta(c.clone()));
                let right = treealg::hall_product(&ForestCombo::delta(a.clone()), &bc);
                if left != right {
                    return Err(fail(format!(
                        "associativity fails on ({}, {}, {})",
                        a.literal(),
                        b.literal(),
                        c.literal()
                    )));
                }
                cases += 1;
            }
        }
    }
    lines.push(format!("ok: associativity ({cases} triples, total size <= {n})"));

    let mut cases = 0;
    for f in &pool {
        if triple_forest(f, true) != triple_forest(f, false) {
            return Err(fail(format!("coassociativity fails on {}", f.literal())));
        }
        cases += 1;
    }
    lines.push(format!("ok: coassociativity ({cases} forests)"));

    let mut cases = 0;
    for a in &pool {
        for b in &pool {
            if a.vertex_count() + b.vertex_count() > n {
                continue;
            }
            let prod = treealg::hall_product_basis(a, b);
            let lhs = treealg::coproduct(&prod);
            let rhs = treealg::coproduct(&ForestCombo::delta(a.clone())).convolve(
                &treealg::coproduct(&ForestCombo::delta(b.clone())),
                treealg::hall_product_basis,
            );
            if lhs != rhs {
                return Err(fail(format!(
                    "product/coproduct compatibility fails on ({}, {})",
                    a.literal(),
                    b.literal()
                )));
            }
            cases += 1;
        }
    }
    lines.push(format!("ok: bialgebra compatibility ({cases} pairs)"));

    let mut cases = 0;
    for f in &pool {
        let x = ForestCombo::delta(f.clone());
        let cop = treealg::coproduct(&x);
        let mut left = ForestCombo::zero();
        let mut right = ForestCombo::zero();
        for ((a, b), c) in cop.iter() {
            left.add_term(b.clone(), c * &treealg::counit(&ForestCombo::delta(a.clone())));
            right.add_term(a.clone(), c * &treealg::counit(&ForestCombo::delta(b.clone())));
        }
        if left != x || right != x {
            return Err(fail(format!("counit law fails on {}", f.literal())));
        }
        cases += 1;
    }
    lines.push(format!("ok: counit laws ({cases} forests)"));

    let mut cases = 0;
    for f in &pool {
        let expected = if f.is_empty() {
            ForestCombo::delta(Forest::empty())
        } else {
            ForestCombo::zero()
        };
        let cop = treealg::coproduct(&ForestCombo::delta(f.clone()));
        let mut left = ForestCombo::zero();
        let mut right = ForestCombo::zero();
        for ((a, b), c) in cop.iter() {
            let sa = treealg::antipode(&ForestCombo::delta(a.clone()));
            let sb = treealg::antipode(&ForestCombo::delta(b.clone()));
            left = left.add(
                &treealg::hall_product(&sa, &ForestCombo::delta(b.clone())).scale(c),
            );
            right = right.add(
                &treealg::hall_product(&ForestCombo::delta(a.clone()), &sb).scale(c),
            );
        }
        if left != expected || right != expected {
            return Err(fail(format!("antipode identity fails on {}", f.literal())));
        }
        cases += 1;
    }
    lines.push(format!("ok: antipode identities ({cases} forests)"));

    Ok(lines)
}

// ---------------------------------------------------------------------------
// Graph Hopf suite.
// ---------------------------------------------------------------------------

/// True when every connected component of `g` has exactly two external legs.
fn all_components_two_leg(g: &FeynmanGraph) -> bool {
    g.raw().components().iter().all(|comp| {
        g.raw()
            .external_halfedges()
            .iter()
            .filter(|&&h| comp.contains(&g.raw().vertex_of(h).expect("incident")))
            .count()
            == 2
    })
}

/// The test family: every graph (connected or a two-component union) with
/// loop number between 1 and `max_loops`, plus the empty graph.  Connected
/// pieces are enumerated up to five vertices, which is exhaustive within
/// two loops; beyond that the family keeps growing through unions only.
fn graph_family(max_loops: usize) -> Vec<CanonGraph> {
    let vertex_bound = (2 * max_loops + 1).min(5);
    let connected: Vec<CanonGraph> = enumerate_feynman_graphs(vertex_bound)
        .into_iter()
        .filter(|g| {
            let l = g.graph().raw().loop_number();
            1 <= l && l <= max_loops
        })
        .collect();
    let mut family = vec![canonical_form(&FeynmanGraph::empty())];
    family.extend(connected.iter().cloned());
    for (i, a) in connected.iter().enumerate() {
        for b in &connected[i..] {
            if a.graph().raw().loop_number() + b.graph().raw().loop_number() <= max_loops {
                family.push(canonical_form(&a.graph().disjoint_union(b.graph())));
            }
        }
    }
    family.sort();
    family.dedup();
    family
}

/// Hopf-algebra laws for the graph family within `max_loops` total loops.
///
/// The associativity sweep restricts to triples whose first factor has
/// two-leg components: contracting such a subgraph never creates a fresh
/// vertex, so iterated products and chains of subobjects stay in
/// bijection.  With `unrestricted` the sweep drops that restriction and
/// checks the unqualified law, which genuinely fails once three total
/// loops admit a three-leg first factor — the suite then reports the
/// smallest counterexample and the caller exits 1.
pub fn hopf_graphs(max_loops: usize, unrestricted: bool) -> Result<Vec<String>, Failure> {
    let family = graph_family(max_loops);
    let mut lines = Vec::new();
    lines.push(format!(
        "family: {} graphs within {max_loops} total loops",
        family.len()
    ));

    let unit = GraphCombo::delta(canonical_form(&FeynmanGraph::empty()));
    let mut cases = 0;
    for g in &family {
        let x = GraphCombo::delta(g.clone());
        if graphalg::hall_product(&unit, &x) != x || graphalg::hall_product(&x, &unit) != x {
            return Err(fail(format!("unit law fails on {}", g.literal())));
        }
        cases += 1;
    }
    lines.push(format!("ok: unit laws ({cases} graphs)"));

    let mut cases = 0;
    for a in &family {
        if !unrestricted && !all_components_two_leg(a.graph()) {
            continue;
        }
        for b in &family {
            for c in &family {
                let la = a.graph().raw().loop_number();
                let lb = b.graph().raw().loop_number();
                let lc = c.graph().raw().loop_number();
                if la + lb + lc > max_loops {
                    continue;
                }
                let left = graphalg::hall_product(
                    &graphalg::hall_product_basis(a, b),
                    &GraphCombo::delta(c.clone()),
                );
                let right = graphalg::hall_product(
                    &GraphCombo::delta(a.clone()),
                    &graphalg::hall_product_basis(b, c),
                );
                if left != right {
                    return Err(fail(format!(
                        "associativity fails on ({}, {}, {})",
                        a.literal(),
                        b.literal(),
                        c.literal()
                    )));
                }
                cases += 1;
            }
        }
    }
    lines.push(if unrestricted {
        format!("ok: unrestricted associativity ({cases} triples)")
    } else {
        format!("ok: associativity with a two-leg first factor ({cases} triples)")
    });

    let mut cases = 0;
    for g in &family {
        if triple_graph(g, true) != triple_graph(g, false) {
            return Err(fail(format!("coassociativity fails on {}", g.literal())));
        }
        cases += 1;
    }
    lines.push(format!("ok: coassociativity ({cases} graphs)"));

    let mut cases = 0;
    for a in &family {
        for b in &family {
            if a.graph().raw().loop_number() + b.graph().raw().loop_number() > max_loops {
                continue;
            }
            let prod = graphalg::hall_product_basis(a, b);
            let lhs = graphalg::coproduct(&prod);
            let rhs = graphalg::coproduct_basis(a)
                .convolve(&graphalg::coproduct_basis(b), |x, y| {
                    graphalg::hall_product_basis(x, y)
                });
            if lhs != rhs {
                return Err(fail(format!(
                    "product/coproduct compatibility fails on ({}, {})",
                    a.literal(),
                    b.literal()
                )));
            }
            cases += 1;
        }
    }
    lines.push(format!("ok: bialgebra compatibility ({cases} pairs)"));

    let mut cases = 0;
    for g in &family {
        let x = GraphCombo::delta(g.clone());
        let cop = graphalg::coproduct(&x);
        let mut left = GraphCombo::zero();
        let mut right = GraphCombo::zero();
        for ((a, b), c) in cop.iter() {
            left.add_term(b.clone(), c * &graphalg::counit(&GraphCombo::delta(a.clone())));
            right.add_term(a.clone(), c * &graphalg::counit(&GraphCombo::delta(b.clone())));
        }
        if left != x || right != x {
            return Err(fail(format!("counit law fails on {}", g.literal())));
        }
        cases += 1;
    }
    lines.push(format!("ok: counit laws ({cases} graphs)"));

    let empty = canonical_form(&FeynmanGraph::empty());
    let mut cases = 0;
    for g in &family {
        let expected = if *g == empty {
            GraphCombo::delta(empty.clone())
        } else {
            GraphCombo::zero()
        };
        let cop = graphalg::coproduct_basis(g);
        let mut left = GraphCombo::zero();
        let mut right = GraphCombo::zero();
        for ((a, b), c) in cop.iter() {
            let sa = graphalg::antipode(&GraphCombo::delta(a.clone()));
            let sb = graphalg::antipode(&GraphCombo::delta(b.clone()));
            left = left.add(
                &graphalg::hall_product(&sa, &GraphCombo::delta(b.clone())).scale(c),
            );
            right = right.add(
                &graphalg::hall_product(&GraphCombo::delta(a.clone()), &sb).scale(c),
            );
        }
        if left != expected || right != expected {
            return Err(fail(format!("antipode identity fails on {}", g.literal())));
        }
        cases += 1;
    }
    lines.push(format!("ok: antipode identities ({cases} graphs)"));

    Ok(lines)
}

// ---------------------------------------------------------------------------
// Pre-Lie and Jacobi suites.
// ---------------------------------------------------------------------------

/// Left pre-Lie law: the associator of grafting is symmetric in its first
/// two arguments, for trees up to `n` total vertices and for both graph
/// insertion products on the one-loop generators.
pub fn prelie(n: usize) -> Result<Vec<String>, Failure> {
    let trees = trees_up_to(n.saturating_sub(2));
    let mut lines = Vec::new();

    let assoc = |a: &RootedTree, b: &RootedTree, c: &RootedTree| -> ForestCombo {
        let ab = treealg::prelie_tree(a, b);
        let bc = treealg::prelie_tree(b, c);
        star_trees(&ab, &ForestCombo::delta(c.as_forest()))
            .sub(&star_trees(&ForestCombo::delta(a.as_forest()), &bc))
    };
    let mut cases = 0;
    for a in &trees {
        for b in &trees {
            for c in &trees {
                if a.vertex_count() + b.vertex_count() + c.vertex_count() > n {
                    continue;
                }
                if assoc(a, b, c) != assoc(b, a, c) {
                    return Err(fail(format!(
                        "tree pre-Lie law fails on ({}, {}, {})",
                        a.encoding(),
                        b.encoding(),
                        c.encoding()
                    )));
                }
                cases += 1;
            }
        }
    }
    lines.push(format!(
        "ok: tree grafting is left pre-Lie ({cases} triples, total size <= {n})"
    ));

    for (name, op) in [
        ("star", graphalg::prelie_star as GraphOp),
        ("sharp", graphalg::prelie_sharp as GraphOp),
    ] {
        let gens = [fixtures::bubble(), fixtures::triangle()];
        let mut cases = 0;
        for a in &gens {
            for b in &gens {
                for c in &gens {
                    let ab = op(a, b).map_err(|e| fail(e.to_string()))?;
                    let bc = op(b, c).map_err(|e| fail(e.to_string()))?;
                    let da = GraphCombo::delta(canonical_form(a));
                    let dc = GraphCombo::delta(canonical_form(c));
                    let left = ext_graphs(&ab, &dc, op)?.sub(&ext_graphs(&da, &bc, op)?);
                    let ba = op(b, a).map_err(|e| fail(e.to_string()))?;
                    let ac = op(a, c).map_err(|e| fail(e.to_string()))?;
                    let db = GraphCombo::delta(canonical_form(b));
                    let right = ext_graphs(&ba, &dc, op)?.sub(&ext_graphs(&db, &ac, op)?);
                    if left != right {
                        return Err(fail(format!(
                            "graph pre-Lie law ({name}) fails on a generator triple"
                        )));
                    }
                    cases += 1;
                }
            }
        }
        lines.push(format!("ok: graph {name} insertion is left pre-Lie ({cases} triples)"));
    }

    Ok(lines)
}

/// Antisymmetry and the Jacobi identity for the grafting bracket on trees
/// up to `n` total vertices and for both graph brackets on the one-loop
/// generators.
pub fn jacobi(n: usize) -> Result<Vec<String>, Failure> {
    let trees = trees_up_to(n.saturating_sub(2));
    let mut lines = Vec::new();

    let bracket = |x: &ForestCombo, y: &ForestCombo| star_trees(x, y).sub(&star_trees(y, x));
    let mut anti = 0;
    let mut jac = 0;
    for a in &trees {
        for b in &trees {
            if a.vertex_count() + b.vertex_count() <= n {
                let da = ForestCombo::delta(a.as_forest());
                let db = ForestCombo::delta(b.as_forest());
                if bracket(&da, &db) != bracket(&db, &da).neg() {
                    return Err(fail(format!(
                        "tree bracket antisymmetry fails on ({}, {})",
                        a.encoding(),
                        b.encoding()
                    )));
                }
                anti += 1;
            }
            for c in &trees {
                if a.vertex_count() + b.vertex_count() + c.vertex_count() > n {
                    continue;
                }
                let da = ForestCombo::delta(a.as_forest());
                let db = ForestCombo::delta(b.as_forest());
                let dc = ForestCombo::delta(c.as_forest());
                let total = bracket(&da, &bracket(&db, &dc))
                    .add(&bracket(&db, &bracket(&dc, &da)))
                    .add(&bracket(&dc, &bracket(&da, &db)));
                if !total.is_zero() {
                    return Err(fail(format!(
                        "tree Jacobi identity fails on ({}, {}, {})",
                        a.encoding(),
                        b.encoding(),
                        c.encoding()
                    )));
                }
                jac += 1;
            }
        }
    }
    lines.push(format!(
        "ok: tree bracket antisymmetry ({anti} pairs) and Jacobi ({jac} triples)"
    ));

    for (name, op) in [
        ("star", graphalg::prelie_star as GraphOp),
        ("sharp", graphalg::prelie_sharp as GraphOp),
    ] {
        let gens = [fixtures::bubble(), fixtures::triangle()];
        let gb = |x: &GraphCombo, y: &GraphCombo| -> Result<GraphCombo, Failure> {
            Ok(ext_graphs(x, y, op)?.sub(&ext_graphs(y, x, op)?))
        };
        let mut cases = 0;
        for a in &gens {
            for b in &gens {
                let da = GraphCombo::delta(canonical_form(a));
                let db = GraphCombo::delta(canonical_form(b));
                if gb(&da, &db)? != gb(&db, &da)?.neg() {
                    return Err(fail(format!("graph bracket ({name}) antisymmetry fails")));
                }
                for c in &gens {
                    let dc = GraphCombo::delta(canonical_form(c));
                    let total = gb(&da, &gb(&db, &dc)?)?
                        .add(&gb(&db, &gb(&dc, &da)?)?)
                        .add(&gb(&dc, &gb(&da, &db)?)?);
                    if !total.is_zero() {
                        return Err(fail(format!("graph Jacobi identity ({name}) fails")));
                    }
                    cases += 1;
                }
            }
        }
        lines.push(format!("ok: graph bracket {name} antisymmetry and Jacobi ({cases} triples)"));
    }

    Ok(lines)
}

// ---------------------------------------------------------------------------
// Hall-oracle cross-checks.
// ---------------------------------------------------------------------------

/// Hall coefficients against independent short-exact-sequence counts: every
/// candidate extension `K` of every forest pair up to `n` total vertices,
/// and the one-loop generator pairs for graphs.
pub fn hall_oracle(n: usize) -> Result<Vec<String>, Failure> {
    let pool = forests_up_to(n);
    let mut lines = Vec::new();

    let mut cases = 0;
    for f1 in &pool {
        for f2 in &pool {
            let total = f1.vertex_count() + f2.vertex_count();
            if total > n {
                continue;
            }
            let prod = treealg::hall_product_basis(f1, f2);
            let l1 = LabeledForest::from_forest(f1);
            let l2 = LabeledForest::from_forest(f2);
            for k in enumerate_forests(total) {
                let lk = LabeledForest::from_forest(&k);
                let g = count_short_exact(&l1, &l2, &lk)
                    .map_err(|e| fail(format!("forest oracle error: {e}")))?;
                let expected = coeff(g as i64)
                    / Coeff::from_integer(f1.aut_order() * f2.aut_order());
                if prod.coeff(&k) != expected {
                    return Err(fail(format!(
                        "forest Hall coefficient mismatch at ({}, {}) -> {}: product {} vs oracle {}",
                        f1.literal(),
                        f2.literal(),
                        k.literal(),
                        render_coeff(&prod.coeff(&k)),
                        render_coeff(&expected)
                    )));
                }
                cases += 1;
            }
        }
    }
    lines.push(format!(
        "ok: forest Hall coefficients match subobject counts ({cases} coefficients)"
    ));

    let gens = [FeynmanGraph::empty(), fixtures::bubble(), fixtures::triangle()];
    let mut cases = 0;
    for g1 in &gens {
        for g2 in &gens {
            let c1 = canonical_form(g1);
            let c2 = canonical_form(g2);
            let prod = graphalg::hall_product_basis(&c1, &c2);
            for (k, c) in prod.iter() {
                let g = count_short_exact_graphs(g1, g2, k.graph())
                    .map_err(|e| fail(format!("graph oracle error: {e}")))?;
                let expected =
                    coeff(g as i64) / Coeff::from_integer(aut_order(g1) * aut_order(g2));
                if *c != expected {
                    return Err(fail(format!(
                        "graph Hall coefficient mismatch at ({}, {}) -> {}",
                        c1.literal(),
                        c2.literal(),
                        k.literal()
                    )));
                }
                cases += 1;
            }
        }
    }
    let bub = fixtures::bubble();
    let diamond = fixtures::diamond();
    let g = count_short_exact_graphs(&bub, &bub, &diamond)
        .map_err(|e| fail(format!("graph oracle error: {e}")))?;
    let c = graphalg::hall_product_basis(&canonical_form(&bub), &canonical_form(&bub))
        .coeff(&canonical_form(&diamond));
    if g != 0 || c != coeff(0) {
        return Err(fail(
            "the diamond should not support the bubble-bubble product".to_string(),
        ));
    }
    cases += 1;
    lines.push(format!(
        "ok: graph Hall coefficients match short-exact-sequence counts ({cases} checks)"
    ));

    Ok(lines)
}

// ---------------------------------------------------------------------------
// Scaling intertwiner and the headline bracket computation.
// ---------------------------------------------------------------------------

/// `aut_scale` intertwines the two graph brackets on a six-graph family,
/// including the derived subgraph-count values that fix the orientation.
pub fn phi_intertwiner() -> Result<Vec<String>, Failure> {
    let family = [
        fixtures::bubble(),
        fixtures::triangle(),
        fixtures::bubble_chain(),
        fixtures::bubble_cycle(),
        fixtures::bubble_in_triangle(),
        fixtures::diamond(),
    ];
    let mut lines = Vec::new();

    let mut cases = 0;
    for a in &family {
        for b in &family {
            let lhs = graphalg::aut_scale(
                &graphalg::bracket_star(a, b).map_err(|e| fail(e.to_string()))?,
            );
            let rhs = {
                let sa = graphalg::aut_scale(&GraphCombo::delta(canonical_form(a)));
                let sb = graphalg::aut_scale(&GraphCombo::delta(canonical_form(b)));
                ext_graphs(&sa, &sb, graphalg::prelie_sharp)?
                    .sub(&ext_graphs(&sb, &sa, graphalg::prelie_sharp)?)
            };
            if lhs != rhs {
                return Err(fail(format!(
                    "scaling map fails to intertwine the brackets on pair ({}, {})",
                    canonical_form(a).literal(),
                    canonical_form(b).literal()
                )));
            }
            cases += 1;
        }
    }
    lines.push(format!("ok: aut-scaling intertwines the two brackets ({cases} pairs)"));

    let bub = fixtures::bubble();
    let tri = fixtures::triangle();
    let ga = fixtures::bubble_in_triangle();
    let gb = fixtures::diamond();
    let checks = [
        (&bub, &tri, &ga, 1usize),
        (&tri, &bub, &gb, 2usize),
        (&bub, &tri, &gb, 0usize),
    ];
    for (g1, g2, host, want) in checks {
        let got = graphalg::subgraph_count_a(g1, g2, host);
        if got != want {
            return Err(fail(format!(
                "subgraph count a({}, {}; {}) = {got}, expected {want}",
                canonical_form(g1).literal(),
                canonical_form(g2).literal(),
                canonical_form(host).literal()
            )));
        }
    }
    lines.push("ok: orientation-fixing subgraph counts (3 values)".to_string());

    Ok(lines)
}

/// The headline computation: `[BUB, TRI]` under insertion equals
/// `6·G_a − 12·G_b`.
pub fn paper_example() -> Result<Vec<String>, Failure> {
    let bub = fixtures::bubble();
    let tri = fixtures::triangle();
    let bracket = graphalg::bracket_star(&bub, &tri).map_err(|e| fail(e.to_string()))?;

    let mut expected = GraphCombo::zero();
    expected.add_term(canonical_form(&fixtures::bubble_in_triangle()), coeff(6));
    expected.add_term(canonical_form(&fixtures::diamond()), coeff(-12));

    if bracket != expected {
        return Err(fail(format!(
            "[BUB, TRI] = \n{}\nexpected\n{}",
            bracket.render(),
            expected.render()
        )));
    }
    let mut lines: Vec<String> =
        bracket.render().lines().map(|l| l.to_string()).collect();
    lines.push("ok: [BUB, TRI] = 6 G_a - 12 G_b".to_string());
    Ok(lines)
}
