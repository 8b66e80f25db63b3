//! The Hall Hopf algebra on forests and the pre-Lie/Lie structure on trees.
//!
//! Elements are finitely supported rational functions on isomorphism classes
//! of forests, with the convolution product
//! `(δ_{F1} × δ_{F2})(K) = #{subforests G ⊂ K : G ≅ F1, K/G ≅ F2}`;
//! subforests of `K` are exactly the branch parts of admissible cuts, so the
//! structure constants are computed by cut enumeration. The coproduct is the
//! function-on-pairs `Δ(f)(A, B) = f(A ⊕ B)`, the counit evaluates at the
//! empty forest, and the antipode is the graded-connected recursion. On
//! single trees the grafting pre-Lie product and its bracket give the Lie
//! algebra that embeds into the Hall algebra via `j(T) = δ_T`.

use crate::forest::cut::{admissible_cuts, apply_cut};
use crate::forest::labeled::LabeledForest;
use crate::forest::{Forest, RootedTree};
use crate::{coeff, Coeff, ForestCombo, ForestPairCombo};
use num::Zero;
use std::collections::{BTreeMap, BTreeSet};

/// Vertex-count grading of a basis forest.
pub fn degree(f: &Forest) -> usize {
    f.vertex_count()
}

/// The Hall structure constant `h^K_{F1,F2}`: the number of admissible cuts
/// of `K` whose branch part is isomorphic to `F1` and whose root part is
/// isomorphic to `F2`.
pub fn structure_constant_h(f1: &Forest, f2: &Forest, k: &Forest) -> Coeff {
    Coeff::from_integer(count_cuts(f1, f2, k).into())
}

fn count_cuts(f1: &Forest, f2: &Forest, k: &Forest) -> u64 {
    if f1.vertex_count() + f2.vertex_count() != k.vertex_count() {
        return 0;
    }
    let lk = LabeledForest::from_forest(k);
    let mut hits = 0u64;
    for cut in admissible_cuts(&lk) {
        let (p, r) = apply_cut(&lk, &cut).expect("enumerated cuts are admissible");
        if p.shape() == *f1 && r.shape() == *f2 {
            hits += 1;
        }
    }
    hits
}

/// Hall product of two basis elements `δ_{F1} × δ_{F2}`.
///
/// The support is generated constructively: every `K` carrying a cut with
/// branch part `F1` and root part `F2` is obtained from `F2` by attaching
/// each component of `F1` either below some vertex or as a new component.
/// Coefficients are then recounted honestly by cut enumeration, so
/// over-generation of candidates is harmless.
pub fn hall_product_basis(f1: &Forest, f2: &Forest) -> ForestCombo {
    let mut hosts: BTreeSet<Forest> = [f2.clone()].into_iter().collect();
    for t in f1.trees() {
        let mut next = BTreeSet::new();
        for host in &hosts {
            next.insert(host.disjoint_union(&t.as_forest()));
            next.extend(graft_everywhere(host, t));
        }
        hosts = next;
    }
    let mut out = ForestCombo::zero();
    for k in hosts {
        let h = structure_constant_h(f1, f2, &k);
        if !h.is_zero() {
            out.add_term(k, h);
        }
    }
    out
}

/// Bilinear extension of the Hall product.
pub fn hall_product(a: &ForestCombo, b: &ForestCombo) -> ForestCombo {
    let mut out = ForestCombo::zero();
    for (f1, c1) in a.iter() {
        for (f2, c2) in b.iter() {
            let term = hall_product_basis(f1, f2);
            let scale = c1 * c2;
            for (k, h) in term.iter() {
                out.add_term(k.clone(), &scale * h);
            }
        }
    }
    out
}

/// All distinct shapes obtained by grafting `t` below one vertex of `host`.
fn graft_everywhere(host: &Forest, t: &RootedTree) -> BTreeSet<Forest> {
    let mut out = BTreeSet::new();
    let trees: Vec<RootedTree> = host.trees().to_vec();
    for (i, target) in trees.iter().enumerate() {
        for grafted in graft_in_tree(target, t) {
            let mut new_trees = trees.clone();
            new_trees[i] = grafted;
            out.insert(Forest::from_trees(new_trees));
        }
    }
    out
}

/// All distinct trees obtained by grafting `t` below one vertex of `target`.
fn graft_in_tree(target: &RootedTree, t: &RootedTree) -> BTreeSet<RootedTree> {
    let mut out = BTreeSet::new();
    let children = target.children();
    // Graft at the root.
    let mut with_new = children.clone();
    with_new.push(t.clone());
    out.insert(RootedTree::from_children(with_new));
    // Graft strictly below some child.
    for (i, child) in children.iter().enumerate() {
        for grafted in graft_in_tree(child, t) {
            let mut new_children = children.clone();
            new_children[i] = grafted;
            out.insert(RootedTree::from_children(new_children));
        }
    }
    out
}

/// Coproduct `Δ(f)(A, B) = f(A ⊕ B)` as a function on ordered pairs.
/// Each distinct ordered split of a basis forest contributes once.
pub fn coproduct(a: &ForestCombo) -> ForestPairCombo {
    let mut out = ForestPairCombo::zero();
    for (f, c) in a.iter() {
        for (left, right) in f.component_splits() {
            out.add_term(left, right, c.clone());
        }
    }
    out
}

/// Counit: the coefficient of the empty forest.
pub fn counit(a: &ForestCombo) -> Coeff {
    a.coeff(&Forest::empty())
}

/// Antipode via the graded-connected recursion
/// `S(δ_F) = −δ_F − Σ S(δ_A) × δ_B` over splits with both parts nonempty.
pub fn antipode(a: &ForestCombo) -> ForestCombo {
    let mut memo: BTreeMap<Forest, ForestCombo> = BTreeMap::new();
    let mut out = ForestCombo::zero();
    for (f, c) in a.iter() {
        let s = antipode_basis(f, &mut memo);
        for (k, v) in s.iter() {
            out.add_term(k.clone(), c * v);
        }
    }
    out
}

fn antipode_basis(f: &Forest, memo: &mut BTreeMap<Forest, ForestCombo>) -> ForestCombo {
    if f.is_empty() {
        return ForestCombo::delta(Forest::empty());
    }
    if let Some(hit) = memo.get(f) {
        return hit.clone();
    }
    let mut out = ForestCombo::single(f.clone(), coeff(-1));
    for (left, right) in f.component_splits() {
        if left.is_empty() || right.is_empty() {
            continue;
        }
        // `left` has strictly fewer components, so the recursion terminates.
        let s_left = antipode_basis(&left, memo);
        let product = hall_product(&s_left, &ForestCombo::delta(right));
        out = out.sub(&product);
    }
    memo.insert(f.clone(), out.clone());
    out
}

/// Grafting pre-Lie product on single trees:
/// `T1 * T2 = Σ_T a(T1, T2; T) · T` with
/// `a(T1, T2; T) = #{edges e of T : P_e ≅ T1, R_e ≅ T2}`.
pub fn prelie_tree(t1: &RootedTree, t2: &RootedTree) -> ForestCombo {
    let mut out = ForestCombo::zero();
    for candidate in graft_in_tree(t2, t1) {
        let a = edge_cut_count(&candidate, t1, t2);
        if a > 0 {
            out.add_term(candidate.as_forest(), coeff(a as i64));
        }
    }
    out
}

/// `a(T1, T2; T)`: single-edge cuts of `T` with branch part `T1` and root
/// part `T2`.
fn edge_cut_count(t: &RootedTree, t1: &RootedTree, t2: &RootedTree) -> u64 {
    let lf = LabeledForest::from_forest(&t.as_forest());
    let mut hits = 0u64;
    for v in lf.labels() {
        if lf.parent(v).is_none() {
            continue;
        }
        if lf.subtree_shape(v) != *t1 {
            continue;
        }
        let rest: BTreeSet<_> = lf
            .label_set()
            .difference(&lf.subtree_labels(v))
            .copied()
            .collect();
        if lf.restrict(&rest).shape() == t2.as_forest() {
            hits += 1;
        }
    }
    hits
}

/// Lie bracket `[T1, T2] = T1 * T2 − T2 * T1`.
pub fn bracket_tree(t1: &RootedTree, t2: &RootedTree) -> ForestCombo {
    prelie_tree(t1, t2).sub(&prelie_tree(t2, t1))
}

/// The embedding of the tree Lie algebra into the Hall algebra: `j(T) = δ_T`.
pub fn j_embed(t: &RootedTree) -> ForestCombo {
    ForestCombo::delta(t.as_forest())
}
