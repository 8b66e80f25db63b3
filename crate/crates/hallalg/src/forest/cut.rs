//! Admissible cuts on labeled forests and their lattice operations.
//!
//! An edge is named by its child vertex. A cut on one tree is either an
//! antichain of edges (`Edges`, possibly empty — the *null* cut) or the
//! distinguished *full* cut, whose branch part is the whole tree. A cut on a
//! forest is one cut per component, aligned with the components in root-label
//! order.
//!
//! Every cut `C` splits the forest into the branch part `P_C` (the subtrees
//! hanging below the cut edges; everything for `Full`) and the root part
//! `R_C` (the rest). `C ↦ P_C` is a bijection between admissible cuts and
//! descendant-closed vertex sets, and `cut_from_pset` is its inverse.
//!
//! Two partial orders organize the cuts, and each lattice operation is the
//! universal bound for exactly one of them:
//!
//! * `leq_pset`: `C ≤ D` iff `P_C ⊆ P_D`. `join` is the least upper bound —
//!   it cuts, per root path, as close to the root as either input does.
//! * `leq_deep`: `C ≤ D` iff every `D`-edge has a `C`-edge at or below it,
//!   with `Full` as top. `meet` is the greatest lower bound — it cuts, per
//!   root path, as far from the root as either input does.
//!
//! No single order supports both bounds; the integration suite checks both
//! universal properties exhaustively on small forests.

use super::labeled::{Label, LabeledForest};
use crate::error::CutError;
use itertools::Itertools;
use std::collections::BTreeSet;

/// A cut on a single tree.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Cut {
    /// An antichain of edges, each named by its child vertex. The empty set
    /// is the null cut.
    Edges(BTreeSet<Label>),
    /// The distinguished full cut: the whole tree becomes branch part.
    Full,
}

impl Cut {
    /// The null cut (no edges).
    pub fn null() -> Self {
        Cut::Edges(BTreeSet::new())
    }

    /// An edge-set cut.
    pub fn edges(labels: impl IntoIterator<Item = Label>) -> Self {
        Cut::Edges(labels.into_iter().collect())
    }

    /// True for the null cut.
    pub fn is_null(&self) -> bool {
        matches!(self, Cut::Edges(s) if s.is_empty())
    }
}

impl std::fmt::Display for Cut {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Cut::Full => f.write_str("full"),
            Cut::Edges(s) if s.is_empty() => f.write_str("null"),
            Cut::Edges(s) => write!(f, "{{{}}}", s.iter().join(",")),
        }
    }
}

/// An admissible cut on a labeled forest: one `Cut` per component, in
/// root-label order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ForestCut {
    percomponent: Vec<Cut>,
}

impl ForestCut {
    /// Assemble from per-component cuts (component order = root-label order).
    pub fn from_components(percomponent: Vec<Cut>) -> Self {
        ForestCut { percomponent }
    }

    /// The all-null cut of `f`.
    pub fn null_cut(f: &LabeledForest) -> Self {
        ForestCut { percomponent: vec![Cut::null(); f.roots().len()] }
    }

    /// The all-full cut of `f`.
    pub fn full_cut(f: &LabeledForest) -> Self {
        ForestCut { percomponent: vec![Cut::Full; f.roots().len()] }
    }

    /// Build a cut of `f` from a bare edge set, routing each edge to its
    /// component.
    pub fn from_edges(
        f: &LabeledForest,
        edges: impl IntoIterator<Item = Label>,
    ) -> Result<Self, CutError> {
        let roots = f.roots();
        let mut per: Vec<BTreeSet<Label>> = vec![BTreeSet::new(); roots.len()];
        for e in edges {
            if !f.contains(e) || f.parent(e).is_none() {
                return Err(CutError::UnknownLabel { label: e });
            }
            let root = f.component_root(e);
            let idx = roots.iter().position(|&r| r == root).expect("root is listed");
            per[idx].insert(e);
        }
        let cut = ForestCut { percomponent: per.into_iter().map(Cut::Edges).collect() };
        validate(f, &cut)?;
        Ok(cut)
    }

    /// Per-component cuts.
    pub fn components(&self) -> &[Cut] {
        &self.percomponent
    }

    /// True when every component cut is null.
    pub fn is_null(&self) -> bool {
        self.percomponent.iter().all(Cut::is_null)
    }

    /// True when every component cut is full.
    pub fn is_full(&self) -> bool {
        self.percomponent.iter().all(|c| matches!(c, Cut::Full))
    }
}

impl std::fmt::Display for ForestCut {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.percomponent.is_empty() {
            return f.write_str("null");
        }
        f.write_str(&self.percomponent.iter().map(Cut::to_string).join("; "))
    }
}

/// Check that `cut` is admissible on `f`: component count matches, every
/// edge label is a non-root vertex of its component, and each component's
/// edge set is an antichain.
pub fn validate(f: &LabeledForest, cut: &ForestCut) -> Result<(), CutError> {
    let roots = f.roots();
    if cut.percomponent.len() != roots.len() {
        return Err(CutError::ComponentCount { got: cut.percomponent.len(), want: roots.len() });
    }
    for (&root, c) in roots.iter().zip(&cut.percomponent) {
        if let Cut::Edges(set) = c {
            for &v in set {
                if !f.contains(v) || f.parent(v).is_none() || f.component_root(v) != root {
                    return Err(CutError::UnknownLabel { label: v });
                }
            }
            for &u in set {
                for &v in set {
                    if u != v && f.is_strict_ancestor(u, v) {
                        return Err(CutError::NotAntichain { upper: u, lower: v });
                    }
                }
            }
        }
    }
    Ok(())
}

/// All admissible cuts of `f`, in a canonical deterministic order.
pub fn admissible_cuts(f: &LabeledForest) -> Vec<ForestCut> {
    let per_component: Vec<Vec<Cut>> = f
        .roots()
        .into_iter()
        .map(|root| {
            let mut cuts: Vec<Cut> = antichains_below(f, root).into_iter().map(Cut::Edges).collect();
            cuts.push(Cut::Full);
            cuts.sort();
            cuts
        })
        .collect();
    // The empty product is the single empty cut (the empty forest's one cut).
    let mut acc: Vec<Vec<Cut>> = vec![Vec::new()];
    for options in per_component {
        let mut next = Vec::with_capacity(acc.len() * options.len());
        for prefix in &acc {
            for opt in &options {
                let mut row = prefix.clone();
                row.push(opt.clone());
                next.push(row);
            }
        }
        acc = next;
    }
    acc.into_iter().map(ForestCut::from_components).collect()
}

/// Antichains of edges in the subtree rooted at `v` (edges strictly below
/// `v`), including the empty antichain.
fn antichains_below(f: &LabeledForest, v: Label) -> Vec<BTreeSet<Label>> {
    let mut acc: Vec<BTreeSet<Label>> = vec![BTreeSet::new()];
    for child in f.children(v) {
        // Per child: either cut the edge above it, or recurse strictly below.
        let mut options: Vec<BTreeSet<Label>> = vec![[child].into_iter().collect()];
        options.extend(antichains_below(f, child));
        let mut next = Vec::with_capacity(acc.len() * options.len());
        for base in &acc {
            for opt in &options {
                let mut set = base.clone();
                set.extend(opt.iter().copied());
                next.push(set);
            }
        }
        acc = next;
    }
    acc
}

/// The branch-part vertex set `P_C`.
pub fn pset(f: &LabeledForest, cut: &ForestCut) -> BTreeSet<Label> {
    let mut out = BTreeSet::new();
    for (&root, c) in f.roots().iter().zip(&cut.percomponent) {
        match c {
            Cut::Full => out.extend(f.component_labels(root)),
            Cut::Edges(set) => {
                for &e in set {
                    out.extend(f.subtree_labels(e));
                }
            }
        }
    }
    out
}

/// Split `f` into `(P_C, R_C)`; labels are preserved.
pub fn apply_cut(
    f: &LabeledForest,
    cut: &ForestCut,
) -> Result<(LabeledForest, LabeledForest), CutError> {
    validate(f, cut)?;
    let p = pset(f, cut);
    let r: BTreeSet<Label> = f.label_set().difference(&p).copied().collect();
    Ok((f.restrict(&p), f.restrict(&r)))
}

/// Invert `pset`: the unique admissible cut whose branch part is the
/// descendant-closed set `p`.
pub fn cut_from_pset(f: &LabeledForest, p: &BTreeSet<Label>) -> Result<ForestCut, CutError> {
    for &v in p {
        if !f.contains(v) {
            return Err(CutError::UnknownLabel { label: v });
        }
        for child in f.children(v) {
            if !p.contains(&child) {
                return Err(CutError::NotSubforest { label: child });
            }
        }
    }
    let percomponent = f
        .roots()
        .into_iter()
        .map(|root| {
            let comp = f.component_labels(root);
            let inside: BTreeSet<Label> = comp.intersection(p).copied().collect();
            if inside == comp {
                Cut::Full
            } else {
                Cut::Edges(
                    inside
                        .iter()
                        .copied()
                        .filter(|&v| match f.parent(v) {
                            Some(parent) => !inside.contains(&parent),
                            None => true,
                        })
                        .collect(),
                )
            }
        })
        .collect();
    Ok(ForestCut { percomponent })
}

/// Join: least upper bound under `leq_pset`. `P_{C∨D} = P_C ∪ P_D`; per
/// root path this keeps the edge closer to the root.
pub fn join(f: &LabeledForest, c: &ForestCut, d: &ForestCut) -> Result<ForestCut, CutError> {
    validate(f, c)?;
    validate(f, d)?;
    let percomponent = c
        .percomponent
        .iter()
        .zip(&d.percomponent)
        .map(|(a, b)| match (a, b) {
            (Cut::Full, _) | (_, Cut::Full) => Cut::Full,
            (Cut::Edges(x), Cut::Edges(y)) => {
                let union: BTreeSet<Label> = x.union(y).copied().collect();
                Cut::Edges(
                    union
                        .iter()
                        .copied()
                        .filter(|&v| !union.iter().any(|&u| u != v && f.is_strict_ancestor(u, v)))
                        .collect(),
                )
            }
        })
        .collect();
    Ok(ForestCut { percomponent })
}

/// Meet: greatest lower bound under `leq_deep`. `Full` is neutral; per root
/// path this keeps the edge farther from the root.
pub fn meet(f: &LabeledForest, c: &ForestCut, d: &ForestCut) -> Result<ForestCut, CutError> {
    validate(f, c)?;
    validate(f, d)?;
    let percomponent = c
        .percomponent
        .iter()
        .zip(&d.percomponent)
        .map(|(a, b)| match (a, b) {
            (Cut::Full, other) | (other, Cut::Full) => other.clone(),
            (Cut::Edges(x), Cut::Edges(y)) => {
                let union: BTreeSet<Label> = x.union(y).copied().collect();
                Cut::Edges(
                    union
                        .iter()
                        .copied()
                        .filter(|&v| !union.iter().any(|&u| u != v && f.is_strict_ancestor(v, u)))
                        .collect(),
                )
            }
        })
        .collect();
    Ok(ForestCut { percomponent })
}

/// Branch-containment order: `c ≤ d` iff `P_c ⊆ P_d`. Null is bottom, Full
/// is top; `join` computes least upper bounds for this order.
pub fn leq_pset(f: &LabeledForest, c: &ForestCut, d: &ForestCut) -> bool {
    pset(f, c).is_subset(&pset(f, d))
}

/// Depth order: `c ≤ d` iff every `d`-edge has a `c`-edge at or below it
/// (per component), with `Full` strictly on top; `meet` computes greatest
/// lower bounds for this order.
pub fn leq_deep(f: &LabeledForest, c: &ForestCut, d: &ForestCut) -> bool {
    c.percomponent.iter().zip(&d.percomponent).all(|(a, b)| match (a, b) {
        (_, Cut::Full) => true,
        (Cut::Full, Cut::Edges(_)) => false,
        (Cut::Edges(x), Cut::Edges(y)) => y
            .iter()
            .all(|&dv| x.iter().any(|&cv| cv == dv || f.is_strict_ancestor(dv, cv))),
    })
}

/// The cut that `cprime` induces on the branch forest `P_c(f)`: the branch
/// part of the induced cut is `P_{c'} ∩ P_c`, read inside `P_c(f)`.
///
/// The induced cut is computed on vertex sets rather than by restricting the
/// edge set of `meet(c, c')`, because edges of `f` that become root edges of
/// `P_c(f)` disappear under restriction; the vertex-set reading is the one
/// under which composition of forest morphisms has identities.
pub fn induced_cut(
    f: &LabeledForest,
    c: &ForestCut,
    cprime: &ForestCut,
) -> Result<ForestCut, CutError> {
    validate(f, c)?;
    validate(f, cprime)?;
    let p_forest = f.restrict(&pset(f, c));
    let target: BTreeSet<Label> =
        pset(f, cprime).intersection(&pset(f, c)).copied().collect();
    cut_from_pset(&p_forest, &target)
}

/// Lift a subforest of the root part back to a cut of the whole forest:
/// given admissible `c` and a descendant-closed vertex set `sub` of
/// `R_c(f)`, returns the cut `e` with `P_e = P_c ∪ sub`.
///
/// The map `sub ↦ e` is a bijection from descendant-closed subsets of
/// `R_c(f)` onto `{e : P_c ⊆ P_e}` — equivalently `{e : join(c, e) = e}`.
pub fn lift_subforest(
    f: &LabeledForest,
    c: &ForestCut,
    sub: &BTreeSet<Label>,
) -> Result<ForestCut, CutError> {
    validate(f, c)?;
    let p = pset(f, c);
    let r: BTreeSet<Label> = f.label_set().difference(&p).copied().collect();
    for &v in sub {
        if !r.contains(&v) {
            return Err(CutError::NotSubforest { label: v });
        }
    }
    let r_forest = f.restrict(&r);
    for &v in sub {
        for child in r_forest.children(v) {
            if !sub.contains(&child) {
                return Err(CutError::NotSubforest { label: child });
            }
        }
    }
    let target: BTreeSet<Label> = p.union(sub).copied().collect();
    cut_from_pset(f, &target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forest::Forest;

    fn seven() -> LabeledForest {
        LabeledForest::parse("4(7(1,5),3(2,6))").unwrap()
    }

    #[test]
    fn cut_counts_on_tiny_trees() {
        let leaf = LabeledForest::parse("1").unwrap();
        assert_eq!(admissible_cuts(&leaf).len(), 2);
        let edge = LabeledForest::parse("1(2)").unwrap();
        assert_eq!(admissible_cuts(&edge).len(), 3);
        assert_eq!(admissible_cuts(&LabeledForest::empty()).len(), 1);
    }

    #[test]
    fn seven_vertex_example_cut() {
        let f = seven();
        let cut = ForestCut::from_edges(&f, [7, 2]).unwrap();
        let (p, r) = apply_cut(&f, &cut).unwrap();
        assert_eq!(p, LabeledForest::parse("7(1,5) 2").unwrap());
        assert_eq!(r, LabeledForest::parse("4(3(6))").unwrap());
        assert_eq!(p.vertex_count() + r.vertex_count(), f.vertex_count());
    }

    #[test]
    fn validation_rejects_non_antichains_and_bad_labels() {
        let f = seven();
        assert!(matches!(
            ForestCut::from_edges(&f, [7, 1]),
            Err(CutError::NotAntichain { upper: 7, lower: 1 })
        ));
        assert!(matches!(
            ForestCut::from_edges(&f, [4]),
            Err(CutError::UnknownLabel { label: 4 })
        ));
        assert!(matches!(
            ForestCut::from_edges(&f, [9]),
            Err(CutError::UnknownLabel { label: 9 })
        ));
        let wrong = ForestCut::from_components(vec![Cut::null(), Cut::null()]);
        assert!(matches!(
            validate(&f, &wrong),
            Err(CutError::ComponentCount { got: 2, want: 1 })
        ));
    }

    #[test]
    fn pset_bijection_round_trip() {
        let f = seven();
        for cut in admissible_cuts(&f) {
            let p = pset(&f, &cut);
            assert_eq!(cut_from_pset(&f, &p).unwrap(), cut);
        }
    }

    #[test]
    fn join_and_meet_units() {
        let f = seven();
        let null = ForestCut::null_cut(&f);
        let full = ForestCut::full_cut(&f);
        for cut in admissible_cuts(&f) {
            assert_eq!(join(&f, &cut, &null).unwrap(), cut);
            assert_eq!(meet(&f, &cut, &full).unwrap(), cut);
            assert_eq!(join(&f, &cut, &full).unwrap(), full);
            // Null is neutral for meet on edge cuts; against Full the
            // greatest lower bound under the depth order is null itself.
            if !cut.components().iter().any(|c| matches!(c, Cut::Full)) {
                assert_eq!(meet(&f, &cut, &null).unwrap(), cut);
            }
        }
        assert_eq!(meet(&f, &full, &null).unwrap(), null);
    }

    #[test]
    fn join_and_meet_on_disjoint_paths_take_the_union() {
        let f = LabeledForest::parse("1(2,3)").unwrap();
        let a = ForestCut::from_edges(&f, [2]).unwrap();
        let b = ForestCut::from_edges(&f, [3]).unwrap();
        let both = ForestCut::from_edges(&f, [2, 3]).unwrap();
        assert_eq!(join(&f, &a, &b).unwrap(), both);
        assert_eq!(meet(&f, &a, &b).unwrap(), both);
    }

    #[test]
    fn join_cuts_closer_to_root_meet_farther() {
        let f = seven();
        let high = ForestCut::from_edges(&f, [7]).unwrap();
        let low = ForestCut::from_edges(&f, [1]).unwrap();
        assert_eq!(join(&f, &high, &low).unwrap(), high);
        assert_eq!(meet(&f, &high, &low).unwrap(), low);
    }

    #[test]
    fn induced_cut_spec_example() {
        let f = seven();
        let c = ForestCut::from_edges(&f, [7, 2]).unwrap();
        let cprime = ForestCut::from_edges(&f, [1]).unwrap();
        let induced = induced_cut(&f, &c, &cprime).unwrap();
        // P_c has components 2 and 7(1,5); the induced cut takes edge 1 in
        // the second component and nothing in the first.
        assert_eq!(
            induced,
            ForestCut::from_components(vec![Cut::null(), Cut::edges([1])])
        );
        let null_induced = induced_cut(&f, &c, &ForestCut::null_cut(&f)).unwrap();
        assert!(null_induced.is_null());
        let full_induced = induced_cut(&f, &c, &ForestCut::full_cut(&f)).unwrap();
        assert!(full_induced.is_full());
    }

    #[test]
    fn lift_reaches_exactly_the_cuts_above() {
        let f = seven();
        for c in admissible_cuts(&f) {
            let p = pset(&f, &c);
            let r: BTreeSet<Label> = f.label_set().difference(&p).copied().collect();
            let r_forest = f.restrict(&r);
            let mut lifted = BTreeSet::new();
            for d in admissible_cuts(&r_forest) {
                let sub = pset(&r_forest, &d);
                let e = lift_subforest(&f, &c, &sub).unwrap();
                // The lift reproduces the requested root part.
                let (_, r_e) = apply_cut(&f, &e).unwrap();
                let (_, r_d) = apply_cut(&r_forest, &d).unwrap();
                assert_eq!(r_e, r_d);
                assert!(lifted.insert(e), "lift must be injective");
            }
            let above: BTreeSet<ForestCut> = admissible_cuts(&f)
                .into_iter()
                .filter(|e| leq_pset(&f, &c, e))
                .collect();
            assert_eq!(lifted, above);
            for e in &above {
                assert_eq!(&join(&f, &c, e).unwrap(), e);
            }
        }
    }

    #[test]
    fn partition_property() {
        for text in ["1", "1(2,3)", "4(7(1,5),3(2,6))", "1(2) 3"] {
            let f = LabeledForest::parse(text).unwrap();
            for cut in admissible_cuts(&f) {
                let (p, r) = apply_cut(&f, &cut).unwrap();
                assert_eq!(p.vertex_count() + r.vertex_count(), f.vertex_count());
            }
        }
    }

    #[test]
    fn shapes_of_cut_parts_drive_hall_constants() {
        // The two-leaf forest has exactly two cuts with branch part a single
        // leaf; this is the Hall constant h^{() ()}_{•,•} = 2 seen from the
        // cut side.
        let f = LabeledForest::from_forest(&Forest::parse("() ()").unwrap());
        let leaf = Forest::parse("()").unwrap();
        let hits = admissible_cuts(&f)
            .into_iter()
            .filter(|c| {
                let (p, r) = apply_cut(&f, c).unwrap();
                p.shape() == leaf && r.shape() == leaf
            })
            .count();
        assert_eq!(hits, 2);
    }
}
