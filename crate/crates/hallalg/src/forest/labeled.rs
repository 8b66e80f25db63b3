//! Forests whose vertices carry distinct natural-number labels.
//!
//! Canonical trees identify isomorphism classes; labeled forests carry the
//! explicit vertex names needed by the cut calculus and by morphisms with
//! explicit vertex maps. A labeled forest is stored as a parent map
//! (`None` marks a root); components are ordered by root label.
//!
//! The text grammar writes a vertex as its label followed by an optional
//! parenthesized, comma-separated child list: `4(7(1,5),3(2,6))`. Components
//! are separated by spaces and the empty forest is `0`.

use super::{Forest, RootedTree};
use crate::error::ParseError;
use crate::Int;
use itertools::Itertools;
use std::collections::{BTreeMap, BTreeSet};

/// A vertex label.
pub type Label = u32;

/// A rooted forest with labeled vertices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct LabeledForest {
    parent: BTreeMap<Label, Option<Label>>,
}

impl LabeledForest {
    /// The empty labeled forest.
    pub fn empty() -> Self {
        LabeledForest { parent: BTreeMap::new() }
    }

    /// Build from a parent map, checking that parents exist and that the
    /// relation is acyclic.
    pub fn from_parent_map(parent: BTreeMap<Label, Option<Label>>) -> Result<Self, ParseError> {
        for (&v, p) in &parent {
            if let Some(p) = p {
                if !parent.contains_key(p) {
                    return Err(ParseError::ForestStructure {
                        reason: format!("vertex {v} has unknown parent {p}"),
                    });
                }
            }
        }
        let forest = LabeledForest { parent };
        // Walk each parent chain; a chain longer than the vertex count loops.
        let n = forest.parent.len();
        for &v in forest.parent.keys() {
            let mut cur = v;
            let mut steps = 0usize;
            while let Some(p) = forest.parent[&cur] {
                steps += 1;
                if steps > n {
                    return Err(ParseError::ForestStructure {
                        reason: format!("parent chain through vertex {v} is cyclic"),
                    });
                }
                cur = p;
            }
        }
        Ok(forest)
    }

    /// Parse a labeled-forest literal such as `4(7(1,5),3(2,6))` or `0`.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let trimmed = text.trim();
        if trimmed == "0" {
            return Ok(Self::empty());
        }
        let bytes = trimmed.as_bytes();
        let mut parent = BTreeMap::new();
        let mut pos = 0usize;
        while pos < bytes.len() {
            pos = skip_spaces(bytes, pos);
            if pos >= bytes.len() {
                break;
            }
            pos = parse_component(bytes, pos, None, &mut parent)?;
        }
        if parent.is_empty() {
            return Err(ParseError::LabeledChar { at: 0, found: trimmed.chars().next().unwrap_or(' ') });
        }
        Self::from_parent_map(parent)
    }

    /// All vertex labels, ascending.
    pub fn labels(&self) -> Vec<Label> {
        self.parent.keys().copied().collect()
    }

    /// The label set.
    pub fn label_set(&self) -> BTreeSet<Label> {
        self.parent.keys().copied().collect()
    }

    /// Number of vertices.
    pub fn vertex_count(&self) -> usize {
        self.parent.len()
    }

    /// True for the empty forest.
    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    /// The parent of `v`, or `None` when `v` is a root.
    pub fn parent(&self, v: Label) -> Option<Label> {
        self.parent.get(&v).copied().flatten()
    }

    /// Whether the forest contains label `v`.
    pub fn contains(&self, v: Label) -> bool {
        self.parent.contains_key(&v)
    }

    /// Root labels in ascending order; this is the component order used by
    /// per-component cut tuples.
    pub fn roots(&self) -> Vec<Label> {
        self.parent
            .iter()
            .filter_map(|(&v, p)| if p.is_none() { Some(v) } else { None })
            .collect()
    }

    /// Children of `v`, ascending.
    pub fn children(&self, v: Label) -> Vec<Label> {
        self.parent
            .iter()
            .filter_map(|(&c, p)| if *p == Some(v) { Some(c) } else { None })
            .collect()
    }

    /// True when `anc` lies strictly above `v` on the path to the root.
    pub fn is_strict_ancestor(&self, anc: Label, v: Label) -> bool {
        let mut cur = v;
        while let Some(p) = self.parent(cur) {
            if p == anc {
                return true;
            }
            cur = p;
        }
        false
    }

    /// The root of the component containing `v`.
    pub fn component_root(&self, v: Label) -> Label {
        let mut cur = v;
        while let Some(p) = self.parent(cur) {
            cur = p;
        }
        cur
    }

    /// Labels of `v` and all its descendants.
    pub fn subtree_labels(&self, v: Label) -> BTreeSet<Label> {
        let mut out = BTreeSet::new();
        let mut stack = vec![v];
        while let Some(x) = stack.pop() {
            if out.insert(x) {
                stack.extend(self.children(x));
            }
        }
        out
    }

    /// Labels of the component rooted at `root`.
    pub fn component_labels(&self, root: Label) -> BTreeSet<Label> {
        self.subtree_labels(root)
    }

    /// The sub-forest induced by `keep`: retained vertices keep their parent
    /// when it is also retained and become roots otherwise.
    pub fn restrict(&self, keep: &BTreeSet<Label>) -> LabeledForest {
        let parent = self
            .parent
            .iter()
            .filter(|(v, _)| keep.contains(v))
            .map(|(&v, p)| (v, p.filter(|p| keep.contains(p))))
            .collect();
        LabeledForest { parent }
    }

    /// Forget the labels: the canonical shape of this forest.
    pub fn shape(&self) -> Forest {
        Forest::from_trees(self.roots().into_iter().map(|r| self.subtree_shape(r)).collect())
    }

    /// Canonical shape of the subtree rooted at `v`.
    pub fn subtree_shape(&self, v: Label) -> RootedTree {
        RootedTree::from_children(self.children(v).into_iter().map(|c| self.subtree_shape(c)).collect())
    }

    /// Automorphism order of the underlying shape.
    pub fn aut_order(&self) -> Int {
        self.shape().aut_order()
    }

    /// Label a canonical forest: vertices are numbered `0..n` in preorder,
    /// components and children visited in canonical order.
    pub fn from_forest(f: &Forest) -> LabeledForest {
        let mut parent = BTreeMap::new();
        let mut next: Label = 0;
        for t in f.trees() {
            label_tree(t, None, &mut next, &mut parent);
        }
        LabeledForest { parent }
    }

    /// Apply a label bijection.
    pub fn relabel(&self, map: &BTreeMap<Label, Label>) -> LabeledForest {
        let parent = self
            .parent
            .iter()
            .map(|(&v, p)| (map[&v], p.map(|p| map[&p])))
            .collect();
        LabeledForest { parent }
    }

    /// Canonical labeled literal: components sorted by root label, children
    /// listed by ascending label.
    pub fn literal(&self) -> String {
        if self.is_empty() {
            return "0".to_string();
        }
        self.roots().iter().map(|&r| self.vertex_literal(r)).join(" ")
    }

    fn vertex_literal(&self, v: Label) -> String {
        let kids = self.children(v);
        if kids.is_empty() {
            v.to_string()
        } else {
            format!("{v}({})", kids.iter().map(|&c| self.vertex_literal(c)).join(","))
        }
    }
}

impl std::fmt::Display for LabeledForest {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.literal())
    }
}

fn label_tree(
    t: &RootedTree,
    parent_of_root: Option<Label>,
    next: &mut Label,
    parent: &mut BTreeMap<Label, Option<Label>>,
) {
    let me = *next;
    *next += 1;
    parent.insert(me, parent_of_root);
    for child in t.children() {
        label_tree(&child, Some(me), next, parent);
    }
}

fn skip_spaces(bytes: &[u8], mut pos: usize) -> usize {
    while pos < bytes.len() && bytes[pos] == b' ' {
        pos += 1;
    }
    pos
}

fn parse_component(
    bytes: &[u8],
    mut pos: usize,
    parent_of: Option<Label>,
    parent: &mut BTreeMap<Label, Option<Label>>,
) -> Result<usize, ParseError> {
    pos = skip_spaces(bytes, pos);
    let start = pos;
    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
        pos += 1;
    }
    if pos == start {
        return Err(ParseError::LabeledChar {
            at: pos,
            found: bytes.get(pos).map(|&b| b as char).unwrap_or(' '),
        });
    }
    let label: Label = std::str::from_utf8(&bytes[start..pos])
        .expect("digits are valid UTF-8")
        .parse()
        .map_err(|_| ParseError::LabeledChar { at: start, found: bytes[start] as char })?;
    if parent.insert(label, parent_of).is_some() {
        return Err(ParseError::DuplicateLabel { label });
    }
    pos = skip_spaces(bytes, pos);
    if pos < bytes.len() && bytes[pos] == b'(' {
        pos += 1;
        loop {
            pos = parse_component(bytes, pos, Some(label), parent)?;
            pos = skip_spaces(bytes, pos);
            match bytes.get(pos) {
                Some(b',') => pos += 1,
                Some(b')') => {
                    pos += 1;
                    break;
                }
                Some(&c) => return Err(ParseError::LabeledChar { at: pos, found: c as char }),
                None => return Err(ParseError::TreeUnbalanced),
            }
        }
    }
    Ok(pos)
}

/// All isomorphisms between two labeled forests, as label bijections that
/// send roots to roots and preserve the child relation. Empty when the
/// underlying shapes differ.
pub fn isomorphisms(a: &LabeledForest, b: &LabeledForest) -> Vec<BTreeMap<Label, Label>> {
    list_matchings(a, &a.roots(), b, &b.roots())
}

/// Whether two labeled forests have isomorphic shapes.
pub fn is_isomorphic(a: &LabeledForest, b: &LabeledForest) -> bool {
    a.shape() == b.shape()
}

/// Match two lists of subtree roots in every shape-preserving way, returning
/// complete label maps over the matched subtrees.
fn list_matchings(
    a: &LabeledForest,
    a_roots: &[Label],
    b: &LabeledForest,
    b_roots: &[Label],
) -> Vec<BTreeMap<Label, Label>> {
    if a_roots.len() != b_roots.len() {
        return Vec::new();
    }
    // Group both sides by subtree shape.
    let mut a_classes: BTreeMap<RootedTree, Vec<Label>> = BTreeMap::new();
    for &r in a_roots {
        a_classes.entry(a.subtree_shape(r)).or_default().push(r);
    }
    let mut b_classes: BTreeMap<RootedTree, Vec<Label>> = BTreeMap::new();
    for &r in b_roots {
        b_classes.entry(b.subtree_shape(r)).or_default().push(r);
    }
    if a_classes.keys().collect::<Vec<_>>() != b_classes.keys().collect::<Vec<_>>() {
        return Vec::new();
    }
    let mut maps: Vec<BTreeMap<Label, Label>> = vec![BTreeMap::new()];
    for (shape, a_members) in &a_classes {
        let b_members = &b_classes[shape];
        if a_members.len() != b_members.len() {
            return Vec::new();
        }
        // All bijections within the class, each expanded to subtree maps.
        let mut class_maps: Vec<BTreeMap<Label, Label>> = Vec::new();
        for perm in b_members.iter().permutations(b_members.len()) {
            let mut pair_maps: Vec<BTreeMap<Label, Label>> = vec![BTreeMap::new()];
            for (&ra, &rb) in a_members.iter().zip(perm) {
                let subs = tree_matchings(a, ra, b, rb);
                pair_maps = merge_products(&pair_maps, &subs);
                if pair_maps.is_empty() {
                    break;
                }
            }
            class_maps.extend(pair_maps);
        }
        maps = merge_products(&maps, &class_maps);
        if maps.is_empty() {
            return maps;
        }
    }
    maps
}

/// All isomorphisms between the subtree of `a` at `ra` and the subtree of
/// `b` at `rb`.
fn tree_matchings(
    a: &LabeledForest,
    ra: Label,
    b: &LabeledForest,
    rb: Label,
) -> Vec<BTreeMap<Label, Label>> {
    let child_maps = list_matchings(a, &a.children(ra), b, &b.children(rb));
    let mut out = Vec::new();
    for mut m in child_maps {
        m.insert(ra, rb);
        out.push(m);
    }
    out
}

fn merge_products(
    left: &[BTreeMap<Label, Label>],
    right: &[BTreeMap<Label, Label>],
) -> Vec<BTreeMap<Label, Label>> {
    let mut out = Vec::with_capacity(left.len() * right.len());
    for l in left {
        for r in right {
            let mut m = l.clone();
            m.extend(r.iter().map(|(&k, &v)| (k, v)));
            out.push(m);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example() -> LabeledForest {
        LabeledForest::parse("4(7(1,5),3(2,6))").unwrap()
    }

    #[test]
    fn parse_builds_the_expected_parent_map() {
        let f = example();
        assert_eq!(f.vertex_count(), 7);
        assert_eq!(f.roots(), vec![4]);
        assert_eq!(f.parent(7), Some(4));
        assert_eq!(f.parent(1), Some(7));
        assert_eq!(f.parent(6), Some(3));
        assert_eq!(f.parent(4), None);
        assert_eq!(f.children(4), vec![3, 7]);
    }

    #[test]
    fn literal_round_trips() {
        let f = example();
        assert_eq!(f.literal(), "4(3(2,6),7(1,5))");
        assert_eq!(LabeledForest::parse(&f.literal()).unwrap(), f);
        assert_eq!(LabeledForest::empty().literal(), "0");
        let two = LabeledForest::parse("2(0) 1").unwrap();
        assert_eq!(two.roots(), vec![1, 2]);
        assert_eq!(LabeledForest::parse(&two.literal()).unwrap(), two);
    }

    #[test]
    fn parse_rejects_duplicates_and_garbage() {
        assert!(matches!(
            LabeledForest::parse("1(1)"),
            Err(ParseError::DuplicateLabel { label: 1 })
        ));
        assert!(matches!(
            LabeledForest::parse("1(,2)"),
            Err(ParseError::LabeledChar { .. })
        ));
        assert!(matches!(LabeledForest::parse("1(2"), Err(ParseError::TreeUnbalanced)));
    }

    #[test]
    fn shape_forgets_labels() {
        let f = example();
        assert_eq!(f.shape(), Forest::parse("((()())(()()))").unwrap());
        assert_eq!(f.subtree_shape(7), RootedTree::parse("(()())").unwrap());
    }

    #[test]
    fn from_forest_assigns_preorder_labels() {
        let f = Forest::parse("(()) ()").unwrap();
        let lf = LabeledForest::from_forest(&f);
        // Canonical order lists the cherry first: labels 0,1 then the leaf 2.
        assert_eq!(lf.roots(), vec![0, 2]);
        assert_eq!(lf.parent(1), Some(0));
        assert_eq!(lf.shape(), f);
    }

    #[test]
    fn isomorphism_count_matches_aut_order() {
        for text in ["()", "(()())", "((())())", "(()()())"] {
            let f = Forest::parse(text).unwrap();
            let lf = LabeledForest::from_forest(&f);
            let autos = isomorphisms(&lf, &lf);
            assert_eq!(Int::from(autos.len()), f.aut_order(), "shape {text}");
        }
        let pair = LabeledForest::parse("1(2) 3(4)").unwrap();
        assert_eq!(isomorphisms(&pair, &pair).len(), 2);
    }

    #[test]
    fn isomorphisms_respect_structure() {
        let a = LabeledForest::parse("4(7(1,5),3(2,6))").unwrap();
        let b = LabeledForest::parse("10(20(30,40),50(60,70))").unwrap();
        let maps = isomorphisms(&a, &b);
        assert!(!maps.is_empty());
        for m in &maps {
            assert_eq!(m[&4], 10);
            for (&v, &w) in m {
                match a.parent(v) {
                    None => assert_eq!(b.parent(w), None),
                    Some(p) => assert_eq!(b.parent(w), Some(m[&p])),
                }
            }
        }
        let leaf = LabeledForest::parse("1").unwrap();
        assert!(isomorphisms(&a, &leaf).is_empty());
    }
}
