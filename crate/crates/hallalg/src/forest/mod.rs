//! Canonical rooted trees and forests.
//!
//! A rooted tree is stored as its canonical balanced-parenthesis encoding:
//! a vertex is `( <children> )` with the children's encodings sorted
//! ascending lexicographically. Two trees are isomorphic (as abstract rooted
//! trees, no planar structure) iff their canonical encodings are equal. A
//! forest is a canonically sorted multiset of trees; the empty forest is a
//! legitimate value (the zero object) and serializes as `0`.

pub mod cut;
pub mod labeled;

use crate::combo::BasisKey;
use crate::error::ParseError;
use crate::Int;
use itertools::Itertools;

/// A rooted tree in canonical form.
///
/// Only canonical encodings are ever stored, so derived equality and order
/// are isomorphism-respecting: `t1 == t2` iff the trees are isomorphic.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RootedTree {
    enc: String,
}

impl RootedTree {
    /// The single-vertex tree `()`.
    pub fn leaf() -> Self {
        RootedTree { enc: "()".to_string() }
    }

    /// Build a tree from a (possibly unsorted) list of child subtrees.
    pub fn from_children(mut children: Vec<RootedTree>) -> Self {
        children.sort();
        let mut enc = String::with_capacity(2 + children.iter().map(|c| c.enc.len()).sum::<usize>());
        enc.push('(');
        for c in &children {
            enc.push_str(&c.enc);
        }
        enc.push(')');
        RootedTree { enc }
    }

    /// Parse a tree literal such as `(()(()))`, canonicalizing child order.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let bytes = text.as_bytes();
        let (tree, used) = Self::parse_at(bytes, 0)?;
        if used != bytes.len() {
            return Err(ParseError::TreeChar { at: used, found: bytes[used] as char });
        }
        Ok(tree)
    }

    fn parse_at(bytes: &[u8], at: usize) -> Result<(Self, usize), ParseError> {
        match bytes.get(at) {
            Some(b'(') => {}
            Some(&c) => return Err(ParseError::TreeChar { at, found: c as char }),
            None => return Err(ParseError::TreeUnbalanced),
        }
        let mut pos = at + 1;
        let mut children = Vec::new();
        loop {
            match bytes.get(pos) {
                Some(b')') => return Ok((Self::from_children(children), pos + 1)),
                Some(b'(') => {
                    let (child, next) = Self::parse_at(bytes, pos)?;
                    children.push(child);
                    pos = next;
                }
                Some(&c) => return Err(ParseError::TreeChar { at: pos, found: c as char }),
                None => return Err(ParseError::TreeUnbalanced),
            }
        }
    }

    /// The canonical balanced-parenthesis encoding.
    pub fn encoding(&self) -> &str {
        &self.enc
    }

    /// The root's child subtrees, in canonical (sorted) order.
    pub fn children(&self) -> Vec<RootedTree> {
        let bytes = self.enc.as_bytes();
        let mut out = Vec::new();
        let mut depth = 0usize;
        let mut start = 0usize;
        // Skip the outer parentheses; split the interior at depth 0.
        for i in 1..bytes.len() - 1 {
            match bytes[i] {
                b'(' => {
                    if depth == 0 {
                        start = i;
                    }
                    depth += 1;
                }
                b')' => {
                    depth -= 1;
                    if depth == 0 {
                        out.push(RootedTree { enc: self.enc[start..=i].to_string() });
                    }
                }
                _ => unreachable!("canonical encodings contain only parentheses"),
            }
        }
        out
    }

    /// Number of vertices.
    pub fn vertex_count(&self) -> usize {
        self.enc.len() / 2
    }

    /// Order of the automorphism group: the product over distinct child
    /// classes of `|Aut(S)|^m · m!` where `m` is the class multiplicity.
    pub fn aut_order(&self) -> Int {
        let mut order = Int::from(1);
        for (_, class) in &self.children().into_iter().chunk_by(|c| c.clone()) {
            let class: Vec<_> = class.collect();
            let m = class.len();
            for _ in 0..m {
                order *= class[0].aut_order();
            }
            order *= factorial(m);
        }
        order
    }

    /// This tree as a one-component forest.
    pub fn as_forest(&self) -> Forest {
        Forest { trees: vec![self.clone()] }
    }
}

impl std::fmt::Display for RootedTree {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.enc)
    }
}

/// A multiset of rooted trees in canonical (sorted) order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Forest {
    trees: Vec<RootedTree>,
}

impl Forest {
    /// The empty forest (the zero object).
    pub fn empty() -> Self {
        Forest { trees: Vec::new() }
    }

    /// Build from a (possibly unsorted) list of component trees.
    pub fn from_trees(mut trees: Vec<RootedTree>) -> Self {
        trees.sort();
        Forest { trees }
    }

    /// Parse a forest literal: tree literals separated by spaces, or `0`.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let trimmed = text.trim();
        if trimmed == "0" {
            return Ok(Self::empty());
        }
        let trees = trimmed
            .split_whitespace()
            .map(RootedTree::parse)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_trees(trees))
    }

    /// Component trees in canonical order.
    pub fn trees(&self) -> &[RootedTree] {
        &self.trees
    }

    /// Number of component trees.
    pub fn component_count(&self) -> usize {
        self.trees.len()
    }

    /// Total number of vertices.
    pub fn vertex_count(&self) -> usize {
        self.trees.iter().map(|t| t.vertex_count()).sum()
    }

    /// True for the empty forest.
    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    /// Disjoint union (multiset sum) of two forests.
    pub fn disjoint_union(&self, other: &Forest) -> Forest {
        let mut trees = self.trees.clone();
        trees.extend(other.trees.iter().cloned());
        Forest::from_trees(trees)
    }

    /// Automorphism order: component automorphisms times `m!` for every
    /// class of `m` isomorphic components.
    pub fn aut_order(&self) -> Int {
        let mut order = Int::from(1);
        for (_, class) in &self.trees.iter().chunk_by(|t| (*t).clone()) {
            let class: Vec<_> = class.collect();
            let m = class.len();
            for t in &class {
                order *= t.aut_order();
            }
            order *= factorial(m);
        }
        order
    }

    /// All distinct ordered splits `(A, B)` with `A ⊕ B = self`.
    ///
    /// Each distinct pair of complementary sub-multisets appears exactly
    /// once, regardless of how many component subsets realize it.
    pub fn component_splits(&self) -> Vec<(Forest, Forest)> {
        // Group components into isomorphism classes and choose a count from
        // each class; distinct count vectors give distinct splits.
        let mut classes: Vec<(RootedTree, usize)> = Vec::new();
        for t in &self.trees {
            match classes.last_mut() {
                Some((rep, m)) if rep == t => *m += 1,
                _ => classes.push((t.clone(), 1)),
            }
        }
        let mut out = Vec::new();
        let mut picks = vec![0usize; classes.len()];
        loop {
            let mut left = Vec::new();
            let mut right = Vec::new();
            for (i, (rep, m)) in classes.iter().enumerate() {
                for _ in 0..picks[i] {
                    left.push(rep.clone());
                }
                for _ in picks[i]..*m {
                    right.push(rep.clone());
                }
            }
            out.push((Forest::from_trees(left), Forest::from_trees(right)));
            // Odometer over the per-class counts.
            let mut i = 0;
            loop {
                if i == classes.len() {
                    return out;
                }
                if picks[i] < classes[i].1 {
                    picks[i] += 1;
                    break;
                }
                picks[i] = 0;
                i += 1;
            }
        }
    }
}

impl std::fmt::Display for Forest {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.literal())
    }
}

impl BasisKey for Forest {
    fn literal(&self) -> String {
        if self.trees.is_empty() {
            "0".to_string()
        } else {
            self.trees.iter().map(|t| t.encoding()).join(" ")
        }
    }

    fn degree(&self) -> usize {
        self.vertex_count()
    }
}

/// `n!` as a big integer.
pub fn factorial(n: usize) -> Int {
    let mut out = Int::from(1);
    for k in 2..=n {
        out *= Int::from(k);
    }
    out
}

/// All canonical rooted trees with exactly `n` vertices, sorted.
pub fn enumerate_trees(n: usize) -> Vec<RootedTree> {
    let table = ForestTable::up_to(n);
    table.trees[n].clone()
}

/// All canonical forests with exactly `n` total vertices, sorted.
pub fn enumerate_forests(n: usize) -> Vec<Forest> {
    let table = ForestTable::up_to(n);
    table.forests[n].clone()
}

struct ForestTable {
    /// `trees[k]` = canonical trees with k vertices (sorted).
    trees: Vec<Vec<RootedTree>>,
    /// `forests[k]` = canonical forests with k total vertices (sorted).
    forests: Vec<Vec<Forest>>,
}

impl ForestTable {
    fn up_to(n: usize) -> Self {
        let mut table = ForestTable {
            trees: vec![Vec::new()],
            forests: vec![vec![Forest::empty()]],
        };
        for k in 1..=n {
            // A k-vertex tree is a root over a (k-1)-vertex forest.
            let trees_k: Vec<RootedTree> = table.forests[k - 1]
                .iter()
                .map(|f| RootedTree::from_children(f.trees.clone()))
                .sorted()
                .collect();
            table.trees.push(trees_k);
            // A k-vertex forest is a non-decreasing tree sequence summing to k.
            let mut forests_k = Vec::new();
            table.collect_forests(k, None, &mut Vec::new(), &mut forests_k);
            forests_k.sort();
            table.forests.push(forests_k);
        }
        table
    }

    fn collect_forests(
        &self,
        remaining: usize,
        min_tree: Option<&RootedTree>,
        prefix: &mut Vec<RootedTree>,
        out: &mut Vec<Forest>,
    ) {
        if remaining == 0 {
            out.push(Forest { trees: prefix.clone() });
            return;
        }
        for size in 1..=remaining {
            for t in &self.trees[size] {
                if let Some(min) = min_tree {
                    if t < min {
                        continue;
                    }
                }
                prefix.push(t.clone());
                self.collect_forests(remaining - size, Some(t), prefix, out);
                prefix.pop();
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonicalize_sorts_children() {
        let t = RootedTree::parse("(()(()))").unwrap();
        assert_eq!(t.encoding(), "((())())");
        assert_eq!(RootedTree::parse("()").unwrap().encoding(), "()");
    }

    #[test]
    fn canonical_form_is_permutation_invariant() {
        let a = RootedTree::parse("(()()(()))").unwrap();
        let b = RootedTree::parse("((())()())").unwrap();
        let c = RootedTree::parse("(()(())())").unwrap();
        assert_eq!(a, b);
        assert_eq!(b, c);
    }

    #[test]
    fn parse_reports_positions() {
        match RootedTree::parse("(x)") {
            Err(ParseError::TreeChar { at, found }) => {
                assert_eq!((at, found), (1, 'x'));
            }
            other => panic!("expected character error, got {other:?}"),
        }
        assert!(matches!(RootedTree::parse("(()"), Err(ParseError::TreeUnbalanced)));
        assert!(matches!(RootedTree::parse("())"), Err(ParseError::TreeChar { .. })));
    }

    #[test]
    fn forest_literal_round_trip() {
        let f = Forest::parse("() (())").unwrap();
        assert_eq!(f.literal(), "(()) ()");
        assert_eq!(Forest::parse(&f.literal()).unwrap(), f);
        assert_eq!(Forest::parse("0").unwrap(), Forest::empty());
        assert_eq!(Forest::empty().literal(), "0");
    }

    #[test]
    fn tree_counts_match_known_sequence() {
        let sizes: Vec<usize> = (1..=6).map(|n| enumerate_trees(n).len()).collect();
        assert_eq!(sizes, vec![1, 1, 2, 4, 9, 20]);
        assert_eq!(
            enumerate_trees(3),
            vec![
                RootedTree::parse("((()))").unwrap(),
                RootedTree::parse("(()())").unwrap()
            ]
        );
    }

    #[test]
    fn forest_counts_shift_tree_counts() {
        // Forests on n vertices correspond to trees on n+1 vertices.
        for n in 0..=6 {
            assert_eq!(enumerate_forests(n).len(), enumerate_trees(n + 1).len());
        }
    }

    #[test]
    fn aut_orders_of_small_shapes() {
        assert_eq!(RootedTree::parse("()").unwrap().aut_order(), Int::from(1));
        assert_eq!(RootedTree::parse("(()())").unwrap().aut_order(), Int::from(2));
        assert_eq!(RootedTree::parse("((())())").unwrap().aut_order(), Int::from(1));
        assert_eq!(RootedTree::parse("(()()())").unwrap().aut_order(), Int::from(6));
        let f = Forest::parse("(()) (()) ()").unwrap();
        // Each bare cherry has |Aut| = 1, the two isomorphic components swap.
        assert_eq!(f.aut_order(), Int::from(2));
        assert_eq!(Forest::empty().aut_order(), Int::from(1));
    }

    #[test]
    fn component_splits_are_distinct_pairs() {
        let f = Forest::parse("() ()").unwrap();
        let splits = f.component_splits();
        // Choices per class: take 0, 1, or 2 of the two identical leaves.
        assert_eq!(splits.len(), 3);
        let f2 = Forest::parse("() (())").unwrap();
        assert_eq!(f2.component_splits().len(), 4);
        assert_eq!(Forest::empty().component_splits().len(), 1);
    }
}
