//! Finitely supported exact-rational linear combinations over canonical
//! basis keys.
//!
//! `LinearCombo<K>` is the carrier of every Hall algebra element in this
//! crate: a finite map from basis keys (canonical forests or canonical
//! graphs) to nonzero rational coefficients. `PairCombo<K>` plays the same
//! role for coproduct outputs, keyed by ordered pairs. Both types never
//! store a zero coefficient, so structural equality is semantic equality.

use crate::Coeff;
use num::Zero;
use std::collections::BTreeMap;

/// A basis key: totally ordered, with a deterministic one-line literal.
///
/// The literal doubles as the serialization of the key in CLI output, so it
/// must be bit-exact for canonical values.
pub trait BasisKey: Ord + Clone {
    /// Canonical one-line text form of the key.
    fn literal(&self) -> String;
    /// Grading of the key (vertex count for forests, loop number for graphs).
    fn degree(&self) -> usize;
}

/// Finitely supported function from basis keys to nonzero exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCombo<K: BasisKey> {
    terms: BTreeMap<K, Coeff>,
}

impl<K: BasisKey> Default for LinearCombo<K> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<K: BasisKey> LinearCombo<K> {
    /// The zero element (empty support).
    pub fn zero() -> Self {
        LinearCombo { terms: BTreeMap::new() }
    }

    /// The delta function `δ_k` with coefficient 1.
    pub fn delta(key: K) -> Self {
        Self::single(key, Coeff::from_integer(1.into()))
    }

    /// A single term `c·δ_k`; collapses to zero if `c = 0`.
    pub fn single(key: K, c: Coeff) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(key, c);
        }
        LinearCombo { terms }
    }

    /// Build from an iterator of terms, summing duplicate keys.
    pub fn from_terms(it: impl IntoIterator<Item = (K, Coeff)>) -> Self {
        let mut out = Self::zero();
        for (k, c) in it {
            out.add_term(k, c);
        }
        out
    }

    /// Add `c·δ_k` in place, dropping the key if the sum cancels.
    pub fn add_term(&mut self, key: K, c: Coeff) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(key);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// Coefficient of `key` (zero when absent).
    pub fn coeff(&self, key: &K) -> Coeff {
        self.terms.get(key).cloned().unwrap_or_else(Coeff::zero)
    }

    /// True when the support is empty.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of support keys.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// True when the support is empty (mirrors `len`).
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Iterate over `(key, coefficient)` pairs in key order.
    pub fn iter(&self) -> impl Iterator<Item = (&K, &Coeff)> {
        self.terms.iter()
    }

    /// The support as a vector of keys in canonical order.
    pub fn support(&self) -> Vec<K> {
        self.terms.keys().cloned().collect()
    }

    /// Pointwise sum.
    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in other.iter() {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    /// Pointwise difference.
    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in other.iter() {
            out.add_term(k.clone(), -c.clone());
        }
        out
    }

    /// Scalar multiple.
    pub fn scale(&self, c: &Coeff) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LinearCombo {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    /// Negation.
    pub fn neg(&self) -> Self {
        LinearCombo {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), -v.clone())).collect(),
        }
    }

    /// Apply `f` to every basis key, summing collisions (linear extension of
    /// a map defined on the basis).
    pub fn map_basis<L: BasisKey>(&self, mut f: impl FnMut(&K) -> LinearCombo<L>) -> LinearCombo<L> {
        let mut out = LinearCombo::zero();
        for (k, c) in self.iter() {
            for (l, d) in f(k).iter() {
                out.add_term(l.clone(), c * d);
            }
        }
        out
    }

    /// Serialize: one term per line, `<numerator>/<denominator> <literal>`,
    /// sorted by basis literal; the zero element prints as `0`.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut lines: Vec<(String, &Coeff)> =
            self.terms.iter().map(|(k, c)| (k.literal(), c)).collect();
        lines.sort_by(|a, b| a.0.cmp(&b.0));
        lines
            .into_iter()
            .map(|(lit, c)| format!("{} {}", render_coeff(c), lit))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// Render a rational as `num/den` with the denominator always explicit.
pub fn render_coeff(c: &Coeff) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

/// Finitely supported function on ordered pairs of basis keys.
///
/// This is the codomain of the coproduct: `Δ(f)(A, B) = f(A ⊕ B)` is a
/// function on pairs, which avoids any tensor-basis multiplicity ambiguity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairCombo<K: BasisKey> {
    terms: BTreeMap<(K, K), Coeff>,
}

impl<K: BasisKey> Default for PairCombo<K> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<K: BasisKey> PairCombo<K> {
    /// The zero element.
    pub fn zero() -> Self {
        PairCombo { terms: BTreeMap::new() }
    }

    /// Add `c·δ_(a,b)` in place.
    pub fn add_term(&mut self, a: K, b: K, c: Coeff) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((a, b));
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// Coefficient at the ordered pair `(a, b)`.
    pub fn coeff(&self, a: &K, b: &K) -> Coeff {
        self.terms
            .get(&(a.clone(), b.clone()))
            .cloned()
            .unwrap_or_else(Coeff::zero)
    }

    /// Iterate over `((a, b), coefficient)` in key order.
    pub fn iter(&self) -> impl Iterator<Item = (&(K, K), &Coeff)> {
        self.terms.iter()
    }

    /// True when the support is empty.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Pointwise sum.
    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((a, b), c) in other.iter() {
            out.add_term(a.clone(), b.clone(), c.clone());
        }
        out
    }

    /// Pointwise difference.
    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((a, b), c) in other.iter() {
            out.add_term(a.clone(), b.clone(), -c.clone());
        }
        out
    }

    /// Swap the two tensor factors.
    pub fn flip(&self) -> Self {
        let mut out = Self::zero();
        for ((a, b), c) in self.iter() {
            out.add_term(b.clone(), a.clone(), c.clone());
        }
        out
    }

    /// Componentwise (tensor-square) product of two pair functions, given the
    /// multiplication on single combos.
    pub fn convolve(
        &self,
        other: &Self,
        mut mul: impl FnMut(&K, &K) -> LinearCombo<K>,
    ) -> Self {
        let mut out = Self::zero();
        for ((a1, b1), c1) in self.iter() {
            for ((a2, b2), c2) in other.iter() {
                let left = mul(a1, a2);
                let right = mul(b1, b2);
                let scale = c1 * c2;
                for (la, ca) in left.iter() {
                    for (rb, cb) in right.iter() {
                        out.add_term(la.clone(), rb.clone(), &scale * ca * cb);
                    }
                }
            }
        }
        out
    }

    /// Serialize: one term per line, `<num>/<den> <literal> | <literal>`,
    /// sorted by the pair of literals; zero prints as `0`.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut lines: Vec<(String, String, &Coeff)> = self
            .terms
            .iter()
            .map(|((a, b), c)| (a.literal(), b.literal(), c))
            .collect();
        lines.sort_by(|x, y| (&x.0, &x.1).cmp(&(&y.0, &y.1)));
        lines
            .into_iter()
            .map(|(a, b, c)| format!("{} {} | {}", render_coeff(c), a, b))
            .collect::<Vec<_>>()
            .join("\n")
    }
}
