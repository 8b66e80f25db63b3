//! The category of labeled rooted forests.
//!
//! A morphism `F1 → F2` is a triple `(C1, C2, f)` of an admissible cut
//! on each forest and a forest isomorphism `f: R_{C1}(F1) ≅ P_{C2}(F2)`.
//! The branch part `P_{C1}(F1)` is the kernel piece, `P_{C2}(F2)` the
//! image.  The identity is `(C_null, C_full, id)` and the zero morphism
//! is `(C_full, C_null, ∅)`.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::OracleError;
use crate::forest::cut::{
    admissible_cuts, cut_from_pset, lift_subforest, pset, validate, ForestCut,
};
use crate::forest::labeled::{isomorphisms, Label, LabeledForest};

/// Largest forest (by vertex count) the oracle enumerates morphisms for.
pub const MAX_FOREST_OBJECT: usize = 8;

/// A morphism of labeled rooted forests.
///
/// Two morphisms are equal exactly when their cuts and their piece
/// isomorphism coincide; the §-style twisted pairs `(C1, C2, f)` and
/// `(C1, C2, f′)` are distinct morphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForestMorphism {
    /// Domain forest.
    pub source: LabeledForest,
    /// Codomain forest.
    pub target: LabeledForest,
    /// Cut on the source; its branch part is the kernel piece.
    pub c1: ForestCut,
    /// Cut on the target; its branch part is the image.
    pub c2: ForestCut,
    /// Label bijection `R_{c1}(source) → P_{c2}(target)`.
    pub f: BTreeMap<Label, Label>,
}

impl ForestMorphism {
    /// Builds and validates a morphism.
    pub fn new(
        source: LabeledForest,
        target: LabeledForest,
        c1: ForestCut,
        c2: ForestCut,
        f: BTreeMap<Label, Label>,
    ) -> Result<Self, OracleError> {
        let m = ForestMorphism { source, target, c1, c2, f };
        m.validate()?;
        Ok(m)
    }

    fn validate(&self) -> Result<(), OracleError> {
        let bad = |reason: String| OracleError::BadMorphism { reason };
        validate(&self.source, &self.c1).map_err(|e| bad(e.to_string()))?;
        validate(&self.target, &self.c2).map_err(|e| bad(e.to_string()))?;
        let r = rpart(&self.source, &self.c1);
        let p = ppart(&self.target, &self.c2);
        if !is_forest_iso(&r, &p, &self.f) {
            return Err(bad("the map is not an isomorphism R_{c1} ≅ P_{c2}".to_string()));
        }
        Ok(())
    }

    /// The image piece `P_{c2}(target)` as a label set.
    pub fn image_labels(&self) -> BTreeSet<Label> {
        pset(&self.target, &self.c2)
    }

    /// The kernel piece `P_{c1}(source)` as a label set.
    pub fn kernel_labels(&self) -> BTreeSet<Label> {
        pset(&self.source, &self.c1)
    }

    /// Monomorphism test: nothing is cut away from the source.
    pub fn is_mono(&self) -> bool {
        self.kernel_labels().is_empty()
    }

    /// Epimorphism test: the image is the whole target.
    pub fn is_epi(&self) -> bool {
        self.image_labels() == self.target.label_set()
    }

    fn sort_key(&self) -> (ForestCut, ForestCut, BTreeMap<Label, Label>) {
        (self.c1.clone(), self.c2.clone(), self.f.clone())
    }
}

/// Root part `R_C(f)`, labels preserved.
fn rpart(f: &LabeledForest, c: &ForestCut) -> LabeledForest {
    let p = pset(f, c);
    let r: BTreeSet<Label> = f.label_set().difference(&p).copied().collect();
    f.restrict(&r)
}

/// Branch part `P_C(f)`, labels preserved.
fn ppart(f: &LabeledForest, c: &ForestCut) -> LabeledForest {
    f.restrict(&pset(f, c))
}

/// Is `f` a root- and incidence-preserving bijection `a → b`?
fn is_forest_iso(a: &LabeledForest, b: &LabeledForest, f: &BTreeMap<Label, Label>) -> bool {
    if f.keys().copied().collect::<BTreeSet<_>>() != a.label_set() {
        return false;
    }
    if f.values().copied().collect::<BTreeSet<_>>() != b.label_set() {
        return false;
    }
    a.label_set().iter().all(|&v| {
        let fv = f[&v];
        match (a.parent(v), b.parent(fv)) {
            (None, None) => true,
            (Some(pa), Some(pb)) => f.get(&pa) == Some(&pb),
            _ => false,
        }
    })
}

/// The identity morphism `(C_null, C_full, id)`.
pub fn identity_forest(f: &LabeledForest) -> ForestMorphism {
    ForestMorphism {
        source: f.clone(),
        target: f.clone(),
        c1: ForestCut::null_cut(f),
        c2: ForestCut::full_cut(f),
        f: f.label_set().iter().map(|&v| (v, v)).collect(),
    }
}

/// The zero morphism `(C_full, C_null, ∅)` through the empty forest.
pub fn zero_forest(f1: &LabeledForest, f2: &LabeledForest) -> ForestMorphism {
    ForestMorphism {
        source: f1.clone(),
        target: f2.clone(),
        c1: ForestCut::full_cut(f1),
        c2: ForestCut::null_cut(f2),
        f: BTreeMap::new(),
    }
}

fn guard(f: &LabeledForest) -> Result<(), OracleError> {
    if f.vertex_count() > MAX_FOREST_OBJECT {
        return Err(OracleError::TooLarge { got: f.vertex_count(), bound: MAX_FOREST_OBJECT });
    }
    Ok(())
}

/// The full Hom-set `Hom(F1, F2)`: every admissible cut pair together
/// with every isomorphism between the induced pieces, in a canonical
/// deterministic order.
pub fn hom_set_forests(
    f1: &LabeledForest,
    f2: &LabeledForest,
) -> Result<Vec<ForestMorphism>, OracleError> {
    guard(f1)?;
    guard(f2)?;
    let mut out = Vec::new();
    for c1 in admissible_cuts(f1) {
        let r = rpart(f1, &c1);
        for c2 in admissible_cuts(f2) {
            let p = ppart(f2, &c2);
            for f in isomorphisms(&r, &p) {
                out.push(ForestMorphism {
                    source: f1.clone(),
                    target: f2.clone(),
                    c1: c1.clone(),
                    c2: c2.clone(),
                    f,
                });
            }
        }
    }
    out.sort_by_key(|m| m.sort_key());
    Ok(out)
}

/// Composition `m2 ∘ m1` of `m1: F1 → F2` and `m2: F2 → F3`.
///
/// The cut `m2.c1` induces a cut on the image `P_{c2}(F2) ≅ R_{c1}(F1)`,
/// which lifts to the cut `E1` on `F1` with
/// `P_{E1} = P_{c1} ∪ f⁻¹(P_{m1.c2} ∩ P_{m2.c1})`; the surviving part
/// maps through `g ∘ f` onto a branch part `P_{E3}(F3)`, giving
/// `(E1, E3, g∘f)`.
pub fn compose_forest(
    m1: &ForestMorphism,
    m2: &ForestMorphism,
) -> Result<ForestMorphism, OracleError> {
    if m1.target != m2.source {
        return Err(OracleError::MiddleMismatch);
    }
    let bad = |reason: String| OracleError::BadMorphism { reason };
    let killed: BTreeSet<Label> = m1
        .image_labels()
        .intersection(&m2.kernel_labels())
        .copied()
        .collect();
    let sub: BTreeSet<Label> = m1
        .f
        .iter()
        .filter(|(_, w)| killed.contains(w))
        .map(|(&v, _)| v)
        .collect();
    let e1 = lift_subforest(&m1.source, &m1.c1, &sub).map_err(|e| bad(e.to_string()))?;
    let domain: BTreeSet<Label> = m1
        .source
        .label_set()
        .difference(&pset(&m1.source, &e1))
        .copied()
        .collect();
    let h: BTreeMap<Label, Label> = domain.iter().map(|&v| (v, m2.f[&m1.f[&v]])).collect();
    let image: BTreeSet<Label> = h.values().copied().collect();
    let e3 = cut_from_pset(&m2.target, &image).map_err(|e| bad(e.to_string()))?;
    Ok(ForestMorphism {
        source: m1.source.clone(),
        target: m2.target.clone(),
        c1: e1,
        c2: e3,
        f: h,
    })
}

/// The kernel `(C_null, c1, id): P_{c1}(F1) → F1`.
pub fn kernel_forest(m: &ForestMorphism) -> ForestMorphism {
    let k = ppart(&m.source, &m.c1);
    ForestMorphism {
        c1: ForestCut::null_cut(&k),
        c2: m.c1.clone(),
        f: k.label_set().iter().map(|&v| (v, v)).collect(),
        source: k,
        target: m.source.clone(),
    }
}

/// The cokernel `(c2, C_full, id): F2 → R_{c2}(F2)`, the quotient
/// `F2 / F1`.
pub fn cokernel_forest(m: &ForestMorphism) -> ForestMorphism {
    let q = rpart(&m.target, &m.c2);
    ForestMorphism {
        c1: m.c2.clone(),
        c2: ForestCut::full_cut(&q),
        f: q.label_set().iter().map(|&v| (v, v)).collect(),
        source: m.target.clone(),
        target: q,
    }
}

/// The number `g^K_{F1,F2}` of short exact sequences
/// `∅ → F1 → K → F2 → ∅`: pairs of a mono and an epi whose image and
/// kernel pieces agree inside `K`.
pub fn count_short_exact(
    f1: &LabeledForest,
    f2: &LabeledForest,
    k: &LabeledForest,
) -> Result<usize, OracleError> {
    let monos: Vec<ForestMorphism> = hom_set_forests(f1, k)?
        .into_iter()
        .filter(ForestMorphism::is_mono)
        .collect();
    let epis: Vec<ForestMorphism> = hom_set_forests(k, f2)?
        .into_iter()
        .filter(ForestMorphism::is_epi)
        .collect();
    let mut count = 0;
    for m in &monos {
        for e in &epis {
            if m.c2 == e.c1 {
                count += 1;
            }
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forest::cut::Cut;

    fn lf(text: &str) -> LabeledForest {
        LabeledForest::parse(text).unwrap()
    }

    /// The worked two-tree forest, its partner, and the morphism between
    /// them: cut the whole first tree and the branch at 4, then match
    /// {6, 5, 8} onto the branch of the target below its root.
    fn worked_example() -> (LabeledForest, LabeledForest, ForestMorphism, ForestMorphism) {
        let f1 = lf("2(1(3)) 6(5,8(4))");
        let f2 = lf("7(6(9,2))");
        let c1 = ForestCut::from_components(vec![Cut::Full, Cut::edges([4])]);
        let c2 = ForestCut::from_components(vec![Cut::edges([6])]);
        let f = BTreeMap::from([(5, 9), (6, 6), (8, 2)]);
        let twist = BTreeMap::from([(5, 2), (6, 6), (8, 9)]);
        let m = ForestMorphism::new(f1.clone(), f2.clone(), c1.clone(), c2.clone(), f).unwrap();
        let mprime = ForestMorphism::new(f1.clone(), f2.clone(), c1, c2, twist).unwrap();
        (f1, f2, m, mprime)
    }

    #[test]
    fn hom_set_sizes_on_small_forests() {
        let dot = lf("1");
        assert_eq!(hom_set_forests(&dot, &dot).unwrap().len(), 2);
        let edge = lf("1(2)");
        assert_eq!(hom_set_forests(&dot, &edge).unwrap().len(), 2);
        let empty = LabeledForest::empty();
        assert_eq!(hom_set_forests(&empty, &empty).unwrap().len(), 1);
        assert!(hom_set_forests(&empty, &dot).unwrap().len() == 1);
    }

    #[test]
    fn worked_morphism_is_found_with_its_twist() {
        let (f1, f2, m, mprime) = worked_example();
        assert_ne!(m, mprime);
        let hom = hom_set_forests(&f1, &f2).unwrap();
        assert!(hom.contains(&m), "the displayed morphism is enumerated");
        assert!(hom.contains(&mprime), "its twisted partner too");
    }

    #[test]
    fn worked_morphism_kernel_and_cokernel() {
        let (_, _, m, _) = worked_example();
        let coker = cokernel_forest(&m);
        assert_eq!(coker.target, lf("7"));
        let ker = kernel_forest(&m);
        assert_eq!(ker.source, lf("2(1(3)) 4"));
        assert!(ker.is_mono());
        assert!(coker.is_epi());
    }

    #[test]
    fn identity_laws_hold() {
        let (f1, f2, _, _) = worked_example();
        for m in hom_set_forests(&f1, &f2).unwrap() {
            let left = compose_forest(&identity_forest(&f1), &m).unwrap();
            let right = compose_forest(&m, &identity_forest(&f2)).unwrap();
            assert_eq!(left, m);
            assert_eq!(right, m);
        }
    }

    #[test]
    fn zero_morphisms_absorb_composition() {
        let a = lf("1(2)");
        let b = lf("3(4,5)");
        let c = lf("6");
        for m in hom_set_forests(&a, &b).unwrap() {
            let z = compose_forest(&m, &zero_forest(&b, &c)).unwrap();
            assert_eq!(z, zero_forest(&a, &c));
            let z = compose_forest(&zero_forest(&c, &a), &m).unwrap();
            assert_eq!(z, zero_forest(&c, &b));
        }
    }

    #[test]
    fn kernel_and_cokernel_of_identity_are_trivial() {
        let f = lf("1(2,3)");
        let id = identity_forest(&f);
        assert!(kernel_forest(&id).source.is_empty());
        assert!(cokernel_forest(&id).target.is_empty());
    }

    #[test]
    fn short_exact_counts_for_two_leaves() {
        let dot = lf("1");
        assert_eq!(count_short_exact(&dot, &dot, &lf("1 2")).unwrap(), 2);
        assert_eq!(count_short_exact(&dot, &dot, &lf("1(2)")).unwrap(), 1);
        assert_eq!(count_short_exact(&dot, &dot, &lf("1(2,3)")).unwrap(), 0);
    }

    #[test]
    fn mono_torsor_over_aut_of_image() {
        // Monos • • → (• •) ⊕ • with fixed two-leaf image: |Aut(• •)| = 2.
        let pair = lf("1 2");
        let host = lf("3 4 5(6)");
        let monos: Vec<ForestMorphism> = hom_set_forests(&pair, &host)
            .unwrap()
            .into_iter()
            .filter(ForestMorphism::is_mono)
            .collect();
        let image: BTreeSet<Label> = BTreeSet::from([3, 4]);
        let fixed = monos.iter().filter(|m| m.image_labels() == image).count();
        assert_eq!(fixed, 2);
    }
}
