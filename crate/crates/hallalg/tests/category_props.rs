//! Category axioms for forest and graph morphisms: identity and zero
//! laws, associativity of composition, and the torsor structure of
//! monomorphisms and epimorphisms over automorphism groups.

use std::collections::BTreeSet;

use hallalg::category::{
    compose_forest, compose_graph, count_short_exact, hom_set_forests, hom_set_graphs,
    identity_forest, identity_graph, zero_forest, zero_graph,
};
use hallalg::forest::cut::{admissible_cuts, pset};
use hallalg::forest::labeled::LabeledForest;
use hallalg::forest::{enumerate_forests, Forest};
use hallalg::graph::sub::{contract, induced, proper_selections};
use hallalg::graph::{aut_order, fixtures, FeynmanGraph};
use hallalg::Int;

fn forest_objects(max: usize) -> Vec<LabeledForest> {
    let mut out = vec![LabeledForest::from_forest(&Forest::empty())];
    for n in 1..=max {
        for f in enumerate_forests(n) {
            out.push(LabeledForest::from_forest(&f));
        }
    }
    out
}

fn graph_family() -> Vec<FeynmanGraph> {
    vec![
        FeynmanGraph::empty(),
        fixtures::vertex_graph(),
        fixtures::bubble(),
        fixtures::lollipop(),
        fixtures::triangle(),
        fixtures::diamond(),
    ]
}

#[test]
fn forest_identity_and_zero_laws() {
    let objs = forest_objects(3);
    for a in &objs {
        for b in &objs {
            for m in hom_set_forests(a, b).unwrap() {
                assert_eq!(compose_forest(&identity_forest(a), &m).unwrap(), m);
                assert_eq!(compose_forest(&m, &identity_forest(b)).unwrap(), m);
                for x in objs.iter().take(4) {
                    assert_eq!(
                        compose_forest(&zero_forest(x, a), &m).unwrap(),
                        zero_forest(x, b)
                    );
                    assert_eq!(
                        compose_forest(&m, &zero_forest(b, x)).unwrap(),
                        zero_forest(a, x)
                    );
                }
            }
        }
    }
}

#[test]
fn forest_composition_is_associative_at_three_vertices() {
    let objs = forest_objects(3);
    let n = objs.len();
    let mut hom = Vec::with_capacity(n * n);
    for a in &objs {
        for b in &objs {
            hom.push(hom_set_forests(a, b).unwrap());
        }
    }
    let mut checked = 0u64;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let pairs: Vec<_> = hom[i * n + j]
                    .iter()
                    .flat_map(|m1| {
                        hom[j * n + k]
                            .iter()
                            .map(move |m2| (m1, m2, compose_forest(m1, m2).unwrap()))
                    })
                    .collect();
                for l in 0..n {
                    for (m1, m2, m12) in &pairs {
                        for m3 in &hom[k * n + l] {
                            let left = compose_forest(m12, m3).unwrap();
                            let right =
                                compose_forest(m1, &compose_forest(m2, m3).unwrap()).unwrap();
                            assert_eq!(left, right, "associativity fails");
                            checked += 1;
                        }
                    }
                }
            }
        }
    }
    assert_eq!(checked, 670_355, "the exhaustive triple count moved");
}

#[test]
fn forest_monos_and_epis_are_torsors_over_aut() {
    for n in 0..=4 {
        let forests = if n == 0 {
            vec![Forest::empty()]
        } else {
            enumerate_forests(n)
        };
        for f in forests {
            let k = LabeledForest::from_forest(&f);
            for c in admissible_cuts(&k) {
                let p_labels = pset(&k, &c);
                let r_labels: BTreeSet<u32> =
                    k.label_set().difference(&p_labels).copied().collect();
                let p = k.restrict(&p_labels);
                let r = k.restrict(&r_labels);

                let monos = hom_set_forests(&p, &k)
                    .unwrap()
                    .into_iter()
                    .filter(|m| m.is_mono() && m.image_labels() == p_labels)
                    .count();
                assert_eq!(
                    Int::from(monos),
                    p.aut_order(),
                    "monos with fixed image are not an Aut-torsor for {f}"
                );

                let epis = hom_set_forests(&k, &r)
                    .unwrap()
                    .into_iter()
                    .filter(|m| m.is_epi() && m.kernel_labels() == p_labels)
                    .count();
                assert_eq!(
                    Int::from(epis),
                    r.aut_order(),
                    "epis with fixed kernel are not an Aut-torsor for {f}"
                );
            }
        }
    }
}

#[test]
fn forest_hom_and_extension_counts_match_worked_values() {
    let dot = LabeledForest::parse("1").unwrap();
    let two = LabeledForest::parse("1 2").unwrap();
    let chain = LabeledForest::parse("1(2)").unwrap();
    assert_eq!(hom_set_forests(&dot, &dot).unwrap().len(), 2);
    assert_eq!(hom_set_forests(&dot, &chain).unwrap().len(), 2);
    assert_eq!(count_short_exact(&dot, &dot, &two).unwrap(), 2);
    assert_eq!(count_short_exact(&dot, &dot, &chain).unwrap(), 1);
}

#[test]
fn graph_identity_and_zero_laws() {
    let objs = graph_family();
    for a in &objs {
        for b in &objs {
            for m in hom_set_graphs(a, b).unwrap() {
                assert_eq!(compose_graph(&identity_graph(a), &m).unwrap(), m);
                assert_eq!(compose_graph(&m, &identity_graph(b)).unwrap(), m);
                for x in objs.iter().take(3) {
                    assert_eq!(
                        compose_graph(&zero_graph(x, a), &m).unwrap(),
                        zero_graph(x, b)
                    );
                    assert_eq!(
                        compose_graph(&m, &zero_graph(b, x)).unwrap(),
                        zero_graph(a, x)
                    );
                }
            }
        }
    }
}

#[test]
fn graph_composition_is_associative_on_the_family() {
    let objs = graph_family();
    let n = objs.len();
    let mut hom = Vec::with_capacity(n * n);
    for a in &objs {
        for b in &objs {
            hom.push(hom_set_graphs(a, b).unwrap());
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let pairs: Vec<_> = hom[i * n + j]
                    .iter()
                    .flat_map(|m1| {
                        hom[j * n + k]
                            .iter()
                            .map(move |m2| (m1, m2, compose_graph(m1, m2).unwrap()))
                    })
                    .collect();
                for l in 0..n {
                    for (m1, m2, m12) in &pairs {
                        for m3 in &hom[k * n + l] {
                            let left = compose_graph(m12, m3).unwrap();
                            let right =
                                compose_graph(m1, &compose_graph(m2, m3).unwrap()).unwrap();
                            assert_eq!(left, right, "associativity fails");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn graph_monos_and_epis_are_torsors_over_aut() {
    let hosts = vec![
        fixtures::bubble(),
        fixtures::triangle(),
        fixtures::diamond(),
        fixtures::bubble_chain(),
        fixtures::bubble_in_triangle(),
    ];
    for k in hosts {
        for w in proper_selections(&k) {
            let piece = induced(&k, &w).unwrap();
            let monos = hom_set_graphs(&piece, &k)
                .unwrap()
                .into_iter()
                .filter(|m| m.gamma1.is_empty() && m.gamma2 == w)
                .count();
            assert_eq!(
                Int::from(monos),
                aut_order(&piece),
                "monos with fixed image are not an Aut-torsor for {k} at {w:?}"
            );

            let (q, _) = contract(&k, &w).unwrap();
            let full_q: BTreeSet<u32> = q.vertices().iter().copied().collect();
            let epis = hom_set_graphs(&k, &q)
                .unwrap()
                .into_iter()
                .filter(|m| m.gamma1 == w && m.gamma2 == full_q)
                .count();
            assert_eq!(
                Int::from(epis),
                aut_order(&q),
                "epis with fixed kernel are not an Aut-torsor for {k} at {w:?}"
            );
        }
    }
}

#[test]
fn graph_hom_sizes_split_into_zero_plus_automorphisms() {
    for g in [fixtures::bubble(), fixtures::triangle()] {
        let homs = hom_set_graphs(&g, &g).unwrap();
        let auts = aut_order(&g);
        assert_eq!(Int::from(homs.len()), auts.clone() + Int::from(1));
        assert!(homs.contains(&identity_graph(&g)));
        assert!(homs.contains(&zero_graph(&g, &g)));
        let isos = homs
            .iter()
            .filter(|m| m.gamma1.is_empty() && m.gamma2.len() == g.vertices().len())
            .count();
        assert_eq!(Int::from(isos), auts);
    }
}
