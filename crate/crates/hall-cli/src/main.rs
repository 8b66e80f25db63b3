//! `hall` — exact-arithmetic command line for the Hall algebras of labeled
//! rooted forests and φ³ Feynman graphs.
//!
//! Six command groups mirror the library layers: `tree` and `graph` expose
//! canonical forms and structural queries on single objects, `treealg` and
//! `graphalg` expose the Hopf/pre-Lie operations, `oracle` materializes the
//! underlying categories (Hom sets, composition, extension counts), and
//! `verify` runs batch law-checking suites.
//!
//! All output is exact-rational plain text; `--json` switches to a
//! machine-readable rendering with identical numeric content.  Exit codes:
//! `0` success, `1` verification failure (a counterexample is printed),
//! `2` usage error, `3` parse or validation error.

mod input;
mod verify;

use std::collections::BTreeMap;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};
use serde_json::{json, Value};

use hallalg::category::{
    compose_forest, compose_graph, count_short_exact, count_short_exact_graphs, hom_set_forests,
    hom_set_graphs, zero_forest, zero_graph, ForestMorphism, GraphMorphism,
};
use hallalg::combo::{render_coeff, BasisKey, LinearCombo, PairCombo};
use hallalg::forest::cut::{admissible_cuts, apply_cut, pset};
use hallalg::forest::enumerate_trees;
use hallalg::graph::sub::{
    contract, enumerate_subgraphs, insert_at_edge, insert_at_vertex, is_primitive,
};
use hallalg::graph::{canonical_form, HalfEdgeId, VertexId};
use hallalg::graphalg;
use hallalg::treealg;
use hallalg::{coeff, ForestCombo, GraphCombo};

use input::{
    parse_forest, parse_graph, parse_halfedge_pair, parse_labeled, parse_tree, parse_vertex_set,
    render_id_set,
};

/// A failed invocation: bad input (exit 3) or a disproved law (exit 1).
#[derive(Debug)]
pub enum Failure {
    Input(String),
    Verify(String),
}

/// One command's result in both output formats.
struct Out {
    text: String,
    json: Value,
}

impl Out {
    fn new(text: impl Into<String>, json: Value) -> Self {
        Out { text: text.into(), json }
    }
}

#[derive(Parser)]
#[command(
    name = "hall",
    version,
    about = "Exact Hall algebras of rooted forests and φ³ Feynman graphs",
    long_about = "Canonical forms, Hopf-algebra operations, pre-Lie brackets, a brute-force\n\
                  categorical oracle, and batch verification suites, all in exact rational\n\
                  arithmetic.\n\n\
                  Graph arguments are resolved as: existing file path, built-in fixture name\n\
                  (BUB, TRI, G_a, G_b, optionally with a .fg suffix), then literal graph text\n\
                  (`v/h/p` lines, `; ` accepted as a line separator, `0` for the empty graph).\n\
                  Forest arguments are parenthesis literals such as `(()())`, with `0` for the\n\
                  empty forest; labeled forests read `4(7(1,5),3(2,6))`."
)]
struct Cli {
    /// Emit machine-readable JSON with identical numeric content.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Canonical forms, symmetries, cuts, and enumeration of rooted trees.
    #[command(subcommand)]
    Tree(TreeCmd),
    /// Hall Hopf algebra and grafting operations on forests.
    #[command(subcommand)]
    Treealg(TreeAlgCmd),
    /// Validation, canonical forms, subgraphs, and surgery on Feynman graphs.
    #[command(subcommand)]
    Graph(GraphCmd),
    /// Hall Hopf algebra, insertion products, and brackets on graphs.
    #[command(subcommand)]
    Graphalg(GraphAlgCmd),
    /// Brute-force categorical oracle: Hom sets, composition, extensions.
    #[command(subcommand)]
    Oracle(OracleCmd),
    /// Batch law-verification suites (exit 0 only if every law holds).
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Subcommand)]
enum TreeCmd {
    /// Print the canonical encoding of a forest.
    Canon { forest: String },
    /// Print the automorphism group order of a forest.
    Aut { forest: String },
    /// List the admissible cuts of a labeled forest with their branch (P)
    /// and trunk (R) parts.
    Cuts { forest: String },
    /// List all canonical rooted trees with exactly N vertices.
    Enumerate {
        n: usize,
        /// Print only the number of trees.
        #[arg(long)]
        count: bool,
    },
}

#[derive(Subcommand)]
enum TreeAlgCmd {
    /// Hall product of two forests.
    Product { f1: String, f2: String },
    /// Coproduct of a forest (sum over component splits).
    Coproduct { forest: String },
    /// Antipode of a forest.
    Antipode { forest: String },
    /// Grafting pre-Lie product of two trees (first grafted onto second).
    Prelie { t1: String, t2: String },
    /// Grafting bracket [t1, t2] of two trees.
    Bracket { t1: String, t2: String },
    /// Hall structure constant: the coefficient of K in the product F1 × F2.
    Hconst { f1: String, f2: String, k: String },
}

#[derive(Subcommand)]
enum GraphCmd {
    /// Validate a graph and report its basic shape.
    Validate { graph: String },
    /// Print the canonical serialization of a graph.
    Canon { graph: String },
    /// Print the automorphism group order of a graph.
    Aut { graph: String },
    /// List the minimal contractible subgraph selections of a graph.
    Subgraphs { graph: String },
    /// Contract the subgraph on the given vertices (e.g. `3,4`) and print
    /// the quotient graph.
    Contract { graph: String, vertices: String },
    /// Insert a guest graph at a vertex (3 external legs) or into an
    /// internal edge (2 external legs), summing over leg matchings.
    #[command(group(ArgGroup::new("site").required(true).args(["vertex", "edge"])))]
    Insert {
        host: String,
        guest: String,
        /// Host vertex to replace by the guest.
        #[arg(long)]
        vertex: Option<VertexId>,
        /// Host internal edge to cut, as the half-edge pair `a,b`.
        #[arg(long)]
        edge: Option<String>,
    },
    /// Test whether a graph is primitive (no proper contractible subgraph).
    Primitive { graph: String },
    /// Print the Grothendieck class of a graph as multiplicities of
    /// primitive generators.
    Class { graph: String },
    /// Test whether a connected graph is one-particle irreducible.
    Onepi { graph: String },
}

#[derive(Subcommand)]
enum GraphAlgCmd {
    /// Insertion pre-Lie product: sum over insertions of G1 into G2.
    PrelieStar { g1: String, g2: String },
    /// Subgraph-counting pre-Lie product on the same span.
    PrelieSharp { g1: String, g2: String },
    /// Bracket [G1, G2] for the insertion product.
    BracketStar { g1: String, g2: String },
    /// Bracket [G1, G2] for the subgraph-counting product.
    BracketSharp { g1: String, g2: String },
    /// Hall product of two graphs.
    Product { g1: String, g2: String },
    /// Coproduct of a graph (sum over contractible subgraph selections).
    Coproduct { graph: String },
}

#[derive(Subcommand)]
enum OracleCmd {
    /// List Hom(A, B) with indices; labeled forests by default, graphs
    /// with --graphs.
    Hom {
        a: String,
        b: String,
        #[arg(long)]
        graphs: bool,
    },
    /// Compose the I-th morphism of Hom(A, B) with the J-th of Hom(B, C).
    Compose {
        a: String,
        b: String,
        c: String,
        i: usize,
        j: usize,
        #[arg(long)]
        graphs: bool,
    },
    /// Count the short exact sequences 0 → A → K → B → 0.
    Ses {
        a: String,
        b: String,
        k: String,
        #[arg(long)]
        graphs: bool,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Hopf-algebra laws for forests up to --max-size vertices.
    HopfTrees {
        #[arg(long, default_value_t = 5)]
        max_size: usize,
    },
    /// Hopf-algebra laws for graphs up to --max-size total loops.
    HopfGraphs {
        #[arg(long, default_value_t = 2)]
        max_size: usize,
        /// Check associativity on every triple instead of only those with
        /// a two-leg first factor.  The unqualified law genuinely fails at
        /// three total loops; this flag demonstrates the counterexample.
        #[arg(long)]
        unrestricted: bool,
    },
    /// Left pre-Lie law for grafting (trees up to --max-size total
    /// vertices) and for both graph insertion products.
    Prelie {
        #[arg(long, default_value_t = 7)]
        max_size: usize,
    },
    /// Antisymmetry and Jacobi for the derived brackets.
    Jacobi {
        #[arg(long, default_value_t = 6)]
        max_size: usize,
    },
    /// Hall coefficients against independent short-exact-sequence counts.
    HallOracle {
        #[arg(long, default_value_t = 5)]
        max_size: usize,
    },
    /// The scaling map intertwines the two graph brackets.
    PhiIntertwiner,
    /// The headline bracket computation [BUB, TRI] = 6·G_a − 12·G_b.
    PaperExample,
}

/// Prints a line to stdout, treating a closed pipe as a normal exit
/// condition rather than a panic (e.g. when piped into `head`).
fn emit(line: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{line}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(out) => {
            if cli.json {
                emit(&serde_json::to_string_pretty(&out.json).expect("valid JSON"));
            } else {
                emit(&out.text);
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Verify(msg)) => {
            eprintln!("FAIL: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(cmd: &Command) -> Result<Out, Failure> {
    match cmd {
        Command::Tree(c) => run_tree(c),
        Command::Treealg(c) => run_treealg(c),
        Command::Graph(c) => run_graph(c),
        Command::Graphalg(c) => run_graphalg(c),
        Command::Oracle(c) => run_oracle(c),
        Command::Verify(c) => run_verify(c),
    }
}

// ---------------------------------------------------------------------------
// Output helpers.
// ---------------------------------------------------------------------------

fn combo_out<K: BasisKey>(x: &LinearCombo<K>) -> Out {
    let mut terms: Vec<(String, String)> =
        x.iter().map(|(k, c)| (k.literal(), render_coeff(c))).collect();
    terms.sort();
    let json = json!({
        "type": "combo",
        "terms": terms
            .iter()
            .map(|(lit, c)| json!({ "coeff": c, "basis": lit }))
            .collect::<Vec<_>>(),
    });
    Out::new(x.render(), json)
}

fn pair_out<K: BasisKey>(x: &PairCombo<K>) -> Out {
    let mut terms: Vec<(String, String, String)> = x
        .iter()
        .map(|((a, b), c)| (a.literal(), b.literal(), render_coeff(c)))
        .collect();
    terms.sort();
    let json = json!({
        "type": "pair-combo",
        "terms": terms
            .iter()
            .map(|(a, b, c)| json!({ "coeff": c, "left": a, "right": b }))
            .collect::<Vec<_>>(),
    });
    Out::new(x.render(), json)
}

fn int_out(label: &str, n: impl std::fmt::Display) -> Out {
    let text = n.to_string();
    Out::new(text.clone(), json!({ "type": label, "value": text }))
}

fn bool_out(b: bool) -> Out {
    Out::new(b.to_string(), json!({ "type": "bool", "value": b }))
}

fn verify_out(lines: Vec<String>) -> Out {
    let mut text = lines.clone();
    text.push("PASS".to_string());
    Out::new(
        text.join("\n"),
        json!({ "type": "verify", "status": "pass", "checks": lines }),
    )
}

fn map_entries<A: std::fmt::Display, B: std::fmt::Display>(m: &BTreeMap<A, B>) -> String {
    let inner: Vec<String> = m.iter().map(|(a, b)| format!("{a}->{b}")).collect();
    format!("{{{}}}", inner.join(","))
}

fn forest_morphism_line(m: &ForestMorphism) -> String {
    format!(
        "ker={} img={} map={}",
        render_id_set(&m.kernel_labels()),
        render_id_set(&m.image_labels()),
        map_entries(&m.f)
    )
}

fn graph_morphism_line(m: &GraphMorphism) -> String {
    format!(
        "ker={} img={} vmap={} hmap={}",
        render_id_set(&m.gamma1),
        render_id_set(&m.gamma2),
        map_entries(&m.f.vmap),
        map_entries(&m.f.hmap)
    )
}

// ---------------------------------------------------------------------------
// tree
// ---------------------------------------------------------------------------

fn run_tree(cmd: &TreeCmd) -> Result<Out, Failure> {
    match cmd {
        TreeCmd::Canon { forest } => {
            let f = parse_forest(forest)?;
            let lit = f.literal();
            Ok(Out::new(lit.clone(), json!({ "type": "forest", "canonical": lit })))
        }
        TreeCmd::Aut { forest } => {
            let f = parse_forest(forest)?;
            Ok(int_out("integer", f.aut_order()))
        }
        TreeCmd::Cuts { forest } => {
            let f = parse_labeled(forest)?;
            let mut lines = Vec::new();
            let mut items = Vec::new();
            for cut in admissible_cuts(&f) {
                let p = pset(&f, &cut);
                let (branch, trunk) =
                    apply_cut(&f, &cut).map_err(|e| Failure::Input(e.to_string()))?;
                lines.push(format!(
                    "{} | P: {} | R: {}",
                    render_id_set(&p),
                    branch.literal(),
                    trunk.literal()
                ));
                items.push(json!({
                    "pset": p.iter().copied().collect::<Vec<_>>(),
                    "p": branch.literal(),
                    "r": trunk.literal(),
                }));
            }
            let json = json!({ "type": "cuts", "count": items.len(), "items": items });
            Ok(Out::new(lines.join("\n"), json))
        }
        TreeCmd::Enumerate { n, count } => {
            let trees = enumerate_trees(*n);
            let encodings: Vec<String> =
                trees.iter().map(|t| t.encoding().to_string()).collect();
            let json = json!({
                "type": "trees",
                "count": encodings.len(),
                "trees": encodings,
            });
            let text = if *count {
                encodings.len().to_string()
            } else {
                encodings.join("\n")
            };
            Ok(Out::new(text, json))
        }
    }
}

// ---------------------------------------------------------------------------
// treealg
// ---------------------------------------------------------------------------

fn run_treealg(cmd: &TreeAlgCmd) -> Result<Out, Failure> {
    match cmd {
        TreeAlgCmd::Product { f1, f2 } => {
            let a = parse_forest(f1)?;
            let b = parse_forest(f2)?;
            Ok(combo_out(&treealg::hall_product_basis(&a, &b)))
        }
        TreeAlgCmd::Coproduct { forest } => {
            let f = parse_forest(forest)?;
            Ok(pair_out(&treealg::coproduct(&ForestCombo::delta(f))))
        }
        TreeAlgCmd::Antipode { forest } => {
            let f = parse_forest(forest)?;
            Ok(combo_out(&treealg::antipode(&ForestCombo::delta(f))))
        }
        TreeAlgCmd::Prelie { t1, t2 } => {
            let a = parse_tree(t1)?;
            let b = parse_tree(t2)?;
            Ok(combo_out(&treealg::prelie_tree(&a, &b)))
        }
        TreeAlgCmd::Bracket { t1, t2 } => {
            let a = parse_tree(t1)?;
            let b = parse_tree(t2)?;
            Ok(combo_out(&treealg::bracket_tree(&a, &b)))
        }
        TreeAlgCmd::Hconst { f1, f2, k } => {
            let a = parse_forest(f1)?;
            let b = parse_forest(f2)?;
            let kk = parse_forest(k)?;
            let h = treealg::structure_constant_h(&a, &b, &kk);
            let text = render_coeff(&h);
            Ok(Out::new(text.clone(), json!({ "type": "rational", "value": text })))
        }
    }
}

// ---------------------------------------------------------------------------
// graph
// ---------------------------------------------------------------------------

fn run_graph(cmd: &GraphCmd) -> Result<Out, Failure> {
    match cmd {
        GraphCmd::Validate { graph } => {
            let g = parse_graph(graph)?;
            let raw = g.raw();
            if raw.is_empty() {
                return Ok(Out::new(
                    "ok: empty graph",
                    json!({ "type": "validation", "empty": true }),
                ));
            }
            let connected = raw.is_connected();
            let onepi = if connected {
                g.is_1pi().map_err(|e| Failure::Input(e.to_string()))?
            } else {
                false
            };
            let text = format!(
                "ok: {} vertices, {} internal edges, {} external legs, loop number {}, {}{}",
                raw.vertex_count(),
                raw.internal_pairs().len(),
                raw.external_halfedges().len(),
                raw.loop_number(),
                if connected { "connected" } else { "disconnected" },
                if connected && onepi { ", 1PI" } else { "" },
            );
            let json = json!({
                "type": "validation",
                "empty": false,
                "vertices": raw.vertex_count(),
                "internal_edges": raw.internal_pairs().len(),
                "external_legs": raw.external_halfedges().len(),
                "loop_number": raw.loop_number(),
                "connected": connected,
                "one_pi": connected && onepi,
            });
            Ok(Out::new(text, json))
        }
        GraphCmd::Canon { graph } => {
            let g = parse_graph(graph)?;
            let canon = canonical_form(&g);
            let text = if canon.graph().raw().is_empty() {
                "0".to_string()
            } else {
                canon.serialization().to_string()
            };
            Ok(Out::new(
                text,
                json!({ "type": "graph", "canonical": canonical_form(&g).literal() }),
            ))
        }
        GraphCmd::Aut { graph } => {
            let g = parse_graph(graph)?;
            Ok(int_out("integer", hallalg::graph::aut_order(&g)))
        }
        GraphCmd::Subgraphs { graph } => {
            let g = parse_graph(graph)?;
            let subs = enumerate_subgraphs(&g);
            let lines: Vec<String> = subs.iter().map(render_id_set).collect();
            let json = json!({
                "type": "selections",
                "count": subs.len(),
                "items": subs
                    .iter()
                    .map(|w| w.iter().copied().collect::<Vec<_>>())
                    .collect::<Vec<_>>(),
            });
            Ok(Out::new(lines.join("\n"), json))
        }
        GraphCmd::Contract { graph, vertices } => {
            let g = parse_graph(graph)?;
            let w = parse_vertex_set(vertices)?;
            let (q, _) = contract(&g, &w).map_err(|e| Failure::Input(e.to_string()))?;
            let text = if q.raw().is_empty() { "0".to_string() } else { q.raw().serialize() };
            Ok(Out::new(
                text,
                json!({ "type": "graph", "canonical": canonical_form(&q).literal() }),
            ))
        }
        GraphCmd::Insert { host, guest, vertex, edge } => {
            let h = parse_graph(host)?;
            let g = parse_graph(guest)?;
            let legs = g.raw().external_halfedges();
            let mut result = GraphCombo::zero();
            let mut add = |hs: &[HalfEdgeId], build: &mut dyn FnMut(
                &BTreeMap<HalfEdgeId, HalfEdgeId>,
            )
                -> Result<hallalg::graph::FeynmanGraph, Failure>| {
                for perm in permutations(&legs) {
                    let map: BTreeMap<HalfEdgeId, HalfEdgeId> =
                        hs.iter().copied().zip(perm.iter().copied()).collect();
                    let inserted = build(&map)?;
                    result.add_term(canonical_form(&inserted), coeff(1));
                }
                Ok::<(), Failure>(())
            };
            match (vertex, edge) {
                (Some(v), None) => {
                    let hs = h.raw().halfedges_at(*v);
                    if hs.is_empty() {
                        return Err(Failure::Input(format!("host has no vertex {v}")));
                    }
                    add(&hs, &mut |map| {
                        insert_at_vertex(&h, *v, &g, map)
                            .map_err(|e| Failure::Input(e.to_string()))
                    })?;
                }
                (None, Some(e)) => {
                    let (a, b) = parse_halfedge_pair(e)?;
                    add(&[a, b], &mut |map| {
                        insert_at_edge(&h, (a, b), &g, map)
                            .map_err(|e| Failure::Input(e.to_string()))
                    })?;
                }
                _ => unreachable!("clap enforces exactly one site"),
            }
            Ok(combo_out(&result))
        }
        GraphCmd::Primitive { graph } => {
            let g = parse_graph(graph)?;
            Ok(bool_out(is_primitive(&g)))
        }
        GraphCmd::Class { graph } => {
            let g = parse_graph(graph)?;
            let class = graphalg::grothendieck_class(&g);
            let json = json!({
                "type": "class",
                "generators": class
                    .iter()
                    .map(|(k, n)| json!({ "multiplicity": n, "basis": k.literal() }))
                    .collect::<Vec<_>>(),
            });
            Ok(Out::new(class.to_string(), json))
        }
        GraphCmd::Onepi { graph } => {
            let g = parse_graph(graph)?;
            let b = g.is_1pi().map_err(|e| Failure::Input(e.to_string()))?;
            Ok(bool_out(b))
        }
    }
}

/// All permutations of a slice, in lexicographic position order.
fn permutations<T: Copy>(items: &[T]) -> Vec<Vec<T>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        let mut rest: Vec<T> = items.to_vec();
        rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, x);
            out.push(tail);
        }
    }
    out
}

// ---------------------------------------------------------------------------
// graphalg
// ---------------------------------------------------------------------------

fn run_graphalg(cmd: &GraphAlgCmd) -> Result<Out, Failure> {
    let op_err = |e: hallalg::error::GraphError| Failure::Input(e.to_string());
    match cmd {
        GraphAlgCmd::PrelieStar { g1, g2 } => {
            let a = parse_graph(g1)?;
            let b = parse_graph(g2)?;
            Ok(combo_out(&graphalg::prelie_star(&a, &b).map_err(op_err)?))
        }
        GraphAlgCmd::PrelieSharp { g1, g2 } => {
            let a = parse_graph(g1)?;
            let b = parse_graph(g2)?;
            Ok(combo_out(&graphalg::prelie_sharp(&a, &b).map_err(op_err)?))
        }
        GraphAlgCmd::BracketStar { g1, g2 } => {
            let a = parse_graph(g1)?;
            let b = parse_graph(g2)?;
            Ok(combo_out(&graphalg::bracket_star(&a, &b).map_err(op_err)?))
        }
        GraphAlgCmd::BracketSharp { g1, g2 } => {
            let a = parse_graph(g1)?;
            let b = parse_graph(g2)?;
            Ok(combo_out(&graphalg::bracket_sharp(&a, &b).map_err(op_err)?))
        }
        GraphAlgCmd::Product { g1, g2 } => {
            let a = parse_graph(g1)?;
            let b = parse_graph(g2)?;
            Ok(combo_out(&graphalg::hall_product_basis(
                &canonical_form(&a),
                &canonical_form(&b),
            )))
        }
        GraphAlgCmd::Coproduct { graph } => {
            let g = parse_graph(graph)?;
            Ok(pair_out(&graphalg::coproduct_basis(&canonical_form(&g))))
        }
    }
}

// ---------------------------------------------------------------------------
// oracle
// ---------------------------------------------------------------------------

fn oracle_err(e: impl std::fmt::Display) -> Failure {
    Failure::Input(e.to_string())
}

fn run_oracle(cmd: &OracleCmd) -> Result<Out, Failure> {
    match cmd {
        OracleCmd::Hom { a, b, graphs } => {
            let lines = if *graphs {
                let ga = parse_graph(a)?;
                let gb = parse_graph(b)?;
                hom_set_graphs(&ga, &gb)
                    .map_err(oracle_err)?
                    .iter()
                    .map(graph_morphism_line)
                    .collect::<Vec<_>>()
            } else {
                let fa = parse_labeled(a)?;
                let fb = parse_labeled(b)?;
                hom_set_forests(&fa, &fb)
                    .map_err(oracle_err)?
                    .iter()
                    .map(forest_morphism_line)
                    .collect::<Vec<_>>()
            };
            let mut text: Vec<String> = lines
                .iter()
                .enumerate()
                .map(|(i, l)| format!("{i}: {l}"))
                .collect();
            text.push(format!("total: {}", lines.len()));
            let json = json!({ "type": "homs", "count": lines.len(), "items": lines });
            Ok(Out::new(text.join("\n"), json))
        }
        OracleCmd::Compose { a, b, c, i, j, graphs } => {
            let pick = |len: usize, idx: usize, name: &str| -> Result<(), Failure> {
                if idx < len {
                    Ok(())
                } else {
                    Err(Failure::Input(format!(
                        "index {idx} out of range for {name} ({len} morphisms)"
                    )))
                }
            };
            if *graphs {
                let ga = parse_graph(a)?;
                let gb = parse_graph(b)?;
                let gc = parse_graph(c)?;
                let hom1 = hom_set_graphs(&ga, &gb).map_err(oracle_err)?;
                let hom2 = hom_set_graphs(&gb, &gc).map_err(oracle_err)?;
                pick(hom1.len(), *i, "Hom(A, B)")?;
                pick(hom2.len(), *j, "Hom(B, C)")?;
                let m = compose_graph(&hom1[*i], &hom2[*j]).map_err(oracle_err)?;
                let zero = m == zero_graph(&ga, &gc);
                let line = graph_morphism_line(&m);
                let json = json!({ "type": "morphism", "zero": zero, "morphism": line });
                Ok(Out::new(format!("{line}\nzero: {zero}"), json))
            } else {
                let fa = parse_labeled(a)?;
                let fb = parse_labeled(b)?;
                let fc = parse_labeled(c)?;
                let hom1 = hom_set_forests(&fa, &fb).map_err(oracle_err)?;
                let hom2 = hom_set_forests(&fb, &fc).map_err(oracle_err)?;
                pick(hom1.len(), *i, "Hom(A, B)")?;
                pick(hom2.len(), *j, "Hom(B, C)")?;
                let m = compose_forest(&hom1[*i], &hom2[*j]).map_err(oracle_err)?;
                let zero = m == zero_forest(&fa, &fc);
                let line = forest_morphism_line(&m);
                let json = json!({ "type": "morphism", "zero": zero, "morphism": line });
                Ok(Out::new(format!("{line}\nzero: {zero}"), json))
            }
        }
        OracleCmd::Ses { a, b, k, graphs } => {
            let n = if *graphs {
                let ga = parse_graph(a)?;
                let gb = parse_graph(b)?;
                let gk = parse_graph(k)?;
                count_short_exact_graphs(&ga, &gb, &gk).map_err(oracle_err)?
            } else {
                let fa = parse_labeled(a)?;
                let fb = parse_labeled(b)?;
                let fk = parse_labeled(k)?;
                count_short_exact(&fa, &fb, &fk).map_err(oracle_err)?
            };
            Ok(int_out("integer", n))
        }
    }
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

fn positive(n: usize) -> Result<usize, Failure> {
    if n == 0 {
        Err(Failure::Input("--max-size must be positive".to_string()))
    } else {
        Ok(n)
    }
}

fn run_verify(cmd: &VerifyCmd) -> Result<Out, Failure> {
    let lines = match cmd {
        VerifyCmd::HopfTrees { max_size } => verify::hopf_trees(positive(*max_size)?)?,
        VerifyCmd::HopfGraphs { max_size, unrestricted } => {
            verify::hopf_graphs(positive(*max_size)?, *unrestricted)?
        }
        VerifyCmd::Prelie { max_size } => verify::prelie(positive(*max_size)?)?,
        VerifyCmd::Jacobi { max_size } => verify::jacobi(positive(*max_size)?)?,
        VerifyCmd::HallOracle { max_size } => verify::hall_oracle(positive(*max_size)?)?,
        VerifyCmd::PhiIntertwiner => verify::phi_intertwiner()?,
        VerifyCmd::PaperExample => verify::paper_example()?,
    };
    Ok(verify_out(lines))
}
