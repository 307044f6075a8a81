//! The headline computations, one check per acceptance criterion.
//!
//! Every check returns an [`Outcome`] with a verdict, the evidence it
//! gathered and the wall time against its limit. `mincayley repro` and the
//! acceptance test suite both run these.

use std::rc::Rc;
use std::time::{Duration, Instant};

use crate::chromatic::{
    chi_min_bruteforce, chi_min_classify, chromatic_number, is_k_colorable, max_clique, verify_vertex_coloring,
    SolveBudget,
};
use crate::constructive::{generalized_dihedral_three_coloring, DedekindColorer, DihedralContext};
use crate::error::Result;
use crate::genset::{
    analyze_genset, binary_lambert_w, chromatic_bound, enumerate_minimal_generating_sets, lambert_w_upper_estimate,
    BoundBasis,
};
use crate::graph::{are_isomorphic, cayley_graph, graph_product, schreier_graph, Graph, ProductKind};
use crate::group::{catalogue, cyclic, generalized_dihedral, make_group, Elem, FiniteGroup, Subgroup};
use crate::popular::{
    descartes_graph, enumerate_edge_colorings, search_edge_coloring, verify_descartes, CycleScope, Property,
    SearchOutcome,
};

pub const CRITERIA: usize = 12;

pub const ORDER_21_SPEC: &str = "sdp:7,3,2";
pub const ORDER_21_GENS: &str = "(1,0),(0,1)";
pub const Q32_SPEC: &str = "dicyclic:32";
/// `b², a⁴, a⁵b, a³b, a⁶b` with `a = (1,0)` and `b = (0,1)`.
pub const Q32_GENS: &str = "(8,0),(4,0),(5,1),(3,1),(6,1)";

#[derive(Clone, Debug)]
pub struct Outcome {
    pub id: usize,
    pub title: &'static str,
    pub passed: bool,
    pub details: Vec<String>,
    pub elapsed: Duration,
    pub limit: Option<Duration>,
}

impl Outcome {
    pub fn line(&self) -> String {
        let limit = self
            .limit
            .map(|l| format!(" / limit {} s", l.as_secs()))
            .unwrap_or_default();
        format!(
            "[{}] criterion {:>2}: {} ({:.2} s{limit})",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.elapsed.as_secs_f64()
        )
    }
}

type CheckFn = fn(SolveBudget) -> Result<Checks>;

/// Collects evidence lines; any failed check fails the criterion.
#[derive(Default)]
struct Checks {
    ok: bool,
    lines: Vec<String>,
}

impl Checks {
    fn new() -> Self {
        Checks {
            ok: true,
            lines: Vec::new(),
        }
    }

    fn check(&mut self, cond: bool, what: impl Into<String>) -> bool {
        let what = what.into();
        self.lines.push(if cond { format!("ok: {what}") } else { format!("FAILED: {what}") });
        self.ok &= cond;
        cond
    }

    fn note(&mut self, what: impl Into<String>) {
        self.lines.push(what.into());
    }
}

/// Solver budget from `REPRO_TIME_LIMIT` (seconds), default 300 s.
pub fn budget_from_env() -> SolveBudget {
    std::env::var("REPRO_TIME_LIMIT")
        .ok()
        .and_then(|s| s.trim().parse::<u64>().ok())
        .filter(|&s| s > 0)
        .map(SolveBudget::seconds)
        .unwrap_or_default()
}

pub fn run_all(budget: SolveBudget) -> Vec<Outcome> {
    (1..=CRITERIA).map(|id| run_criterion(id, budget)).collect()
}

pub fn table(outcomes: &[Outcome]) -> String {
    let mut out = String::new();
    for o in outcomes {
        out.push_str(&o.line());
        out.push('\n');
        for d in &o.details {
            out.push_str("      ");
            out.push_str(d);
            out.push('\n');
        }
    }
    let passed = outcomes.iter().filter(|o| o.passed).count();
    out.push_str(&format!("{passed}/{} criteria passed\n", outcomes.len()));
    out
}

pub fn run_criterion(id: usize, budget: SolveBudget) -> Outcome {
    let (title, limit_secs, check): (&'static str, Option<u64>, CheckFn) = match id {
        1 => ("chi of the order-21 minimal Cayley graph is 4", Some(10), order_21_chromatic),
        2 => ("chi of the Q32 semiminimal Cayley graph is 7", Some(300), q32_chromatic),
        3 => ("generating-set analysis of the worked examples", None, genset_examples),
        4 => ("Dedekind 3-coloring on abelian catalogue groups", Some(60), dedekind_sweep),
        5 => ("generalized dihedral 3-coloring, Dih(Z_n), 3 <= n <= 12", None, dihedral_sweep),
        6 => ("chi_min classification agrees with brute force", None, chi_min_agreement),
        7 => ("edge-coloring searches on K4-e, K6 and K5", Some(300), clique_searches),
        8 => ("Descartes graph G_3", Some(600), descartes_three),
        9 => ("chromatic bounds and the Lambert W estimate", None, bounds),
        10 => ("Cay(Q32, C) is H strong-times K2", Some(30), strong_product),
        11 => ("star graph on S4 is bipartite with K4 factors", None, star_graph),
        12 => ("clique ceilings across the corpus", None, clique_ceilings),
        _ => panic!("no criterion {id}"),
    };
    let start = Instant::now();
    let result = check(budget);
    let elapsed = start.elapsed();
    let limit = limit_secs.map(Duration::from_secs);
    let (mut passed, mut details) = match result {
        Ok(c) => (c.ok, c.lines),
        Err(e) => (false, vec![format!("FAILED: {e}")]),
    };
    if let Some(l) = limit {
        if elapsed > l {
            passed = false;
            details.push(format!("FAILED: took {:.1} s, limit {} s", elapsed.as_secs_f64(), l.as_secs()));
        }
    }
    Outcome {
        id,
        title,
        passed,
        details,
        elapsed,
        limit,
    }
}

fn group_and_gens(spec: &str, gens: &str) -> Result<(FiniteGroup, Vec<Elem>)> {
    let g = make_group(spec)?;
    let c = g.parse_elements(gens)?;
    Ok((g, c))
}

fn proper(graph: &Graph, colors: &[usize]) -> Result<bool> {
    Ok(verify_vertex_coloring(graph, colors)?.is_none())
}

fn order_21_chromatic(budget: SolveBudget) -> Result<Checks> {
    let mut checks = Checks::new();
    let (g, c) = group_and_gens(ORDER_21_SPEC, ORDER_21_GENS)?;
    checks.check(g.order() == 21 && !g.is_abelian(), "sdp:7,3,2 is nonabelian of order 21");
    let graph = cayley_graph(&g, &c)?;
    let (chi, witness) = chromatic_number(&graph, budget)?;
    checks.check(chi == 4, format!("chi = {chi}"));
    checks.check(
        proper(&graph, witness.colors())? && witness.num_colors() == 4,
        "witness 4-coloring verified",
    );
    checks.check(is_k_colorable(&graph, 3, budget)?.is_none(), "no 3-coloring exists");
    // the action x -> 4x gives an isomorphic group; the answer must not move
    let (g4, c4) = group_and_gens("sdp:7,3,4", ORDER_21_GENS)?;
    let (chi4, _) = chromatic_number(&cayley_graph(&g4, &c4)?, budget)?;
    checks.check(chi4 == 4, format!("sdp:7,3,4 with the same pair: chi = {chi4}"));
    Ok(checks)
}

fn q32_chromatic(budget: SolveBudget) -> Result<Checks> {
    let mut checks = Checks::new();
    let (g, c) = group_and_gens(Q32_SPEC, Q32_GENS)?;
    let graph = cayley_graph(&g, &c)?;
    let (chi, witness) = chromatic_number(&graph, budget)?;
    checks.check(chi == 7, format!("chi = {chi}"));
    checks.check(
        proper(&graph, witness.colors())? && witness.num_colors() == 7,
        "witness 7-coloring verified",
    );
    checks.check(is_k_colorable(&graph, 6, budget)?.is_none(), "6-colorability refuted exhaustively");
    Ok(checks)
}

fn genset_examples(_: SolveBudget) -> Result<Checks> {
    let mut checks = Checks::new();
    let (g21, c21) = group_and_gens(ORDER_21_SPEC, ORDER_21_GENS)?;
    let r = analyze_genset(&g21, &c21)?;
    checks.check(r.generates && r.minimal, "order-21 pair is a minimal generating set");
    let (q32, cq) = group_and_gens(Q32_SPEC, Q32_GENS)?;
    let r = analyze_genset(&q32, &cq)?;
    checks.check(
        r.generates && r.semiminimal_in_given_order && !r.minimal,
        "Q32 tuple is semiminimal in the given order, not minimal",
    );
    let z4 = make_group("cyclic:4")?;
    let r = analyze_genset(&z4, &[2, 1])?;
    checks.check(
        r.generates && r.semiminimal_in_given_order && !r.minimal,
        "Z4 (2,1) is semiminimal in the given order, not minimal",
    );
    let r = analyze_genset(&z4, &[1, 2])?;
    checks.check(!r.semiminimal_in_given_order, "Z4 (1,2) is not semiminimal in that order");
    Ok(checks)
}

fn dedekind_sweep(_: SolveBudget) -> Result<Checks> {
    let mut checks = Checks::new();
    let mut total = 0usize;
    let mut groups = 0usize;
    let mut bad = Vec::new();
    for entry in catalogue().into_iter().filter(|e| e.group.is_abelian()) {
        let g = &entry.group;
        groups += 1;
        let colorer = DedekindColorer::new(g)?;
        let sets = enumerate_minimal_generating_sets(g, usize::MAX)?;
        if entry.name == "prod:(cyclic:2)x(prod:(prod:(cyclic:2)x(cyclic:2))x(prod:(cyclic:2)x(cyclic:2)))" {
            // bases of F_2^5: |GL(5,2)| / 5! = 9999360 / 120
            checks.check(sets.len() == 83_328, format!("Z2^5 has {} minimal generating sets (expected 83328)", sets.len()));
        }
        for c in &sets {
            let out = colorer.color(c)?;
            let graph = cayley_graph(g, c)?;
            if out.coloring.num_colors() > 3 || !proper(&graph, out.coloring.colors())? {
                bad.push(format!("{} {:?}", entry.name, c));
            }
        }
        total += sets.len();
    }
    checks.check(
        bad.is_empty(),
        format!("{total} minimal generating sets over {groups} abelian groups colored properly with <= 3 colors"),
    );
    for b in bad.iter().take(5) {
        checks.note(format!("bad: {b}"));
    }
    Ok(checks)
}

fn dihedral_sweep(_: SolveBudget) -> Result<Checks> {
    let mut checks = Checks::new();
    for n in 3..=12 {
        let base = cyclic(n)?;
        let dih = generalized_dihedral(&base)?;
        let sets = enumerate_minimal_generating_sets(&dih, 4)?;
        let mut ok = 0;
        for c in &sets {
            let ctx = DihedralContext::new(&base, c)?;
            let col = generalized_dihedral_three_coloring(&ctx)?;
            let graph = cayley_graph(&dih, c)?;
            if col.num_colors() <= 3 && proper(&graph, col.colors())? {
                ok += 1;
            }
        }
        checks.check(
            ok == sets.len() && !sets.is_empty(),
            format!("Dih(Z_{n}): {ok}/{} minimal generating sets 3-colored", sets.len()),
        );
    }
    Ok(checks)
}

fn chi_min_agreement(budget: SolveBudget) -> Result<Checks> {
    let mut checks = Checks::new();
    let entries: Vec<_> = catalogue().into_iter().filter(|e| e.group.order() <= 16).collect();
    let required = [
        "prod:(cyclic:2)x(cyclic:2)",
        "prod:(cyclic:2)x(cyclic:4)",
        "prod:(cyclic:2)x(prod:(cyclic:2)x(cyclic:2))",
        "sym:3",
        "gdih:(cyclic:4)",
        "dicyclic:8",
        "prod:(cyclic:3)x(cyclic:3)",
        "gdih:(cyclic:5)",
        "dicyclic:12",
    ];
    let names: Vec<&str> = entries.iter().map(|e| e.name.as_str()).collect();
    let missing: Vec<String> = (1..=16)
        .map(|n| format!("cyclic:{n}"))
        .chain(required.iter().map(|s| s.to_string()))
        .filter(|s| !names.contains(&s.as_str()))
        .collect();
    checks.check(missing.is_empty(), format!("required groups present (missing: {missing:?})"));
    let mut disagreements = Vec::new();
    for entry in &entries {
        let classified = chi_min_classify(&entry.group) as usize;
        let brute = chi_min_bruteforce(&entry.group, budget)?;
        if classified != brute {
            disagreements.push(format!("{}: classify {classified}, brute force {brute}", entry.name));
        }
    }
    checks.check(
        disagreements.is_empty(),
        format!("{} groups of order <= 16 agree", entries.len() - disagreements.len()),
    );
    for d in disagreements {
        checks.note(d);
    }
    Ok(checks)
}

fn clique_searches(budget: SolveBudget) -> Result<Checks> {
    let mut checks = Checks::new();
    let k4e = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])?;
    let start = Instant::now();
    let out = search_edge_coloring(&k4e, Property::NoLonely, CycleScope::All, k4e.edge_count(), budget)?;
    let t = start.elapsed();
    checks.check(out == SearchOutcome::Unsat, "K4-e has no no-lonely-color edge coloring");
    checks.check(t < Duration::from_secs(1), format!("K4-e search took {:.3} s (< 1 s)", t.as_secs_f64()));

    let start = Instant::now();
    let out = search_edge_coloring(&Graph::complete(6), Property::OnePopular, CycleScope::Triangles, 15, budget)?;
    let t = start.elapsed();
    checks.check(out == SearchOutcome::Unsat, "K6 has no one-popular coloring even on triangles");
    checks.check(t < Duration::from_secs(300), format!("K6 search took {:.3} s (< 300 s)", t.as_secs_f64()));

    let k5 = Graph::complete(5);
    let sols = enumerate_edge_colorings(&k5, Property::OnePopular, CycleScope::All, 10, budget)?;
    let pentagons = sols.iter().all(|ec| {
        let classes = ec.classes();
        classes.len() == 2
            && classes.values().all(|edges| {
                Graph::from_edges(5, edges)
                    .map(|h| h.edge_count() == 5 && h.is_connected() && (0..5).all(|v| h.degree(v) == 2))
                    .unwrap_or(false)
            })
    });
    checks.check(
        pentagons && !sols.is_empty(),
        format!("all {} one-popular colorings of K5 (up to renaming) are two pentagons", sols.len()),
    );
    // 12 Hamiltonian cycles of K5, each paired with its complement
    checks.check(sols.len() == 6, "exactly 6 = 12/2 pentagon decompositions");
    Ok(checks)
}

fn descartes_three(budget: SolveBudget) -> Result<Checks> {
    let mut checks = Checks::new();
    let d = descartes_graph(3)?;
    checks.check(d.graph.n() == 147, format!("{} vertices", d.graph.n()));
    checks.check(d.graph.edge_count() == 280, format!("{} edges", d.graph.edge_count()));
    checks.check(d.coloring.num_colors() == 37, format!("{} colors", d.coloring.num_colors()));
    let report = verify_descartes(&d)?;
    checks.check(report.x_independent, "X is independent");
    checks.check(report.copies_pass, "every copy passes one-popular exhaustively");
    checks.check(report.condition_one, "every vertex sees each color at most twice");
    checks.check(report.structural, "private matching certificate holds");
    checks.check(report.cycle_check.passed, report.cycle_check.summary());
    let (chi, witness) = chromatic_number(&d.graph, budget)?;
    checks.check(
        chi >= 3 && proper(&d.graph, witness.colors())?,
        format!("chi(G_3) = {chi} (exact, witness verified)"),
    );
    Ok(checks)
}

/// Which guarantee a corpus connection set carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CorpusKind {
    Minimal,
    /// Semiminimal in some order but not minimal.
    Semiminimal,
}

#[derive(Clone, Debug)]
pub struct CorpusGraph {
    pub group_name: String,
    pub group: Rc<FiniteGroup>,
    pub connection: Vec<Elem>,
    pub kind: CorpusKind,
}

/// Per catalogue group of order above 16, how many minimal generating sets
/// (in lexicographic order) enter the corpus.
const CORPUS_LARGE_GROUP_SAMPLE: usize = 24;
/// Semiminimal sets are enumerated for groups up to this order.
const CORPUS_SEMIMINIMAL_MAX_ORDER: usize = 12;
const CORPUS_SEMIMINIMAL_MAX_SIZE: usize = 4;

/// Minimal Cayley graphs of the catalogue (all minimal generating sets up
/// to order 16, a lexicographic sample above), every non-minimal
/// semiminimal set of size at most 4 up to order 12, and the
/// order-21, Q32 and `Z4` examples.
pub fn corpus() -> Result<Vec<CorpusGraph>> {
    let mut out = Vec::new();
    for entry in catalogue() {
        let group = Rc::new(entry.group);
        let mut sets = enumerate_minimal_generating_sets(&group, usize::MAX)?;
        if group.order() > 16 {
            sets.truncate(CORPUS_LARGE_GROUP_SAMPLE);
        }
        for c in sets {
            out.push(CorpusGraph {
                group_name: entry.name.clone(),
                group: Rc::clone(&group),
                connection: c,
                kind: CorpusKind::Minimal,
            });
        }
        if group.order() <= CORPUS_SEMIMINIMAL_MAX_ORDER {
            let others: Vec<Elem> = (1..group.order()).collect();
            for mask in 0u32..1 << others.len() {
                let size = mask.count_ones() as usize;
                if !(2..=CORPUS_SEMIMINIMAL_MAX_SIZE).contains(&size) {
                    continue;
                }
                let c: Vec<Elem> = (0..others.len()).filter(|&i| mask >> i & 1 == 1).map(|i| others[i]).collect();
                let r = analyze_genset(&group, &c)?;
                if r.generates && !r.minimal && r.semiminimal_some_order {
                    out.push(CorpusGraph {
                        group_name: entry.name.clone(),
                        group: Rc::clone(&group),
                        connection: c,
                        kind: CorpusKind::Semiminimal,
                    });
                }
            }
        }
    }
    let (g21, c21) = group_and_gens(ORDER_21_SPEC, ORDER_21_GENS)?;
    out.push(CorpusGraph {
        group_name: ORDER_21_SPEC.into(),
        group: Rc::new(g21),
        connection: c21,
        kind: CorpusKind::Minimal,
    });
    let (q32, cq) = group_and_gens(Q32_SPEC, Q32_GENS)?;
    out.push(CorpusGraph {
        group_name: Q32_SPEC.into(),
        group: Rc::new(q32),
        connection: cq,
        kind: CorpusKind::Semiminimal,
    });
    out.push(CorpusGraph {
        group_name: "cyclic:4".into(),
        group: Rc::new(make_group("cyclic:4")?),
        connection: vec![2, 1],
        kind: CorpusKind::Semiminimal,
    });
    Ok(out)
}

fn bounds(budget: SolveBudget) -> Result<Checks> {
    let mut checks = Checks::new();
    let corpus = corpus()?;
    let (mut minimal, mut semi) = (0, 0);
    let mut violations = Vec::new();
    for entry in &corpus {
        let graph = cayley_graph(&entry.group, &entry.connection)?;
        let (chi, _) = chromatic_number(&graph, budget)?;
        let bound = chromatic_bound(&entry.group, &entry.connection)?;
        let expected_basis = match entry.kind {
            CorpusKind::Minimal => {
                minimal += 1;
                BoundBasis::Minimal
            }
            CorpusKind::Semiminimal => {
                semi += 1;
                BoundBasis::Semiminimal
            }
        };
        if bound.basis != expected_basis || chi as f64 > bound.value {
            violations.push(format!(
                "{} {:?}: chi {chi}, bound {:.3} ({:?})",
                entry.group_name, entry.connection, bound.value, bound.basis
            ));
        }
    }
    checks.check(
        violations.is_empty(),
        format!("chi <= 2 W_b(n) on {minimal} minimal and chi <= 2 log2 n on {semi} semiminimal Cayley graphs"),
    );
    for v in violations.iter().take(5) {
        checks.note(v.clone());
    }
    if !violations.is_empty() && violations.iter().all(|v| v.starts_with("cyclic:3 ")) {
        checks.note(
            "note: Cay(Z3, {1}) = K3 is minimal with chi 3 > 2 W_b(3) = 2.51; the minimal-case bound \
             min(2k, n / 2^(k-1)) relies on Brooks' theorem, whose odd-cycle exception bites only at n = 3",
        );
    }
    for e in 3..=12 {
        let n = f64::from(1u32 << e);
        let w = binary_lambert_w(n)?;
        let est = lambert_w_upper_estimate(n).unwrap_or(f64::NAN);
        checks.check(w < est, format!("n = {n}: W_b = {w:.6} < {est:.6}"));
    }
    Ok(checks)
}

fn strong_product(_: SolveBudget) -> Result<Checks> {
    let mut checks = Checks::new();
    let (g, c) = group_and_gens(Q32_SPEC, Q32_GENS)?;
    let b2 = g.parse_element("(8,0)")?;
    let b = g.parse_element("(0,1)")?;
    checks.check(g.mul(b, b) == b2, "b^2 = (8,0)");
    checks.check(g.elements().all(|x| g.mul(x, b2) == g.mul(b2, x)), "b^2 is central");
    let graph = cayley_graph(&g, &c)?;
    // classes {x, x b^2}, numbered by first appearance
    let mut class_of = vec![usize::MAX; g.order()];
    let mut next = 0;
    for x in g.elements() {
        if class_of[x] == usize::MAX {
            class_of[x] = next;
            class_of[g.mul(x, b2)] = next;
            next += 1;
        }
    }
    let h = graph.contract(&class_of)?;
    checks.check(h.n() == 16, format!("H has {} vertices", h.n()));
    let product = graph_product(&h, &Graph::complete(2), ProductKind::Strong);
    let iso = are_isomorphic(&graph, &product)?;
    checks.check(iso.is_some(), "Cay(Q32, C) is isomorphic to H strong-times K2");
    if let Some(map) = iso {
        let preserved = graph.edges().iter().all(|&(u, v)| product.has_edge(map[u], map[v]));
        checks.check(preserved, "isomorphism maps every edge to an edge");
    }
    Ok(checks)
}

fn star_graph(budget: SolveBudget) -> Result<Checks> {
    let mut checks = Checks::new();
    let (g, c) = group_and_gens("sym:4", "(1 2),(1 3),(1 4)")?;
    let graph = cayley_graph(&g, &c)?;
    let (chi, _) = chromatic_number(&graph, budget)?;
    checks.check(chi == 2, format!("chi = {chi} (bipartite)"));
    for (i, &x) in c.iter().enumerate() {
        let rest: Vec<Elem> = c.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &y)| y).collect();
        let h = Subgroup::closure(&g, &rest);
        let factor = schreier_graph(&g, &h, x)?;
        let is_k4 = are_isomorphic(&factor, &Graph::complete(4))?.is_some();
        checks.check(is_k4, format!("Schreier factor for {} is K4", g.name(x)));
    }
    Ok(checks)
}

fn clique_ceilings(_: SolveBudget) -> Result<Checks> {
    let mut checks = Checks::new();
    let corpus = corpus()?;
    let (mut worst_min, mut worst_semi) = (0, 0);
    let mut violations = Vec::new();
    for entry in &corpus {
        let graph = cayley_graph(&entry.group, &entry.connection)?;
        let omega = max_clique(&graph)?.len();
        let ceiling = match entry.kind {
            CorpusKind::Minimal => {
                worst_min = worst_min.max(omega);
                3
            }
            CorpusKind::Semiminimal => {
                worst_semi = worst_semi.max(omega);
                4
            }
        };
        if omega > ceiling {
            violations.push(format!("{} {:?}: omega {omega}", entry.group_name, entry.connection));
        }
    }
    checks.check(
        violations.is_empty(),
        format!(
            "{} corpus graphs: max omega {worst_min} over minimal, {worst_semi} over semiminimal",
            corpus.len()
        ),
    );
    for v in violations.iter().take(5) {
        checks.note(v.clone());
    }
    let z4 = make_group("cyclic:4")?;
    let k4 = cayley_graph(&z4, &[2, 1])?;
    let omega = max_clique(&k4)?.len();
    checks.check(omega == 4, format!("omega(Cay(Z4, {{2,1}})) = {omega}"));
    Ok(checks)
}
