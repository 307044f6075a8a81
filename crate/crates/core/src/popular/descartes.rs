//! Descartes-style graphs `G_k`: one popular color, chromatic number at
//! least `k`.
//!
//! `G_1` is a single vertex and `G_2` is `C_4` colored alternately. For
//! `G_k` with `n = |V(G_{k-1})|`, take an independent set `X` of
//! `(k-1)(n-1)+1` vertices; for every `n`-subset `Y` of `X` add a copy of
//! `G_{k-1}` joined to `Y` by a perfect matching with a private color. All
//! copies reuse the colors of `G_{k-1}`. A cycle that leaves a copy must
//! come back through the same matching, so it repeats that matching's color.

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

use super::{check_color_degrees, verify_edge_coloring, Mode, Property, PropertyReport};
use crate::error::{Error, Result};
use crate::graph::{EdgeColoring, Graph};

/// `G_4` would need `C(439, 147)` copies.
pub const DESCARTES_MAX_LEVEL: usize = 3;
const BOUNDED_CHECK_LENGTH: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum MatchingMode {
    /// The `i`-th smallest vertex of `Y` meets the `i`-th vertex of the copy.
    #[default]
    Canonical,
    /// A random bijection per copy, reproducible from the seed.
    Seeded(u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescartesCopy {
    pub vertices: Vec<usize>,
    /// The subset `Y` of `X` this copy is matched to.
    pub subset: Vec<usize>,
    /// `(x, copy vertex)` pairs.
    pub matching: Vec<(usize, usize)>,
    pub color: usize,
}

#[derive(Clone, Debug)]
pub struct DescartesGraph {
    pub graph: Graph,
    pub coloring: EdgeColoring,
    pub k: usize,
    pub x_set: Vec<usize>,
    pub copies: Vec<DescartesCopy>,
}

pub fn descartes_graph(k: usize) -> Result<DescartesGraph> {
    descartes_graph_with(k, MatchingMode::Canonical)
}

pub fn descartes_graph_with(k: usize, mode: MatchingMode) -> Result<DescartesGraph> {
    match k {
        0 => Err(Error::invalid("level must be at least 1")),
        1 => {
            let graph = Graph::empty(1);
            let coloring = EdgeColoring::new(&graph, [])?;
            Ok(DescartesGraph {
                graph,
                coloring,
                k,
                x_set: Vec::new(),
                copies: Vec::new(),
            })
        }
        2 => {
            let graph = Graph::cycle(4);
            // (0,1) (1,2) (2,3) (0,3) alternate 0 1 0 1
            let coloring = EdgeColoring::new(
                &graph,
                [((0, 1), 0), ((1, 2), 1), ((2, 3), 0), ((0, 3), 1)],
            )?;
            Ok(DescartesGraph {
                graph,
                coloring,
                k,
                x_set: Vec::new(),
                copies: Vec::new(),
            })
        }
        k if k > DESCARTES_MAX_LEVEL => Err(Error::Guard {
            what: "Descartes level",
            limit: DESCARTES_MAX_LEVEL,
            got: k,
        }),
        k => {
            let prev = descartes_graph_with(k - 1, mode)?;
            Ok(next_level(&prev, mode))
        }
    }
}

fn next_level(prev: &DescartesGraph, mode: MatchingMode) -> DescartesGraph {
    let k = prev.k + 1;
    let n = prev.graph.n();
    let base_colors = prev.coloring.iter().map(|(_, c)| c + 1).max().unwrap_or(0);
    let x_count = (k - 1) * (n - 1) + 1;
    let subsets = combinations(x_count, n);
    let total = x_count + subsets.len() * n;
    let mut graph = Graph::empty(total);
    let mut colors = Vec::new();
    let mut copies = Vec::with_capacity(subsets.len());
    let mut rng = match mode {
        MatchingMode::Seeded(seed) => Some(StdRng::seed_from_u64(seed)),
        MatchingMode::Canonical => None,
    };
    for (j, subset) in subsets.into_iter().enumerate() {
        let offset = x_count + j * n;
        for ((u, v), c) in prev.coloring.iter() {
            graph.add_edge(offset + u, offset + v);
            colors.push(((offset + u, offset + v), c));
        }
        let mut targets: Vec<usize> = (0..n).collect();
        if let Some(rng) = rng.as_mut() {
            targets.shuffle(rng);
        }
        let color = base_colors + j;
        let matching: Vec<(usize, usize)> = subset
            .iter()
            .zip(&targets)
            .map(|(&x, &t)| (x, offset + t))
            .collect();
        for &(x, v) in &matching {
            graph.add_edge(x, v);
            colors.push(((x, v), color));
        }
        copies.push(DescartesCopy {
            vertices: (offset..offset + n).collect(),
            subset,
            matching,
            color,
        });
    }
    let coloring = EdgeColoring::new(&graph, colors).expect("construction colors every edge once");
    DescartesGraph {
        graph,
        coloring,
        k,
        x_set: (0..x_count).collect(),
        copies,
    }
}

/// All `r`-subsets of `0..n` in lexicographic order.
fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..r).collect();
    if r > n {
        return out;
    }
    loop {
        out.push(current.clone());
        let Some(i) = (0..r).rev().find(|&i| current[i] != i + n - r) else {
            return out;
        };
        current[i] += 1;
        for j in i + 1..r {
            current[j] = current[j - 1] + 1;
        }
    }
}

/// The evidence behind a one-popular verdict for `G_k`.
#[derive(Clone, Debug)]
pub struct DescartesReport {
    /// Every vertex sees at most two edges of each color.
    pub condition_one: bool,
    pub x_independent: bool,
    /// Each copy, with its colors, passes one-popular exhaustively.
    pub copies_pass: bool,
    /// Every edge lies inside a copy or on that copy's private perfect
    /// matching to its subset of `X`.
    pub structural: bool,
    /// Exhaustive for `k <= 2`, bounded at length 12 otherwise.
    pub cycle_check: PropertyReport,
}

impl DescartesReport {
    pub fn passed(&self) -> bool {
        self.condition_one && self.x_independent && self.copies_pass && self.structural && self.cycle_check.passed
    }

    pub fn lines(&self) -> Vec<String> {
        let flag = |b: bool| if b { "ok" } else { "FAILED" };
        vec![
            format!("at most two edges per color at each vertex: {}", flag(self.condition_one)),
            format!("X independent: {}", flag(self.x_independent)),
            format!("every copy one-popular (exhaustive): {}", flag(self.copies_pass)),
            format!("private matchings certificate: {}", flag(self.structural)),
            format!("cycle check: {}", self.cycle_check.summary()),
        ]
    }
}

pub fn verify_descartes(d: &DescartesGraph) -> Result<DescartesReport> {
    let g = &d.graph;
    let ec = &d.coloring;
    let condition_one = check_color_degrees(g, ec).is_none();
    let x_independent = d
        .x_set
        .iter()
        .all(|&x| g.neighbors(x).iter().all(|w| d.x_set.binary_search(w).is_err()));

    let mut copies_pass = true;
    for copy in &d.copies {
        let sub = g.induced(&copy.vertices);
        let base = copy.vertices[0];
        let sub_ec = EdgeColoring::new(
            &sub,
            sub.edges()
                .into_iter()
                .map(|(u, v)| ((u, v), ec.color(base + u, base + v).expect("copy edge"))),
        )?;
        copies_pass &= verify_edge_coloring(&sub, &sub_ec, Property::OnePopular, Mode::Exhaustive)?.passed;
    }

    // G_1 and G_2 have no copies and are checked exhaustively instead
    let structural = d.copies.is_empty() || certificate_holds(d);
    let mode = if d.k <= 2 {
        Mode::Exhaustive
    } else {
        Mode::Bounded(BOUNDED_CHECK_LENGTH)
    };
    let cycle_check = verify_edge_coloring(g, ec, Property::OnePopular, mode)?;
    Ok(DescartesReport {
        condition_one,
        x_independent,
        copies_pass,
        structural,
        cycle_check,
    })
}

/// Recomputed from the graph, not trusted from the copy metadata.
fn certificate_holds(d: &DescartesGraph) -> bool {
    let g = &d.graph;
    let n = g.n();
    let mut copy_of = vec![usize::MAX; n];
    for (j, copy) in d.copies.iter().enumerate() {
        for &v in &copy.vertices {
            if v >= n || copy_of[v] != usize::MAX || d.x_set.binary_search(&v).is_ok() {
                return false;
            }
            copy_of[v] = j;
        }
    }
    let covered = d.x_set.len() + d.copies.iter().map(|c| c.vertices.len()).sum::<usize>();
    if covered != n {
        return false;
    }
    let private: Vec<usize> = d.copies.iter().map(|c| c.color).collect();
    let mut matched_copy = vec![0usize; d.copies.len()];
    let mut matched_x: Vec<Vec<usize>> = vec![Vec::new(); d.copies.len()];
    for ((u, v), c) in d.coloring.iter() {
        match (copy_of[u], copy_of[v]) {
            (a, b) if a != usize::MAX && a == b => {
                if private.contains(&c) {
                    return false;
                }
            }
            (usize::MAX, b) | (b, usize::MAX) if b != usize::MAX => {
                if d.copies[b].color != c {
                    return false;
                }
                let x = if copy_of[u] == usize::MAX { u } else { v };
                matched_copy[b] += 1;
                matched_x[b].push(x);
            }
            _ => return false,
        }
    }
    d.copies.iter().enumerate().all(|(j, copy)| {
        let mut xs = matched_x[j].clone();
        xs.sort_unstable();
        xs.dedup();
        matched_copy[j] == copy.vertices.len() && xs == copy.subset
    }) && {
        // each copy vertex is matched exactly once
        d.copies.iter().all(|copy| {
            copy.vertices
                .iter()
                .all(|&v| g.neighbors(v).iter().filter(|&&w| copy_of[w] == usize::MAX).count() == 1)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chromatic::{chromatic_number, SolveBudget};

    #[test]
    fn small_levels() {
        let g1 = descartes_graph(1).unwrap();
        assert_eq!((g1.graph.n(), g1.graph.edge_count()), (1, 0));
        let g2 = descartes_graph(2).unwrap();
        assert_eq!(g2.graph, Graph::cycle(4));
        assert_eq!(g2.coloring.num_colors(), 2);
        assert_eq!(chromatic_number(&g2.graph, SolveBudget::default()).unwrap().0, 2);
        assert!(verify_descartes(&g2).unwrap().passed());
        assert!(matches!(descartes_graph(4), Err(Error::Guard { .. })));
        assert!(descartes_graph(0).is_err());
    }

    #[test]
    fn level_three_counts() {
        let g3 = descartes_graph(3).unwrap();
        // 7 + 35 * 4 vertices, 35 * (4 + 4) edges, 2 + 35 colors
        assert_eq!(g3.x_set.len(), 2 * 3 + 1);
        assert_eq!(g3.copies.len(), 35);
        assert_eq!(g3.graph.n(), 147);
        assert_eq!(g3.graph.edge_count(), 280);
        assert_eq!(g3.coloring.num_colors(), 37);
        for copy in &g3.copies {
            let class = &g3.coloring.classes()[&copy.color];
            assert_eq!(class.len(), 4);
        }
    }

    #[test]
    fn level_three_verifies() {
        let report = verify_descartes(&descartes_graph(3).unwrap()).unwrap();
        assert!(report.passed(), "{:#?}", report.lines());
        assert!(!report.cycle_check.conclusive());
    }

    #[test]
    fn seeded_matchings_verify_and_repeat() {
        let a = descartes_graph_with(3, MatchingMode::Seeded(7)).unwrap();
        let b = descartes_graph_with(3, MatchingMode::Seeded(7)).unwrap();
        assert_eq!(a.graph, b.graph);
        assert!(verify_descartes(&a).unwrap().passed());
    }

    #[test]
    fn certificate_catches_a_recolored_matching_edge() {
        let mut d = descartes_graph(3).unwrap();
        let ((x, v), _) = d.coloring.iter().find(|&(_, c)| c == 2).unwrap();
        let entries: Vec<_> = d
            .coloring
            .iter()
            .map(|(e, c)| if e == (x, v) { (e, 3) } else { (e, c) })
            .collect();
        d.coloring = EdgeColoring::new(&d.graph, entries).unwrap();
        assert!(!certificate_holds(&d));
    }

    #[test]
    fn combinations_are_lexicographic() {
        assert_eq!(combinations(4, 2), vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(combinations(7, 4).len(), 35);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
    }
}
