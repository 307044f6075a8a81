//! Exact clique and chromatic numbers.
//!
//! `max_clique` is a bitset branch-and-bound with a greedy coloring bound.
//! `is_k_colorable` is a DSATUR backtracking search: the vertex with the most
//! distinct neighbor colors is branched on next (lowest id on ties), a
//! maximum clique is pre-colored, and a fresh color is only ever introduced
//! as the lowest unused one. A neighbor left with no feasible color cuts the
//! branch immediately.

use std::time::{Duration, Instant};

use crate::bitset::{BitMatrix, BitSet};
use crate::error::{Error, Result};
use crate::graph::{cayley_graph, Graph};
use crate::group::{has_index_two_subgroup, Elem, FiniteGroup, Subgroup};

pub const CLIQUE_LIMIT: usize = 256;
/// Largest group order for the all-generating-sets χ_min oracle.
pub const CHI_MIN_BRUTEFORCE_LIMIT: usize = 16;

/// Proper vertex coloring with colors `0..num_colors`, all used.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexColoring {
    colors: Vec<usize>,
    num_colors: usize,
}

impl VertexColoring {
    /// Wraps raw color values, renumbering them to `0..k` while keeping their
    /// relative order.
    pub fn new(raw: Vec<usize>) -> Self {
        let mut distinct = raw.clone();
        distinct.sort_unstable();
        distinct.dedup();
        let colors = raw
            .iter()
            .map(|c| distinct.binary_search(c).expect("present"))
            .collect();
        VertexColoring {
            colors,
            num_colors: distinct.len(),
        }
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn color(&self, v: usize) -> usize {
        self.colors[v]
    }

    pub fn num_colors(&self) -> usize {
        self.num_colors
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveBudget {
    pub time_limit: Duration,
    pub node_limit: u64,
}

impl Default for SolveBudget {
    fn default() -> Self {
        SolveBudget {
            time_limit: Duration::from_secs(300),
            node_limit: u64::MAX,
        }
    }
}

impl SolveBudget {
    pub fn seconds(secs: u64) -> Self {
        SolveBudget {
            time_limit: Duration::from_secs(secs),
            ..Self::default()
        }
    }
}

pub(crate) struct Meter {
    start: Instant,
    nodes: u64,
    budget: SolveBudget,
}

impl Meter {
    pub(crate) fn new(budget: SolveBudget) -> Self {
        Meter {
            start: Instant::now(),
            nodes: 0,
            budget,
        }
    }

    #[inline]
    pub(crate) fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget.node_limit
            || (self.nodes.is_multiple_of(1024) && self.start.elapsed() > self.budget.time_limit)
        {
            return Err(Error::SearchBudget { nodes: self.nodes });
        }
        Ok(())
    }
}

/// Returns `None` if proper, the first monochromatic edge otherwise.
/// Fails when the coloring does not cover every vertex.
pub fn verify_vertex_coloring(g: &Graph, colors: &[usize]) -> Result<Option<(usize, usize)>> {
    if colors.len() != g.n() {
        return Err(Error::invalid(format!(
            "coloring has {} entries for {} vertices",
            colors.len(),
            g.n()
        )));
    }
    Ok(g.edges().into_iter().find(|&(u, v)| colors[u] == colors[v]))
}

/// A maximum clique, as a sorted vertex list.
pub fn max_clique(g: &Graph) -> Result<Vec<usize>> {
    if g.n() > CLIQUE_LIMIT {
        return Err(Error::Guard {
            what: "vertex count for clique search",
            limit: CLIQUE_LIMIT,
            got: g.n(),
        });
    }
    Ok(clique_unchecked(g))
}

fn clique_unchecked(g: &Graph) -> Vec<usize> {
    let n = g.n();
    if n == 0 {
        return Vec::new();
    }
    // relabel by degree, highest first
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let relabeled: Vec<Vec<usize>> = order
        .iter()
        .map(|&v| g.neighbors(v).iter().map(|&w| pos[w]).collect())
        .collect();
    let mut search = CliqueSearch {
        adj: BitMatrix::from_adjacency(&relabeled),
        best: vec![0],
    };
    let mut current = Vec::new();
    search.expand(BitSet::full(n), &mut current);
    let mut best: Vec<usize> = search.best.iter().map(|&i| order[i]).collect();
    best.sort_unstable();
    best
}

struct CliqueSearch {
    adj: BitMatrix,
    best: Vec<usize>,
}

impl CliqueSearch {
    /// Greedy sequential coloring of `cand`; vertices come out in color order
    /// with their color number as an upper bound on any clique among them.
    fn color_sort(&self, cand: &BitSet) -> (Vec<usize>, Vec<usize>) {
        let mut order = Vec::new();
        let mut bounds = Vec::new();
        let mut uncolored = cand.clone();
        let mut k = 0;
        while !uncolored.is_empty() {
            k += 1;
            let mut q = uncolored.clone();
            while let Some(v) = q.first() {
                uncolored.remove(v);
                q.remove(v);
                q.difference_with(self.adj.row(v));
                order.push(v);
                bounds.push(k);
            }
        }
        (order, bounds)
    }

    fn expand(&mut self, mut cand: BitSet, current: &mut Vec<usize>) {
        let (order, bounds) = self.color_sort(&cand);
        for i in (0..order.len()).rev() {
            if current.len() + bounds[i] <= self.best.len() {
                return;
            }
            let v = order[i];
            current.push(v);
            let next = cand.intersection(self.adj.row(v));
            if next.is_empty() {
                if current.len() > self.best.len() {
                    self.best = current.clone();
                }
            } else {
                self.expand(next, current);
            }
            current.pop();
            cand.remove(v);
        }
    }
}

const NONE: usize = usize::MAX;

struct Dsatur<'a> {
    g: &'a Graph,
    k: usize,
    color: Vec<usize>,
    forbidden: Vec<u16>,
    saturation: Vec<usize>,
    used: usize,
    meter: &'a mut Meter,
}

impl<'a> Dsatur<'a> {
    fn new(g: &'a Graph, k: usize, meter: &'a mut Meter) -> Self {
        let n = g.n();
        Dsatur {
            g,
            k,
            color: vec![NONE; n],
            forbidden: vec![0; n * k],
            saturation: vec![0; n],
            used: 0,
            meter,
        }
    }

    /// Colors `v` with `c`; returns false if some neighbor lost its last
    /// feasible color. Must be undone with `unassign` either way.
    fn assign(&mut self, v: usize, c: usize) -> bool {
        self.color[v] = c;
        let mut alive = true;
        for &u in self.g.neighbors(v) {
            if self.color[u] != NONE {
                continue;
            }
            let slot = &mut self.forbidden[u * self.k + c];
            *slot += 1;
            if *slot == 1 {
                self.saturation[u] += 1;
                if self.saturation[u] == self.k {
                    alive = false;
                }
            }
        }
        alive
    }

    fn unassign(&mut self, v: usize, c: usize) {
        for &u in self.g.neighbors(v) {
            if self.color[u] != NONE {
                continue;
            }
            let slot = &mut self.forbidden[u * self.k + c];
            *slot -= 1;
            if *slot == 0 {
                self.saturation[u] -= 1;
            }
        }
        self.color[v] = NONE;
    }

    fn pick(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for v in 0..self.g.n() {
            if self.color[v] != NONE {
                continue;
            }
            if best.is_none_or(|b| self.saturation[v] > self.saturation[b]) {
                best = Some(v);
            }
        }
        best
    }

    fn solve(&mut self) -> Result<bool> {
        self.meter.tick()?;
        let Some(v) = self.pick() else {
            return Ok(true);
        };
        let limit = self.k.min(self.used + 1);
        for c in 0..limit {
            if self.forbidden[v * self.k + c] > 0 {
                continue;
            }
            let prev_used = self.used;
            self.used = self.used.max(c + 1);
            let alive = self.assign(v, c);
            if alive && self.solve()? {
                return Ok(true);
            }
            self.unassign(v, c);
            self.used = prev_used;
        }
        Ok(false)
    }
}

/// A proper `k`-coloring, `None` if none exists. Running out of budget is an
/// error, never a `None`.
pub fn is_k_colorable(g: &Graph, k: usize, budget: SolveBudget) -> Result<Option<VertexColoring>> {
    if k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    let mut meter = Meter::new(budget);
    k_colorable_with(g, k, &mut meter)
}

fn k_colorable_with(g: &Graph, k: usize, meter: &mut Meter) -> Result<Option<VertexColoring>> {
    if g.n() == 0 {
        return Ok(Some(VertexColoring::new(Vec::new())));
    }
    let clique = if g.n() <= CLIQUE_LIMIT {
        clique_unchecked(g)
    } else {
        Vec::new()
    };
    if clique.len() > k {
        return Ok(None);
    }
    let mut search = Dsatur::new(g, k, meter);
    for (c, &v) in clique.iter().enumerate() {
        search.used = c + 1;
        if !search.assign(v, c) {
            return Ok(None);
        }
    }
    if search.solve()? {
        Ok(Some(VertexColoring::new(search.color)))
    } else {
        Ok(None)
    }
}

/// Heuristic DSATUR coloring (ties by degree, then id).
pub fn dsatur_greedy(g: &Graph) -> VertexColoring {
    let n = g.n();
    let mut color = vec![NONE; n];
    let mut neighbor_colors: Vec<Vec<bool>> = vec![Vec::new(); n];
    let mut saturation = vec![0usize; n];
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| color[v] == NONE)
            .max_by_key(|&v| (saturation[v], g.degree(v), std::cmp::Reverse(v)))
            .expect("an uncolored vertex remains");
        let c = (0..).find(|&c| !neighbor_colors[v].get(c).copied().unwrap_or(false)).expect("a free color");
        color[v] = c;
        for &u in g.neighbors(v) {
            let nc = &mut neighbor_colors[u];
            if nc.len() <= c {
                nc.resize(c + 1, false);
            }
            if !nc[c] {
                nc[c] = true;
                saturation[u] += 1;
            }
        }
    }
    VertexColoring::new(color)
}

/// Exact chromatic number with a witness coloring. Components are solved
/// independently; each starts from the clique lower bound and the DSATUR
/// upper bound, then descends with `is_k_colorable` until it fails.
pub fn chromatic_number(g: &Graph, budget: SolveBudget) -> Result<(usize, VertexColoring)> {
    let mut meter = Meter::new(budget);
    let mut colors = vec![0; g.n()];
    let mut chi = 0;
    for comp in g.components() {
        let sub = g.induced(&comp);
        let lower = if sub.n() <= CLIQUE_LIMIT {
            clique_unchecked(&sub).len()
        } else {
            1
        };
        let mut best = dsatur_greedy(&sub);
        while best.num_colors() > lower {
            match k_colorable_with(&sub, best.num_colors() - 1, &mut meter) {
                Ok(Some(better)) => best = better,
                Ok(None) => break,
                Err(Error::SearchBudget { .. }) => {
                    return Err(Error::BudgetExhausted {
                        lower: lower.max(chi),
                        upper: best.num_colors().max(chi),
                    })
                }
                Err(e) => return Err(e),
            }
        }
        chi = chi.max(best.num_colors());
        for (i, &v) in comp.iter().enumerate() {
            colors[v] = best.color(i);
        }
    }
    Ok((chi, VertexColoring::new(colors)))
}

/// χ_min from group structure: 1 for the trivial group, 2 when there is a
/// subgroup of index 2, otherwise 3.
pub fn chi_min_classify(g: &FiniteGroup) -> u8 {
    if g.is_trivial() {
        1
    } else if has_index_two_subgroup(g) {
        2
    } else {
        3
    }
}

/// χ_min by brute force: the least `k` such that some generating set, over
/// all subsets of the group, gives a `k`-colorable Cayley graph.
pub fn chi_min_bruteforce(g: &FiniteGroup, budget: SolveBudget) -> Result<usize> {
    if g.order() > CHI_MIN_BRUTEFORCE_LIMIT {
        return Err(Error::Guard {
            what: "group order for chi_min brute force",
            limit: CHI_MIN_BRUTEFORCE_LIMIT,
            got: g.order(),
        });
    }
    let others: Vec<Elem> = (1..g.order()).collect();
    let subset = |mask: u32| -> Vec<Elem> {
        (0..others.len())
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| others[i])
            .collect()
    };
    let generating: Vec<u32> = (0u32..1 << others.len())
        .filter(|&mask| Subgroup::closure(g, &subset(mask)).is_full())
        .collect();
    let mut meter = Meter::new(budget);
    for k in 1..=g.order() {
        for &mask in &generating {
            let graph = cayley_graph(g, &subset(mask))?;
            if k_colorable_with(&graph, k, &mut meter)?.is_some() {
                return Ok(k);
            }
        }
    }
    unreachable!("every graph on n vertices is n-colorable")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{graph_product, ProductKind};
    use crate::group::{catalogue, make_group};
    use proptest::prelude::*;

    /// Oracle: try every assignment of `k` colors.
    fn brute_colorable(g: &Graph, k: usize) -> bool {
        let n = g.n();
        let mut colors = vec![0; n];
        loop {
            if g.edges().iter().all(|&(u, v)| colors[u] != colors[v]) {
                return true;
            }
            let mut i = 0;
            loop {
                if i == n {
                    return false;
                }
                colors[i] += 1;
                if colors[i] < k {
                    break;
                }
                colors[i] = 0;
                i += 1;
            }
        }
    }

    fn brute_clique(g: &Graph) -> usize {
        let n = g.n();
        (0u32..1 << n)
            .filter(|&m| {
                let vs: Vec<usize> = (0..n).filter(|&i| m >> i & 1 == 1).collect();
                vs.iter().all(|&u| vs.iter().all(|&v| u == v || g.has_edge(u, v)))
            })
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn cliques() {
        assert_eq!(max_clique(&Graph::complete(4)).unwrap().len(), 4);
        assert_eq!(max_clique(&Graph::cycle(5)).unwrap().len(), 2);
        let z4 = make_group("cyclic:4").unwrap();
        assert_eq!(max_clique(&cayley_graph(&z4, &[2, 1]).unwrap()).unwrap().len(), 4);
        assert!(matches!(max_clique(&Graph::empty(257)), Err(Error::Guard { .. })));
        assert_eq!(max_clique(&Graph::empty(0)).unwrap(), Vec::<usize>::new());
    }

    #[test]
    fn odd_cycle_colorability() {
        let c5 = Graph::cycle(5);
        assert_eq!(is_k_colorable(&c5, 2, SolveBudget::default()).unwrap(), None);
        let col = is_k_colorable(&c5, 3, SolveBudget::default()).unwrap().unwrap();
        assert_eq!(verify_vertex_coloring(&c5, col.colors()).unwrap(), None);
    }

    #[test]
    fn verify_examples() {
        assert_eq!(verify_vertex_coloring(&Graph::cycle(4), &[0, 1, 0, 1]).unwrap(), None);
        assert_eq!(verify_vertex_coloring(&Graph::complete(3), &[0, 0, 1]).unwrap(), Some((0, 1)));
        assert!(verify_vertex_coloring(&Graph::complete(3), &[0, 1]).is_err());
    }

    #[test]
    fn small_chromatic_numbers() {
        let chi = |g: &Graph| chromatic_number(g, SolveBudget::default()).unwrap().0;
        assert_eq!(chi(&Graph::complete(4)), 4);
        assert_eq!(chi(&Graph::cycle(7)), 3);
        assert_eq!(chi(&Graph::empty(3)), 1);
        assert_eq!(chi(&Graph::empty(0)), 0);
        let c5k3 = graph_product(&Graph::cycle(5), &Graph::complete(3), ProductKind::Cartesian);
        assert_eq!(chi(&c5k3), 3);
    }

    #[test]
    fn order_21_needs_four_colors() {
        let g = make_group("sdp:7,3,2").unwrap();
        let graph = cayley_graph(&g, &g.parse_elements("(1,0),(0,1)").unwrap()).unwrap();
        let (chi, col) = chromatic_number(&graph, SolveBudget::seconds(10)).unwrap();
        assert_eq!(chi, 4);
        assert_eq!(verify_vertex_coloring(&graph, col.colors()).unwrap(), None);
    }

    #[test]
    fn budget_is_not_a_refusal() {
        let g = make_group("dicyclic:32").unwrap();
        let c = g.parse_elements("(8,0),(4,0),(5,1),(3,1),(6,1)").unwrap();
        let graph = cayley_graph(&g, &c).unwrap();
        let tiny = SolveBudget {
            time_limit: Duration::from_secs(10),
            node_limit: 5,
        };
        assert!(matches!(is_k_colorable(&graph, 6, tiny), Err(Error::SearchBudget { .. })));
        assert!(matches!(chromatic_number(&graph, tiny), Err(Error::BudgetExhausted { .. })));
    }

    #[test]
    fn deterministic() {
        let g = make_group("sdp:7,3,2").unwrap();
        let graph = cayley_graph(&g, &g.parse_elements("(1,0),(0,1)").unwrap()).unwrap();
        let a = chromatic_number(&graph, SolveBudget::default()).unwrap();
        let b = chromatic_number(&graph, SolveBudget::default()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn chi_min_examples() {
        let one = make_group("cyclic:1").unwrap();
        assert_eq!(chi_min_classify(&one), 1);
        assert_eq!(chi_min_classify(&make_group("sym:3").unwrap()), 2);
        assert_eq!(chi_min_classify(&make_group("cyclic:5").unwrap()), 3);
        let b = SolveBudget::default();
        assert_eq!(chi_min_bruteforce(&make_group("cyclic:5").unwrap(), b).unwrap(), 3);
        assert_eq!(chi_min_bruteforce(&make_group("cyclic:4").unwrap(), b).unwrap(), 2);
        assert_eq!(chi_min_bruteforce(&make_group("prod:(cyclic:2)x(cyclic:2)").unwrap(), b).unwrap(), 2);
        assert_eq!(chi_min_bruteforce(&one, b).unwrap(), 1);
        assert!(matches!(
            chi_min_bruteforce(&make_group("cyclic:17").unwrap(), b),
            Err(Error::Guard { .. })
        ));
    }

    #[test]
    fn clique_and_dsatur_sandwich_chi_on_catalogue() {
        for entry in catalogue().into_iter().filter(|e| e.group.order() <= 16) {
            let g = &entry.group;
            let gens = crate::genset::enumerate_minimal_generating_sets(g, 4).unwrap();
            for c in gens.iter().take(5) {
                let graph = cayley_graph(g, c).unwrap();
                let (chi, col) = chromatic_number(&graph, SolveBudget::default()).unwrap();
                let omega = max_clique(&graph).unwrap().len();
                assert!(omega <= chi && chi <= dsatur_greedy(&graph).num_colors(), "{}", entry.name);
                assert_eq!(verify_vertex_coloring(&graph, col.colors()).unwrap(), None);
                assert_eq!(col.num_colors(), chi);
            }
        }
    }

    proptest! {
        #[test]
        fn solvers_match_brute_force(n in 1usize..9, bits in proptest::collection::vec(any::<bool>(), 36)) {
            let mut g = Graph::empty(n);
            let mut i = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[i] { g.add_edge(u, v); }
                    i += 1;
                }
            }
            let (chi, col) = chromatic_number(&g, SolveBudget::default()).unwrap();
            prop_assert_eq!(verify_vertex_coloring(&g, col.colors()).unwrap(), None);
            prop_assert!(brute_colorable(&g, chi));
            prop_assert!(chi == 1 || !brute_colorable(&g, chi - 1));
            prop_assert_eq!(max_clique(&g).unwrap().len(), brute_clique(&g));
        }

        #[test]
        fn cartesian_product_chi_is_max(a in 3usize..8, b in 1usize..5) {
            // Sabidussi: χ(G □ H) = max(χ(G), χ(H))
            let g = Graph::cycle(a);
            let h = Graph::complete(b);
            let p = graph_product(&g, &h, ProductKind::Cartesian);
            let chi = |x: &Graph| chromatic_number(x, SolveBudget::default()).unwrap().0;
            prop_assert_eq!(chi(&p), chi(&g).max(chi(&h)));
        }
    }
}
