//! Backtracking search for edge colorings with a cycle property.
//!
//! Edges are colored in lexicographic order. A color may be introduced only
//! as the smallest unused one, so each coloring is produced once up to
//! renaming. Each cycle in scope is checked when its last edge is colored.
//!
//! Restricting the scope drops constraints, so an UNSAT answer under
//! `Triangles` or `FourCycles` is also UNSAT over all cycles. A SAT answer
//! under a restricted scope says nothing about longer cycles.

use std::fmt;

use super::Property;
use crate::chromatic::{Meter, SolveBudget};
use crate::error::{Error, Result};
use crate::graph::{enumerate_cycles, EdgeColoring, Graph};

pub const SEARCH_EDGE_LIMIT_ALL_CYCLES: usize = 20;
pub const SEARCH_EDGE_LIMIT: usize = 15;
const CYCLE_LIST_CEILING: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CycleScope {
    All,
    Triangles,
    /// Cycles of length 3 and 4.
    FourCycles,
}

impl fmt::Display for CycleScope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CycleScope::All => "all",
            CycleScope::Triangles => "triangles",
            CycleScope::FourCycles => "four_cycles",
        })
    }
}

impl std::str::FromStr for CycleScope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(CycleScope::All),
            "triangles" => Ok(CycleScope::Triangles),
            "four_cycles" | "four-cycles" => Ok(CycleScope::FourCycles),
            _ => Err(Error::invalid(format!(
                "unknown scope '{s}' (expected all, triangles or four_cycles)"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Sat(EdgeColoring),
    Unsat,
}

/// The first valid coloring in canonical order, or UNSAT. Running out of
/// budget is an error.
pub fn search_edge_coloring(
    g: &Graph,
    property: Property,
    scope: CycleScope,
    max_colors: usize,
    budget: SolveBudget,
) -> Result<SearchOutcome> {
    let mut found = run(g, property, scope, max_colors, budget, 1)?;
    Ok(match found.pop() {
        Some(ec) => SearchOutcome::Sat(ec),
        None => SearchOutcome::Unsat,
    })
}

/// Every valid coloring up to renaming of colors.
pub fn enumerate_edge_colorings(
    g: &Graph,
    property: Property,
    scope: CycleScope,
    max_colors: usize,
    budget: SolveBudget,
) -> Result<Vec<EdgeColoring>> {
    run(g, property, scope, max_colors, budget, usize::MAX)
}

fn run(
    g: &Graph,
    property: Property,
    scope: CycleScope,
    max_colors: usize,
    budget: SolveBudget,
    limit: usize,
) -> Result<Vec<EdgeColoring>> {
    let edges = g.edges();
    let m = edges.len();
    let edge_limit = match scope {
        CycleScope::All => SEARCH_EDGE_LIMIT_ALL_CYCLES,
        _ => SEARCH_EDGE_LIMIT,
    };
    if m > edge_limit {
        return Err(Error::Guard {
            what: "edge count for coloring search",
            limit: edge_limit,
            got: m,
        });
    }
    if max_colors == 0 {
        return Err(Error::invalid("max_colors must be at least 1"));
    }
    let max_len = match scope {
        CycleScope::All => None,
        CycleScope::Triangles => Some(3),
        CycleScope::FourCycles => Some(4),
    };
    let index = |u: usize, v: usize| edges.binary_search(&(u.min(v), u.max(v))).expect("cycle edge");
    let mut closing: Vec<Vec<Vec<usize>>> = vec![Vec::new(); m];
    for cycle in enumerate_cycles(g, max_len, CYCLE_LIST_CEILING)? {
        let ids: Vec<usize> = cycle.edges().map(|(u, v)| index(u, v)).collect();
        let last = *ids.iter().max().expect("nonempty cycle");
        closing[last].push(ids);
    }
    let max_colors = max_colors.min(m.max(1));
    let mut search = Search {
        edges: &edges,
        closing,
        property,
        max_colors,
        color: vec![usize::MAX; m],
        load: vec![0; g.n() * max_colors],
        meter: Meter::new(budget),
        limit,
        solutions: Vec::new(),
        scratch: Vec::new(),
    };
    search.go(0, 0)?;
    search
        .solutions
        .into_iter()
        .map(|cols| EdgeColoring::new(g, edges.iter().copied().zip(cols)))
        .collect()
}

struct Search<'a> {
    edges: &'a [(usize, usize)],
    /// Cycles (as edge indices) keyed by their largest edge index.
    closing: Vec<Vec<Vec<usize>>>,
    property: Property,
    max_colors: usize,
    color: Vec<usize>,
    /// Edges of each color at each vertex.
    load: Vec<u8>,
    meter: Meter,
    limit: usize,
    solutions: Vec<Vec<usize>>,
    scratch: Vec<usize>,
}

impl Search<'_> {
    /// Returns true once enough solutions are collected.
    fn go(&mut self, i: usize, used: usize) -> Result<bool> {
        if i == self.edges.len() {
            self.solutions.push(self.color.clone());
            return Ok(self.solutions.len() >= self.limit);
        }
        self.meter.tick()?;
        let (u, v) = self.edges[i];
        let k = self.max_colors;
        for c in 0..k.min(used + 1) {
            if self.load[u * k + c] == 2 || self.load[v * k + c] == 2 {
                continue;
            }
            self.color[i] = c;
            if !self.cycles_ok(i) {
                continue;
            }
            self.load[u * k + c] += 1;
            self.load[v * k + c] += 1;
            let done = self.go(i + 1, used.max(c + 1))?;
            self.load[u * k + c] -= 1;
            self.load[v * k + c] -= 1;
            if done {
                return Ok(true);
            }
        }
        self.color[i] = usize::MAX;
        Ok(false)
    }

    fn cycles_ok(&mut self, i: usize) -> bool {
        for cycle in &self.closing[i] {
            self.scratch.clear();
            self.scratch.extend(cycle.iter().map(|&e| self.color[e]));
            if !self.property.cycle_ok(&self.scratch) {
                return false;
            }
        }
        true
    }
}
