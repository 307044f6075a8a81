//! Edge colorings with no lonely color or one popular color.
//!
//! Both properties require every vertex to see at most two edges of each
//! color. On top of that, *no lonely color* forbids any cycle on which some
//! color appears exactly once, and *one popular color* requires every cycle
//! to carry some color at least twice. "Cycle" means simple cycle
//! throughout.

mod descartes;
mod search;

use std::fmt;

use crate::error::{Error, Result};
use crate::genset::analyze_genset;
use crate::graph::{natural_edge_coloring, Cycle, EdgeColoring, Graph, DEFAULT_CYCLE_CEILING};
use crate::group::{Elem, FiniteGroup};

pub use descartes::{
    descartes_graph, descartes_graph_with, verify_descartes, DescartesCopy, DescartesGraph, DescartesReport,
    MatchingMode, DESCARTES_MAX_LEVEL,
};
pub use search::{
    enumerate_edge_colorings, search_edge_coloring, CycleScope, SearchOutcome, SEARCH_EDGE_LIMIT,
    SEARCH_EDGE_LIMIT_ALL_CYCLES,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Property {
    NoLonely,
    OnePopular,
}

impl Property {
    /// Whether a cycle with these edge colors satisfies the property.
    pub fn cycle_ok(self, colors: &[usize]) -> bool {
        let count = |c: usize| colors.iter().filter(|&&x| x == c).count();
        match self {
            Property::NoLonely => colors.iter().all(|&c| count(c) != 1),
            Property::OnePopular => colors.iter().any(|&c| count(c) >= 2),
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Property::NoLonely => "no-lonely",
            Property::OnePopular => "one-popular",
        })
    }
}

impl std::str::FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "no-lonely" => Ok(Property::NoLonely),
            "one-popular" => Ok(Property::OnePopular),
            _ => Err(Error::invalid(format!(
                "unknown property '{s}' (expected no-lonely or one-popular)"
            ))),
        }
    }
}

/// Which cycles a verification looks at.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exhaustive,
    /// Cycles of length at most `L`.
    Bounded(usize),
    Triangles,
}

impl Mode {
    fn max_len(self) -> Option<usize> {
        match self {
            Mode::Exhaustive => None,
            Mode::Bounded(l) => Some(l),
            Mode::Triangles => Some(3),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Exhaustive => f.write_str("exhaustive"),
            Mode::Bounded(l) => write!(f, "bounded({l})"),
            Mode::Triangles => f.write_str("triangles"),
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;

    /// `exhaustive`, `triangles`, `bounded:L` or `bounded(L)`.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exhaustive" => return Ok(Mode::Exhaustive),
            "triangles" => return Ok(Mode::Triangles),
            _ => {}
        }
        let len = s
            .strip_prefix("bounded:")
            .or_else(|| s.strip_prefix("bounded(").and_then(|r| r.strip_suffix(')')))
            .and_then(|l| l.parse().ok());
        match len {
            Some(l) => Ok(Mode::Bounded(l)),
            None => Err(Error::invalid(format!(
                "unknown mode '{s}' (expected exhaustive, triangles or bounded:L)"
            ))),
        }
    }
}

/// A vertex seeing three or more edges of one color.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegreeViolation {
    pub vertex: usize,
    pub color: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyReport {
    pub property: Property,
    pub mode: Mode,
    pub passed: bool,
    pub violating_cycle: Option<Cycle>,
    pub degree_violation: Option<DegreeViolation>,
    /// Cycles whose colors were inspected. For one-popular, paths that
    /// already repeat a color are not extended, so only cycles that could
    /// fail are counted.
    pub cycles_checked: u64,
}

impl PropertyReport {
    /// A pass settles the property only when every cycle was in scope; a
    /// failure is always conclusive.
    pub fn conclusive(&self) -> bool {
        !self.passed || self.mode == Mode::Exhaustive
    }

    pub fn summary(&self) -> String {
        let verdict = match (self.passed, self.conclusive()) {
            (true, true) => "PASS",
            (true, false) => "PASS (necessary condition only; longer cycles unchecked)",
            (false, _) => "FAIL",
        };
        let counted = match self.property {
            Property::NoLonely => "cycles checked",
            Property::OnePopular => "rainbow cycles found (paths repeating a color are pruned)",
        };
        let mut s = format!(
            "{} {} [{}]: {verdict}, {} {counted}, simple-cycle reading",
            self.property, self.mode, verdict_tag(self), self.cycles_checked
        );
        if let Some(c) = &self.violating_cycle {
            s.push_str(&format!(", violating cycle {:?}", c.vertices()));
        }
        if let Some(d) = self.degree_violation {
            s.push_str(&format!(
                ", vertex {} sees color {} more than twice",
                d.vertex, d.color
            ));
        }
        s
    }
}

fn verdict_tag(r: &PropertyReport) -> &'static str {
    if r.conclusive() {
        "conclusive"
    } else {
        "partial"
    }
}

/// First vertex with three or more edges of one color.
pub fn check_color_degrees(g: &Graph, ec: &EdgeColoring) -> Option<DegreeViolation> {
    let aligned = ec.aligned(g);
    for (v, cols) in aligned.iter().enumerate() {
        let mut sorted = cols.clone();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(3).find(|w| w[0] == w[2]) {
            return Some(DegreeViolation { vertex: v, color: w[0] });
        }
    }
    None
}

pub fn verify_edge_coloring(g: &Graph, ec: &EdgeColoring, property: Property, mode: Mode) -> Result<PropertyReport> {
    verify_edge_coloring_with(g, ec, property, mode, DEFAULT_CYCLE_CEILING)
}

/// As [`verify_edge_coloring`], failing with `CycleCeiling` once more than
/// `ceiling` cycles have been inspected.
pub fn verify_edge_coloring_with(
    g: &Graph,
    ec: &EdgeColoring,
    property: Property,
    mode: Mode,
    ceiling: u64,
) -> Result<PropertyReport> {
    if let Mode::Bounded(l) = mode {
        if l < 3 {
            return Err(Error::invalid("bounded mode needs L >= 3"));
        }
    }
    // EdgeColoring::new already checked the domain, but it may have been
    // built for a different graph with the same edge count
    if ec.len() != g.edge_count() || g.edges().iter().any(|&(u, v)| ec.color(u, v).is_none()) {
        return Err(Error::invalid("edge coloring does not cover the graph"));
    }
    let mut report = PropertyReport {
        property,
        mode,
        passed: true,
        violating_cycle: None,
        degree_violation: check_color_degrees(g, ec),
        cycles_checked: 0,
    };
    if report.degree_violation.is_some() {
        report.passed = false;
        return Ok(report);
    }
    let colors = ec.aligned(g);
    let num_colors = ec.iter().map(|(_, c)| c + 1).max().unwrap_or(0);
    let mut scan = Scan {
        g,
        colors: &colors,
        property,
        max_len: mode.max_len().unwrap_or(usize::MAX),
        ceiling,
        checked: 0,
        counts: vec![0; num_colors],
        singles: 0,
        path: Vec::new(),
        on_path: vec![false; g.n()],
        found: None,
    };
    scan.run()?;
    report.cycles_checked = scan.checked;
    if let Some(path) = scan.found {
        report.passed = false;
        report.violating_cycle = Some(Cycle::new(path)?);
    }
    Ok(report)
}

/// Depth-first cycle scan rooted at each cycle's smallest vertex, tracking
/// color multiplicities along the current path.
struct Scan<'a> {
    g: &'a Graph,
    colors: &'a [Vec<usize>],
    property: Property,
    max_len: usize,
    ceiling: u64,
    checked: u64,
    counts: Vec<u32>,
    /// Colors with multiplicity exactly one on the path.
    singles: usize,
    path: Vec<usize>,
    on_path: Vec<bool>,
    found: Option<Vec<usize>>,
}

impl Scan<'_> {
    fn run(&mut self) -> Result<()> {
        for s in 0..self.g.n() {
            self.path.push(s);
            self.on_path[s] = true;
            let done = self.extend(s, s)?;
            self.on_path[s] = false;
            self.path.pop();
            if done {
                break;
            }
        }
        Ok(())
    }

    fn add(&mut self, c: usize) {
        self.counts[c] += 1;
        match self.counts[c] {
            1 => self.singles += 1,
            2 => self.singles -= 1,
            _ => {}
        }
    }

    fn remove(&mut self, c: usize) {
        match self.counts[c] {
            1 => self.singles -= 1,
            2 => self.singles += 1,
            _ => {}
        }
        self.counts[c] -= 1;
    }

    /// Returns true once a violation is found.
    fn extend(&mut self, root: usize, v: usize) -> Result<bool> {
        let prune = self.property == Property::OnePopular;
        for (i, &w) in self.g.neighbors(v).iter().enumerate() {
            if w < root {
                continue;
            }
            let c = self.colors[v][i];
            if prune && self.counts[c] > 0 {
                // every cycle through this path repeats `c`
                continue;
            }
            if w == root {
                if self.path.len() < 3 || self.path[1] > v {
                    continue;
                }
                self.checked += 1;
                if self.checked > self.ceiling {
                    return Err(Error::CycleCeiling(self.ceiling));
                }
                self.add(c);
                let ok = match self.property {
                    Property::NoLonely => self.singles == 0,
                    // with pruning, every closed cycle here is rainbow
                    Property::OnePopular => self.counts.iter().any(|&k| k >= 2),
                };
                self.remove(c);
                if !ok {
                    self.found = Some(self.path.clone());
                    return Ok(true);
                }
                continue;
            }
            if self.on_path[w] || self.path.len() >= self.max_len {
                continue;
            }
            self.add(c);
            self.path.push(w);
            self.on_path[w] = true;
            let done = self.extend(root, w)?;
            self.on_path[w] = false;
            self.path.pop();
            self.remove(c);
            if done {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// Default length bound for bounded checks of natural colorings.
pub const NATURAL_CHECK_DEFAULT_LENGTH: usize = 10;

/// Verifies the natural edge coloring of `Cay(G, C)` (edge colored by the
/// first generator producing it). No-lonely needs `C` minimal; one-popular
/// needs `C` semiminimal in the given order.
pub fn natural_coloring_check(g: &FiniteGroup, c: &[Elem], property: Property, mode: Mode) -> Result<PropertyReport> {
    let report = analyze_genset(g, c)?;
    match property {
        Property::NoLonely if !report.minimal => return Err(Error::NotMinimal),
        Property::OnePopular if !report.generates || !report.semiminimal_in_given_order => {
            return Err(Error::invalid(
                "connection set does not generate semiminimally in the given order",
            ))
        }
        _ => {}
    }
    let (graph, ec) = natural_edge_coloring(g, c)?;
    verify_edge_coloring(&graph, &ec, property, mode)
}
