//! Simple-cycle enumeration.
//!
//! Each cycle is rooted at its smallest vertex and extended through larger
//! vertices only; of the two traversal directions, the one whose second
//! vertex is smaller is reported. That is exactly the canonical form of
//! [`Cycle`], so every cycle is produced once, already canonical.

use std::ops::ControlFlow;

use super::Graph;
use crate::error::{Error, Result};

pub const DEFAULT_CYCLE_CEILING: u64 = 10_000_000;

/// A simple cycle in canonical form: starts at its smallest vertex, and the
/// second vertex is smaller than the last.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cycle {
    vertices: Vec<usize>,
}

impl Cycle {
    /// Canonicalizes any rotation or reflection of a cycle.
    pub fn new(mut vertices: Vec<usize>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::invalid("a cycle has at least 3 vertices"));
        }
        let mut sorted = vertices.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != vertices.len() {
            return Err(Error::invalid("cycle repeats a vertex"));
        }
        let pos = vertices
            .iter()
            .enumerate()
            .min_by_key(|&(_, v)| *v)
            .map(|(i, _)| i)
            .expect("nonempty");
        vertices.rotate_left(pos);
        if vertices[1] > vertices[vertices.len() - 1] {
            vertices[1..].reverse();
        }
        Ok(Cycle { vertices })
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Consecutive vertex pairs, including the closing edge.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    pub fn lies_in(&self, g: &Graph) -> bool {
        self.edges().all(|(u, v)| u < g.n() && v < g.n() && g.has_edge(u, v))
    }
}

/// Calls `visit` with every simple cycle of length at most `max_len` (all
/// lengths when `None`), as a canonical vertex sequence.
pub fn for_each_cycle<F>(g: &Graph, max_len: Option<usize>, mut visit: F) -> ControlFlow<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let limit = max_len.unwrap_or(usize::MAX);
    if limit < 3 {
        return ControlFlow::Continue(());
    }
    let n = g.n();
    let mut on_path = vec![false; n];
    let mut path = Vec::with_capacity(n);
    for root in 0..n {
        path.push(root);
        on_path[root] = true;
        extend(g, root, limit, &mut path, &mut on_path, &mut visit)?;
        on_path[root] = false;
        path.pop();
    }
    ControlFlow::Continue(())
}

fn extend<F>(
    g: &Graph,
    root: usize,
    limit: usize,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    visit: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let last = *path.last().expect("path has the root");
    for &w in g.neighbors(last) {
        if w == root {
            if path.len() >= 3 && path[1] < last {
                visit(path)?;
            }
        } else if w > root && !on_path[w] && path.len() < limit {
            path.push(w);
            on_path[w] = true;
            let flow = extend(g, root, limit, path, on_path, visit);
            on_path[w] = false;
            path.pop();
            flow?;
        }
    }
    ControlFlow::Continue(())
}

/// Collects cycles, failing once more than `ceiling` have been found.
pub fn enumerate_cycles(g: &Graph, max_len: Option<usize>, ceiling: u64) -> Result<Vec<Cycle>> {
    let mut out = Vec::new();
    let flow = for_each_cycle(g, max_len, |c| {
        if out.len() as u64 >= ceiling {
            return ControlFlow::Break(());
        }
        out.push(Cycle {
            vertices: c.to_vec(),
        });
        ControlFlow::Continue(())
    });
    match flow {
        ControlFlow::Break(()) => Err(Error::CycleCeiling(ceiling)),
        ControlFlow::Continue(()) => Ok(out),
    }
}

pub fn count_cycles(g: &Graph, max_len: Option<usize>, ceiling: u64) -> Result<u64> {
    let mut count = 0u64;
    let flow = for_each_cycle(g, max_len, |_| {
        if count >= ceiling {
            return ControlFlow::Break(());
        }
        count += 1;
        ControlFlow::Continue(())
    });
    match flow {
        ControlFlow::Break(()) => Err(Error::CycleCeiling(ceiling)),
        ControlFlow::Continue(()) => Ok(count),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn binomial(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    /// Closed form for the number of simple cycles of K_n.
    fn complete_graph_cycles(n: u64) -> u64 {
        (3..=n)
            .map(|k| binomial(n, k) * (1..k).product::<u64>() / 2)
            .sum()
    }

    /// Brute force: every vertex sequence, canonicalized and deduplicated.
    fn brute_force_cycles(g: &Graph) -> BTreeSet<Cycle> {
        fn go(g: &Graph, path: &mut Vec<usize>, out: &mut BTreeSet<Cycle>) {
            let last = *path.last().unwrap();
            if path.len() >= 3 && g.has_edge(last, path[0]) {
                out.insert(Cycle::new(path.clone()).unwrap());
            }
            for &w in g.neighbors(last) {
                if !path.contains(&w) {
                    path.push(w);
                    go(g, path, out);
                    path.pop();
                }
            }
        }
        let mut out = BTreeSet::new();
        for s in 0..g.n() {
            go(g, &mut vec![s], &mut out);
        }
        out
    }

    #[test]
    fn small_counts() {
        assert_eq!(count_cycles(&Graph::cycle(4), None, 100).unwrap(), 1);
        assert_eq!(count_cycles(&Graph::complete(4), None, 100).unwrap(), 7);
        let k5 = enumerate_cycles(&Graph::complete(5), None, 100).unwrap();
        assert_eq!(k5.len(), 37);
        let by_len = |l| k5.iter().filter(|c| c.len() == l).count();
        assert_eq!((by_len(3), by_len(4), by_len(5)), (10, 15, 12));
    }

    #[test]
    fn complete_graphs_match_closed_form() {
        for n in 3..=7 {
            let g = Graph::complete(n);
            assert_eq!(
                count_cycles(&g, None, u64::MAX).unwrap(),
                complete_graph_cycles(n as u64),
                "K{n}"
            );
        }
    }

    #[test]
    fn matches_brute_force_on_prism_and_petersen_like() {
        let prism = crate::graph::graph_product(
            &Graph::cycle(5),
            &Graph::complete(2),
            crate::graph::ProductKind::Cartesian,
        );
        let found: BTreeSet<Cycle> = enumerate_cycles(&prism, None, u64::MAX)
            .unwrap()
            .into_iter()
            .collect();
        assert_eq!(found, brute_force_cycles(&prism));
    }

    #[test]
    fn bounded_length() {
        let k5 = Graph::complete(5);
        assert_eq!(count_cycles(&k5, Some(3), 100).unwrap(), 10);
        assert_eq!(count_cycles(&k5, Some(4), 100).unwrap(), 25);
        assert_eq!(count_cycles(&k5, Some(2), 100).unwrap(), 0);
    }

    #[test]
    fn ceiling_is_reported() {
        let k6 = Graph::complete(6);
        assert!(matches!(
            enumerate_cycles(&k6, None, 10),
            Err(Error::CycleCeiling(10))
        ));
    }

    #[test]
    fn canonical_form() {
        let c = Cycle::new(vec![3, 1, 2, 0]).unwrap();
        assert_eq!(c.vertices(), &[0, 2, 1, 3]);
        assert_eq!(Cycle::new(vec![2, 1, 3, 0]).unwrap().vertices(), &[0, 2, 1, 3]);
        assert!(Cycle::new(vec![0, 1]).is_err());
        assert!(Cycle::new(vec![0, 1, 0]).is_err());
    }

    #[test]
    fn emitted_cycles_are_canonical_and_in_graph() {
        let g = Graph::complete(5);
        for c in enumerate_cycles(&g, None, 100).unwrap() {
            assert_eq!(Cycle::new(c.vertices().to_vec()).unwrap(), c);
            assert!(c.lies_in(&g));
        }
    }
}
