//! Graph isomorphism by color refinement followed by backtracking.

use std::collections::HashMap;

use super::Graph;
use crate::bitset::BitMatrix;
use crate::error::{Error, Result};

pub const ISOMORPHISM_LIMIT: usize = 128;

/// Returns a bijection `f` with `u ~ v` iff `f[u] ~ f[v]`, or `None`.
pub fn are_isomorphic(g1: &Graph, g2: &Graph) -> Result<Option<Vec<usize>>> {
    for g in [g1, g2] {
        if g.n() > ISOMORPHISM_LIMIT {
            return Err(Error::Guard {
                what: "vertex count for isomorphism",
                limit: ISOMORPHISM_LIMIT,
                got: g.n(),
            });
        }
    }
    if g1.n() != g2.n() || g1.edge_count() != g2.edge_count() {
        return Ok(None);
    }
    let n = g1.n();
    let (c1, c2) = refine(g1, g2);
    let histogram = |c: &[usize]| {
        let mut h = c.to_vec();
        h.sort_unstable();
        h
    };
    if histogram(&c1) != histogram(&c2) {
        return Ok(None);
    }

    let order = search_order(g1, &c1);
    let mut search = Search {
        a1: BitMatrix::from_adjacency(g1.adjacency()),
        a2: BitMatrix::from_adjacency(g2.adjacency()),
        c1,
        c2,
        order,
        map: vec![usize::MAX; n],
        used: vec![false; n],
    };
    Ok(search.run(0).then_some(search.map))
}

/// Joint 1-dimensional Weisfeiler-Leman refinement, starting from degrees,
/// so that color ids are comparable across the two graphs.
fn refine(g1: &Graph, g2: &Graph) -> (Vec<usize>, Vec<usize>) {
    let mut c1: Vec<usize> = (0..g1.n()).map(|v| g1.degree(v)).collect();
    let mut c2: Vec<usize> = (0..g2.n()).map(|v| g2.degree(v)).collect();
    let mut classes = 0;
    loop {
        let mut ids: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
        let mut step = |g: &Graph, c: &[usize]| -> Vec<usize> {
            (0..g.n())
                .map(|v| {
                    let mut sig: Vec<usize> = g.neighbors(v).iter().map(|&w| c[w]).collect();
                    sig.sort_unstable();
                    let next = ids.len();
                    *ids.entry((c[v], sig)).or_insert(next)
                })
                .collect()
        };
        let n1 = step(g1, &c1);
        let n2 = step(g2, &c2);
        let count = ids.len();
        c1 = n1;
        c2 = n2;
        if count == classes {
            return (c1, c2);
        }
        classes = count;
    }
}

/// BFS order from rare-colored vertices so that every vertex after the
/// first of its component has an already-mapped neighbor.
fn search_order(g: &Graph, colors: &[usize]) -> Vec<usize> {
    let n = g.n();
    let mut freq: HashMap<usize, usize> = HashMap::new();
    for &c in colors {
        *freq.entry(c).or_default() += 1;
    }
    let mut starts: Vec<usize> = (0..n).collect();
    starts.sort_by_key(|&v| (freq[&colors[v]], v));
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for s in starts {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut head = order.len();
        order.push(s);
        while head < order.len() {
            let u = order[head];
            head += 1;
            let mut nbrs: Vec<usize> = g.neighbors(u).iter().copied().filter(|&w| !seen[w]).collect();
            nbrs.sort_by_key(|&w| (freq[&colors[w]], w));
            for w in nbrs {
                seen[w] = true;
                order.push(w);
            }
        }
    }
    order
}

struct Search {
    a1: BitMatrix,
    a2: BitMatrix,
    c1: Vec<usize>,
    c2: Vec<usize>,
    order: Vec<usize>,
    map: Vec<usize>,
    used: Vec<bool>,
}

impl Search {
    fn run(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let v = self.order[depth];
        for cand in 0..self.used.len() {
            if self.used[cand] || self.c2[cand] != self.c1[v] || !self.consistent(depth, v, cand) {
                continue;
            }
            self.map[v] = cand;
            self.used[cand] = true;
            if self.run(depth + 1) {
                return true;
            }
            self.used[cand] = false;
            self.map[v] = usize::MAX;
        }
        false
    }

    fn consistent(&self, depth: usize, v: usize, cand: usize) -> bool {
        self.order[..depth].iter().all(|&u| {
            self.a1.adjacent(u, v) == self.a2.adjacent(self.map[u], cand)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cayley_graph, graph_product, ProductKind};
    use crate::group::make_group;

    fn check_bijection(g1: &Graph, g2: &Graph, f: &[usize]) {
        let mut img = f.to_vec();
        img.sort_unstable();
        assert_eq!(img, (0..g1.n()).collect::<Vec<_>>());
        for u in 0..g1.n() {
            for v in 0..g1.n() {
                if u != v {
                    assert_eq!(g1.has_edge(u, v), g2.has_edge(f[u], f[v]));
                }
            }
        }
    }

    #[test]
    fn relabeled_cycle() {
        let c4 = Graph::cycle(4);
        let relabeled = Graph::from_edges(4, &[(0, 2), (2, 1), (1, 3), (3, 0)]).unwrap();
        let f = are_isomorphic(&c4, &relabeled).unwrap().expect("isomorphic");
        check_bijection(&c4, &relabeled, &f);
    }

    #[test]
    fn cycle_vs_paw() {
        let paw = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 0), (2, 3)]).unwrap();
        assert_eq!(are_isomorphic(&Graph::cycle(4), &paw).unwrap(), None);
    }

    #[test]
    fn same_degrees_different_graphs() {
        // C6 vs two triangles: both 2-regular on 6 vertices
        let two_triangles = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert_eq!(are_isomorphic(&Graph::cycle(6), &two_triangles).unwrap(), None);
    }

    #[test]
    fn dihedral_cayley_graph_is_prism() {
        let g = make_group("gdih:(cyclic:3)").unwrap();
        let c = g.parse_elements("(1,0),(0,1)").unwrap();
        let cay = cayley_graph(&g, &c).unwrap();
        let prism = graph_product(&Graph::cycle(3), &Graph::complete(2), ProductKind::Cartesian);
        let f = are_isomorphic(&cay, &prism).unwrap().expect("prism");
        check_bijection(&cay, &prism, &f);
    }

    #[test]
    fn guard() {
        let big = Graph::empty(129);
        assert!(matches!(are_isomorphic(&big, &big), Err(Error::Guard { .. })));
    }
}
