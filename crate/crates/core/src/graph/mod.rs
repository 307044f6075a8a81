//! Simple undirected graphs, Cayley and Schreier graph builders, products
//! and edge colorings.

mod cycles;
mod io;
mod iso;

use std::collections::BTreeMap;

pub use cycles::{count_cycles, enumerate_cycles, for_each_cycle, Cycle, DEFAULT_CYCLE_CEILING};
pub use io::{decode_json, encode_dot, encode_json, GraphJson};
pub use iso::{are_isomorphic, ISOMORPHISM_LIMIT};

use crate::error::{Error, Result};
use crate::group::{left_cosets, Elem, FiniteGroup, Subgroup};

/// Finite simple undirected graph with sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    labels: Option<Vec<String>>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            labels: None,
        }
    }

    /// Builds a graph from an edge list; parallel edges collapse, loops are
    /// rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::invalid(format!("edge ({u}, {v}) out of range for {n} vertices")));
            }
            if u == v {
                return Err(Error::invalid(format!("loop at vertex {u}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        let mut g = Graph::empty(n);
        for u in 0..n {
            g.add_edge(u, (u + 1) % n);
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 1..n {
            g.add_edge(u - 1, u);
        }
        g
    }

    /// Inserts `{u, v}`; returns false if it was already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        assert_ne!(u, v, "loops are not allowed");
        match self.adj[u].binary_search(&v) {
            Ok(_) => false,
            Err(i) => {
                self.adj[u].insert(i, v);
                let j = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(j, u);
                true
            }
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn adjacency(&self) -> &[Vec<usize>] {
        &self.adj
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nbrs)| nbrs.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
            .collect()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn set_labels(&mut self, labels: Vec<String>) -> Result<()> {
        if labels.len() != self.n() {
            return Err(Error::invalid("one label per vertex is required"));
        }
        self.labels = Some(labels);
        Ok(())
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.n()];
        let mut out = Vec::new();
        for s in 0..self.n() {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            comp[s] = id;
            let mut stack = vec![s];
            let mut members = vec![s];
            while let Some(u) = stack.pop() {
                for &v in &self.adj[u] {
                    if comp[v] == usize::MAX {
                        comp[v] = id;
                        stack.push(v);
                        members.push(v);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Subgraph induced by `vertices`; vertex `i` of the result is
    /// `vertices[i]`.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let mut g = Graph::empty(vertices.len());
        for (i, &u) in vertices.iter().enumerate() {
            for &v in &self.adj[u] {
                let j = index[v];
                if j != usize::MAX && i < j {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Quotient graph: vertices are classes, two classes are adjacent when
    /// some edge joins them. Edges inside a class are dropped.
    pub fn contract(&self, class_of: &[usize]) -> Result<Graph> {
        if class_of.len() != self.n() {
            return Err(Error::invalid("class map must cover every vertex"));
        }
        let classes = class_of.iter().copied().max().map_or(0, |m| m + 1);
        let mut g = Graph::empty(classes);
        for (u, v) in self.edges() {
            let (a, b) = (class_of[u], class_of[v]);
            if a != b {
                g.add_edge(a, b);
            }
        }
        Ok(g)
    }

    pub fn is_regular(&self) -> bool {
        self.adj.windows(2).all(|w| w[0].len() == w[1].len())
    }
}

/// Checks a connection set: in range, no identity, no repeats.
pub(crate) fn validate_connection_set(g: &FiniteGroup, c: &[Elem]) -> Result<()> {
    let mut seen = vec![false; g.order()];
    for &x in c {
        if x >= g.order() {
            return Err(Error::invalid(format!("element {x} out of range")));
        }
        if x == g.identity() {
            return Err(Error::invalid("connection set contains the identity"));
        }
        if seen[x] {
            return Err(Error::invalid(format!(
                "connection set repeats {}",
                g.name(x)
            )));
        }
        seen[x] = true;
    }
    Ok(())
}

/// Undirected right Cayley graph: `x ~ x c` for every `c` in the set.
pub fn cayley_graph(g: &FiniteGroup, c: &[Elem]) -> Result<Graph> {
    validate_connection_set(g, c)?;
    let mut graph = Graph::empty(g.order());
    for x in g.elements() {
        for &s in c {
            graph.add_edge(x, g.mul(x, s));
        }
    }
    graph.labels = Some(g.elements().map(|x| g.name(x)).collect());
    Ok(graph)
}

/// Schreier coset graph on the left cosets of `h`, joining `xH` and `xcH`.
pub fn schreier_graph(g: &FiniteGroup, h: &Subgroup, c: Elem) -> Result<Graph> {
    if c >= g.order() {
        return Err(Error::invalid(format!("element {c} out of range")));
    }
    if h.contains(c) {
        return Err(Error::invalid(format!(
            "{} lies in the subgroup; every Schreier edge would be a loop",
            g.name(c)
        )));
    }
    let cosets = left_cosets(g, h)?;
    let mut graph = Graph::empty(cosets.len());
    for x in g.elements() {
        let a = cosets.coset_of[x];
        let b = cosets.coset_of[g.mul(x, c)];
        debug_assert_ne!(a, b);
        graph.add_edge(a, b);
    }
    Ok(graph)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProductKind {
    Cartesian,
    Strong,
}

/// Cartesian or strong product; vertex `(u, v)` gets id `u * |G2| + v`.
pub fn graph_product(g1: &Graph, g2: &Graph, kind: ProductKind) -> Graph {
    let (n1, n2) = (g1.n(), g2.n());
    let id = |u: usize, v: usize| u * n2 + v;
    let mut g = Graph::empty(n1 * n2);
    for u in 0..n1 {
        for (v, v2) in g2.edges() {
            g.add_edge(id(u, v), id(u, v2));
        }
    }
    for (u, u2) in g1.edges() {
        for v in 0..n2 {
            g.add_edge(id(u, v), id(u2, v));
        }
        if kind == ProductKind::Strong {
            for (v, v2) in g2.edges() {
                g.add_edge(id(u, v), id(u2, v2));
                g.add_edge(id(u, v2), id(u2, v));
            }
        }
    }
    g
}

/// Total map from the edges of a graph to color ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeColoring {
    colors: BTreeMap<(usize, usize), usize>,
}

impl EdgeColoring {
    /// Wraps a coloring, checking its domain is exactly the edge set.
    pub fn new(graph: &Graph, entries: impl IntoIterator<Item = ((usize, usize), usize)>) -> Result<Self> {
        let mut colors = BTreeMap::new();
        for ((u, v), c) in entries {
            let key = (u.min(v), u.max(v));
            if !graph.has_edge_checked(key.0, key.1) {
                return Err(Error::invalid(format!("({u}, {v}) is not an edge")));
            }
            if colors.insert(key, c).is_some() {
                return Err(Error::invalid(format!("edge ({u}, {v}) colored twice")));
            }
        }
        if colors.len() != graph.edge_count() {
            return Err(Error::invalid(format!(
                "coloring covers {} of {} edges",
                colors.len(),
                graph.edge_count()
            )));
        }
        Ok(EdgeColoring { colors })
    }

    pub fn color(&self, u: usize, v: usize) -> Option<usize> {
        self.colors.get(&(u.min(v), u.max(v))).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), usize)> + '_ {
        self.colors.iter().map(|(&e, &c)| (e, c))
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn num_colors(&self) -> usize {
        let mut seen: Vec<usize> = self.colors.values().copied().collect();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }

    /// Edges grouped by color, colors ascending.
    pub fn classes(&self) -> BTreeMap<usize, Vec<(usize, usize)>> {
        let mut out: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
        for (&e, &c) in &self.colors {
            out.entry(c).or_default().push(e);
        }
        out
    }

    /// Colors aligned with adjacency lists: `out[v][i]` is the color of the
    /// edge to `graph.neighbors(v)[i]`.
    pub fn aligned(&self, graph: &Graph) -> Vec<Vec<usize>> {
        (0..graph.n())
            .map(|v| {
                graph
                    .neighbors(v)
                    .iter()
                    .map(|&w| self.color(v, w).expect("coloring is total"))
                    .collect()
            })
            .collect()
    }
}

impl Graph {
    fn has_edge_checked(&self, u: usize, v: usize) -> bool {
        u < self.n() && v < self.n() && self.has_edge(u, v)
    }
}

/// Colors edge `{x, x c}` by the first index `i` with `C[i]` equal to `c` or
/// `c^-1`.
pub fn natural_edge_coloring(g: &FiniteGroup, c: &[Elem]) -> Result<(Graph, EdgeColoring)> {
    let graph = cayley_graph(g, c)?;
    let mut colors = BTreeMap::new();
    for x in g.elements() {
        for &s in c {
            let y = g.mul(x, s);
            let key = (x.min(y), x.max(y));
            let color = c
                .iter()
                .position(|&t| t == s || t == g.inv(s))
                .expect("s is in C");
            colors
                .entry(key)
                .and_modify(|old: &mut usize| *old = (*old).min(color))
                .or_insert(color);
        }
    }
    let coloring = EdgeColoring::new(&graph, colors)?;
    Ok((graph, coloring))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::make_group;

    #[test]
    fn cayley_z4() {
        let z4 = make_group("cyclic:4").unwrap();
        assert_eq!(cayley_graph(&z4, &[1]).unwrap().edges(), Graph::cycle(4).edges());
        let k4 = cayley_graph(&z4, &[2, 1]).unwrap();
        assert_eq!(k4.edges(), Graph::complete(4).edges());
        assert!(cayley_graph(&z4, &[0]).is_err());
        assert!(cayley_graph(&z4, &[1, 1]).is_err());
    }

    #[test]
    fn cayley_order_21() {
        let g = make_group("sdp:7,3,2").unwrap();
        let c = g.parse_elements("(1,0),(0,1)").unwrap();
        let graph = cayley_graph(&g, &c).unwrap();
        assert_eq!(graph.n(), 21);
        assert!((0..21).all(|v| graph.degree(v) == 4));
        assert!(graph.is_connected());
    }

    #[test]
    fn cayley_connected_iff_generating() {
        let z6 = make_group("cyclic:6").unwrap();
        assert!(!cayley_graph(&z6, &[2]).unwrap().is_connected());
        assert!(cayley_graph(&z6, &[2, 3]).unwrap().is_connected());
    }

    #[test]
    fn schreier_examples() {
        let z6 = make_group("cyclic:6").unwrap();
        let tri = schreier_graph(&z6, &Subgroup::closure(&z6, &[3]), 1).unwrap();
        assert_eq!(tri.edges(), Graph::complete(3).edges());

        let s4 = make_group("sym:4").unwrap();
        let h = Subgroup::closure(&s4, &s4.parse_elements("(1 2),(1 3)").unwrap());
        let c = s4.parse_element("(1 4)").unwrap();
        assert_eq!(schreier_graph(&s4, &h, c).unwrap().edges(), Graph::complete(4).edges());

        let z4 = make_group("cyclic:4").unwrap();
        let triv = schreier_graph(&z4, &Subgroup::trivial(&z4), 1).unwrap();
        assert_eq!(triv.edges(), cayley_graph(&z4, &[1]).unwrap().edges());
        assert!(schreier_graph(&z4, &Subgroup::closure(&z4, &[2]), 2).is_err());
    }

    #[test]
    fn products() {
        let k2 = Graph::complete(2);
        let strong = graph_product(&k2, &k2, ProductKind::Strong);
        assert_eq!(strong.edges(), Graph::complete(4).edges());
        let prism = graph_product(&Graph::cycle(3), &k2, ProductKind::Cartesian);
        assert_eq!((prism.n(), prism.edge_count()), (6, 9));
    }

    #[test]
    fn natural_coloring_z4() {
        let z4 = make_group("cyclic:4").unwrap();
        let (_, ec) = natural_edge_coloring(&z4, &[2, 1]).unwrap();
        let classes = ec.classes();
        assert_eq!(classes[&0], vec![(0, 2), (1, 3)]);
        assert_eq!(classes[&1], vec![(0, 1), (0, 3), (1, 2), (2, 3)]);
        let z6 = make_group("cyclic:6").unwrap();
        let (g, ec) = natural_edge_coloring(&z6, &[1]).unwrap();
        assert_eq!(ec.num_colors(), 1);
        assert_eq!(g.edges(), Graph::cycle(6).edges());
    }

    #[test]
    fn natural_coloring_q32() {
        let q = make_group("dicyclic:32").unwrap();
        let c = q.parse_elements("(8,0),(4,0),(5,1),(3,1),(6,1)").unwrap();
        let (g, ec) = natural_edge_coloring(&q, &c).unwrap();
        let classes = ec.classes();
        assert_eq!(classes.len(), 5);
        // b^2 class is a perfect matching
        assert_eq!(classes[&0].len(), 16);
        let mut touched = [0; 32];
        for &(u, v) in &classes[&0] {
            touched[u] += 1;
            touched[v] += 1;
        }
        assert!(touched.iter().all(|&t| t == 1));
        // every vertex sees at most two edges of each color
        for row in ec.aligned(&g) {
            for color in 0..5 {
                assert!(row.iter().filter(|&&c| c == color).count() <= 2);
            }
        }
    }

    #[test]
    fn inverse_pair_takes_lower_index() {
        let z5 = make_group("cyclic:5").unwrap();
        let (_, ec) = natural_edge_coloring(&z5, &[1, 4]).unwrap();
        assert_eq!(ec.num_colors(), 1);
    }

    #[test]
    fn edge_coloring_domain_checked() {
        let c4 = Graph::cycle(4);
        assert!(EdgeColoring::new(&c4, [((0, 1), 0)]).is_err());
        assert!(EdgeColoring::new(&c4, [((0, 2), 0)]).is_err());
        let ok = EdgeColoring::new(&c4, c4.edges().into_iter().map(|e| (e, 0))).unwrap();
        assert_eq!(ok.color(1, 0), Some(0));
    }

    #[test]
    fn contraction_drops_internal_edges() {
        let k4 = Graph::complete(4);
        let c = k4.contract(&[0, 0, 1, 1]).unwrap();
        assert_eq!(c.edges(), vec![(0, 1)]);
    }
}
