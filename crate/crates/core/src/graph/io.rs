//! JSON round-trip and DOT export.
//!
//! JSON schema: `{"n": int, "edges": [[u,v],...], "edge_colors": [[u,v,c],...]?,
//! "labels": [string]?}`, 0-based, `u < v` in every pair.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::{EdgeColoring, Graph};
use crate::error::{Error, Result};

const PALETTE: [&str; 12] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
    "#bcbd22", "#17becf", "#393b79", "#637939",
];

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edge_colors: Option<Vec<[usize; 3]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

pub fn encode_json(graph: &Graph, coloring: Option<&EdgeColoring>) -> String {
    let doc = GraphJson {
        n: graph.n(),
        edges: graph.edges().into_iter().map(|(u, v)| [u, v]).collect(),
        edge_colors: coloring.map(|ec| ec.iter().map(|((u, v), c)| [u, v, c]).collect()),
        labels: graph.labels().map(<[String]>::to_vec),
    };
    serde_json::to_string(&doc).expect("graph json serializes")
}

pub fn decode_json(text: &str) -> Result<(Graph, Option<EdgeColoring>)> {
    let doc: GraphJson = serde_json::from_str(text).map_err(|e| Error::Parse {
        pos: offset_of(text, e.line(), e.column()),
        msg: format!("line {} column {}: {e}", e.line(), e.column()),
    })?;
    let mut graph = Graph::empty(doc.n);
    for (i, &[u, v]) in doc.edges.iter().enumerate() {
        if u >= v {
            return Err(Error::invalid(format!("edges[{i}]: expected u < v, got [{u},{v}]")));
        }
        if v >= doc.n {
            return Err(Error::invalid(format!("edges[{i}]: vertex {v} out of range")));
        }
        if !graph.add_edge(u, v) {
            return Err(Error::invalid(format!("edges[{i}]: duplicate edge [{u},{v}]")));
        }
    }
    if let Some(labels) = doc.labels {
        graph.set_labels(labels)?;
    }
    let coloring = match doc.edge_colors {
        None => None,
        Some(triples) => {
            for (i, &[u, v, _]) in triples.iter().enumerate() {
                if u >= v {
                    return Err(Error::invalid(format!(
                        "edge_colors[{i}]: expected u < v, got [{u},{v}]"
                    )));
                }
            }
            Some(EdgeColoring::new(
                &graph,
                triples.into_iter().map(|[u, v, c]| ((u, v), c)),
            )?)
        }
    };
    Ok((graph, coloring))
}

fn offset_of(text: &str, line: usize, column: usize) -> usize {
    text.split_inclusive('\n')
        .take(line.saturating_sub(1))
        .map(str::len)
        .sum::<usize>()
        + column.saturating_sub(1)
}

/// DOT export. Edges are colored from a 12-color palette cycling by color id
/// and labeled `c<id>`.
pub fn encode_dot(graph: &Graph, coloring: Option<&EdgeColoring>) -> String {
    let mut out = String::from("graph G {\n");
    for v in 0..graph.n() {
        match graph.labels() {
            Some(labels) => writeln!(out, "  {v} [label=\"{}\"];", labels[v].replace('"', "\\\"")),
            None => writeln!(out, "  {v};"),
        }
        .expect("write to string");
    }
    for (u, v) in graph.edges() {
        match coloring.and_then(|ec| ec.color(u, v)) {
            Some(c) => writeln!(
                out,
                "  {u} -- {v} [color=\"{}\", label=\"c{c}\"];",
                PALETTE[c % PALETTE.len()]
            ),
            None => writeln!(out, "  {u} -- {v};"),
        }
        .expect("write to string");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn encode_cycle() {
        let json = encode_json(&Graph::cycle(4), None);
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["n"], 4);
        assert_eq!(v["edges"].as_array().unwrap().len(), 4);
        assert!(v.get("edge_colors").is_none());
    }

    #[test]
    fn colored_graph_has_triples() {
        let c4 = Graph::cycle(4);
        let ec = EdgeColoring::new(&c4, c4.edges().into_iter().enumerate().map(|(i, e)| (e, i % 2))).unwrap();
        let json = encode_json(&c4, Some(&ec));
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["edge_colors"][0], serde_json::json!([0, 1, 0]));
        let (g, back) = decode_json(&json).unwrap();
        assert_eq!(g, c4);
        assert_eq!(back.unwrap(), ec);
    }

    #[test]
    fn rejects_malformed() {
        let err = decode_json("{\"n\": 3,\n \"edges\": [[0,1],]}").unwrap_err();
        match err {
            Error::Parse { pos, msg } => {
                assert!(msg.contains("line 2"), "{msg}");
                assert!(pos > 9);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(decode_json(r#"{"n":3,"edges":[[1,0]]}"#).is_err());
        assert!(decode_json(r#"{"n":3,"edges":[[0,3]]}"#).is_err());
        assert!(decode_json(r#"{"n":3,"edges":[[0,1],[0,1]]}"#).is_err());
        assert!(decode_json(r#"{"n":3,"edges":[[0,1]],"edge_colors":[]}"#).is_err());
    }

    #[test]
    fn dot_has_labels_and_colors() {
        let mut k3 = Graph::complete(3);
        k3.set_labels(vec!["a".into(), "b".into(), "c".into()]).unwrap();
        let ec = EdgeColoring::new(&k3, k3.edges().into_iter().enumerate().map(|(i, e)| (e, i + 11))).unwrap();
        let dot = encode_dot(&k3, Some(&ec));
        assert!(dot.contains("label=\"a\""));
        assert!(dot.contains("label=\"c11\""));
        assert!(dot.contains(PALETTE[0]));
        assert!(dot.starts_with("graph G {"));
    }

    proptest! {
        #[test]
        fn json_round_trip(n in 1usize..12, raw in proptest::collection::vec((0usize..12, 0usize..12, 0usize..4), 0..30)) {
            let edges: Vec<(usize, usize)> = raw.iter()
                .filter(|(u, v, _)| u != v && *u < n && *v < n)
                .map(|&(u, v, _)| (u, v)).collect();
            let g = Graph::from_edges(n, &edges).unwrap();
            let ec = EdgeColoring::new(&g, g.edges().into_iter().map(|e| (e, (e.0 + e.1) % 3))).unwrap();
            let (back, back_ec) = decode_json(&encode_json(&g, Some(&ec))).unwrap();
            prop_assert_eq!(back, g);
            prop_assert_eq!(back_ec.unwrap(), ec);
        }
    }
}
