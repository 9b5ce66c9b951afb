//! Reading and writing graphs as graph6 records or JSON edge lists.

use std::io::Read;

use serde::{Deserialize, Serialize};

use super::graph6::{encode_graph6, parse_graph6};
use super::Graph;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Graph6,
    Json,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "graph6" | "g6" => Ok(Format::Graph6),
            "json" => Ok(Format::Json),
            other => Err(Error::InvalidParams(format!(
                "unknown graph format `{other}`"
            ))),
        }
    }
}

/// `{"n": 4, "edges": [[0, 1], [1, 2]]}`
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeList {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

pub fn parse_json(text: &str) -> Result<Graph> {
    let list: EdgeList = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
    Graph::from_edges(list.n, list.edges.into_iter().map(|[u, v]| (u, v)))
}

pub fn to_json(g: &Graph) -> String {
    let list = EdgeList {
        n: g.n(),
        edges: g.edges().map(|(u, v)| [u, v]).collect(),
    };
    serde_json::to_string(&list).expect("edge lists always serialize")
}

/// Guesses the format from the first non-blank character.
pub fn detect(text: &str) -> Format {
    match text.trim_start().chars().next() {
        Some('{') => Format::Json,
        _ => Format::Graph6,
    }
}

/// Parses every graph in `text`: one JSON document, or one graph6 record per
/// non-empty line.
pub fn parse_all(text: &str, format: Option<Format>) -> Result<Vec<Graph>> {
    match format.unwrap_or_else(|| detect(text)) {
        Format::Json => Ok(vec![parse_json(text)?]),
        Format::Graph6 => text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(parse_graph6)
            .collect(),
    }
}

/// Parses exactly one graph.
pub fn parse_one(text: &str, format: Option<Format>) -> Result<Graph> {
    let mut graphs = parse_all(text, format)?;
    match graphs.len() {
        1 => Ok(graphs.pop().unwrap()),
        0 => Err(Error::InvalidGraph("input contains no graph".into())),
        n => Err(Error::InvalidGraph(format!(
            "expected one graph, input contains {n}"
        ))),
    }
}

/// Reads one graph from a path, or from standard input when the path is `-`.
pub fn read_graph(path: &str, format: Option<Format>) -> Result<Graph> {
    let text = if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(path)?
    };
    parse_one(&text, format)
}

pub fn write_graph(g: &Graph, format: Format) -> Result<String> {
    match format {
        Format::Graph6 => encode_graph6(g),
        Format::Json => Ok(to_json(g)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::petersen;

    #[test]
    fn json_round_trip() {
        let p = petersen();
        let text = to_json(&p);
        assert_eq!(detect(&text), Format::Json);
        assert_eq!(parse_one(&text, None).unwrap(), p);
    }

    #[test]
    fn json_errors() {
        assert!(matches!(parse_json("{\"n\": 2}"), Err(Error::Json(_))));
        assert!(matches!(
            parse_json("{\"n\": 2, \"edges\": [[0, 2]]}"),
            Err(Error::VertexOutOfRange { .. })
        ));
    }

    #[test]
    fn multiple_graph6_lines() {
        let gs = parse_all("A_\n\nD??\n", None).unwrap();
        assert_eq!(gs.len(), 2);
        assert!(parse_one("A_\nA_", None).is_err());
    }
}
