//! Plain-text graph files, DIMACS import and partition files.
//!
//! Graph file layout (0-indexed, `#` lines ignored anywhere):
//!
//! ```text
//! n m
//! u v        (m lines)
//! weights    (optional)
//! v w        (n lines)
//! ```

use std::fmt::Write as _;

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::graph::{Graph, GraphError, WeightedGraph};
use crate::vertex_set::VertexSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphFile {
    pub graph: Graph,
    pub weights: Option<Vec<u64>>,
}

impl GraphFile {
    pub fn unweighted(graph: Graph) -> Self {
        GraphFile { graph, weights: None }
    }

    pub fn from_weighted(g: &WeightedGraph) -> Self {
        GraphFile {
            graph: g.graph().clone(),
            weights: Some(g.weights().to_vec()),
        }
    }

    pub fn weighted(&self) -> Option<WeightedGraph> {
        self.weights
            .as_ref()
            .map(|w| WeightedGraph::new(self.graph.clone(), w.clone()).unwrap())
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let Some((hl, header)) = lines.next() else {
            return err(1, "missing header `n m`");
        };
        let [n, m] = parse_fields::<2>(hl, header)?;
        let mut edges = Vec::with_capacity(m);
        for _ in 0..m {
            let Some((l, text)) = lines.next() else {
                return err(hl, format!("header announces {m} edges, found {}", edges.len()));
            };
            if text == "weights" {
                return err(l, format!("header announces {m} edges, found {}", edges.len()));
            }
            let [u, v] = parse_fields::<2>(l, text)?;
            edges.push((u, v));
        }
        let graph = Graph::new(n, &edges).map_err(|e| ParseError {
            line: hl,
            message: e.to_string(),
        })?;
        if graph.edge_count() != m {
            return err(hl, "duplicate edges");
        }

        let weights = match lines.next() {
            None => None,
            Some((l, "weights")) => {
                let mut w: Vec<Option<u64>> = vec![None; n];
                for (l2, text) in lines.by_ref() {
                    let [v, x] = parse_fields::<2>(l2, text)?;
                    if v >= n {
                        return err(l2, format!("vertex {v} out of range"));
                    }
                    if w[v].replace(x as u64).is_some() {
                        return err(l2, format!("vertex {v} weighted twice"));
                    }
                }
                match w.iter().position(Option::is_none) {
                    Some(v) => return err(l, format!("vertex {v} has no weight")),
                    None => Some(w.into_iter().map(Option::unwrap).collect()),
                }
            }
            Some((l, _)) => return err(l, format!("expected `weights` or end of file after {m} edges")),
        };
        Ok(GraphFile { graph, weights })
    }

    /// Canonical text: edges sorted, weights in vertex order.
    pub fn emit(&self) -> String {
        let mut out = format!("{} {}\n", self.graph.n(), self.graph.edge_count());
        for (u, v) in self.graph.edges() {
            writeln!(out, "{u} {v}").unwrap();
        }
        if let Some(w) = &self.weights {
            out.push_str("weights\n");
            for (v, x) in w.iter().enumerate() {
                writeln!(out, "{v} {x}").unwrap();
            }
        }
        out
    }
}

fn parse_fields<const K: usize>(line: usize, text: &str) -> Result<[usize; K], ParseError> {
    let fields: Vec<&str> = text.split_whitespace().collect();
    if fields.len() != K {
        return err(line, format!("expected {K} integers, got `{text}`"));
    }
    let mut out = [0; K];
    for (slot, f) in out.iter_mut().zip(fields) {
        *slot = f.parse().map_err(|_| ParseError {
            line,
            message: format!("not a non-negative integer: `{f}`"),
        })?;
    }
    Ok(out)
}

/// DIMACS `p edge n m` / `e u v` (1-indexed), `c` comments. Repeated edges
/// are merged.
pub fn parse_dimacs(text: &str) -> Result<Graph, ParseError> {
    let mut n = None;
    let mut edges = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let l = i + 1;
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields.first().copied() {
            None | Some("c") => {}
            Some("p") => {
                if fields.len() != 4 {
                    return err(l, "expected `p edge n m`");
                }
                n = Some(fields[2].parse::<usize>().map_err(|_| ParseError {
                    line: l,
                    message: "bad vertex count".into(),
                })?);
            }
            Some("e") => {
                let [u, v] = parse_fields::<2>(l, &fields[1..].join(" "))?;
                if u == 0 || v == 0 {
                    return err(l, "DIMACS vertices are 1-indexed");
                }
                edges.push((u - 1, v - 1));
            }
            Some(other) => return err(l, format!("unknown line type `{other}`")),
        }
    }
    let n = n.ok_or(ParseError {
        line: 1,
        message: "missing `p` line".into(),
    })?;
    Graph::new(n, &edges).map_err(|e: GraphError| ParseError {
        line: 0,
        message: e.to_string(),
    })
}

/// Partition file: one line `A ids...` and one line `B ids...`.
pub fn parse_partition(text: &str, n: usize) -> Result<(VertexSet, VertexSet), ParseError> {
    let mut sides: [Option<VertexSet>; 2] = [None, None];
    for (i, line) in text.lines().enumerate() {
        let l = i + 1;
        let mut fields = line.split_whitespace();
        let side = match fields.next() {
            None => continue,
            Some(t) if t.starts_with('#') => continue,
            Some("A") => 0,
            Some("B") => 1,
            Some(t) => return err(l, format!("expected `A` or `B`, got `{t}`")),
        };
        let mut set = VertexSet::new(n);
        for f in fields {
            let v: usize = f.parse().map_err(|_| ParseError {
                line: l,
                message: format!("not a vertex: `{f}`"),
            })?;
            if v >= n {
                return err(l, format!("vertex {v} out of range"));
            }
            set.insert(v);
        }
        if sides[side].replace(set).is_some() {
            return err(l, "side given twice");
        }
    }
    let [Some(a), Some(b)] = sides else {
        return err(1, "both `A` and `B` lines are required");
    };
    Ok((a, b))
}

pub fn emit_partition(a: &VertexSet, b: &VertexSet) -> String {
    let line = |tag: &str, s: &VertexSet| {
        let ids: Vec<String> = s.iter().map(|v| v.to_string()).collect();
        if ids.is_empty() {
            format!("{tag}\n")
        } else {
            format!("{tag} {}\n", ids.join(" "))
        }
    };
    line("A", a) + &line("B", b)
}

/// Hex SHA-256 of a file's bytes.
pub fn content_hash(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}
