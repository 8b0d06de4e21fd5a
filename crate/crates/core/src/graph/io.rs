use serde::{Deserialize, Serialize};

use super::Network;
use crate::error::{Error, Result};

/// Serialized graph formats.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    /// `n <count>` header (optional), then one `u v` pair per line, 1-based,
    /// `#` comments.
    EdgeList,
    /// `{"nodes": <count>, "edges": [[u, v], ...]}`, 1-based.
    Json,
}

/// Wire shape of the JSON graph format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub nodes: usize,
    pub edges: Vec<[usize; 2]>,
}

impl From<&Network> for GraphJson {
    fn from(g: &Network) -> Self {
        GraphJson {
            nodes: g.node_count(),
            edges: g.edges().map(|(u, v)| [u + 1, v + 1]).collect(),
        }
    }
}

pub fn parse_network(source: &str, format: GraphFormat) -> Result<Network> {
    match format {
        GraphFormat::EdgeList => parse_edge_list(source),
        GraphFormat::Json => parse_json(source),
    }
}

/// Picks JSON when the first non-blank character is `{`, the edge list otherwise.
pub fn parse_network_auto(source: &str) -> Result<Network> {
    let format = if source.trim_start().starts_with('{') {
        GraphFormat::Json
    } else {
        GraphFormat::EdgeList
    };
    parse_network(source, format)
}

pub fn emit_network(g: &Network, format: GraphFormat) -> String {
    match format {
        GraphFormat::EdgeList => {
            let mut out = format!("n {}\n", g.node_count());
            for (u, v) in g.edges() {
                out.push_str(&format!("{} {}\n", u + 1, v + 1));
            }
            out
        }
        GraphFormat::Json => {
            serde_json::to_string(&GraphJson::from(g)).expect("graph JSON is always serializable")
        }
    }
}

fn parse_id(token: &str, line: usize) -> Result<usize> {
    token
        .parse::<usize>()
        .map_err(|_| Error::parse(line, format!("expected a node id, found {token:?}")))
}

fn parse_edge_list(source: &str) -> Result<Network> {
    let mut declared: Option<usize> = None;
    let mut edges: Vec<(usize, usize, usize)> = Vec::new();
    let mut seen_content = false;

    for (idx, raw) in source.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens[0] == "n" {
            if seen_content {
                return Err(Error::parse(line_no, "header must precede all edges"));
            }
            if tokens.len() != 2 {
                return Err(Error::parse(line_no, "header must be `n <count>`"));
            }
            let count = parse_id(tokens[1], line_no)?;
            if count == 0 {
                return Err(Error::parse(line_no, "node count must be at least 1"));
            }
            declared = Some(count);
            seen_content = true;
            continue;
        }
        seen_content = true;
        if tokens.len() != 2 {
            return Err(Error::parse(
                line_no,
                format!("expected `u v`, found {line:?}"),
            ));
        }
        let u = parse_id(tokens[0], line_no)?;
        let v = parse_id(tokens[1], line_no)?;
        if u == 0 || v == 0 {
            return Err(Error::parse(line_no, "node ids are 1-based"));
        }
        if u == v {
            return Err(Error::parse(line_no, format!("self-loop at node {u}")));
        }
        if let Some(n) = declared {
            if u > n || v > n {
                return Err(Error::parse(
                    line_no,
                    format!("node id {} exceeds declared count {n}", u.max(v)),
                ));
            }
        }
        edges.push((u, v, line_no));
    }

    let n = match declared {
        Some(n) => n,
        None => {
            let n = edges.iter().map(|&(u, v, _)| u.max(v)).max().unwrap_or(0);
            if n == 0 {
                return Err(Error::parse(0, "empty edge list without a node-count header"));
            }
            let mut present = vec![false; n];
            for &(u, v, _) in &edges {
                present[u - 1] = true;
                present[v - 1] = true;
            }
            if let Some(missing) = present.iter().position(|p| !p) {
                return Err(Error::parse(
                    0,
                    format!(
                        "node ids are not contiguous: {} never appears (add an `n <count>` header for isolated nodes)",
                        missing + 1
                    ),
                ));
            }
            n
        }
    };

    let mut g = Network::edgeless(n)?;
    for (u, v, _) in edges {
        g.add_edge(u - 1, v - 1)?;
    }
    Ok(g)
}

fn parse_json(source: &str) -> Result<Network> {
    let doc: GraphJson = serde_json::from_str(source)
        .map_err(|e| Error::parse(e.line(), format!("invalid graph JSON: {e}")))?;
    if doc.nodes == 0 {
        return Err(Error::parse(0, "\"nodes\" must be at least 1"));
    }
    let mut g = Network::edgeless(doc.nodes)?;
    for (k, &[u, v]) in doc.edges.iter().enumerate() {
        if u == 0 || v == 0 || u > doc.nodes || v > doc.nodes {
            return Err(Error::parse(
                0,
                format!("edge #{k} [{u}, {v}] is outside 1..={}", doc.nodes),
            ));
        }
        if u == v {
            return Err(Error::parse(0, format!("edge #{k} is a self-loop at node {u}")));
        }
        g.add_edge(u - 1, v - 1)?;
    }
    Ok(g)
}
