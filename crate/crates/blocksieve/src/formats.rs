//! Graph documents: graph6, edge lists and JSON.

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;

use blocksieve_core::{Graph, VertexId};
use serde::{Deserialize, Serialize};

/// Parse failure with a 1-based position.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    fn at(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    Graph6,
    EdgeList,
    Json,
}

impl fmt::Display for GraphFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GraphFormat::Graph6 => "graph6",
            GraphFormat::EdgeList => "edgelist",
            GraphFormat::Json => "json",
        })
    }
}

/// A parsed graph with the format it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphDocument {
    pub format: GraphFormat,
    pub name: Option<String>,
    pub graph: Graph,
}

const HEADER: &str = ">>graph6<<";

/// Decodes one graph6 line; `line` only labels errors.
pub fn decode_graph6_line(text: &str, line: usize) -> Result<Graph, ParseError> {
    let body = text.strip_prefix(HEADER).unwrap_or(text);
    let offset = text.len() - body.len();
    let bytes = body.as_bytes();
    for (k, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(ParseError::at(
                line,
                offset + k + 1,
                format!("invalid graph6 byte {:?}", b as char),
            ));
        }
    }
    let sixes = |from: usize, count: usize| -> Result<u64, ParseError> {
        if bytes.len() < from + count {
            return Err(ParseError::at(
                line,
                offset + bytes.len() + 1,
                "truncated vertex count",
            ));
        }
        Ok(bytes[from..from + count]
            .iter()
            .fold(0u64, |acc, &b| (acc << 6) | u64::from(b - 63)))
    };
    let (n, start) = match bytes {
        [] => return Err(ParseError::at(line, offset + 1, "empty graph6 string")),
        [126, 126, ..] => (sixes(2, 6)?, 8),
        [126, ..] => (sixes(1, 3)?, 4),
        [b, ..] => (u64::from(b - 63), 1),
    };
    let n = usize::try_from(n)
        .map_err(|_| ParseError::at(line, offset + 1, "vertex count too large"))?;
    let bits = n * n.saturating_sub(1) / 2;
    let need = bits.div_ceil(6);
    let data = &bytes[start..];
    if data.len() != need {
        return Err(ParseError::at(
            line,
            offset + start + data.len().min(need) + 1,
            format!(
                "expected {need} data bytes for {n} vertices, found {}",
                data.len()
            ),
        ));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if ((data[k / 6] - 63) >> (5 - k % 6)) & 1 == 1 {
                edges.push((i as u32, j as u32));
            }
            k += 1;
        }
    }
    if let Some(last) = data.last() {
        let pad = need * 6 - bits;
        if (last - 63) & ((1 << pad) - 1) != 0 {
            return Err(ParseError::at(
                line,
                offset + start + need,
                "nonzero padding bits",
            ));
        }
    }
    Graph::from_edges(n as u32, &edges).map_err(|e| ParseError::at(line, 1, e.to_string()))
}

/// Encodes a graph in graph6; vertices are taken in sorted order.
pub fn encode_graph6(g: &Graph) -> String {
    let n = g.vertex_count();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        out.extend((0..3).rev().map(|k| ((n >> (6 * k)) & 63) as u8 + 63));
    } else {
        out.extend([126, 126]);
        out.extend((0..6).rev().map(|k| ((n >> (6 * k)) & 63) as u8 + 63));
    }
    let mut acc = 0u8;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | u8::from(g.is_adjacent(i, j));
            k += 1;
            if k % 6 == 0 {
                out.push(acc + 63);
                acc = 0;
            }
        }
    }
    if k % 6 != 0 {
        out.push((acc << (6 - k % 6)) + 63);
    }
    String::from_utf8(out).expect("graph6 is ASCII")
}

/// All graphs of a graph6 file, one per nonempty line.
pub fn decode_graph6_file(text: &str) -> Result<Vec<Graph>, ParseError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| decode_graph6_line(l.trim_end(), i + 1))
        .collect()
}

fn parse_vertex(tok: &str, line: usize, column: usize) -> Result<VertexId, ParseError> {
    tok.parse()
        .map_err(|_| ParseError::at(line, column, format!("invalid vertex id {tok:?}")))
}

/// Edge list: one `u v` pair per line, a lone `v` declares a vertex, `#`
/// starts a comment. Vertex ids are integers or `namespace:local`.
pub fn parse_edgelist(text: &str) -> Result<Graph, ParseError> {
    let mut vertices = BTreeSet::new();
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let mut toks = Vec::new();
        let mut pos = 0;
        for tok in line.split_whitespace() {
            let col = line[pos..].find(tok).unwrap() + pos;
            pos = col + tok.len();
            toks.push((tok, col + 1));
        }
        let ids = toks
            .iter()
            .map(|&(t, c)| parse_vertex(t, i + 1, c))
            .collect::<Result<Vec<_>, _>>()?;
        match ids.as_slice() {
            [] => {}
            [v] => {
                vertices.insert(*v);
            }
            [u, v] => {
                if u == v {
                    return Err(ParseError::at(
                        i + 1,
                        toks[1].1,
                        format!("self-loop at {u}"),
                    ));
                }
                vertices.extend([*u, *v]);
                edges.push((*u, *v));
            }
            _ => {
                return Err(ParseError::at(
                    i + 1,
                    toks[2].1,
                    "expected at most two vertices per line",
                ))
            }
        }
    }
    Graph::new(vertices, edges).map_err(|e| ParseError::at(1, 1, e.to_string()))
}

pub fn write_edgelist(g: &Graph) -> String {
    let mut out = String::new();
    let isolated = (0..g.vertex_count()).filter(|&i| g.degree(i) == 0);
    for i in isolated {
        out.push_str(&format!("{}\n", g.vertex(i)));
    }
    for (u, v) in g.edge_ids() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonGraph {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    vertices: Vec<String>,
    edges: Vec<(String, String)>,
}

fn json_error(e: &serde_json::Error) -> ParseError {
    ParseError::at(e.line(), e.column(), e.to_string())
}

pub fn parse_json_graph(text: &str) -> Result<(Option<String>, Graph), ParseError> {
    let doc: JsonGraph = serde_json::from_str(text).map_err(|e| json_error(&e))?;
    let id = |s: &String| parse_vertex(s, 1, 1);
    let vertices = doc.vertices.iter().map(id).collect::<Result<Vec<_>, _>>()?;
    let edges = doc
        .edges
        .iter()
        .map(|(u, v)| Ok((id(u)?, id(v)?)))
        .collect::<Result<Vec<_>, ParseError>>()?;
    let g = Graph::new(vertices, edges).map_err(|e| ParseError::at(1, 1, e.to_string()))?;
    Ok((doc.name, g))
}

pub fn write_json_graph(g: &Graph, name: Option<&str>) -> String {
    let doc = JsonGraph {
        name: name.map(str::to_string),
        vertices: g.vertices().iter().map(ToString::to_string).collect(),
        edges: g
            .edge_ids()
            .iter()
            .map(|(u, v)| (u.to_string(), v.to_string()))
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("graph documents serialise")
}

impl GraphDocument {
    pub fn parse(text: &str, format: GraphFormat) -> Result<Self, ParseError> {
        let (name, graph) = match format {
            GraphFormat::Graph6 => {
                let mut gs = decode_graph6_file(text)?;
                match gs.len() {
                    1 => (None, gs.remove(0)),
                    0 => return Err(ParseError::at(1, 1, "no graph in graph6 input")),
                    k => {
                        return Err(ParseError::at(
                            2,
                            1,
                            format!("expected one graph, found {k}"),
                        ))
                    }
                }
            }
            GraphFormat::EdgeList => (None, parse_edgelist(text)?),
            GraphFormat::Json => parse_json_graph(text)?,
        };
        Ok(GraphDocument {
            format,
            name,
            graph,
        })
    }

    pub fn render(&self) -> String {
        match self.format {
            GraphFormat::Graph6 => encode_graph6(&self.graph) + "\n",
            GraphFormat::EdgeList => write_edgelist(&self.graph),
            GraphFormat::Json => write_json_graph(&self.graph, self.name.as_deref()),
        }
    }
}

/// Format implied by a file name: `.g6` graph6, `.json` JSON, otherwise an
/// edge list.
pub fn format_for_path(path: &Path) -> GraphFormat {
    match path.extension().and_then(|e| e.to_str()) {
        Some("g6") | Some("graph6") => GraphFormat::Graph6,
        Some("json") => GraphFormat::Json,
        _ => GraphFormat::EdgeList,
    }
}
