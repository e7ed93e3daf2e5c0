//! Text formats: graph files, graph URIs, code files and pattern files.

use std::fs;
use std::path::Path;

use thiserror::Error;

use crate::codes::{Code, CodeError};
use crate::constructions::patterns::PeriodicPattern;
use crate::constructions::ConstructionError;
use crate::graph::{Family, Graph, GraphError, GridFamily, TorusSpec};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("bad graph uri `{0}`")]
    BadUri(String),
    #[error("{path}: {source}")]
    File { path: String, source: std::io::Error },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
}

fn parse_err(line: usize, msg: impl Into<String>) -> IoError {
    IoError::Parse { line, msg: msg.into() }
}

fn read(path: &Path) -> Result<String, IoError> {
    fs::read_to_string(path).map_err(|source| IoError::File { path: path.display().to_string(), source })
}

/// Lines with `#` comments stripped, paired with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn num<T: std::str::FromStr>(line: usize, s: &str) -> Result<T, IoError> {
    s.parse().map_err(|_| parse_err(line, format!("expected a number, got `{s}`")))
}

/// Parses `graph <n> <m>`, then `u v` edge lines and optional
/// `label <v> <string>` lines.
pub fn parse_graph(text: &str) -> Result<Graph, IoError> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| parse_err(1, "empty graph file"))?;
    let parts: Vec<&str> = header.split_whitespace().collect();
    let (n, m): (usize, usize) = match parts.as_slice() {
        ["graph", n, m] => (num(hl, n)?, num(hl, m)?),
        _ => return Err(parse_err(hl, "expected `graph <n> <m>`")),
    };
    let mut edges = Vec::with_capacity(m);
    let mut labels: Vec<String> = (0..n).map(|v| v.to_string()).collect();
    for (ln, l) in lines {
        let parts: Vec<&str> = l.split_whitespace().collect();
        match parts.as_slice() {
            ["label", v, name] => {
                let v: usize = num(ln, v)?;
                if v >= n {
                    return Err(parse_err(ln, format!("vertex {v} out of range")));
                }
                labels[v] = name.to_string();
            }
            [u, v] => {
                let (u, v): (usize, usize) = (num(ln, u)?, num(ln, v)?);
                if u >= n || v >= n {
                    return Err(parse_err(ln, format!("edge {u} {v} out of range")));
                }
                edges.push((u, v));
            }
            _ => return Err(parse_err(ln, format!("unrecognised line `{l}`"))),
        }
    }
    if edges.len() != m {
        return Err(parse_err(hl, format!("header declares {m} edges, found {}", edges.len())));
    }
    Ok(Graph::from_edges(n, edges, Some(labels), Family::Custom)?)
}

pub fn format_graph(graph: &Graph) -> String {
    let mut out = format!("graph {} {}\n", graph.n(), graph.edge_count());
    for (u, v) in graph.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    for v in 0..graph.n() {
        if graph.label(v) != v.to_string() {
            out.push_str(&format!("label {v} {}\n", graph.label(v)));
        }
    }
    out
}

/// Builds a graph from `hypercube:4`, `path:7`, `cycle:9`, `kbipartite:2,5`,
/// `torus:square:10x10`, `fig:1` or `file:<path>`.
pub fn graph_from_uri(uri: &str) -> Result<Graph, IoError> {
    let bad = || IoError::BadUri(uri.to_string());
    let (scheme, rest) = uri.split_once(':').ok_or_else(bad)?;
    let int = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
    Ok(match scheme {
        "hypercube" => Graph::hypercube(int(rest)? as u32)?,
        "path" => Graph::path(int(rest)?)?,
        "cycle" => Graph::cycle(int(rest)?)?,
        "kbipartite" => {
            let (a, b) = rest.split_once(',').ok_or_else(bad)?;
            Graph::complete_bipartite(int(a)?, int(b)?)?
        }
        "torus" => {
            let (family, dims) = rest.split_once(':').ok_or_else(bad)?;
            let family = GridFamily::parse(family).ok_or_else(bad)?;
            let (px, py) = dims.split_once('x').ok_or_else(bad)?;
            Graph::torus(TorusSpec::new(family, int(px)?, int(py)?)?)?
        }
        "fig" => Graph::figure_by_name(rest)?,
        "file" => parse_graph(&read(Path::new(rest))?)?,
        _ => return Err(bad()),
    })
}

fn resolve_vertex(graph: &Graph, token: &str) -> Option<usize> {
    graph.vertex_by_label(token).or_else(|| token.parse::<usize>().ok().filter(|&v| v < graph.n()))
}

/// Parses a code: one vertex per line (label, or a vertex index when no label
/// matches), `#` comments allowed.
pub fn parse_code<'g>(graph: &'g Graph, text: &str) -> Result<Code<'g>, IoError> {
    let mut members = Vec::new();
    for (ln, l) in content_lines(text) {
        let v = resolve_vertex(graph, l).ok_or_else(|| parse_err(ln, format!("unknown vertex `{l}`")))?;
        members.push(v);
    }
    Ok(Code::new(graph, members)?)
}

/// `inline:a,b,...` lists vertices directly; anything else is a file path.
/// Torus labels contain a comma, so a list containing `;` is split on `;`.
pub fn load_code<'g>(graph: &'g Graph, spec: &str) -> Result<Code<'g>, IoError> {
    let Some(list) = spec.strip_prefix("inline:") else {
        return parse_code(graph, &read(Path::new(spec))?);
    };
    let sep = if list.contains(';') { ';' } else { ',' };
    let mut members = Vec::new();
    for (i, token) in list.split(sep).map(str::trim).filter(|t| !t.is_empty()).enumerate() {
        let v = resolve_vertex(graph, token)
            .ok_or_else(|| parse_err(1, format!("item {}: unknown vertex `{token}`", i + 1)))?;
        members.push(v);
    }
    Ok(Code::new(graph, members)?)
}

pub fn format_code(code: &Code<'_>) -> String {
    code.labels().into_iter().map(|l| l + "\n").collect()
}

/// Parses `pattern <family>`, `v1 a b`, `v2 c d` and one `r i j` line per
/// residue.
pub fn parse_pattern(text: &str) -> Result<PeriodicPattern, IoError> {
    let mut family = None;
    let (mut v1, mut v2) = (None, None);
    let mut residues = Vec::new();
    let mut last = 1;
    for (ln, l) in content_lines(text) {
        last = ln;
        let parts: Vec<&str> = l.split_whitespace().collect();
        match parts.as_slice() {
            ["pattern", f] => {
                family = Some(GridFamily::parse(f).ok_or_else(|| parse_err(ln, format!("unknown family `{f}`")))?)
            }
            ["v1", a, b] => v1 = Some((num(ln, a)?, num(ln, b)?)),
            ["v2", a, b] => v2 = Some((num(ln, a)?, num(ln, b)?)),
            ["r", i, j] => residues.push((num(ln, i)?, num(ln, j)?)),
            _ => return Err(parse_err(ln, format!("unrecognised line `{l}`"))),
        }
    }
    let family = family.ok_or_else(|| parse_err(last, "missing `pattern <family>` line"))?;
    let v1 = v1.ok_or_else(|| parse_err(last, "missing `v1` line"))?;
    let v2 = v2.ok_or_else(|| parse_err(last, "missing `v2` line"))?;
    Ok(PeriodicPattern::new(family, v1, v2, residues)?)
}

pub fn format_pattern(p: &PeriodicPattern) -> String {
    let mut out = format!("pattern {}\nv1 {} {}\nv2 {} {}\n", p.family.name(), p.v1.0, p.v1.1, p.v2.0, p.v2.1);
    for (i, j) in &p.residues {
        out.push_str(&format!("r {i} {j}\n"));
    }
    out
}
