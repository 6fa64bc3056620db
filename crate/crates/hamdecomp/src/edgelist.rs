//! Graph input and output.
//!
//! Edge-list documents start with a header `n m directed|undirected`
//! followed by `m` lines `u v`. Blank lines and `#` comments are ignored.
//! JSON documents are `{"n", "directed", "edges": [[u, v], ...]}`, or an
//! output document carrying such a graph as `result` (`gen`) or
//! `result.digraph` (`orient`, `balance`).

use std::fmt;

use hamdecomp_core::{AnyGraph, Digraph, Graph, GraphError};
use serde_json::Value;
use thiserror::Error;

/// 1-based source position.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("empty document")]
    Empty,
    #[error("malformed header: {0}")]
    Header(String),
    #[error("expected a vertex id, found `{0}`")]
    NotAVertex(String),
    #[error("edge lines hold exactly two vertex ids")]
    EdgeArity,
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("header announces {expected} edges, found {found}")]
    EdgeCount { expected: usize, found: usize },
    #[error("invalid JSON graph: {0}")]
    Json(String),
    #[error("invalid graph: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{pos}: {kind}")]
pub struct ParseError {
    pub pos: Pos,
    pub kind: ParseErrorKind,
}

fn err(line: usize, column: usize, kind: ParseErrorKind) -> ParseError {
    ParseError {
        pos: Pos { line, column },
        kind,
    }
}

/// Whitespace-separated tokens of one line with their 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let body = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in body.char_indices() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s, &body[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &body[s..]));
    }
    out.into_iter()
        .map(|(byte, tok)| (body[..byte].chars().count() + 1, tok))
        .collect()
}

/// Parses an edge-list document.
pub fn parse_edge_list(text: &str) -> Result<AnyGraph, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, tokens(l)))
        .filter(|(_, t)| !t.is_empty());
    let (hl, header) = lines.next().ok_or_else(|| err(1, 1, ParseErrorKind::Empty))?;
    if header.len() != 3 {
        return Err(err(
            hl,
            header[0].0,
            ParseErrorKind::Header("expected `n m directed|undirected`".into()),
        ));
    }
    let number = |(col, tok): (usize, &str), what: &str| {
        tok.parse::<usize>()
            .map_err(|_| err(hl, col, ParseErrorKind::Header(format!("{what} must be a non-negative integer, found `{tok}`"))))
    };
    let n = number(header[0], "n")?;
    let m = number(header[1], "m")?;
    let directed = match header[2].1 {
        "directed" => true,
        "undirected" => false,
        other => {
            return Err(err(
                hl,
                header[2].0,
                ParseErrorKind::Header(format!("expected `directed` or `undirected`, found `{other}`")),
            ))
        }
    };

    let mut seen = std::collections::BTreeSet::new();
    let mut pairs = Vec::with_capacity(m);
    let mut last_line = hl;
    for (ln, toks) in lines {
        last_line = ln;
        if toks.len() != 2 {
            let col = toks.get(2).map_or(toks[0].0, |t| t.0);
            return Err(err(ln, col, ParseErrorKind::EdgeArity));
        }
        let mut ends = [0usize; 2];
        for (k, &(col, tok)) in toks.iter().enumerate() {
            let v = tok
                .parse::<usize>()
                .map_err(|_| err(ln, col, ParseErrorKind::NotAVertex(tok.into())))?;
            if v >= n {
                return Err(err(ln, col, ParseErrorKind::VertexOutOfRange { vertex: v, n }));
            }
            ends[k] = v;
        }
        let [u, v] = ends;
        if u == v {
            return Err(err(ln, toks[0].0, ParseErrorKind::Loop(u)));
        }
        let key = if directed || u < v { (u, v) } else { (v, u) };
        if !seen.insert(key) {
            return Err(err(ln, toks[0].0, ParseErrorKind::DuplicateEdge(u, v)));
        }
        pairs.push((u, v));
    }
    if pairs.len() != m {
        return Err(err(
            last_line,
            1,
            ParseErrorKind::EdgeCount {
                expected: m,
                found: pairs.len(),
            },
        ));
    }
    let built = if directed {
        Digraph::from_arcs(n, pairs).map(AnyGraph::Directed)
    } else {
        Graph::from_edges(n, pairs).map(AnyGraph::Undirected)
    };
    // Every structural error was reported above with its position.
    built.map_err(|e: GraphError| err(hl, 1, ParseErrorKind::Invalid(e.to_string())))
}

/// Parses a JSON graph, or an output document holding one.
pub fn parse_json_graph(text: &str) -> Result<AnyGraph, ParseError> {
    let json_err = |e: serde_json::Error| err(e.line().max(1), e.column().max(1), ParseErrorKind::Json(e.to_string()));
    let value: Value = serde_json::from_str(text).map_err(json_err)?;
    let graph = match value.get("result") {
        Some(inner) if inner.get("edges").is_some() => inner.clone(),
        Some(inner) if inner.get("digraph").is_some() => inner["digraph"].clone(),
        _ => value,
    };
    serde_json::from_value(graph).map_err(|e| err(1, 1, ParseErrorKind::Json(e.to_string())))
}

/// Reads either format; JSON is recognised by a leading `{`.
pub fn parse_graph(text: &str) -> Result<AnyGraph, ParseError> {
    if text.trim_start().starts_with('{') {
        parse_json_graph(text)
    } else {
        parse_edge_list(text)
    }
}

/// Edge-list document with sorted edges and a trailing newline.
pub fn write_edge_list(g: &AnyGraph) -> String {
    let edges = g.edge_list();
    let kind = if g.is_directed() { "directed" } else { "undirected" };
    let mut out = format!("{} {} {kind}\n", g.n(), edges.len());
    for (u, v) in edges {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_and_two_cycle() {
        let t = parse_edge_list("3 3 undirected\n0 1\n1 2\n0 2\n").unwrap();
        assert_eq!(t, AnyGraph::Undirected(Graph::complete(3)));
        let c = parse_edge_list("2 2 directed\n0 1\n1 0\n").unwrap();
        assert_eq!(c, AnyGraph::Directed(Digraph::complete(2)));
    }

    #[test]
    fn duplicate_edge_is_located() {
        let e = parse_edge_list("2 2 undirected\n0 1\n0 1\n").unwrap_err();
        assert_eq!(e.pos, Pos { line: 3, column: 1 });
        assert_eq!(e.kind, ParseErrorKind::DuplicateEdge(0, 1));
        let e = parse_edge_list("2 2 undirected\n0 1\n  1 0\n").unwrap_err();
        assert_eq!(e.pos, Pos { line: 3, column: 3 });
    }

    #[test]
    fn diagnostics_carry_columns() {
        let e = parse_edge_list("3 1 undirected\n0 7\n").unwrap_err();
        assert_eq!(e.pos, Pos { line: 2, column: 3 });
        assert_eq!(e.kind, ParseErrorKind::VertexOutOfRange { vertex: 7, n: 3 });
        let e = parse_edge_list("3 1 sideways\n").unwrap_err();
        assert_eq!(e.pos, Pos { line: 1, column: 5 });
        let e = parse_edge_list("3 1 directed\n2 2\n").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Loop(2));
        let e = parse_edge_list("3 2 directed\n0 1\n").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::EdgeCount { expected: 2, found: 1 });
        let e = parse_edge_list("3 1 directed\n0 x\n").unwrap_err();
        assert_eq!((e.pos.column, e.kind), (3, ParseErrorKind::NotAVertex("x".into())));
        assert_eq!(parse_edge_list("\n# nothing\n").unwrap_err().kind, ParseErrorKind::Empty);
    }

    #[test]
    fn comments_and_blank_lines_are_skipped() {
        let g = parse_edge_list("# header comment\n3 2 undirected\n\n0 1 # first\n1 2\n").unwrap();
        assert_eq!(g.edge_list(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn json_errors_report_position() {
        let e = parse_graph("{\n  \"n\": 3,\n  \"directed\": tru }").unwrap_err();
        assert_eq!(e.pos.line, 3);
        let e = parse_graph(r#"{"n": 2, "directed": false, "edges": [[0, 1], [1, 0]]}"#).unwrap_err();
        assert!(e.kind.to_string().contains("duplicate"));
    }
}
