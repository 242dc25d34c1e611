//! Plain-text graph and contraction-set files.
//!
//! ```text
//! # comment
//! p 4 3
//! e 0 1 1
//! e 1 2 5/2
//! e 2 3 1
//! t 2 1 strict
//! ```
//!
//! `p` must come before any `e`. The optional `t <alpha> <beta> <strict|weak>`
//! line records the tolerance a generated instance is meant for. Contraction
//! sets are edge ids, one per line.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{EdgeSet, Graph, GraphError};
use crate::rational::{parse_rational, Rational};
use crate::tolerance::AffineTolerance;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("missing `p <n> <m>` header")]
    MissingHeader,
    #[error("header declares {declared} edges but {found} were given")]
    EdgeCount { declared: usize, found: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn line_err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Line {
        line,
        message: message.into(),
    }
}

/// The tolerance recorded in a graph file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToleranceLine {
    pub tolerance: AffineTolerance,
    pub weak: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphFile {
    pub graph: Graph,
    pub tolerance: Option<ToleranceLine>,
}

fn parse_count(tok: Option<&str>, line: usize, what: &str) -> Result<usize, ParseError> {
    let tok = tok.ok_or_else(|| line_err(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| line_err(line, format!("bad {what} `{tok}`")))
}

fn parse_len(tok: Option<&str>, line: usize, what: &str) -> Result<Rational, ParseError> {
    let tok = tok.ok_or_else(|| line_err(line, format!("missing {what}")))?;
    parse_rational(tok).map_err(|e| line_err(line, format!("bad {what} `{tok}`: {e}")))
}

pub fn parse_graph(text: &str) -> Result<GraphFile, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut tolerance = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let mut toks = body.split_whitespace();
        let kind = toks.next().unwrap();
        match kind {
            "p" => {
                if header.is_some() {
                    return Err(line_err(line, "duplicate header"));
                }
                let n = parse_count(toks.next(), line, "vertex count")?;
                let m = parse_count(toks.next(), line, "edge count")?;
                header = Some((n, m));
            }
            "e" => {
                if header.is_none() {
                    return Err(line_err(line, "edge before header"));
                }
                let u = parse_count(toks.next(), line, "endpoint")?;
                let v = parse_count(toks.next(), line, "endpoint")?;
                let len = parse_len(toks.next(), line, "length")?;
                edges.push((u, v, len));
            }
            "t" => {
                if tolerance.is_some() {
                    return Err(line_err(line, "duplicate tolerance line"));
                }
                let alpha = parse_len(toks.next(), line, "alpha")?;
                let beta = parse_len(toks.next(), line, "beta")?;
                let weak = match toks.next() {
                    Some("strict") | None => false,
                    Some("weak") => true,
                    Some(other) => return Err(line_err(line, format!("bad mode `{other}`"))),
                };
                let tolerance_value =
                    AffineTolerance::new(alpha, beta).map_err(|e| line_err(line, e.to_string()))?;
                tolerance = Some(ToleranceLine {
                    tolerance: tolerance_value,
                    weak,
                });
            }
            other => return Err(line_err(line, format!("unknown line type `{other}`"))),
        }
        if let Some(extra) = toks.next() {
            return Err(line_err(line, format!("trailing token `{extra}`")));
        }
    }
    let (n, m) = header.ok_or(ParseError::MissingHeader)?;
    if edges.len() != m {
        return Err(ParseError::EdgeCount {
            declared: m,
            found: edges.len(),
        });
    }
    Ok(GraphFile {
        graph: Graph::new(n, edges)?,
        tolerance,
    })
}

pub fn write_graph(g: &Graph, tolerance: Option<&ToleranceLine>) -> String {
    let mut out = format!("p {} {}\n", g.n(), g.m());
    for e in g.edges() {
        writeln!(out, "e {} {} {}", e.u, e.v, e.len).unwrap();
    }
    if let Some(t) = tolerance {
        writeln!(
            out,
            "t {} {} {}",
            t.tolerance.alpha(),
            t.tolerance.beta(),
            if t.weak { "weak" } else { "strict" }
        )
        .unwrap();
    }
    out
}

/// Reads edge ids for a graph with `m` edges. Blank lines and `#` comments
/// are skipped.
pub fn parse_edge_set(text: &str, m: usize) -> Result<EdgeSet, ParseError> {
    let mut ids = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let id: usize = body
            .parse()
            .map_err(|_| line_err(idx + 1, format!("bad edge id `{body}`")))?;
        if id >= m {
            return Err(line_err(
                idx + 1,
                format!("edge id {id} out of range for {m} edges"),
            ));
        }
        ids.push(id);
    }
    Ok(EdgeSet::from_ids(m, ids)?)
}

pub fn write_edge_set(c: &EdgeSet) -> String {
    c.iter().map(|id| format!("{id}\n")).collect()
}
