//! Text formats.
//!
//! DGF digraph files:
//!
//! ```text
//! # optional comments
//! n 3
//! 0 1
//! 1 2
//! 2 0
//! ```
//!
//! Weight files carry one `v num/den` line per vertex; absent vertices
//! weigh 0. Emission is canonical: arcs in lexicographic order, every
//! vertex listed, rationals as `num/den` in lowest terms.

use std::fmt::Write as _;

use num_traits::Signed;

use crate::digraph::{Digraph, DigraphBuilder, GraphError, WeightFn};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseErrorKind {
    #[error("missing `n <count>` header")]
    MissingHeader,
    #[error("malformed header `{0}`")]
    BadHeader(String),
    #[error("malformed arc line `{0}`")]
    BadArc(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("malformed weight line `{0}`")]
    BadWeight(String),
    #[error("vertex {0} is out of range")]
    VertexOutOfRange(usize),
    #[error("vertex {0} is listed twice")]
    DuplicateVertex(usize),
    #[error("weight of vertex {0} is negative")]
    NegativeWeight(usize),
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub fn parse_dgf(text: &str) -> Result<Digraph, ParseError> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or(ParseError {
        line: text.lines().count().max(1),
        kind: ParseErrorKind::MissingHeader,
    })?;
    let n: usize = match header.split_whitespace().collect::<Vec<_>>()[..] {
        ["n", count] => count.parse().ok(),
        _ => None,
    }
    .ok_or_else(|| ParseError {
        line: hl,
        kind: ParseErrorKind::BadHeader(header.to_string()),
    })?;
    let mut builder = DigraphBuilder::new(n);
    for (ln, line) in lines {
        let (u, v) = match line.split_whitespace().collect::<Vec<_>>()[..] {
            [u, v] => u.parse::<usize>().ok().zip(v.parse::<usize>().ok()),
            _ => None,
        }
        .ok_or_else(|| ParseError {
            line: ln,
            kind: ParseErrorKind::BadArc(line.to_string()),
        })?;
        builder.add_arc(u, v).map_err(|e| ParseError {
            line: ln,
            kind: e.into(),
        })?;
    }
    Ok(builder.build())
}

pub fn emit_dgf(g: &Digraph) -> String {
    let mut out = format!("n {}\n", g.n());
    for (u, v) in g.arcs() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

pub fn parse_weights(text: &str, n: usize) -> Result<WeightFn, ParseError> {
    let mut values: Vec<Option<Rational>> = vec![None; n];
    for (ln, line) in content_lines(text) {
        let err = |kind| ParseError { line: ln, kind };
        let (v, q) = match line.split_whitespace().collect::<Vec<_>>()[..] {
            [v, q] => v.parse::<usize>().ok().zip(rational::parse(q).ok()),
            _ => None,
        }
        .ok_or_else(|| err(ParseErrorKind::BadWeight(line.to_string())))?;
        if v >= n {
            return Err(err(ParseErrorKind::VertexOutOfRange(v)));
        }
        if q.is_negative() {
            return Err(err(ParseErrorKind::NegativeWeight(v)));
        }
        if values[v].replace(q).is_some() {
            return Err(err(ParseErrorKind::DuplicateVertex(v)));
        }
    }
    Ok(WeightFn::new(values.into_iter().map(Option::unwrap_or_default).collect()).unwrap())
}

pub fn emit_weights(p: &WeightFn) -> String {
    let mut out = String::new();
    for (v, q) in p.values().iter().enumerate() {
        writeln!(out, "{v} {}", rational::Canonical(q)).unwrap();
    }
    out
}
