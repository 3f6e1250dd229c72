//! Input file formats.
//!
//! Graph files are UTF-8 text: the first nonblank line is `n <count>`, each
//! further line `i j` adds the edge `{i, j}` (`i i` is a loop), and `#` starts
//! a comment. Matrices are JSON: `{"n": 3, "rows": [[...], ...]}` for a full
//! symmetric matrix and `{"n": 3, "entries": [{"i": 1, "j": 2, "v": 0.5}]}`
//! for a partial one, whose pattern is the set of listed entries.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};
use typrank_core::completion::PartialSymmetricMatrix;
use typrank_core::{SemisimpleGraph, SymmetricMatrix};

use crate::error::{Error, Result};

pub fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })
}

/// Non-comment, nonblank lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(k, line)| {
        let line = line.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((k + 1, line))
    })
}

fn parse_pair(line: usize, s: &str) -> Result<(usize, usize)> {
    let mut it = s.split_whitespace();
    let mut next = || -> Result<usize> {
        let tok = it.next().ok_or_else(|| Error::parse(line, "expected two vertex labels"))?;
        tok.parse().map_err(|_| Error::parse(line, format!("bad vertex label `{tok}`")))
    };
    let pair = (next()?, next()?);
    if it.next().is_some() {
        return Err(Error::parse(line, "trailing tokens"));
    }
    Ok(pair)
}

pub fn parse_graph(text: &str) -> Result<SemisimpleGraph> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| Error::parse(1, "missing `n <count>` header"))?;
    let n = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["n", count] => count.parse().map_err(|_| Error::parse(hl, format!("bad vertex count `{count}`")))?,
        _ => return Err(Error::parse(hl, "expected `n <count>`")),
    };
    let mut g = SemisimpleGraph::new(n)?;
    for (line, s) in lines {
        let (i, j) = parse_pair(line, s)?;
        g.insert_edge(i, j).map_err(|e| Error::parse(line, e.to_string()))?;
    }
    Ok(g)
}

/// Canonical text: header, then edges in lexicographic order.
pub fn write_graph(g: &SemisimpleGraph) -> String {
    let mut out = format!("n {}\n", g.n());
    for (i, j) in g.edges() {
        writeln!(out, "{i} {j}").unwrap();
    }
    out
}

/// A non-edge ordering: one `i j` pair per line, comments allowed.
pub fn parse_ordering(text: &str) -> Result<Vec<(usize, usize)>> {
    content_lines(text).map(|(line, s)| parse_pair(line, s).map(|(i, j)| (i.min(j), i.max(j)))).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub n: usize,
    pub rows: Vec<Vec<f64>>,
}

pub fn parse_matrix(text: &str) -> Result<SymmetricMatrix> {
    let f: MatrixFile = serde_json::from_str(text)?;
    if f.rows.len() != f.n || f.rows.iter().any(|r| r.len() != f.n) {
        return Err(typrank_core::Error::Dimension(format!("expected a {0}×{0} matrix", f.n)).into());
    }
    Ok(SymmetricMatrix::from_rows(&f.rows)?)
}

pub fn matrix_file(m: &SymmetricMatrix) -> MatrixFile {
    MatrixFile { n: m.n(), rows: m.to_rows() }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Entry {
    pub i: usize,
    pub j: usize,
    pub v: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartialFile {
    pub n: usize,
    pub entries: Vec<Entry>,
}

pub fn parse_partial(text: &str) -> Result<PartialSymmetricMatrix> {
    let f: PartialFile = serde_json::from_str(text)?;
    if let Some(e) = f.entries.iter().find(|e| e.i > e.j) {
        return Err(Error::Usage(format!("entry ({}, {}) must have i <= j", e.i, e.j)));
    }
    let entries: Vec<_> = f.entries.iter().map(|e| (e.i, e.j, e.v)).collect();
    Ok(PartialSymmetricMatrix::from_entries(f.n, &entries)?)
}

pub fn partial_file(m: &PartialSymmetricMatrix) -> PartialFile {
    PartialFile { n: m.n(), entries: m.entries().map(|(i, j, v)| Entry { i, j, v }).collect() }
}
