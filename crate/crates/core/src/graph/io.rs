//! Edge-list text format.
//!
//! ```text
//! n m
//! u v      (m lines, u < v, lexicographically sorted)
//! ```

use std::io::{BufRead, Write};

use super::Graph;
use crate::error::{Error, Result};

pub fn write_edge_list<W: Write>(g: &Graph, mut out: W) -> Result<()> {
    writeln!(out, "{} {}", g.n(), g.edge_count())?;
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}")?;
    }
    out.flush()?;
    Ok(())
}

fn parse_pair(line: &str, lineno: usize) -> Result<(usize, usize)> {
    let err = |message: String| Error::Parse { line: lineno, message };
    let mut it = line.split_whitespace();
    let a = it.next().ok_or_else(|| err("expected two integers".into()))?;
    let b = it.next().ok_or_else(|| err("expected two integers".into()))?;
    if it.next().is_some() {
        return Err(err("trailing tokens".into()));
    }
    let a = a.parse().map_err(|e| err(format!("{a:?}: {e}")))?;
    let b = b.parse().map_err(|e| err(format!("{b:?}: {e}")))?;
    Ok((a, b))
}

/// Parses the format written by [`write_edge_list`], rejecting anything the
/// writer would not produce.
pub fn read_edge_list<R: BufRead>(input: R) -> Result<Graph> {
    let mut lines = input.lines().enumerate();
    let (n, m) = match lines.next() {
        Some((_, line)) => parse_pair(&line?, 1)?,
        None => return Err(Error::Parse { line: 1, message: "missing header".into() }),
    };
    let mut edges = Vec::with_capacity(m);
    let mut prev: Option<(usize, usize)> = None;
    for (idx, line) in lines {
        let lineno = idx + 1;
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let (u, v) = parse_pair(&line, lineno)?;
        if u >= v || v >= n {
            return Err(Error::Parse { line: lineno, message: format!("bad edge {u} {v} for n = {n}") });
        }
        if prev.is_some_and(|p| p >= (u, v)) {
            return Err(Error::Parse { line: lineno, message: "edges not strictly sorted".into() });
        }
        prev = Some((u, v));
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(Error::Parse { line: 1, message: format!("header says {m} edges, found {}", edges.len()) });
    }
    Graph::from_edges(n, &edges)
}
