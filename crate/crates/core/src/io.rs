//! Plain-text graph format.
//!
//! ```text
//! # comment lines start with '#'
//! 4 3
//! 0 1
//! 1 2
//! 2 3
//! ```
//!
//! The first significant line is `n m`, followed by exactly `m` edge lines.
//! Loops and repeated edges (in either orientation) are rejected.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::Graph;

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn two_numbers(line: usize, text: &str) -> Result<(usize, usize)> {
    let mut it = text.split_whitespace();
    let mut next = |what: &str| {
        let tok = it
            .next()
            .ok_or_else(|| parse_err(line, format!("missing {what}")))?;
        tok.parse::<usize>().map_err(|_| {
            parse_err(
                line,
                format!("{what} is not a nonnegative integer: {tok:?}"),
            )
        })
    };
    let a = next("first number")?;
    let b = next("second number")?;
    if let Some(extra) = it.next() {
        return Err(parse_err(line, format!("unexpected token {extra:?}")));
    }
    Ok((a, b))
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "missing \"n m\" header"))?;
    let (n, m) = two_numbers(hline, header)?;
    if n == 0 {
        return Err(parse_err(hline, "graph must have at least one vertex"));
    }
    let mut seen = HashSet::with_capacity(m);
    let mut edges = Vec::with_capacity(m);
    let mut last = hline;
    for _ in 0..m {
        let (line, text) = lines
            .next()
            .ok_or_else(|| parse_err(last, format!("expected {m} edges, found {}", edges.len())))?;
        last = line;
        let (u, v) = two_numbers(line, text)?;
        if u >= n || v >= n {
            return Err(parse_err(line, format!("vertex out of range 0..{n}")));
        }
        if u == v {
            return Err(parse_err(line, format!("self-loop at {u}")));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(parse_err(line, format!("duplicate edge {u} {v}")));
        }
        edges.push((u, v));
    }
    if let Some((line, _)) = lines.next() {
        return Err(parse_err(line, format!("more than {m} edge lines")));
    }
    Graph::from_edges(n, &edges)
}

/// Writes `g` in the text format, edges in lexicographic order.
pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

/// Parses a comma- or whitespace-separated vertex list such as `"0,2,5"`.
pub fn parse_vertex_list(text: &str) -> Result<Vec<usize>> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse()
                .map_err(|_| Error::InvalidInput(format!("not a vertex: {t:?}")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let g = Graph::cycle(5);
        let text = write_graph(&g);
        assert_eq!(text, "5 5\n0 1\n0 4\n1 2\n2 3\n3 4\n");
        assert_eq!(parse_graph(&text).unwrap(), g);
    }

    #[test]
    fn comments_and_blank_lines() {
        let g = parse_graph("# P3\n\n3 2\n# middle\n0 1\n 2 1 \n").unwrap();
        assert_eq!(g, Graph::path(3));
        assert_eq!(parse_graph("1 0").unwrap().n(), 1);
    }

    fn err_line(text: &str) -> usize {
        match parse_graph(text) {
            Err(Error::Parse { line, .. }) => line,
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(err_line("3 2\n0 1\n1 0\n"), 3);
        assert_eq!(err_line("3 1\n1 1\n"), 2);
        assert_eq!(err_line("3 1\n0 3\n"), 2);
        assert_eq!(err_line("3 2\n0 1\n"), 2);
        assert_eq!(err_line("3 1\n0 1\n1 2\n"), 3);
        assert_eq!(err_line("3\n"), 1);
        assert_eq!(err_line("# only a comment\n"), 1);
        assert_eq!(err_line("0 0\n"), 1);
        assert_eq!(err_line("3 1\n0 x\n"), 2);
        assert_eq!(err_line("3 1\n0 1 2\n"), 2);
    }

    #[test]
    fn vertex_lists() {
        assert_eq!(parse_vertex_list("0,2,5").unwrap(), vec![0, 2, 5]);
        assert_eq!(parse_vertex_list(" 1 3 ").unwrap(), vec![1, 3]);
        assert!(parse_vertex_list("").unwrap().is_empty());
        assert!(parse_vertex_list("1,a").is_err());
    }
}
