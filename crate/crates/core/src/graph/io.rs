//! Plain-text graph files.
//!
//! ```text
//! rgraph <r> <n>        digraph <n>
//! <u> <v> <color>       <u> <v> <none|bi|fwd|back>
//! ...                   ...
//! ```
//!
//! One line per unordered pair with `u < v`, vertices 0-indexed, LF endings.

use std::fmt::Write as _;
use std::path::Path;

use super::{AnyGraph, Arrow, ColoredGraph, Digraph};
use crate::error::{Error, Result};

pub fn write_rgraph(g: &ColoredGraph) -> String {
    let mut out = format!("rgraph {} {}\n", g.r(), g.n());
    for (u, v, c) in g.pairs() {
        writeln!(out, "{u} {v} {c}").expect("writing to a String");
    }
    out
}

pub fn write_digraph(g: &Digraph) -> String {
    let mut out = format!("digraph {}\n", g.n());
    for (u, v, s) in g.pairs() {
        writeln!(out, "{u} {v} {s}").expect("writing to a String");
    }
    out
}

pub fn write_any(g: &AnyGraph) -> String {
    match g {
        AnyGraph::Colored(g) => write_rgraph(g),
        AnyGraph::Directed(g) => write_digraph(g),
    }
}

/// Parses either format, dispatching on the header keyword.
pub fn read_any(text: &str) -> Result<AnyGraph> {
    let mut lines = numbered_lines(text);
    let (line_no, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "empty file".into() })?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    match fields.as_slice() {
        ["rgraph", r, n] => {
            let r = parse_num(r, line_no)?;
            let n = parse_num(n, line_no)?;
            let mut triples = Vec::new();
            for (line_no, line) in lines {
                let [u, v, c] = three_fields(line, line_no)?;
                triples.push((parse_num(u, line_no)?, parse_num(v, line_no)?, parse_num(c, line_no)?));
            }
            Ok(AnyGraph::Colored(ColoredGraph::new(n, r, &triples)?))
        }
        ["digraph", n] => {
            let n = parse_num(n, line_no)?;
            let mut triples = Vec::new();
            for (line_no, line) in lines {
                let [u, v, s] = three_fields(line, line_no)?;
                let state: Arrow =
                    s.parse().map_err(|_| Error::Parse { line: line_no, msg: format!("bad state {s}") })?;
                triples.push((parse_num(u, line_no)?, parse_num(v, line_no)?, state));
            }
            Ok(AnyGraph::Directed(Digraph::new(n, &triples)?))
        }
        _ => Err(Error::Parse { line: line_no, msg: format!("unknown header `{header}`") }),
    }
}

pub fn read_rgraph(text: &str) -> Result<ColoredGraph> {
    match read_any(text)? {
        AnyGraph::Colored(g) => Ok(g),
        AnyGraph::Directed(_) => Err(Error::KindMismatch("expected an r-graph file".into())),
    }
}

pub fn read_digraph(text: &str) -> Result<Digraph> {
    match read_any(text)? {
        AnyGraph::Directed(g) => Ok(g),
        AnyGraph::Colored(_) => Err(Error::KindMismatch("expected a digraph file".into())),
    }
}

pub fn load(path: impl AsRef<Path>) -> Result<AnyGraph> {
    read_any(&std::fs::read_to_string(path)?)
}

fn numbered_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty())
}

fn three_fields(line: &str, line_no: usize) -> Result<[&str; 3]> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    <[&str; 3]>::try_from(fields.as_slice())
        .map_err(|_| Error::Parse { line: line_no, msg: format!("expected 3 fields, got `{line}`") })
}

fn parse_num(s: &str, line: usize) -> Result<usize> {
    s.parse().map_err(|_| Error::Parse { line, msg: format!("`{s}` is not a nonnegative integer") })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rgraph_text_layout() {
        let g = ColoredGraph::new(3, 2, &[(0, 1, 1), (0, 2, 2), (1, 2, 1)]).unwrap();
        assert_eq!(write_rgraph(&g), "rgraph 2 3\n0 1 1\n0 2 2\n1 2 1\n");
        assert_eq!(read_rgraph(&write_rgraph(&g)).unwrap(), g);
    }

    #[test]
    fn digraph_text_layout() {
        let g = Digraph::new(3, &[(0, 1, Arrow::Fwd), (0, 2, Arrow::Back), (1, 2, Arrow::Bi)]).unwrap();
        let text = write_digraph(&g);
        assert_eq!(text, "digraph 3\n0 1 fwd\n0 2 back\n1 2 bi\n");
        assert_eq!(read_digraph(&text).unwrap(), g);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = read_any("rgraph 2 2\n0 x 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        assert!(matches!(read_any("graph 3\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(read_any(""), Err(Error::Parse { .. })));
        assert!(matches!(read_any("digraph 2\n0 1 up\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(read_any("rgraph 2 3\n0 1 1\n"), Err(Error::MissingPair { .. })));
    }
}
