//! Canonical text formats (UTF-8, LF line endings).
//!
//! ```text
//! GRAPH n=<n>                 one `u v` line per edge, u < v, sorted
//! HYPERGRAPH n=<n> t=<t>      one sorted t-tuple per line, lines sorted
//! STRUCTURE n=<n>             then per relation `REL <name> <arity>`
//!                             followed by its tuples, sorted by encoding
//! ```

use std::fmt::Write;

use crate::error::{Error, Result};

use super::graph::Graph;
use super::hypergraph::Hypergraph;
use super::relstructure::RelStructure;
use super::signature::Signature;

pub fn graph_to_text(g: &Graph) -> String {
    let mut out = format!("GRAPH n={}\n", g.n());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

pub fn hypergraph_to_text(h: &Hypergraph) -> String {
    let mut out = format!("HYPERGRAPH n={} t={}\n", h.n(), h.t());
    for e in h.edges() {
        out.push_str(&join(&e));
        out.push('\n');
    }
    out
}

pub fn structure_to_text(a: &RelStructure) -> String {
    let mut out = format!("STRUCTURE n={}\n", a.n());
    for (i, r) in a.sig().relations().iter().enumerate() {
        writeln!(out, "REL {} {}", r.name, r.arity).unwrap();
        for t in a.tuples(i) {
            out.push_str(&join(&t));
            out.push('\n');
        }
    }
    out
}

fn join(xs: &[usize]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

/// Parses `key=value` and returns the value.
fn header_field(line: usize, token: Option<&str>, key: &str) -> Result<usize> {
    let token = token.ok_or_else(|| Error::parse(line, format!("missing `{key}=`")))?;
    let value = token
        .strip_prefix(key)
        .and_then(|s| s.strip_prefix('='))
        .ok_or_else(|| Error::parse(line, format!("expected `{key}=<int>`, got {token:?}")))?;
    value
        .parse()
        .map_err(|_| Error::parse(line, format!("bad integer in {token:?}")))
}

fn numbers(line: usize, text: &str) -> Result<Vec<usize>> {
    text.split_whitespace()
        .map(|w| {
            w.parse::<usize>()
                .map_err(|_| Error::parse(line, format!("bad element {w:?}")))
        })
        .collect()
}

/// Non-empty lines with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = content_lines(text);
    let (ln, header) = lines.next().ok_or_else(|| Error::parse(1, "empty input"))?;
    let mut toks = header.split_whitespace();
    if toks.next() != Some("GRAPH") {
        return Err(Error::parse(ln, "expected `GRAPH n=<n>`"));
    }
    let n = header_field(ln, toks.next(), "n")?;
    if toks.next().is_some() {
        return Err(Error::parse(ln, "trailing tokens in header"));
    }
    let mut g = Graph::empty(n);
    for (ln, line) in lines {
        match numbers(ln, line)?.as_slice() {
            &[u, v] => {
                if u >= n || v >= n {
                    return Err(Error::parse(ln, format!("vertex out of range 0..{n}")));
                }
                if u == v {
                    return Err(Error::parse(ln, "self-loop"));
                }
                g.add_edge(u, v);
            }
            _ => return Err(Error::parse(ln, "expected `u v`")),
        }
    }
    Ok(g)
}

pub fn parse_hypergraph(text: &str) -> Result<Hypergraph> {
    let mut lines = content_lines(text);
    let (ln, header) = lines.next().ok_or_else(|| Error::parse(1, "empty input"))?;
    let mut toks = header.split_whitespace();
    if toks.next() != Some("HYPERGRAPH") {
        return Err(Error::parse(ln, "expected `HYPERGRAPH n=<n> t=<t>`"));
    }
    let n = header_field(ln, toks.next(), "n")?;
    let t = header_field(ln, toks.next(), "t")?;
    let mut h = Hypergraph::empty(n, t).map_err(|e| Error::parse(ln, e.to_string()))?;
    for (ln, line) in lines {
        let e = numbers(ln, line)?;
        h.add_edge(&e).map_err(|err| Error::parse(ln, err.to_string()))?;
    }
    Ok(h)
}

pub fn parse_structure(text: &str) -> Result<RelStructure> {
    let lines: Vec<(usize, &str)> = content_lines(text).collect();
    let (ln, header) = *lines.first().ok_or_else(|| Error::parse(1, "empty input"))?;
    let mut toks = header.split_whitespace();
    if toks.next() != Some("STRUCTURE") {
        return Err(Error::parse(ln, "expected `STRUCTURE n=<n>`"));
    }
    let n = header_field(ln, toks.next(), "n")?;

    // First pass: the signature.
    let mut rels = Vec::new();
    for &(ln, line) in &lines[1..] {
        if let Some(rest) = line.strip_prefix("REL ") {
            let parts: Vec<&str> = rest.split_whitespace().collect();
            match parts.as_slice() {
                [name, arity] => {
                    let arity = arity
                        .parse::<usize>()
                        .map_err(|_| Error::parse(ln, "bad arity"))?;
                    rels.push((name.to_string(), arity));
                }
                _ => return Err(Error::parse(ln, "expected `REL <name> <arity>`")),
            }
        }
    }
    let sig = Signature::new(rels).map_err(|e| Error::parse(ln, e.to_string()))?;
    let mut a = RelStructure::empty(sig, n).map_err(|e| Error::parse(ln, e.to_string()))?;

    let mut current: Option<usize> = None;
    let mut rel_index = 0;
    for &(ln, line) in &lines[1..] {
        if line.starts_with("REL ") {
            current = Some(rel_index);
            rel_index += 1;
            continue;
        }
        let rel = current.ok_or_else(|| Error::parse(ln, "tuple before any `REL` line"))?;
        let t = numbers(ln, line)?;
        a.set(rel, &t, true).map_err(|e| Error::parse(ln, e.to_string()))?;
    }
    Ok(a)
}

/// Any value in one of the canonical formats, dispatched on the header.
#[derive(Debug, Clone, PartialEq)]
pub enum Parsed {
    Graph(Graph),
    Hypergraph(Hypergraph),
    Structure(RelStructure),
}

pub fn parse_any(text: &str) -> Result<Parsed> {
    let first = content_lines(text)
        .next()
        .map(|(_, l)| l)
        .ok_or_else(|| Error::parse(1, "empty input"))?;
    match first.split_whitespace().next() {
        Some("GRAPH") => parse_graph(text).map(Parsed::Graph),
        Some("HYPERGRAPH") => parse_hypergraph(text).map(Parsed::Hypergraph),
        Some("STRUCTURE") => parse_structure(text).map(Parsed::Structure),
        _ => Err(Error::parse(1, "unknown header")),
    }
}

impl Parsed {
    pub fn to_text(&self) -> String {
        match self {
            Parsed::Graph(g) => graph_to_text(g),
            Parsed::Hypergraph(h) => hypergraph_to_text(h),
            Parsed::Structure(a) => structure_to_text(a),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prng::Prng;
    use crate::structures::{sample_random_graph, sample_random_hypergraph, sample_random_structure};
    use proptest::prelude::*;

    #[test]
    fn triangle_text() {
        assert_eq!(graph_to_text(&Graph::complete(3)), "GRAPH n=3\n0 1\n0 2\n1 2\n");
    }

    #[test]
    fn empty_structure_text() {
        let sig = Signature::new([("R", 2)]).unwrap();
        let a = RelStructure::empty(sig, 2).unwrap();
        assert_eq!(structure_to_text(&a), "STRUCTURE n=2\nREL R 2\n");
        assert_eq!(parse_structure("STRUCTURE n=2\nREL R 2\n").unwrap(), a);
    }

    #[test]
    fn structure_lines_sorted_by_encoding() {
        let sig = Signature::new([("E", 2), ("P", 1)]).unwrap();
        let mut a = RelStructure::empty(sig, 3).unwrap();
        a.set(0, &[2, 0], true).unwrap();
        a.set(0, &[0, 2], true).unwrap();
        a.set(1, &[1], true).unwrap();
        assert_eq!(structure_to_text(&a), "STRUCTURE n=3\nREL E 2\n0 2\n2 0\nREL P 1\n1\n");
    }

    #[test]
    fn hypergraph_text() {
        let h = Hypergraph::from_edges(4, 3, &[vec![3, 1, 0], vec![0, 1, 2]]).unwrap();
        let text = hypergraph_to_text(&h);
        assert_eq!(text, "HYPERGRAPH n=4 t=3\n0 1 2\n0 1 3\n");
        assert_eq!(parse_hypergraph(&text).unwrap(), h);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = parse_graph("GRAPH n=3\n0 1\n0 3\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        let err = parse_graph("GRAPH n=3\n1 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = parse_graph("GRAF n=3\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        let err = parse_structure("STRUCTURE n=2\nREL R 2\n0 1 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
        let err = parse_structure("STRUCTURE n=2\n0 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = parse_hypergraph("HYPERGRAPH n=4 t=3\n0 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn round_trip_many_structures() {
        let sig = Signature::new([("A", 1), ("B", 2), ("C", 3)]).unwrap();
        for i in 0..1000u64 {
            let mut rng = Prng::new(77, i);
            let n = 1 + (i as usize % 5);
            let a = sample_random_structure(&sig, n, &mut rng).unwrap();
            let text = structure_to_text(&a);
            assert_eq!(parse_structure(&text).unwrap(), a);
        }
    }

    proptest! {
        #[test]
        fn graph_round_trip(n in 1usize..24, seed in any::<u64>()) {
            let g = sample_random_graph(n, &mut Prng::new(seed, 0)).unwrap();
            let text = graph_to_text(&g);
            prop_assert_eq!(parse_graph(&text).unwrap(), g.clone());
            prop_assert_eq!(parse_any(&text).unwrap(), Parsed::Graph(g));
        }

        #[test]
        fn hypergraph_round_trip(n in 3usize..14, t in 2usize..4, seed in any::<u64>()) {
            let h = sample_random_hypergraph(n, t, &mut Prng::new(seed, 1)).unwrap();
            let text = hypergraph_to_text(&h);
            prop_assert_eq!(parse_hypergraph(&text).unwrap(), h);
        }
    }
}
