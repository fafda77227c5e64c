//! graph6 and edge-list text formats.
//!
//! graph6 follows McKay's encoding: the order is written in one, four or
//! eight bytes, followed by the upper triangle of the adjacency matrix in
//! column order (`(0,1), (0,2), (1,2), (0,3), ...`) packed into 6-bit groups,
//! each offset by 63.
//!
//! The edge list format is an optional `n <count>` header followed by one
//! `u v` pair per line. Blank lines and lines starting with `#` are skipped.
//! Endpoints are integer ids, or arbitrary labels mapped to ids in order of
//! first appearance when any endpoint is not an integer.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::{Graph, GraphBuilder, GraphError};

/// Largest order representable in graph6.
pub const GRAPH6_MAX_ORDER: u64 = 68_719_476_735;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Graph6,
    EdgeList,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "graph6" | "g6" => Ok(Format::Graph6),
            "edgelist" | "edges" => Ok(Format::EdgeList),
            other => Err(format!("unknown graph format `{other}`")),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Graph6 => "graph6",
            Format::EdgeList => "edgelist",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}, offset {offset}: {message}")]
    Malformed { line: usize, offset: usize, message: String },
    #[error("line {line}: {source}")]
    Graph {
        line: usize,
        #[source]
        source: GraphError,
    },
}

fn malformed(line: usize, offset: usize, message: impl Into<String>) -> ParseError {
    ParseError::Malformed { line, offset, message: message.into() }
}

/// Parses a single graph. For graph6 the text must hold exactly one
/// non-empty line; use [`parse_graph6_stream`] for many.
pub fn parse_graph(text: &str, format: Format) -> Result<Graph, ParseError> {
    match format {
        Format::Graph6 => {
            let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
            let (idx, line) = lines.next().ok_or_else(|| malformed(1, 0, "empty input"))?;
            if let Some((extra, _)) = lines.next() {
                return Err(malformed(extra + 1, 0, "more than one graph6 record"));
            }
            parse_graph6_line(line.trim(), idx + 1)
        }
        Format::EdgeList => parse_edge_list(text),
    }
}

/// Parses one graph per non-empty line.
pub fn parse_graph6_stream(text: &str) -> Result<Vec<Graph>, ParseError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| parse_graph6_line(l.trim(), i + 1))
        .collect()
}

fn parse_graph6_line(line: &str, line_no: usize) -> Result<Graph, ParseError> {
    let body = line.strip_prefix(">>graph6<<").unwrap_or(line);
    let bytes = body.as_bytes();
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(malformed(line_no, i, format!("byte {b:#04x} outside the graph6 range 63..=126")));
        }
    }
    let data: Vec<u8> = bytes.iter().map(|b| b - 63).collect();
    let (n, header) = match data.first() {
        None => return Err(malformed(line_no, 0, "empty graph6 record")),
        Some(&x) if x < 63 => (x as u64, 1),
        Some(_) => {
            if data.len() < 4 {
                return Err(malformed(line_no, data.len(), "truncated order field"));
            }
            if data[1] < 63 {
                (fold_six(&data[1..4]), 4)
            } else {
                if data.len() < 8 {
                    return Err(malformed(line_no, data.len(), "truncated order field"));
                }
                (fold_six(&data[2..8]), 8)
            }
        }
    };
    let n = usize::try_from(n).map_err(|_| malformed(line_no, 0, "order too large"))?;
    let bits = n.saturating_mul(n.saturating_sub(1)) / 2;
    let expected = header + bits.div_ceil(6);
    if data.len() != expected {
        return Err(malformed(
            line_no,
            data.len().min(expected),
            format!("expected {expected} bytes for order {n}, found {}", data.len()),
        ));
    }
    let body = &data[header..];
    let mut b = GraphBuilder::new(n);
    let mut pos = 0usize;
    for j in 1..n {
        for i in 0..j {
            if body[pos / 6] >> (5 - pos % 6) & 1 == 1 {
                b.add_edge(i, j).expect("graph6 pair is valid");
            }
            pos += 1;
        }
    }
    if !pos.is_multiple_of(6) {
        let last = body[pos / 6];
        if last & ((1u8 << (6 - pos % 6)) - 1) != 0 {
            return Err(malformed(line_no, header + pos / 6, "nonzero padding bits"));
        }
    }
    Ok(b.build())
}

fn fold_six(groups: &[u8]) -> u64 {
    groups.iter().fold(0u64, |acc, &g| (acc << 6) | g as u64)
}

fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut declared: Option<(usize, usize)> = None;
    let mut pairs: Vec<(usize, &str, &str)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens[0] == "n" {
            if declared.is_some() || !pairs.is_empty() {
                return Err(malformed(line_no, 0, "header `n <count>` must come first and only once"));
            }
            if tokens.len() != 2 {
                return Err(malformed(line_no, 0, "header must be `n <count>`"));
            }
            let count = tokens[1]
                .parse()
                .map_err(|_| malformed(line_no, 2, format!("invalid vertex count `{}`", tokens[1])))?;
            declared = Some((count, line_no));
            continue;
        }
        if tokens.len() != 2 {
            return Err(malformed(line_no, 0, format!("expected `u v`, found {} tokens", tokens.len())));
        }
        pairs.push((line_no, tokens[0], tokens[1]));
    }

    let numeric = pairs
        .iter()
        .all(|(_, a, b)| a.parse::<usize>().is_ok() && b.parse::<usize>().is_ok());

    if numeric {
        let ids: Vec<(usize, usize, usize)> = pairs
            .iter()
            .map(|&(l, a, b)| (l, a.parse().unwrap(), b.parse().unwrap()))
            .collect();
        let n = match declared {
            Some((count, _)) => count,
            None => ids.iter().map(|&(_, a, b)| a.max(b) + 1).max().unwrap_or(0),
        };
        let mut builder = GraphBuilder::new(n);
        for (line, a, b) in ids {
            builder.add_edge(a, b).map_err(|source| ParseError::Graph { line, source })?;
        }
        return Ok(builder.build());
    }

    let mut index: HashMap<&str, usize> = HashMap::new();
    let mut labels: Vec<String> = Vec::new();
    let mut id_of = |name| {
        *index.entry(name).or_insert_with(|| {
            labels.push(String::from(name));
            labels.len() - 1
        })
    };
    let ids: Vec<(usize, usize, usize)> =
        pairs.iter().map(|&(line, a, b)| (line, id_of(a), id_of(b))).collect();
    let n = match declared {
        Some((count, line)) => {
            if count < labels.len() {
                return Err(malformed(
                    line,
                    2,
                    format!("header declares {count} vertices but {} labels appear", labels.len()),
                ));
            }
            count
        }
        None => labels.len(),
    };
    for v in labels.len()..n {
        labels.push(v.to_string());
    }
    let mut builder = GraphBuilder::new(n);
    for (line, a, b) in ids {
        builder.add_edge(a, b).map_err(|source| ParseError::Graph { line, source })?;
    }
    Ok(builder.build().with_labels(labels).expect("one label per vertex"))
}

/// Serializes without a trailing newline; stream writers append one per graph.
pub fn serialize_graph(g: &Graph, format: Format) -> String {
    match format {
        Format::Graph6 => to_graph6(g),
        Format::EdgeList => {
            let mut out = format!("n {}", g.order());
            for (u, v) in g.edges() {
                out.push_str(&format!("\n{u} {v}"));
            }
            out
        }
    }
}

pub fn to_graph6(g: &Graph) -> String {
    let n = g.order();
    assert!(n as u64 <= GRAPH6_MAX_ORDER, "order {n} exceeds graph6 limit");
    let mut out: Vec<u8> = Vec::new();
    if n < 63 {
        out.push(n as u8);
    } else if n < 258_048 {
        out.push(63);
        out.extend((0..3).rev().map(|k| ((n >> (6 * k)) & 0x3f) as u8));
    } else {
        out.extend([63, 63]);
        out.extend((0..6).rev().map(|k| ((n >> (6 * k)) & 0x3f) as u8));
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(acc << (6 - filled));
    }
    out.into_iter().map(|b| (b + 63) as char).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, cycle, path};
    use proptest::prelude::*;

    #[test]
    fn k2_is_a_underscore() {
        assert_eq!(to_graph6(&complete(2)), "A_");
        assert_eq!(parse_graph("A_", Format::Graph6).unwrap(), complete(2));
    }

    #[test]
    fn known_encodings() {
        // Hand-packed: order byte, then the upper triangle in column order.
        assert_eq!(to_graph6(&Graph::empty(1)), "@");
        assert_eq!(to_graph6(&Graph::empty(0)), "?");
        // C4 0-1-2-3-0: bits (0,1)=1 (0,2)=0 (1,2)=1 (0,3)=1 (1,3)=0 (2,3)=1 -> 101101 = 45
        assert_eq!(to_graph6(&cycle(4)), format!("C{}", (45u8 + 63) as char));
    }

    #[test]
    fn large_order_header() {
        let g = path(70);
        let s = to_graph6(&g);
        assert!(s.starts_with('~'));
        assert_eq!(parse_graph(&s, Format::Graph6).unwrap(), g);
    }

    #[test]
    fn graph6_errors() {
        assert!(parse_graph("A", Format::Graph6).is_err());
        assert!(parse_graph("A_x", Format::Graph6).is_err());
        // padding bit set: 'A' + 0b100001
        let bad = format!("A{}", (33u8 + 63) as char);
        assert!(matches!(parse_graph(&bad, Format::Graph6), Err(ParseError::Malformed { .. })));
        assert!(parse_graph("A_ ", Format::Graph6).is_ok());
        assert!(parse_graph("A_\nA_", Format::Graph6).is_err());
        assert_eq!(parse_graph6_stream("A_\n\nBw\n").unwrap().len(), 2);
    }

    #[test]
    fn edge_list_path() {
        let g = parse_graph("0 1\n1 2", Format::EdgeList).unwrap();
        assert_eq!(g, path(3));
    }

    #[test]
    fn edge_list_self_loop_rejected() {
        let err = parse_graph("0 1\n0 0\n", Format::EdgeList).unwrap_err();
        assert_eq!(err, ParseError::Graph { line: 2, source: GraphError::SelfLoop { vertex: 0 } });
    }

    #[test]
    fn edge_list_header_and_range() {
        let g = parse_graph("n 5\n# comment\n0 1\n1 0\n", Format::EdgeList).unwrap();
        assert_eq!(g.order(), 5);
        assert_eq!(g.edge_count(), 1);
        let err = parse_graph("n 2\n0 2", Format::EdgeList).unwrap_err();
        assert!(matches!(err, ParseError::Graph { line: 2, .. }));
        assert!(parse_graph("0 1 2", Format::EdgeList).is_err());
        assert!(parse_graph("0 1\nn 3", Format::EdgeList).is_err());
    }

    #[test]
    fn edge_list_labels() {
        let g = parse_graph("v1 v2\nv2 v3\nv3 v1\n", Format::EdgeList).unwrap();
        assert_eq!(g, cycle(3));
        assert_eq!(g.label(2), "v3");
        let g = parse_graph("n 4\na b\n", Format::EdgeList).unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(g.label(3), "3");
        assert!(parse_graph("n 1\na b\n", Format::EdgeList).is_err());
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (0usize..13).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(move |bits| {
                let mut b = GraphBuilder::new(n);
                let mut k = 0;
                for j in 1..n {
                    for i in 0..j {
                        if bits[k] {
                            b.add_edge(i, j).unwrap();
                        }
                        k += 1;
                    }
                }
                b.build()
            })
        })
    }

    proptest! {
        #[test]
        fn round_trip_both_formats(g in arb_graph()) {
            for format in [Format::Graph6, Format::EdgeList] {
                let text = serialize_graph(&g, format);
                let back = parse_graph(&text, format).unwrap();
                prop_assert_eq!(back.order(), g.order());
                prop_assert_eq!(back.edges().collect::<Vec<_>>(), g.edges().collect::<Vec<_>>());
            }
        }
    }
}
