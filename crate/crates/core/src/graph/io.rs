//! Text formats: graph6 (read and write) and a plain edge list (read and
//! write). DOT output lives on [`Graph::to_dot`].

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use super::Graph;

/// Largest vertex count accepted by the decoders.
pub const MAX_ORDER: usize = 1 << 24;

const HEADER: &str = ">>graph6<<";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("byte {offset}: {kind}")]
pub struct ParseError {
    pub offset: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("empty input")]
    Empty,
    #[error("non-printable character {0:#04x}")]
    NonPrintable(u8),
    #[error("malformed length prefix")]
    MalformedLength,
    #[error("graph has {0} vertices, more than the supported {MAX_ORDER}")]
    TooManyVertices(u64),
    #[error("adjacency payload has {got} bytes, expected {expected}")]
    ShortPayload { expected: usize, got: usize },
    #[error("{0} unexpected bytes after the adjacency payload")]
    TrailingBytes(usize),
    #[error("expected a header line \"n m\"")]
    BadHeader,
    #[error("expected an edge \"u v\"")]
    BadEdge,
    #[error("vertex {vertex} out of range for {order} vertices")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("self loop at vertex {0}")]
    SelfLoop(usize),
    #[error("edge {0} {1} listed twice")]
    DuplicateEdge(usize, usize),
    #[error("header announces {expected} edges, found {got}")]
    EdgeCount { expected: usize, got: usize },
}

fn err(offset: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { offset, kind }
}

fn payload_bytes(n: usize) -> usize {
    let bits = n * n.saturating_sub(1) / 2;
    bits.div_ceil(6)
}

/// Decodes one graph6 line. A leading `>>graph6<<` header and trailing
/// line terminator are accepted.
pub fn parse_graph6(text: &str) -> Result<Graph, ParseError> {
    let base = if text.starts_with(HEADER) { HEADER.len() } else { 0 };
    let bytes = text.as_bytes()[base..]
        .strip_suffix(b"\n")
        .unwrap_or(&text.as_bytes()[base..]);
    let bytes = bytes.strip_suffix(b"\r").unwrap_or(bytes);
    if bytes.is_empty() {
        return Err(err(base, ParseErrorKind::Empty));
    }
    if let Some(i) = bytes.iter().position(|b| !(63..=126).contains(b)) {
        return Err(err(base + i, ParseErrorKind::NonPrintable(bytes[i])));
    }
    let value = |range: std::ops::Range<usize>| -> Result<u64, ParseError> {
        if bytes.len() < range.end {
            return Err(err(base + bytes.len(), ParseErrorKind::MalformedLength));
        }
        Ok(bytes[range].iter().fold(0u64, |acc, &b| acc << 6 | u64::from(b - 63)))
    };
    let (n, start) = if bytes[0] != 126 {
        (u64::from(bytes[0] - 63), 1)
    } else if bytes.get(1) != Some(&126) {
        (value(1..4)?, 4)
    } else {
        (value(2..8)?, 8)
    };
    if n > MAX_ORDER as u64 {
        return Err(err(base, ParseErrorKind::TooManyVertices(n)));
    }
    let n = n as usize;
    let payload = &bytes[start..];
    let expected = payload_bytes(n);
    if payload.len() < expected {
        return Err(err(
            base + bytes.len(),
            ParseErrorKind::ShortPayload {
                expected,
                got: payload.len(),
            },
        ));
    }
    if payload.len() > expected {
        return Err(err(
            base + start + expected,
            ParseErrorKind::TrailingBytes(payload.len() - expected),
        ));
    }
    let mut adj = vec![Vec::new(); n];
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = payload[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                adj[i].push(j);
                adj[j].push(i);
            }
            k += 1;
        }
    }
    // Column-major bit order fills each list in ascending order already.
    Ok(Graph::from_sorted_adjacency(adj))
}

/// Encodes a graph as a graph6 line without header or newline.
pub fn to_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = order_prefix(n);
    out.reserve(payload_bytes(n));
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        let col = g.neighbors(j);
        let mut it = col.iter().copied().take_while(|&i| i < j).peekable();
        for i in 0..j {
            let bit = it.peek() == Some(&i);
            if bit {
                it.next();
            }
            acc = acc << 1 | u8::from(bit);
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 output is ASCII")
}

fn order_prefix(n: usize) -> Vec<u8> {
    let digits = |value: u64, count: u32| (0..count).rev().map(move |d| (value >> (6 * d) & 63) as u8 + 63);
    if n < 63 {
        vec![n as u8 + 63]
    } else if n < 258_048 {
        std::iter::once(126).chain(digits(n as u64, 3)).collect()
    } else {
        [126, 126].into_iter().chain(digits(n as u64, 6)).collect()
    }
}

/// Parses the edge-list format: a header line `n m` followed by `m` lines
/// `u v`. Blank lines and lines starting with `#` are skipped.
pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut lines = text
        .split_inclusive('\n')
        .scan(0usize, |pos, line| {
            let start = *pos;
            *pos += line.len();
            Some((start, line.trim()))
        })
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hdr_at, header) = lines.next().ok_or(err(0, ParseErrorKind::Empty))?;
    let (n, m) = two_numbers(header).ok_or(err(hdr_at, ParseErrorKind::BadHeader))?;
    if n > MAX_ORDER {
        return Err(err(hdr_at, ParseErrorKind::TooManyVertices(n as u64)));
    }
    let mut adj = vec![Vec::new(); n];
    let mut count = 0;
    for (at, line) in lines {
        let (u, v) = two_numbers(line).ok_or(err(at, ParseErrorKind::BadEdge))?;
        for x in [u, v] {
            if x >= n {
                return Err(err(at, ParseErrorKind::VertexOutOfRange { vertex: x, order: n }));
            }
        }
        if u == v {
            return Err(err(at, ParseErrorKind::SelfLoop(u)));
        }
        adj[u].push(v);
        adj[v].push(u);
        count += 1;
    }
    if count != m {
        return Err(err(
            text.len(),
            ParseErrorKind::EdgeCount {
                expected: m,
                got: count,
            },
        ));
    }
    for (u, list) in adj.iter_mut().enumerate() {
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(err(0, ParseErrorKind::DuplicateEdge(u.min(w[0]), u.max(w[0]))));
        }
    }
    Ok(Graph::from_sorted_adjacency(adj))
}

/// Inverse of [`parse_edge_list`].
pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.order(), g.size());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

fn two_numbers(line: &str) -> Option<(usize, usize)> {
    let mut it = line.split_whitespace();
    let a = it.next()?.parse().ok()?;
    let b = it.next()?.parse().ok()?;
    it.next().is_none().then_some((a, b))
}

/// Input format selector.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    Graph6,
    EdgeList,
    #[default]
    Auto,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "graph6" => Ok(Format::Graph6),
            "edgelist" => Ok(Format::EdgeList),
            "auto" => Ok(Format::Auto),
            other => Err(format!("unknown format {other:?}")),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Graph6 => "graph6",
            Format::EdgeList => "edgelist",
            Format::Auto => "auto",
        })
    }
}

/// Resolves `Auto`: a first meaningful line of two integers means an edge
/// list, anything else graph6.
pub fn detect_format(text: &str) -> Format {
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'));
    match first.and_then(two_numbers) {
        Some(_) => Format::EdgeList,
        None => Format::Graph6,
    }
}

/// Parses every graph in `text`: one per non-empty line for graph6, a
/// single graph for edge lists. Offsets in errors are relative to `text`.
pub fn parse_graphs(text: &str, format: Format) -> Vec<Result<Graph, ParseError>> {
    let format = match format {
        Format::Auto => detect_format(text),
        f => f,
    };
    match format {
        Format::EdgeList => vec![parse_edge_list(text)],
        _ => {
            let mut pos = 0;
            let mut out = Vec::new();
            for line in text.split_inclusive('\n') {
                let start = pos;
                pos += line.len();
                if line.trim().is_empty() {
                    continue;
                }
                out.push(parse_graph6(line.trim_end()).map_err(|mut e| {
                    e.offset += start;
                    e
                }));
            }
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // Reference strings produced by networkx.to_graph6_bytes.
    const K2: &str = "A_";
    const EMPTY2: &str = "A?";
    const C5: &str = "Dhc";
    const C7: &str = "FhCKG";
    const PETERSEN: &str = "IheA@GUAo";
    const K33: &str = "EFz_";

    #[test]
    fn decode_reference_strings() {
        assert_eq!(parse_graph6(K2).unwrap(), Graph::complete(2));
        assert_eq!(parse_graph6(EMPTY2).unwrap(), Graph::empty(2));
        assert_eq!(parse_graph6(C5).unwrap(), Graph::cycle(5));
        assert_eq!(parse_graph6(C7).unwrap(), Graph::cycle(7));
        assert_eq!(parse_graph6(PETERSEN).unwrap(), Graph::petersen());
        assert_eq!(parse_graph6(K33).unwrap(), Graph::complete_bipartite(3, 3));
        assert_eq!(parse_graph6("?").unwrap(), Graph::empty(0));
        assert_eq!(parse_graph6("@").unwrap(), Graph::empty(1));
    }

    #[test]
    fn encode_reference_strings() {
        assert_eq!(to_graph6(&Graph::complete(2)), K2);
        assert_eq!(to_graph6(&Graph::empty(2)), EMPTY2);
        assert_eq!(to_graph6(&Graph::cycle(5)), C5);
        assert_eq!(to_graph6(&Graph::petersen()), PETERSEN);
        assert_eq!(to_graph6(&Graph::complete(4)), "C~");
    }

    #[test]
    fn long_length_prefix() {
        // networkx: K70 starts with "~?@E" followed by all-ones payload.
        let s = to_graph6(&Graph::complete(70));
        assert!(s.starts_with("~?@E~~~~"));
        assert_eq!(s.len(), 407);
        assert_eq!(parse_graph6(&s).unwrap(), Graph::complete(70));
        assert_eq!(order_prefix(258_047), b"~}~~".to_vec());
        assert_eq!(order_prefix(258_048), b"~~???~??".to_vec());
        // Six-digit prefixes decode even when a shorter form would do.
        assert_eq!(parse_graph6("~~?????Dhc").unwrap(), Graph::cycle(5));
    }

    #[test]
    fn header_and_newline() {
        assert_eq!(parse_graph6(">>graph6<<Dhc\n").unwrap(), Graph::cycle(5));
        assert_eq!(parse_graph6("Dhc\r\n").unwrap(), Graph::cycle(5));
    }

    #[test]
    fn graph6_errors_carry_offsets() {
        assert_eq!(
            parse_graph6("Dh c").unwrap_err(),
            err(2, ParseErrorKind::NonPrintable(b' '))
        );
        assert_eq!(
            parse_graph6("Dh").unwrap_err(),
            err(2, ParseErrorKind::ShortPayload { expected: 2, got: 1 })
        );
        assert_eq!(
            parse_graph6("~?@").unwrap_err(),
            err(3, ParseErrorKind::MalformedLength)
        );
        assert_eq!(
            parse_graph6("Dhcc").unwrap_err(),
            err(3, ParseErrorKind::TrailingBytes(1))
        );
        assert_eq!(
            parse_graph6(">>graph6<<\u{7f}").unwrap_err(),
            err(10, ParseErrorKind::NonPrintable(0x7f))
        );
        assert_eq!(parse_graph6("").unwrap_err().kind, ParseErrorKind::Empty);
    }

    #[test]
    fn edge_list_round_trip() {
        let g = Graph::petersen();
        assert_eq!(parse_edge_list(&to_edge_list(&g)).unwrap(), g);
        let k4 = parse_edge_list("4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n").unwrap();
        assert_eq!(k4, Graph::complete(4));
    }

    #[test]
    fn edge_list_errors() {
        assert_eq!(
            parse_edge_list("3 1\n0 5\n").unwrap_err(),
            err(4, ParseErrorKind::VertexOutOfRange { vertex: 5, order: 3 })
        );
        assert_eq!(
            parse_edge_list("3 2\n0 1\n").unwrap_err().kind,
            ParseErrorKind::EdgeCount { expected: 2, got: 1 }
        );
        assert_eq!(parse_edge_list("x\n").unwrap_err(), err(0, ParseErrorKind::BadHeader));
        assert_eq!(
            parse_edge_list("2 1\n1 1\n").unwrap_err(),
            err(4, ParseErrorKind::SelfLoop(1))
        );
        assert_eq!(
            parse_edge_list("2 2\n0 1\n1 0\n").unwrap_err().kind,
            ParseErrorKind::DuplicateEdge(0, 1)
        );
    }

    #[test]
    fn format_detection() {
        assert_eq!(detect_format("5 5\n0 1\n"), Format::EdgeList);
        assert_eq!(detect_format("Dhc\n"), Format::Graph6);
        assert_eq!(detect_format(">>graph6<<Dhc"), Format::Graph6);
        let many = parse_graphs("Dhc\n\nA_\n", Format::Auto);
        assert_eq!(many.len(), 2);
        let bad = parse_graphs("Dhc\nDh\n", Format::Graph6);
        assert_eq!(bad[1].as_ref().unwrap_err().offset, 6);
    }
}
