//! Edge-list and graph6 readers and writers.
//!
//! Edge-list text starts with a header line `n m` followed by `m` lines `u v`
//! with `0 <= u != v < n`. Blank lines and `#` comments are ignored, except a
//! `# names: ...` comment, which assigns display names to the vertices in id
//! order.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::Graph;

const NAMES_DIRECTIVE: &str = "names:";
const GRAPH6_HEADER: &str = ">>graph6<<";
/// Largest order encodable with the single-byte graph6 size prefix.
pub const GRAPH6_MAX_N: usize = 62;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Auto,
    EdgeList,
    Graph6,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "auto" => Ok(Format::Auto),
            "edgelist" | "edge-list" => Ok(Format::EdgeList),
            "graph6" | "g6" => Ok(Format::Graph6),
            other => Err(format!("unknown graph format `{other}`")),
        }
    }
}

/// Parses `text` in the given format, sniffing the header when `Format::Auto`.
pub fn parse_graph(text: &str, format: Format) -> Result<Graph> {
    match format {
        Format::EdgeList => parse_edge_list(text),
        Format::Graph6 => parse_graph6(text),
        Format::Auto => match sniff(text) {
            Format::Graph6 => parse_graph6(text),
            _ => parse_edge_list(text),
        },
    }
}

fn sniff(text: &str) -> Format {
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'));
    match first {
        Some(line) if line.starts_with(GRAPH6_HEADER) => Format::Graph6,
        Some(line) if line.bytes().all(|b| (63..=126).contains(&b)) => Format::Graph6,
        _ => Format::EdgeList,
    }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

fn parse_usize(token: &str, line: usize, what: &str) -> Result<usize> {
    token
        .parse::<usize>()
        .map_err(|_| Error::parse(line, format!("invalid {what} `{token}`")))
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut names: Option<(usize, Vec<String>)> = None;
    let mut header: Option<(usize, usize)> = None;
    let mut graph: Option<Graph> = None;
    let mut seen_edges = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let trimmed = raw.trim();
        if let Some(comment) = trimmed.strip_prefix('#') {
            if let Some(list) = comment.trim_start().strip_prefix(NAMES_DIRECTIVE) {
                names = Some((line_no, list.split_whitespace().map(String::from).collect()));
            }
            continue;
        }
        let tokens: Vec<&str> = strip_comment(trimmed).split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        if tokens.len() != 2 {
            let what = if header.is_none() {
                "header `n m`"
            } else {
                "edge `u v`"
            };
            return Err(Error::parse(
                line_no,
                format!("expected {what}, found {} tokens", tokens.len()),
            ));
        }
        match header {
            None => {
                let n = parse_usize(tokens[0], line_no, "vertex count")?;
                let m = parse_usize(tokens[1], line_no, "edge count")?;
                header = Some((n, m));
                graph = Some(Graph::empty(n));
            }
            Some((n, m)) => {
                let u = parse_usize(tokens[0], line_no, "vertex id")?;
                let v = parse_usize(tokens[1], line_no, "vertex id")?;
                if seen_edges == m {
                    return Err(Error::parse(
                        line_no,
                        format!("more edge lines than the {m} declared"),
                    ));
                }
                if u >= n || v >= n {
                    return Err(Error::parse(
                        line_no,
                        format!("vertex id {} out of range for n = {n}", u.max(v)),
                    ));
                }
                if u == v {
                    return Err(Error::parse(line_no, format!("self-loop on vertex {u}")));
                }
                graph
                    .as_mut()
                    .expect("graph exists once the header is read")
                    .add_edge(u, v)?;
                seen_edges += 1;
            }
        }
    }

    let (_, m) = header.ok_or_else(|| Error::parse(0, "missing header `n m`"))?;
    if seen_edges != m {
        return Err(Error::parse(
            text.lines().count(),
            format!("header declares {m} edges but {seen_edges} were given"),
        ));
    }
    let mut g = graph.expect("graph exists once the header is read");
    if let Some((line_no, list)) = names {
        if list.len() != g.n() {
            return Err(Error::parse(
                line_no,
                format!("{} names given for {} vertices", list.len(), g.n()),
            ));
        }
        g.set_names(list)?;
    }
    Ok(g)
}

/// Writes `g` in edge-list form; edges appear in lexicographic order.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    if let Some(names) = g.names() {
        let _ = writeln!(out, "# {NAMES_DIRECTIVE} {}", names.join(" "));
    }
    let _ = writeln!(out, "{} {}", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn parse_graph6(text: &str) -> Result<Graph> {
    let (line_no, line) = text
        .lines()
        .map(str::trim)
        .enumerate()
        .find(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .map(|(i, l)| (i + 1, l))
        .ok_or_else(|| Error::parse(0, "empty graph6 input"))?;
    let body = line.strip_prefix(GRAPH6_HEADER).unwrap_or(line).as_bytes();
    if let Some(&bad) = body.iter().find(|b| !(63..=126).contains(*b)) {
        return Err(Error::parse(
            line_no,
            format!("invalid graph6 byte 0x{bad:02x}"),
        ));
    }
    let (&first, data) = body
        .split_first()
        .ok_or_else(|| Error::parse(line_no, "missing graph6 size byte"))?;
    if first == 126 {
        return Err(Error::parse(
            line_no,
            format!("graph6 inputs with more than {GRAPH6_MAX_N} vertices are not supported"),
        ));
    }
    let n = (first - 63) as usize;
    let pairs = n * n.saturating_sub(1) / 2;
    let needed = pairs.div_ceil(6);
    if data.len() != needed {
        return Err(Error::parse(
            line_no,
            format!(
                "graph6 body has {} bytes, expected {needed} for n = {n}",
                data.len()
            ),
        ));
    }
    let mut g = Graph::empty(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = data[k / 6] - 63;
            if byte & (1 << (5 - k % 6)) != 0 {
                g.add_edge(i, j)?;
            }
            k += 1;
        }
    }
    Ok(g)
}

pub fn write_graph6(g: &Graph) -> Result<String> {
    let n = g.n();
    if n > GRAPH6_MAX_N {
        return Err(Error::precondition(format!(
            "graph6 output supports at most {GRAPH6_MAX_N} vertices, got {n}"
        )));
    }
    let mut bytes = vec![n as u8 + 63];
    let mut acc = 0u8;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            acc <<= 1;
            if g.has_edge(i, j) {
                acc |= 1;
            }
            k += 1;
            if k % 6 == 0 {
                bytes.push(acc + 63);
                acc = 0;
            }
        }
    }
    if k % 6 != 0 {
        acc <<= 6 - k % 6;
        bytes.push(acc + 63);
    }
    Ok(String::from_utf8(bytes).expect("graph6 bytes are ASCII"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testing::{arb_graph, fig1};
    use proptest::prelude::*;

    #[test]
    fn parses_path() {
        let g = parse_edge_list("4 3\n0 1\n1 2\n2 3").unwrap();
        assert_eq!(g, Graph::path(4));
    }

    #[test]
    fn rejects_self_loop_with_line_number() {
        let err = parse_edge_list("2 1\n0 0").unwrap_err();
        assert_eq!(err, Error::parse(2, "self-loop on vertex 0"));
    }

    #[test]
    fn rejects_out_of_range_and_bad_header() {
        match parse_edge_list("3 1\n# c\n0 3\n").unwrap_err() {
            Error::Parse { line, .. } => assert_eq!(line, 3),
            e => panic!("unexpected {e:?}"),
        }
        match parse_edge_list("x 1\n").unwrap_err() {
            Error::Parse { line, .. } => assert_eq!(line, 1),
            e => panic!("unexpected {e:?}"),
        }
        assert!(parse_edge_list("").is_err());
        assert!(parse_edge_list("3 2\n0 1\n").is_err());
        assert!(parse_edge_list("3 1\n0 1\n1 2\n").is_err());
        assert!(parse_edge_list("3 1\n0 1 2\n").is_err());
    }

    #[test]
    fn duplicate_edges_collapse() {
        let g = parse_edge_list("3 3\n0 1\n1 0\n0 1 # again\n").unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn names_directive() {
        let g = fig1();
        assert_eq!(g.n(), 10);
        assert_eq!(g.edge_count(), 12);
        assert_eq!(g.label(0), "a");
        assert_eq!(g.vertex_named("s5"), Some(9));
        let again = parse_edge_list(&write_edge_list(&g)).unwrap();
        assert_eq!(again, g);
        assert!(parse_edge_list("# names: a b\n3 0\n").is_err());
    }

    #[test]
    fn graph6_known_strings() {
        // P4 is "Ch" in graph6; K4 is "C~".
        assert_eq!(parse_graph6("Ch").unwrap(), Graph::path(4));
        assert_eq!(write_graph6(&Graph::path(4)).unwrap(), "Ch");
        assert_eq!(parse_graph6(">>graph6<<C~").unwrap(), Graph::complete(4));
        assert_eq!(parse_graph6("?").unwrap().n(), 0);
        assert!(parse_graph6("C~~").is_err());
        assert!(parse_graph6("~?@~").is_err());
        assert!(write_graph6(&Graph::empty(63)).is_err());
    }

    #[test]
    fn auto_detection() {
        assert_eq!(parse_graph("Ch\n", Format::Auto).unwrap(), Graph::path(4));
        assert_eq!(
            parse_graph("# p4\n4 3\n0 1\n1 2\n2 3\n", Format::Auto).unwrap(),
            Graph::path(4)
        );
        assert_eq!("graph6".parse::<Format>().unwrap(), Format::Graph6);
        assert!("dot".parse::<Format>().is_err());
    }

    proptest! {
        #[test]
        fn graph6_round_trip(g in arb_graph(20)) {
            let text = write_graph6(&g).unwrap();
            prop_assert_eq!(parse_graph6(&text).unwrap(), g);
        }

        #[test]
        fn edge_list_round_trip(g in arb_graph(12)) {
            prop_assert_eq!(parse_edge_list(&write_edge_list(&g)).unwrap(), g);
        }
    }
}
