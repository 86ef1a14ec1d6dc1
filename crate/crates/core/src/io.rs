//! Text formats: the native hypergraph format and KONECT-style bipartite
//! edge lists.
//!
//! Hypergraph format:
//!
//! ```text
//! # comment lines start with '#'
//! 4 2          <- n m
//! 1 0 1 2      <- weight, then 0-based member ids
//! 1 2 3
//! ```
//!
//! Weights are written with 17 significant digits, so a serialized
//! hypergraph parses back to identical bits.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::hypergraph::{Hyperedge, Hypergraph, VertexId};

fn data_lines<'a>(text: &'a str, comment: &'a [char]) -> impl Iterator<Item = (usize, &'a str)> + 'a {
    text.lines().enumerate().filter_map(move |(i, line)| {
        let t = line.trim();
        if t.is_empty() || t.starts_with(comment) {
            None
        } else {
            Some((i + 1, t))
        }
    })
}

/// Parses the header and edge lines without building the hypergraph.
pub fn parse_edges(text: &str) -> Result<(usize, Vec<Hyperedge>)> {
    let mut lines = data_lines(text, &['#']);
    let (hline, header) = lines.next().ok_or(Error::MalformedLine(1))?;
    let mut it = header.split_whitespace();
    let n: usize = parse_token(it.next(), hline)?;
    let m: usize = parse_token(it.next(), hline)?;
    if it.next().is_some() {
        return Err(Error::MalformedLine(hline));
    }
    let mut edges = Vec::with_capacity(m);
    let mut last = hline;
    for (lineno, line) in lines {
        if edges.len() == m {
            return Err(Error::MalformedLine(lineno));
        }
        let mut it = line.split_whitespace();
        let w: f64 = parse_token(it.next(), lineno)?;
        let members =
            it.map(|t| t.parse::<VertexId>().map_err(|_| Error::MalformedLine(lineno))).collect::<Result<Vec<_>>>()?;
        if members.is_empty() {
            return Err(Error::MalformedLine(lineno));
        }
        edges.push(Hyperedge::new(w, members));
        last = lineno;
    }
    if edges.len() != m {
        return Err(Error::MalformedLine(last + 1));
    }
    Ok((n, edges))
}

fn parse_token<T: std::str::FromStr>(tok: Option<&str>, line: usize) -> Result<T> {
    tok.and_then(|t| t.parse().ok()).ok_or(Error::MalformedLine(line))
}

pub fn parse_hypergraph(text: &str) -> Result<Hypergraph> {
    let (n, edges) = parse_edges(text)?;
    Hypergraph::new(n, edges)
}

pub fn serialize_hypergraph(h: &Hypergraph) -> String {
    let mut out = String::with_capacity(16 * (h.total_size() + h.m() + 1));
    writeln!(out, "{} {}", h.n(), h.m()).unwrap();
    for e in h.edges() {
        out.push_str(&format_g17(e.weight()));
        for v in e.members() {
            write!(out, " {v}").unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn read_hypergraph(path: impl AsRef<Path>) -> Result<Hypergraph> {
    parse_hypergraph(&std::fs::read_to_string(path)?)
}

pub fn write_hypergraph(path: impl AsRef<Path>, h: &Hypergraph) -> Result<()> {
    std::fs::write(path, serialize_hypergraph(h))?;
    Ok(())
}

/// Formats like C's `%.17g`.
pub fn format_g17(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{x:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..17).contains(&exp) {
        let mantissa = trim_fraction(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (16 - exp) as usize;
        trim_fraction(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Parses `left right` pairs of positive 1-based ids. Lines starting with
/// `%` or `#` are comments; columns after the second are ignored.
pub fn parse_bipartite(text: &str) -> Result<Vec<(u64, u64)>> {
    data_lines(text, &['%', '#'])
        .map(|(lineno, line)| {
            let mut it = line.split_whitespace();
            let l: u64 = parse_token(it.next(), lineno)?;
            let r: u64 = parse_token(it.next(), lineno)?;
            if l == 0 || r == 0 {
                return Err(Error::MalformedLine(lineno));
            }
            Ok((l, r))
        })
        .collect()
}

pub fn read_bipartite(path: impl AsRef<Path>) -> Result<Vec<(u64, u64)>> {
    parse_bipartite(&std::fs::read_to_string(path)?)
}

/// A hypergraph converted from a bipartite graph, with the original left id
/// of every vertex.
#[derive(Debug, Clone)]
pub struct Converted {
    pub hypergraph: Hypergraph,
    pub left_ids: Vec<u64>,
}

/// Left vertices become vertices (renumbered in increasing id order); each
/// right vertex becomes a unit-weight hyperedge over its left neighbours.
/// Repeated pairs are merged; singleton hyperedges are kept.
pub fn convert_bipartite(pairs: &[(u64, u64)]) -> Result<Converted> {
    let left_ids: Vec<u64> = pairs.iter().map(|p| p.0).collect::<BTreeSet<_>>().into_iter().collect();
    let index: BTreeMap<u64, usize> = left_ids.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    let mut groups: BTreeMap<u64, BTreeSet<usize>> = BTreeMap::new();
    for &(l, r) in pairs {
        groups.entry(r).or_default().insert(index[&l]);
    }
    let edges = groups.into_values().map(|g| Hyperedge::new(1.0, g.into_iter().collect::<Vec<_>>())).collect();
    let hypergraph = Hypergraph::new(left_ids.len(), edges)?;
    Ok(Converted { hypergraph, left_ids })
}

/// [`convert_bipartite`] followed by largest-component extraction.
pub fn convert_largest_component(pairs: &[(u64, u64)]) -> Result<Converted> {
    let full = convert_bipartite(pairs)?;
    let (hypergraph, map) = full.hypergraph.largest_component();
    let left_ids = map.iter().map(|&v| full.left_ids[v]).collect();
    Ok(Converted { hypergraph, left_ids })
}
