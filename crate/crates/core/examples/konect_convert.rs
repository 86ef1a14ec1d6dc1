//! Converts a bipartite edge list (KONECT `out.*` layout) into a hypergraph,
//! keeps the largest component and writes it in the text format.
//!
//!     cargo run --example konect_convert -- out.some-network converted.hg
//!
//! Without arguments a small built-in network is used.

use hyperppr::hypergraph::stats;
use hyperppr::io::{
    convert_largest_component, parse_bipartite, parse_hypergraph, read_bipartite, serialize_hypergraph,
};

const DEMO: &str = "% bip unweighted\n% 10 6 4\n1 1\n2 1\n3 1\n3 2\n4 2\n5 2\n1 3\n5 3\n6 4\n7 4\n";

fn main() -> hyperppr::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let pairs = match args.first() {
        Some(path) => read_bipartite(path)?,
        None => parse_bipartite(DEMO)?,
    };
    let conv = convert_largest_component(&pairs)?;
    let text = serialize_hypergraph(&conv.hypergraph);
    assert_eq!(serialize_hypergraph(&parse_hypergraph(&text)?), text);
    eprintln!("{}", stats(&conv.hypergraph));
    eprintln!("left ids kept: {:?}", &conv.left_ids[..conv.left_ids.len().min(10)]);
    match args.get(1) {
        Some(out) => std::fs::write(out, text)?,
        None => print!("{text}"),
    }
    Ok(())
}
