//! Reading graph sources.

use std::fs;
use std::io::{self, Read};

use equimatch::graph::io::{parse_graphs, Format, ParseError};
use equimatch::Graph;

use crate::CliError;

/// Reads `source` (a path, or `-` for standard input) and parses every
/// graph in it. Each entry keeps its position in the stream.
pub fn read_graphs(source: &str, format: Format) -> Result<Vec<Result<Graph, ParseError>>, CliError> {
    let text = if source == "-" {
        let mut buf = String::new();
        io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| CliError::Io(source.to_string(), e))?;
        buf
    } else {
        fs::read_to_string(source).map_err(|e| CliError::Io(source.to_string(), e))?
    };
    let graphs = parse_graphs(&text, format);
    if graphs.is_empty() {
        return Err(CliError::NoGraphs(source.to_string()));
    }
    Ok(graphs)
}
