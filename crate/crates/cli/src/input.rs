use std::fs::File;
use std::io::{self, BufRead, BufReader};

use clap::ValueEnum;

use superedge::io::{parse_edge_lists, stream_decode, EdgeListError, OnError, StreamError};
use superedge::{Catalog, Graph, Pattern};

use crate::CliError;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Graph6,
    Edgelist,
}

pub fn open(path: &str) -> Result<Box<dyn BufRead>, CliError> {
    if path == "-" {
        return Ok(Box::new(BufReader::new(io::stdin())));
    }
    let file = File::open(path).map_err(|e| CliError::Io(format!("{path}: {e}")))?;
    Ok(Box::new(BufReader::new(file)))
}

/// Reads every graph from `path` (`-` is standard input) with its record index.
pub fn read_graphs(path: &str, format: Format) -> Result<Vec<(usize, Graph)>, CliError> {
    let reader = open(path)?;
    match format {
        Format::Graph6 => stream_decode(reader, OnError::FailFast)
            .collect::<Result<Vec<_>, StreamError>>()
            .map_err(|e| CliError::Io(format!("{path}: {e}"))),
        Format::Edgelist => parse_edge_lists(reader)
            .map(|gs| gs.into_iter().enumerate().map(|(i, g)| (i + 1, g)).collect())
            .map_err(|e: EdgeListError| CliError::Io(format!("{path}: {e}"))),
    }
}

/// Builds a catalog from `NAME=<graph6>` or `NAME=@<edge-list file>` options.
pub fn catalog(patterns: &[String]) -> Result<Catalog, CliError> {
    let mut cat = Catalog::new();
    for item in patterns {
        let (name, value) = item
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("--pattern expects NAME=<graph6>, got {item:?}")))?;
        let graph = match value.strip_prefix('@') {
            Some(file) => {
                let mut graphs = read_graphs(file, Format::Edgelist)?;
                if graphs.len() != 1 {
                    return Err(CliError::Usage(format!(
                        "{file}: expected one graph, found {}",
                        graphs.len()
                    )));
                }
                graphs.remove(0).1
            }
            None => superedge::io::decode_graph6(value)
                .map_err(|e| CliError::Usage(format!("--pattern {name}: {e}")))?,
        };
        let source = if value.starts_with('@') { "edge-list file" } else { "graph6 string" };
        let pattern = Pattern::new(name, graph, format!("custom ({source})")).map_err(usage)?;
        cat.register(pattern).map_err(usage)?;
    }
    Ok(cat)
}

pub fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}
