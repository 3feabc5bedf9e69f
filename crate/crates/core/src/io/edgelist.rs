//! Plain edge-list text: a header line `n m` followed by `m` lines `u v`
//! (0-based). Several graphs may follow one another; blank lines and lines
//! starting with `#` are ignored.

use std::io::BufRead;

use thiserror::Error;

use crate::graph::{Graph, GraphError};

#[derive(Debug, Error)]
pub enum EdgeListError {
    #[error("line {line}: expected two integers, found {text:?}")]
    Syntax { line: usize, text: String },
    #[error("line {line}: input ended with {missing} edge(s) still expected")]
    MissingEdges { line: usize, missing: usize },
    #[error("line {line}: {source}")]
    Graph {
        line: usize,
        #[source]
        source: GraphError,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn pair(line: usize, text: &str) -> Result<(usize, usize), EdgeListError> {
    let syntax = || EdgeListError::Syntax {
        line,
        text: text.to_string(),
    };
    let mut it = text.split_whitespace().map(str::parse::<usize>);
    match (it.next(), it.next(), it.next()) {
        (Some(Ok(a)), Some(Ok(b)), None) => Ok((a, b)),
        _ => Err(syntax()),
    }
}

/// A graph whose header has been read but whose edges are still arriving.
struct Pending {
    header: usize,
    n: usize,
    left: usize,
    edges: Vec<(usize, usize)>,
}

/// Reads every edge-list graph in `reader`, in order.
pub fn parse_edge_lists<R: BufRead>(reader: R) -> Result<Vec<Graph>, EdgeListError> {
    let mut graphs = Vec::new();
    let mut pending: Option<Pending> = None;
    let mut last_line = 0;
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = line?;
        let text = line.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        let (a, b) = pair(line_no, text)?;
        match pending.as_mut() {
            None => {
                pending = Some(Pending {
                    header: line_no,
                    n: a,
                    left: b,
                    edges: Vec::with_capacity(b),
                })
            }
            Some(p) => {
                p.edges.push((a, b));
                p.left -= 1;
            }
        }
        if let Some(p) = pending.take_if(|p| p.left == 0) {
            graphs.push(Graph::new(p.n, p.edges).map_err(|source| EdgeListError::Graph {
                line: p.header,
                source,
            })?);
        }
    }
    if let Some(p) = pending {
        return Err(EdgeListError::MissingEdges {
            line: last_line,
            missing: p.left,
        });
    }
    Ok(graphs)
}

pub fn write_edge_list(g: &Graph) -> String {
    let edges = g.edges();
    let mut out = format!("{} {}\n", g.order(), edges.len());
    for (u, v) in edges {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}
