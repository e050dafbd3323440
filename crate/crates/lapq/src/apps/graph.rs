//! Directed weighted graphs and the edge-list file loader.

use std::fs;
use std::io;
use std::path::Path;

use thiserror::Error;

/// Directed graph with non-negative edge weights and optional planar
/// coordinates (present on generated maps).
#[derive(Debug, Clone, Default)]
pub struct Graph {
    pub adj: Vec<Vec<(usize, f64)>>,
    pub coords: Option<Vec<(f64, f64)>>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n], coords: None }
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum()
    }

    pub fn add_edge(&mut self, src: usize, dst: usize, weight: f64) {
        debug_assert!(weight >= 0.0);
        let needed = src.max(dst) + 1;
        if self.adj.len() < needed {
            self.adj.resize(needed, Vec::new());
        }
        self.adj[src].push((dst, weight));
    }
}

#[derive(Debug, Error)]
pub enum GraphLoadError {
    #[error("cannot read graph file: {0}")]
    Io(#[from] io::Error),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("line {line}: negative weight")]
    NegativeWeight { line: usize },
}

/// Reads a whitespace-separated `src dst weight` edge list. Lines starting
/// with `#` (and blank lines) are ignored. Node ids are dense from 0.
pub fn load_graph(path: impl AsRef<Path>) -> Result<Graph, GraphLoadError> {
    let text = fs::read_to_string(path)?;
    let mut graph = Graph::new(0);
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut fields = content.split_whitespace();
        let mut field = |name: &str| {
            fields.next().ok_or_else(|| GraphLoadError::Parse {
                line,
                msg: format!("missing {name}"),
            })
        };
        let src: usize = field("source")?
            .parse()
            .map_err(|e| GraphLoadError::Parse { line, msg: format!("bad source: {e}") })?;
        let dst: usize = field("destination")?
            .parse()
            .map_err(|e| GraphLoadError::Parse { line, msg: format!("bad destination: {e}") })?;
        let weight: f64 = field("weight")?
            .parse()
            .map_err(|e| GraphLoadError::Parse { line, msg: format!("bad weight: {e}") })?;
        if let Some(extra) = fields.next() {
            return Err(GraphLoadError::Parse {
                line,
                msg: format!("unexpected field {extra:?}"),
            });
        }
        if !weight.is_finite() || weight < 0.0 {
            return Err(GraphLoadError::NegativeWeight { line });
        }
        graph.add_edge(src, dst, weight);
    }
    Ok(graph)
}
