//! End-to-end experiment drivers: sorting under the three prediction
//! regimes, Dijkstra's algorithm with prediction schemes, and the graph
//! generators/loaders behind them.

mod dijkstra;
mod graph;
mod pvt;
mod sort;

pub use dijkstra::{
    dijkstra, key_rank_scheme, node_rank_scheme, shortest_paths, DijkstraQueueKind,
    PredictionScheme, RankNoise,
};
pub use graph::{load_graph, Graph, GraphLoadError};
pub use pvt::{gen_pvt, sample_poisson};
pub use sort::{
    sort_binheap, sort_dirty, sort_fibheap, sort_offline_positional, sort_online_rank,
    InsertionOrder,
};

/// One CSV row of an experiment run. Drivers fill the measurement fields;
/// the harness fills the sweep bookkeeping (`suite`, `parameter`, `rep`,
/// `seed`) and the prediction-error summary.
#[derive(Debug, Clone, Default)]
pub struct ExperimentRecord {
    pub suite: String,
    pub algorithm: String,
    pub n: usize,
    pub parameter: u64,
    pub rep: u64,
    pub seed: u64,
    pub clean_comparisons: u64,
    pub dirty_comparisons: u64,
    pub wall_ms: f64,
    pub max_error: u64,
    pub sum_log_error: f64,
}

impl ExperimentRecord {
    pub fn new(algorithm: impl Into<String>, n: usize) -> Self {
        ExperimentRecord { algorithm: algorithm.into(), n, ..Default::default() }
    }

    /// Fixed, documented column order.
    pub fn csv_header() -> &'static str {
        "suite,algorithm,n,parameter,rep,seed,clean_comparisons,dirty_comparisons,wall_ms,max_error,sum_log_error"
    }

    /// One CSV row. Wall time is emitted only when `timings` is set, since
    /// it is the lone nondeterministic column; otherwise 0.
    pub fn to_csv_row(&self, timings: bool) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{:.4}",
            self.suite,
            self.algorithm,
            self.n,
            self.parameter,
            self.rep,
            self.seed,
            self.clean_comparisons,
            self.dirty_comparisons,
            if timings { format!("{:.3}", self.wall_ms) } else { "0".to_string() },
            self.max_error,
            self.sum_log_error,
        )
    }
}
