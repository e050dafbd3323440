//! Dijkstra's algorithm over the instrumented priority queues, plus the two
//! prediction schemes that feed the learning-augmented ones.
//!
//! Queue elements are graph nodes keyed by tentative distance. Relaxations
//! go through decrease-key (a duplicate-insertion variant is available
//! behind a flag), and only comparisons inside the queue are charged.
//! Whatever the prediction quality, the returned distances are exact.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::time::Instant;

use ordered_float::NotNan;

use super::graph::Graph;
use super::ExperimentRecord;
use crate::heaps::{BinaryHeapBaseline, FibonacciHeapBaseline};
use crate::instrument::{DirtyOracle, Rng};
use crate::predict::{gen_class, gen_decay, rank_in_sorted};
use crate::queue::{Lapq, Mode, QueueStats};

type Dist = NotNan<f64>;

fn dist(x: f64) -> Dist {
    NotNan::new(x).expect("distances are finite")
}

/// Plain reference Dijkstra (uncounted); unreachable nodes get `+inf`.
pub fn shortest_paths(g: &Graph, source: usize) -> Vec<f64> {
    shortest_paths_inner(g, source, None)
}

/// Reference run that also memorizes every key pushed into the queue.
fn shortest_paths_inner(g: &Graph, source: usize, mut keys: Option<&mut Vec<f64>>) -> Vec<f64> {
    let n = g.node_count();
    let mut out = vec![f64::INFINITY; n];
    let mut done = vec![false; n];
    let mut heap: BinaryHeap<Reverse<(Dist, usize)>> = BinaryHeap::new();
    out[source] = 0.0;
    heap.push(Reverse((dist(0.0), source)));
    if let Some(keys) = keys.as_deref_mut() {
        keys.push(0.0);
    }
    while let Some(Reverse((d, v))) = heap.pop() {
        if done[v] {
            continue;
        }
        done[v] = true;
        for &(w, len) in &g.adj[v] {
            let nd = d.into_inner() + len;
            if nd < out[w] {
                out[w] = nd;
                heap.push(Reverse((dist(nd), w)));
                if let Some(keys) = keys.as_deref_mut() {
                    keys.push(nd);
                }
            }
        }
    }
    out
}

/// How rank predictions for the queue keys are produced.
#[derive(Debug, Clone)]
pub enum PredictionScheme {
    /// No predictions (baseline queues).
    None,
    /// A predicted rank per node, mapped onto whatever key the node is
    /// inserted or decreased with.
    NodeRank { rank_of_node: Vec<u64> },
    /// Ranks from the sorted key multiset of a warm-up run: an inserted key
    /// is predicted at its rank among the memorized keys.
    KeyRank { keys: Vec<f64> },
}

impl PredictionScheme {
    pub fn predict(&self, node: usize, key: f64) -> u64 {
        match self {
            PredictionScheme::None => 1,
            PredictionScheme::NodeRank { rank_of_node } => rank_of_node[node],
            PredictionScheme::KeyRank { keys } => (rank_in_sorted(&key, keys) as u64).max(1),
        }
    }
}

/// Noise applied to the true node ranks by [`node_rank_scheme`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RankNoise {
    Perfect,
    Class(usize),
    Decay(u64),
}

/// Node-rank predictions: nodes are ranked by true distance from `source`
/// (ground truth from an uncounted baseline run), then perturbed.
pub fn node_rank_scheme(g: &Graph, source: usize, noise: RankNoise, rng: &mut Rng) -> PredictionScheme {
    let distances = shortest_paths(g, source);
    let n = g.node_count();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        distances[a]
            .partial_cmp(&distances[b])
            .unwrap()
            .then(a.cmp(&b))
    });
    let prediction = match noise {
        RankNoise::Perfect => None,
        RankNoise::Class(c) => Some(gen_class(n, c.clamp(1, n), rng)),
        RankNoise::Decay(steps) => Some(gen_decay(n, steps, rng)),
    };
    let mut rank_of_node = vec![0u64; n];
    for (rank0, &node) in order.iter().enumerate() {
        rank_of_node[node] = match &prediction {
            None => rank0 as u64 + 1,
            Some(p) => p.get(rank0),
        };
    }
    PredictionScheme::NodeRank { rank_of_node }
}

/// Key-rank predictions: a warm-up Dijkstra from a uniformly random source
/// memorizes every inserted key; later keys are predicted at their rank in
/// that memory. The warm-up is not charged to any ledger.
pub fn key_rank_scheme(g: &Graph, rng: &mut Rng) -> PredictionScheme {
    let warm_source = rng.below(g.node_count() as u64) as usize;
    let mut keys = Vec::new();
    shortest_paths_inner(g, warm_source, Some(&mut keys));
    keys.sort_by(|a, b| a.partial_cmp(b).unwrap());
    PredictionScheme::KeyRank { keys }
}

/// Which priority queue runs the algorithm.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DijkstraQueueKind {
    LapqRank,
    LapqDirty,
    BinHeap,
    FibHeap,
}

impl DijkstraQueueKind {
    pub fn tag(&self) -> &'static str {
        match self {
            DijkstraQueueKind::LapqRank => "lapq-rank",
            DijkstraQueueKind::LapqDirty => "lapq-dirty",
            DijkstraQueueKind::BinHeap => "binheap",
            DijkstraQueueKind::FibHeap => "fibheap",
        }
    }
}

trait RelaxQueue {
    fn push(&mut self, key: Dist, node: usize);
    fn decrease(&mut self, old: Dist, node: usize, new: Dist);
    fn pop(&mut self) -> Option<(Dist, usize)>;
    fn stats(&self) -> QueueStats;
}

struct RankQueue<'a> {
    q: Lapq<Dist, usize>,
    scheme: &'a PredictionScheme,
}

impl RelaxQueue for RankQueue<'_> {
    fn push(&mut self, key: Dist, node: usize) {
        let rank = self.scheme.predict(node, key.into_inner());
        self.q.insert_rank(key, rank, node);
    }

    fn decrease(&mut self, old: Dist, node: usize, new: Dist) {
        let rank = self.scheme.predict(node, new.into_inner());
        self.q
            .decrease_key(&old, Some(&node), new, Some(rank))
            .expect("decrease-key on a live node");
    }

    fn pop(&mut self) -> Option<(Dist, usize)> {
        self.q.extract_min()
    }

    fn stats(&self) -> QueueStats {
        self.q.stats()
    }
}

struct DirtyQueue<'a> {
    q: Lapq<Dist, usize>,
    oracle: DirtyOracle<Dist>,
    scheme: &'a PredictionScheme,
}

impl RelaxQueue for DirtyQueue<'_> {
    fn push(&mut self, key: Dist, node: usize) {
        self.oracle.set(key, self.scheme.predict(node, key.into_inner()));
        self.q.insert_dirty(key, &self.oracle, node);
    }

    fn decrease(&mut self, old: Dist, node: usize, new: Dist) {
        self.oracle.set(new, self.scheme.predict(node, new.into_inner()));
        self.q
            .decrease_key_dirty(&old, Some(&node), new, &self.oracle)
            .expect("decrease-key on a live node");
    }

    fn pop(&mut self) -> Option<(Dist, usize)> {
        self.q.extract_min()
    }

    fn stats(&self) -> QueueStats {
        self.q.stats()
    }
}

struct BinQueue(BinaryHeapBaseline<Dist, usize>);

impl RelaxQueue for BinQueue {
    fn push(&mut self, key: Dist, node: usize) {
        self.0.insert(key, node);
    }

    fn decrease(&mut self, _old: Dist, node: usize, new: Dist) {
        self.0.decrease_key(&node, new).expect("decrease-key on a live node");
    }

    fn pop(&mut self) -> Option<(Dist, usize)> {
        self.0.extract_min()
    }

    fn stats(&self) -> QueueStats {
        QueueStats { clean: self.0.ledger().clean(), ..Default::default() }
    }
}

struct FibQueue(FibonacciHeapBaseline<Dist, usize>);

impl RelaxQueue for FibQueue {
    fn push(&mut self, key: Dist, node: usize) {
        self.0.insert(key, node);
    }

    fn decrease(&mut self, _old: Dist, node: usize, new: Dist) {
        self.0.decrease_key(&node, new).expect("decrease-key on a live node");
    }

    fn pop(&mut self) -> Option<(Dist, usize)> {
        self.0.extract_min()
    }

    fn stats(&self) -> QueueStats {
        QueueStats { clean: self.0.ledger().clean(), ..Default::default() }
    }
}

/// Single-source shortest paths with the chosen queue and scheme. Returns
/// the exact distance map (`+inf` for unreachable nodes) and the comparison
/// record. `use_decrease_key = false` switches to the duplicate-insertion
/// variant with lazy deletion.
pub fn dijkstra(
    g: &Graph,
    source: usize,
    kind: DijkstraQueueKind,
    scheme: &PredictionScheme,
    rng: &mut Rng,
    use_decrease_key: bool,
) -> (Vec<f64>, ExperimentRecord) {
    let mut queue: Box<dyn RelaxQueue> = match kind {
        DijkstraQueueKind::LapqRank => Box::new(RankQueue {
            q: Lapq::new(Mode::Rank, rng.next_u64()),
            scheme,
        }),
        DijkstraQueueKind::LapqDirty => Box::new(DirtyQueue {
            q: Lapq::new(Mode::Dirty, rng.next_u64()),
            oracle: DirtyOracle::new(),
            scheme,
        }),
        DijkstraQueueKind::BinHeap => Box::new(BinQueue(BinaryHeapBaseline::new())),
        DijkstraQueueKind::FibHeap => Box::new(FibQueue(FibonacciHeapBaseline::new())),
    };

    let start = Instant::now();
    let n = g.node_count();
    let mut distances = vec![f64::INFINITY; n];
    let mut done = vec![false; n];
    distances[source] = 0.0;
    queue.push(dist(0.0), source);

    while let Some((d, v)) = queue.pop() {
        if done[v] {
            debug_assert!(!use_decrease_key, "decrease-key variant never pops stale entries");
            continue;
        }
        done[v] = true;
        for &(w, len) in &g.adj[v] {
            if done[w] {
                continue;
            }
            let nd = d.into_inner() + len;
            if nd < distances[w] {
                let fresh = distances[w].is_infinite();
                let old = distances[w];
                distances[w] = nd;
                if fresh || !use_decrease_key {
                    queue.push(dist(nd), w);
                } else {
                    queue.decrease(dist(old), w, dist(nd));
                }
            }
        }
    }

    let stats = queue.stats();
    let mut record = ExperimentRecord::new(kind.tag(), n);
    record.clean_comparisons = stats.clean;
    record.dirty_comparisons = stats.dirty;
    record.wall_ms = start.elapsed().as_secs_f64() * 1e3;
    (distances, record)
}
