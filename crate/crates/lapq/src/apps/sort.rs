//! Sorting drivers: the learning-augmented queue under each prediction
//! model, plus the two heap baselines, all reporting comparison counts.

use std::hash::Hash;
use std::time::Instant;

use super::ExperimentRecord;
use crate::heaps::{BinaryHeapBaseline, FibonacciHeapBaseline};
use crate::instrument::{DirtyOracle, Rng};
use crate::queue::{Lapq, Mode};

/// Insertion order used by [`sort_dirty`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InsertionOrder {
    /// Insert in the order the input arrives.
    Given,
    /// Shuffle uniformly before inserting.
    Random,
}

fn drain_lapq<K: Ord + Eq + Hash + Clone>(q: &mut Lapq<K>) -> Vec<K> {
    std::iter::from_fn(|| q.extract_min()).map(|(k, _)| k).collect()
}

/// Offline positional sorting: bucket-sorts the input by predicted rank,
/// inserts in that order into a pointer-mode queue with each element serving
/// as the pointer prediction for the next, then drains.
pub fn sort_offline_positional<K: Ord + Eq + Hash + Clone>(
    items: &[K],
    rhat: &[u64],
    rng: &mut Rng,
) -> (Vec<K>, ExperimentRecord) {
    assert_eq!(items.len(), rhat.len());
    let start = Instant::now();

    // bucket sort indices by predicted rank
    let max_rank = rhat.iter().copied().max().unwrap_or(1) as usize;
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); max_rank + 1];
    for (i, &r) in rhat.iter().enumerate() {
        buckets[r as usize].push(i);
    }
    let order: Vec<usize> = buckets.into_iter().flatten().collect();

    let mut q: Lapq<K> = Lapq::new(Mode::Pointer, rng.next_u64());
    let mut prev: Option<&K> = None;
    for &i in &order {
        q.insert_pointer(items[i].clone(), prev, ());
        prev = Some(&items[i]);
    }
    let sorted = drain_lapq(&mut q);

    let stats = q.stats();
    let mut record = ExperimentRecord::new("lapq-pointer", items.len());
    record.clean_comparisons = stats.clean;
    record.dirty_comparisons = stats.dirty;
    record.wall_ms = start.elapsed().as_secs_f64() * 1e3;
    (sorted, record)
}

/// Online rank-prediction sorting: the stream of `(item, predicted rank)`
/// pairs is inserted as it arrives; the structure is sorted at every prefix.
pub fn sort_online_rank<K: Ord + Eq + Hash + Clone>(
    stream: &[(K, u64)],
    rng: &mut Rng,
) -> (Vec<K>, ExperimentRecord) {
    let start = Instant::now();
    let mut q: Lapq<K> = Lapq::new(Mode::Rank, rng.next_u64());
    for (item, rank) in stream {
        q.insert_rank(item.clone(), *rank, ());
    }
    let sorted = drain_lapq(&mut q);
    let stats = q.stats();
    let mut record = ExperimentRecord::new("lapq-rank", stream.len());
    record.clean_comparisons = stats.clean;
    record.dirty_comparisons = stats.dirty;
    record.wall_ms = start.elapsed().as_secs_f64() * 1e3;
    (sorted, record)
}

/// Dirty-comparison sorting: every insertion runs the dirty top-down search
/// plus a clean exponential repair.
pub fn sort_dirty<K: Ord + Eq + Hash + Clone>(
    items: &[K],
    oracle: &DirtyOracle<K>,
    order: InsertionOrder,
    rng: &mut Rng,
) -> (Vec<K>, ExperimentRecord) {
    let start = Instant::now();
    let mut idx: Vec<usize> = (0..items.len()).collect();
    if order == InsertionOrder::Random {
        rng.shuffle(&mut idx);
    }
    let mut q: Lapq<K> = Lapq::new(Mode::Dirty, rng.next_u64());
    for &i in &idx {
        q.insert_dirty(items[i].clone(), oracle, ());
    }
    let sorted = drain_lapq(&mut q);
    let stats = q.stats();
    let mut record = ExperimentRecord::new("lapq-dirty", items.len());
    record.clean_comparisons = stats.clean;
    record.dirty_comparisons = stats.dirty;
    record.wall_ms = start.elapsed().as_secs_f64() * 1e3;
    (sorted, record)
}

/// Heapsort through the comparison-counted binary heap baseline.
pub fn sort_binheap<K: Ord + Clone + Eq + Hash>(items: &[K]) -> (Vec<K>, ExperimentRecord) {
    let start = Instant::now();
    let mut heap: BinaryHeapBaseline<K, usize> = BinaryHeapBaseline::new();
    for (i, item) in items.iter().enumerate() {
        heap.insert(item.clone(), i);
    }
    let mut sorted = Vec::with_capacity(items.len());
    while let Some((k, _)) = heap.extract_min() {
        sorted.push(k);
    }
    let mut record = ExperimentRecord::new("binheap", items.len());
    record.clean_comparisons = heap.ledger().clean();
    record.wall_ms = start.elapsed().as_secs_f64() * 1e3;
    (sorted, record)
}

/// Heapsort through the comparison-counted Fibonacci heap baseline.
pub fn sort_fibheap<K: Ord + Clone + Eq + Hash>(items: &[K]) -> (Vec<K>, ExperimentRecord) {
    let start = Instant::now();
    let mut heap: FibonacciHeapBaseline<K, usize> = FibonacciHeapBaseline::new();
    for (i, item) in items.iter().enumerate() {
        heap.insert(item.clone(), i);
    }
    let mut sorted = Vec::with_capacity(items.len());
    while let Some((k, _)) = heap.extract_min() {
        sorted.push(k);
    }
    let mut record = ExperimentRecord::new("fibheap", items.len());
    record.clean_comparisons = heap.ledger().clean();
    record.wall_ms = start.elapsed().as_secs_f64() * 1e3;
    (sorted, record)
}
