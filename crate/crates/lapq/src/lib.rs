//! Learning-augmented priority queues.
//!
//! Classical comparison-based priority queues cannot beat `O(log n)` across
//! all operations. This crate implements queues that can, when they are
//! handed predictions about the keys they will see, in three prediction
//! models:
//!
//! - **dirty comparisons** — a cheap, possibly wrong comparator stands in
//!   for the expensive true one; dirty and clean comparisons are counted
//!   separately,
//! - **pointer predictions** — each insertion names a live element believed
//!   to be the new key's predecessor,
//! - **rank predictions** — each insertion carries a guess of the key's
//!   final rank among everything that will ever be inserted.
//!
//! The workhorse is a skip list ([`skiplist::SkipList`]) whose insertion
//! cost degrades only logarithmically in the prediction error, wrapped by
//! [`queue::Lapq`] which adds an auxiliary van Emde Boas tree
//! ([`veb::DynamicVeb`]) for the rank model. A randomized binary heap and
//! two comparison-counted baselines live in [`heaps`]. End-to-end sorting
//! and Dijkstra drivers, plus the synthetic graph and prediction
//! generators behind the benchmark harness, live in [`apps`] and
//! [`predict`].
//!
//! Everything is deterministic given a seed: all randomness flows through
//! the SplitMix64 generator in [`instrument::Rng`].
//!
//! ```
//! use lapq::queue::{Lapq, Mode};
//!
//! let mut q: Lapq<u64> = Lapq::new(Mode::Rank, 42);
//! for (key, predicted_rank) in [(30, 3), (10, 1), (20, 2)] {
//!     q.insert_rank(key, predicted_rank, ());
//! }
//! let drained: Vec<u64> = std::iter::from_fn(|| q.extract_min()).map(|(k, _)| k).collect();
//! assert_eq!(drained, vec![10, 20, 30]);
//! ```

pub mod apps;
pub mod heaps;
pub mod instrument;
pub mod predict;
pub mod queue;
pub mod skiplist;
pub mod veb;

use thiserror::Error;

/// Errors shared by the priority-queue implementations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum QueueError {
    #[error("key not found")]
    KeyNotFound,
    #[error("decrease-key target is not smaller than the current key")]
    InvalidDecrease,
}

pub use instrument::{ComparisonLedger, DirtyOracle, Rng};
pub use queue::{Lapq, Mode, QueueStats};
