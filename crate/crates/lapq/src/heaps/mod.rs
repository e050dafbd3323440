//! Heap-based priority queues: the randomized binary heap driven by dirty
//! comparisons, plus comparison-counted binary-heap and Fibonacci-heap
//! baselines.

mod binary;
mod fibonacci;
mod randomized;
mod search;

pub use binary::BinaryHeapBaseline;
pub use fibonacci::FibonacciHeapBaseline;
pub use randomized::RandomizedBinaryHeap;
pub use search::{exponential_search, randomized_binary_search};
