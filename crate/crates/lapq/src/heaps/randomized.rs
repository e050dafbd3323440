//! Level-complete binary heap whose leaf level has randomly occupied slots.
//!
//! Insertion picks a uniformly random empty leaf slot, reads the root-to-leaf
//! path (a sorted array, by the heap property) without charging comparisons,
//! locates the new key's position on it with a dirty randomized binary
//! search refined by a clean exponential search, and realizes the insertion
//! by shifting path entries down. Extraction refills the root hole top-down
//! by promoting the smaller occupied child.

use std::collections::HashMap;
use std::hash::Hash;

use super::search::{exponential_search, randomized_binary_search};
use crate::instrument::{ComparisonLedger, DirtyOracle, Rng};

/// Leaf-slot set with O(1) insert, remove, and uniform sampling.
#[derive(Debug, Default)]
struct SlotSet {
    items: Vec<u32>,
    pos: HashMap<u32, usize>,
}

impl SlotSet {
    fn insert(&mut self, slot: u32) {
        debug_assert!(!self.pos.contains_key(&slot));
        self.pos.insert(slot, self.items.len());
        self.items.push(slot);
    }

    fn remove(&mut self, slot: u32) {
        let at = self.pos.remove(&slot).expect("slot not in set");
        let last = self.items.pop().unwrap();
        if last != slot {
            self.items[at] = last;
            self.pos.insert(last, at);
        }
    }

    fn sample(&self, rng: &mut Rng) -> u32 {
        self.items[rng.below(self.items.len() as u64) as usize]
    }

    fn len(&self) -> usize {
        self.items.len()
    }

    fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    fn clear(&mut self) {
        self.items.clear();
        self.pos.clear();
    }
}

/// Binary min-heap with implicit slot arithmetic (slot `s` has children `2s`
/// and `2s + 1`); levels above the leaf level are always full.
#[derive(Debug)]
pub struct RandomizedBinaryHeap<K> {
    /// 1-indexed; `slots[0]` is unused.
    slots: Vec<Option<K>>,
    /// Current leaf level; levels are numbered from 1 (the root). 0 = empty.
    depth: u32,
    leaf_empty: SlotSet,
    leaf_occupied: SlotSet,
    len: usize,
    ledger: ComparisonLedger,
    rng: Rng,
}

impl<K: Ord + Clone + Eq + Hash> RandomizedBinaryHeap<K> {
    pub fn new(seed: u64) -> Self {
        RandomizedBinaryHeap {
            slots: vec![None],
            depth: 0,
            leaf_empty: SlotSet::default(),
            leaf_occupied: SlotSet::default(),
            len: 0,
            ledger: ComparisonLedger::new(),
            rng: Rng::new(seed),
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn ledger(&self) -> &ComparisonLedger {
        &self.ledger
    }

    pub fn find_min(&self) -> Option<&K> {
        self.slots.get(1).and_then(Option::as_ref)
    }

    fn level_of(slot: u32) -> u32 {
        32 - slot.leading_zeros()
    }

    /// Grows the slot array to hold levels `1..=depth`.
    fn open_leaf_level(&mut self) {
        self.depth += 1;
        let size = 1usize << self.depth;
        self.slots.resize(size, None);
        self.leaf_empty.clear();
        self.leaf_occupied.clear();
        for slot in (1u32 << (self.depth - 1))..(1u32 << self.depth) {
            self.leaf_empty.insert(slot);
        }
    }

    /// Drops the (empty) leaf level; the level above becomes the leaf level,
    /// fully occupied except possibly `hole`.
    fn drop_leaf_level(&mut self, hole: Option<u32>) {
        debug_assert!(self.leaf_occupied.is_empty());
        debug_assert!(self.depth >= 2);
        self.depth -= 1;
        self.slots.truncate(1usize << self.depth);
        self.leaf_empty.clear();
        self.leaf_occupied.clear();
        for slot in (1u32 << (self.depth - 1))..(1u32 << self.depth) {
            if Some(slot) == hole {
                self.leaf_empty.insert(slot);
            } else {
                self.leaf_occupied.insert(slot);
            }
        }
    }

    /// Algorithm: pick a uniformly random empty leaf slot (opening a fresh
    /// leaf level if none is empty), binary-search the root-to-parent path
    /// with dirty comparisons, pin the exact position with a clean
    /// exponential search, then shift path keys down to make room.
    pub fn insert_dirty(&mut self, key: K, oracle: &DirtyOracle<K>) {
        if self.depth == 0 || self.leaf_empty.is_empty() {
            self.open_leaf_level();
        }
        let slot = self.leaf_empty.sample(&mut self.rng);

        // root-to-parent path, ascending by the heap property
        let mut path_slots = Vec::with_capacity(self.depth as usize);
        let mut cur = slot / 2;
        while cur >= 1 {
            path_slots.push(cur);
            cur /= 2;
        }
        path_slots.reverse();
        let path: Vec<K> = path_slots
            .iter()
            .map(|&s| self.slots[s as usize].clone().expect("full level slot"))
            .collect();

        let ledger = &mut self.ledger;
        let rng = &mut self.rng;
        let dirty_pos = randomized_binary_search(&path, &key, rng, |a, b| {
            ledger.record_dirty();
            oracle.less(a, b)
        });
        let rank = exponential_search(&path, dirty_pos, &key, |a, b| {
            ledger.record_clean();
            a < b
        });

        // keys at path positions rank.. move one step toward the leaf
        let mut dest = slot;
        for i in (rank..path_slots.len()).rev() {
            self.slots[dest as usize] = self.slots[path_slots[i] as usize].take();
            dest = path_slots[i];
        }
        self.slots[dest as usize] = Some(key);
        self.leaf_empty.remove(slot);
        self.leaf_occupied.insert(slot);
        self.len += 1;
    }

    /// Removes the root and refills the hole top-down, promoting the smaller
    /// occupied child with clean comparisons. A hole stuck above an empty
    /// leaf region is filled by a random occupied leaf donor sifted up.
    pub fn extract_min(&mut self) -> Option<K> {
        if self.len == 0 {
            return None;
        }
        let min = self.slots[1].take().expect("root of non-empty heap");
        self.len -= 1;
        if self.len == 0 {
            self.slots = vec![None];
            self.depth = 0;
            self.leaf_empty.clear();
            self.leaf_occupied.clear();
            return Some(min);
        }

        let mut hole = 1u32;
        loop {
            let child_level = Self::level_of(hole) + 1;
            if child_level > self.depth {
                // hole reached the leaf level
                self.leaf_occupied.remove(hole);
                self.leaf_empty.insert(hole);
                if self.leaf_occupied.is_empty() {
                    self.drop_leaf_level(None);
                }
                break;
            }
            let (c0, c1) = (hole * 2, hole * 2 + 1);
            if child_level < self.depth {
                // full level: both children present
                self.ledger.record_clean();
                let smaller = if self.slots[c0 as usize].as_ref().unwrap()
                    < self.slots[c1 as usize].as_ref().unwrap()
                {
                    c0
                } else {
                    c1
                };
                self.slots[hole as usize] = self.slots[smaller as usize].take();
                hole = smaller;
            } else {
                // children live in the leaf level
                let o0 = self.slots[c0 as usize].is_some();
                let o1 = self.slots[c1 as usize].is_some();
                match (o0, o1) {
                    (true, true) => {
                        self.ledger.record_clean();
                        let smaller = if self.slots[c0 as usize].as_ref().unwrap()
                            < self.slots[c1 as usize].as_ref().unwrap()
                        {
                            c0
                        } else {
                            c1
                        };
                        self.slots[hole as usize] = self.slots[smaller as usize].take();
                        hole = smaller;
                    }
                    (true, false) | (false, true) => {
                        let only = if o0 { c0 } else { c1 };
                        self.slots[hole as usize] = self.slots[only as usize].take();
                        hole = only;
                    }
                    (false, false) => {
                        if self.leaf_occupied.is_empty() {
                            // the whole leaf level is gone; this hole becomes
                            // the single empty slot of the new leaf level
                            self.drop_leaf_level(Some(hole));
                        } else {
                            // donor: move a random occupied leaf key into the
                            // hole and restore the heap property upward
                            let donor = self.leaf_occupied.sample(&mut self.rng);
                            let key = self.slots[donor as usize].take().unwrap();
                            self.leaf_occupied.remove(donor);
                            self.leaf_empty.insert(donor);
                            self.slots[hole as usize] = Some(key);
                            self.sift_up(hole);
                            if self.leaf_occupied.is_empty() {
                                self.drop_leaf_level(None);
                            }
                        }
                        break;
                    }
                }
            }
        }
        Some(min)
    }

    fn sift_up(&mut self, mut slot: u32) {
        while slot > 1 {
            let parent = slot / 2;
            self.ledger.record_clean();
            if self.slots[slot as usize] < self.slots[parent as usize] {
                self.slots.swap(slot as usize, parent as usize);
                slot = parent;
            } else {
                break;
            }
        }
    }

    /// Full heap-property scan, used by tests.
    #[doc(hidden)]
    pub fn check_heap(&self) {
        assert_eq!(
            self.slots.iter().skip(1).filter(|s| s.is_some()).count(),
            self.len
        );
        for slot in 1..self.slots.len() {
            let Some(key) = self.slots[slot].as_ref() else {
                assert!(
                    Self::level_of(slot as u32) == self.depth || self.len == 0,
                    "hole above the leaf level at slot {slot}"
                );
                continue;
            };
            for child in [2 * slot, 2 * slot + 1] {
                if let Some(Some(ck)) = self.slots.get(child) {
                    assert!(key <= ck, "heap violation {slot} -> {child}");
                }
            }
        }
        assert_eq!(
            self.leaf_occupied.len() + self.leaf_empty.len(),
            if self.depth == 0 { 0 } else { 1 << (self.depth - 1) }
        );
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perfect_oracle(n: u64) -> DirtyOracle<u64> {
        DirtyOracle::from_pairs((0..n).map(|k| (k, k + 1)))
    }

    fn reversed_oracle(n: u64) -> DirtyOracle<u64> {
        DirtyOracle::from_pairs((0..n).map(|k| (k, n - k)))
    }

    #[test]
    fn ascending_inserts_then_drain_sorted() {
        let oracle = perfect_oracle(200);
        let mut heap = RandomizedBinaryHeap::new(4);
        for k in 0..200u64 {
            heap.insert_dirty(k, &oracle);
            heap.check_heap();
        }
        let drained: Vec<u64> = std::iter::from_fn(|| heap.extract_min()).collect();
        assert_eq!(drained, (0..200).collect::<Vec<_>>());
    }

    #[test]
    fn adversarial_oracle_keeps_heap_property() {
        let oracle = reversed_oracle(300);
        let mut rng = Rng::new(8);
        let mut heap = RandomizedBinaryHeap::new(5);
        let mut keys: Vec<u64> = (0..300).collect();
        rng.shuffle(&mut keys);
        for k in keys {
            heap.insert_dirty(k, &oracle);
            heap.check_heap();
        }
        let drained: Vec<u64> = std::iter::from_fn(|| heap.extract_min()).collect();
        assert_eq!(drained, (0..300).collect::<Vec<_>>());
    }

    #[test]
    fn interleaved_operations_stay_consistent() {
        let oracle = perfect_oracle(10_000);
        let mut rng = Rng::new(17);
        let mut heap = RandomizedBinaryHeap::new(6);
        let mut reference: Vec<u64> = Vec::new();
        for _ in 0..3000 {
            if reference.is_empty() || rng.below(3) > 0 {
                let k = rng.below(10_000);
                heap.insert_dirty(k, &oracle);
                reference.push(k);
            } else {
                let got = heap.extract_min().unwrap();
                let at = reference
                    .iter()
                    .enumerate()
                    .min_by_key(|(_, v)| **v)
                    .map(|(i, _)| i)
                    .unwrap();
                assert_eq!(got, reference.swap_remove(at));
            }
            if rng.below(100) == 0 {
                heap.check_heap();
            }
        }
        heap.check_heap();
        let mut rest: Vec<u64> = std::iter::from_fn(|| heap.extract_min()).collect();
        reference.sort_unstable();
        rest.sort_unstable();
        assert_eq!(rest, reference);
    }

    #[test]
    fn extract_comparison_cap() {
        let oracle = perfect_oracle(4096);
        let mut rng = Rng::new(12);
        let mut heap = RandomizedBinaryHeap::new(7);
        let mut keys: Vec<u64> = (0..4096).collect();
        rng.shuffle(&mut keys);
        for k in keys {
            heap.insert_dirty(k, &oracle);
        }
        let mut n = 4096u64;
        while n > 0 {
            let before = heap.ledger().clean();
            heap.extract_min().unwrap();
            let used = heap.ledger().clean() - before;
            let cap = 2 * ((n + 1) as f64).log2().ceil() as u64;
            assert!(used <= cap, "n={n}: {used} > {cap}");
            n -= 1;
        }
    }

    #[test]
    fn singleton_extract_is_free() {
        let oracle = perfect_oracle(10);
        let mut heap = RandomizedBinaryHeap::new(3);
        heap.insert_dirty(5, &oracle);
        let before = heap.ledger().clean();
        assert_eq!(heap.extract_min(), Some(5));
        assert_eq!(heap.ledger().clean(), before);
        assert_eq!(heap.extract_min(), None);
    }

    #[test]
    fn perfect_oracle_insertion_is_doubly_logarithmic() {
        let n = 20_000u64;
        let oracle = perfect_oracle(n);
        let mut rng = Rng::new(100);
        let mut keys: Vec<u64> = (0..n).collect();
        rng.shuffle(&mut keys);
        let mut heap = RandomizedBinaryHeap::new(9);
        for &k in &keys {
            heap.insert_dirty(k, &oracle);
        }
        let per_insert = heap.ledger().clean() as f64 / n as f64;
        let cap = 2.0 * (n as f64).log2().log2() + 4.0;
        assert!(per_insert <= cap, "{per_insert} > {cap}");
    }
}
